#include <doctest.h>

#include <cmath>
#include <random>

#include "casfric/dissipation.hpp"
#include "casfric/friction.hpp"
#include "casfric/oracle.hpp"

using namespace casfric;

namespace {

Trajectory out_and_back(double speed, double leg_time) {
  return Trajectory({{0.0, 0.0, 0.0},
                     {leg_time, speed * leg_time, 0.0},
                     {2.0 * leg_time, 0.0, 0.0}});
}

const DrudeMetal unit_metal(1.0, 1.0, 1.0);

}  // namespace

TEST_CASE("coulomb dipole hat: values, decay, singularity") {
  CHECK(coulomb_dipole_hat(0.0, WaveVector(1.0, 0.0)) ==
        doctest::Approx(2.0 * M_PI).epsilon(1e-15));
  CHECK(coulomb_dipole_hat(std::log(2.0), WaveVector(1.0, 0.7)) ==
        doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(coulomb_dipole_hat(800.0, WaveVector(1.0, 0.0)) == 0.0);
  CHECK_THROWS_AS(coulomb_dipole_hat(0.0, WaveVector(0.0, 0.0)),
                  SingularKernelError);
}

TEST_CASE("g kernel: values and scaling") {
  CHECK(g_kernel(0.0, 1.0) ==
        doctest::Approx(16.0 * M_PI * M_PI).epsilon(1e-15));
  CHECK(g_kernel(0.0, 2.0) ==
        doctest::Approx(64.0 * M_PI * M_PI).epsilon(1e-15));
  const double q = 1.7;
  CHECK(g_kernel(std::log(2.0) / (2.0 * q), q) ==
        doctest::Approx(0.5 * g_kernel(0.0, q)).epsilon(1e-14));
  CHECK_THROWS_AS(g_kernel(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(g_kernel(0.0, -1.0), DomainError);
}

TEST_CASE("g kernel equals the dipole-squared combination") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  for (int i = 0; i < 100; ++i) {
    const double q = u(rng), z0 = u(rng) - 1.0;
    const double psi = coulomb_dipole_hat(z0, WaveVector(q, 0.0));
    CHECK(g_kernel(z0, q) ==
          doctest::Approx(4.0 * q * q * q * q * psi * psi).epsilon(1e-13));
  }
}

TEST_CASE("half-space z integral: closed form against 2-D quadrature") {
  // oracle: nested quadrature over the truncated half-spaces
  auto brute = [](double q, double d) {
    const double L = 16.0 / q;
    auto inner = [&](double z1) {
      return oracle_integrate(
          [&](double z2) { return std::exp(-2.0 * q * (z1 - z2)); }, -L, 0.0,
          1e-13);
    };
    return oracle_integrate(inner, d, d + L, 1e-12);
  };
  CHECK(halfspace_z_integral(1.0, 0.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(std::abs(halfspace_z_integral(1.0, 0.0) - brute(1.0, 0.0)) <= 1e-8);
  CHECK(halfspace_z_integral(1.0, 0.5 * std::log(2.0)) ==
        doctest::Approx(0.125).epsilon(1e-14));
  CHECK(std::abs(halfspace_z_integral(2.2, 0.9) - brute(2.2, 0.9)) <= 1e-8);
  CHECK(halfspace_z_integral(1.0, 500.0) == 0.0);
  CHECK_THROWS_AS(halfspace_z_integral(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(halfspace_z_integral(1.0, -0.5), DomainError);
}

TEST_CASE("half-space z integral: gap composition property") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double q = u(rng), d1 = u(rng), d2 = u(rng);
    CHECK(halfspace_z_integral(q, d1 + d2) ==
          doctest::Approx(halfspace_z_integral(q, d1) *
                          std::exp(-2.0 * q * d2))
              .epsilon(1e-12));
  }
}

TEST_CASE("epsilon substitution") {
  CHECK(epsilon_substitution(3.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(epsilon_substitution(1.0) == 0.0);
  CHECK(epsilon_substitution(1e14) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(epsilon_substitution(-1.0), SingularKernelError);
  CHECK_THROWS_AS(epsilon_substitution(-2.0), SingularKernelError);
}

TEST_CASE("j_of_omega_v is the stated linear combination") {
  CHECK(j_of_omega_v(0.0, 0.0, {1.0, 2.0, 0.0}) == 0.0);
  CHECK(j_of_omega_v(3.0, 5.0, {1.0, 2.0, 0.0}) == doctest::Approx(13.0));
  CHECK(j_of_omega_v(3.0, 5.0, {0.0, 2.0, 0.0}) == doctest::Approx(10.0));
}

TEST_CASE("shell integrals: small-S asymptotics") {
  QuadratureSpec quad;
  quad.rel_tol = 1e-11;
  const double beta = 1.0, S = 1e-3;
  // K-(S) -> (2 pi^2 / 3) S / beta^2
  CHECK(drude_shell_diff(S, beta, quad) ==
        doctest::Approx((2.0 * M_PI * M_PI / 3.0) * S / (beta * beta))
            .epsilon(1e-5));
  // K+(S) -> 2 S^2 / beta
  CHECK(drude_shell_sum(S, beta, quad) ==
        doctest::Approx(2.0 * S * S / beta).epsilon(1e-5));
  CHECK(drude_shell_sum(0.0, beta, quad) == 0.0);
  CHECK(drude_shell_diff(0.0, beta, quad) == 0.0);
}

TEST_CASE("shell integrals: deep-quantum limits") {
  QuadratureSpec quad;
  quad.rel_tol = 1e-11;
  const double S = 1.0, beta = 500.0;
  // K+ -> S^3 / 3 with boundary corrections O(1/(beta S)^2)
  CHECK(drude_shell_sum(S, beta, quad) ==
        doctest::Approx(S * S * S / 3.0).epsilon(1e-3));
  // the difference channel dies as T^2: K- -> (pi^2/3) S / beta^2
  CHECK(drude_shell_diff(S, beta, quad) ==
        doctest::Approx(M_PI * M_PI / 3.0 * S / (beta * beta)).epsilon(5e-3));
  CHECK(drude_shell_diff(S, beta, quad) <=
        1e-4 * drude_shell_sum(S, beta, quad));
}

TEST_CASE("spectral rate: T0 closed form and zero speed") {
  QuadratureSpec quad;
  const auto t0 = ThermalState::zero_temperature();
  const double D = 0.3;
  CHECK(drude_spectral_rate(0.0, D, t0, quad) == 0.0);
  const double w = 1.7;
  CHECK(drude_spectral_rate(w, D, t0, quad) ==
        doctest::Approx(M_PI / 6.0 * D * D * std::pow(w, 4)).epsilon(1e-14));
  CHECK(drude_spectral_rate(-w, D, t0, quad) ==
        doctest::Approx(drude_spectral_rate(w, D, t0, quad)));
}

TEST_CASE("band integrate: stationary loop and input validation") {
  const PlateConfig cfg(1.0, 1.0, 1.0, ThermalState::zero_temperature());
  QuadratureSpec quad;
  const Trajectory still({{0.0, 0.5, 0.5}, {1.0, 0.5, 0.5}, {2.0, 0.5, 0.5}});
  const auto r = band_integrate(still, cfg, unit_metal, quad,
                                TemperatureMode::t0);
  CHECK(r.energy_per_area == 0.0);

  CHECK_THROWS_AS(band_integrate(still, cfg, unit_metal, quad,
                                 TemperatureMode::finite_t),
                  DomainError);
  const Trajectory open({{0.0, 0.0, 0.0}, {1.0, 1.0, 0.0}});
  CHECK_THROWS_AS(
      band_integrate(open, cfg, unit_metal, quad, TemperatureMode::t0),
      LoopViolationError);
}

TEST_CASE("band integrate reproduces the T0 friction coefficient") {
  const PlateConfig cfg(1.0, 1.0, 1.0, ThermalState::zero_temperature());
  QuadratureSpec quad;
  quad.rel_tol = 1e-9;
  const double v = 0.01;
  const Trajectory traj = out_and_back(v, 1.0);
  const auto r = band_integrate(traj, cfg, unit_metal, quad,
                                TemperatureMode::t0);
  const double friction = r.energy_per_area / (v * 2.0);  // per unit distance
  const double c_p = coefficient_T0(unit_metal, cfg);
  CHECK(friction / (v * v * v) == doctest::Approx(c_p).epsilon(1e-6));
  // the T0 rate is an exact v^4 power law
  const auto r2 = band_integrate(out_and_back(2.0 * v, 1.0), cfg, unit_metal,
                                 quad, TemperatureMode::t0);
  CHECK(r2.energy_per_area / r.energy_per_area ==
        doctest::Approx(16.0).epsilon(1e-7));
}

TEST_CASE("band integrate reproduces the finite-T friction coefficient") {
  const double beta = 1.0;
  const PlateConfig cfg(1.0, 1.0, 1.0,
                        ThermalState::inverse_temperature(beta));
  QuadratureSpec quad;
  quad.rel_tol = 1e-7;
  const double v = 1e-3;
  const Trajectory traj = out_and_back(v, 1.0);
  const auto r = band_integrate(traj, cfg, unit_metal, quad,
                                TemperatureMode::finite_t);
  const double friction = r.energy_per_area / (v * 2.0);
  const double c = coefficient_finiteT(unit_metal, cfg).value;
  CHECK(friction / v == doctest::Approx(c).epsilon(1e-2));
}

TEST_CASE("band integrate: velocity additivity across segments") {
  const PlateConfig cfg(1.0, 1.0, 1.0, ThermalState::zero_temperature());
  QuadratureSpec quad;
  quad.rel_tol = 1e-9;
  // three-speed closed loop: v, 2v, then a return leg
  const double v = 0.02;
  const Trajectory traj({{0.0, 0.0, 0.0},
                         {1.0, v, 0.0},
                         {1.5, v + v, 0.0},  // speed 2v for half the time
                         {2.5, 0.0, 0.0}});  // speed 2v back
  const auto total =
      band_integrate(traj, cfg, unit_metal, quad, TemperatureMode::t0);
  double summed = 0.0;
  for (const Segment& s : segmentize(traj)) {
    summed += 2.0 * s.tau *
              sliding_rate(s.speed(), cfg, unit_metal, quad,
                           TemperatureMode::t0)
                  .energy_per_area;
  }
  CHECK(total.energy_per_area == doctest::Approx(summed).epsilon(1e-3));
}

TEST_CASE("band integrate is non-negative on random closed loops") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const PlateConfig cfg(1.0, 1.0, 1.0, ThermalState::zero_temperature());
  QuadratureSpec quad;
  quad.rel_tol = 1e-6;
  for (int i = 0; i < 5; ++i) {
    std::vector<TrajectoryNode> nodes{{0.0, 0.0, 0.0}};
    for (int leg = 0; leg < 3; ++leg) {
      const auto& p = nodes.back();
      const double dt = 0.5 + u(rng);
      nodes.push_back({p.t + dt, p.x + 0.05 * (u(rng) - 0.5) * dt,
                       p.y + 0.05 * (u(rng) - 0.5) * dt});
    }
    nodes.push_back({nodes.back().t + 1.0, 0.0, 0.0});
    const auto r = band_integrate(Trajectory(nodes), cfg, unit_metal, quad,
                                  TemperatureMode::t0);
    CHECK(r.energy_per_area >= 0.0);
  }
}

TEST_CASE("band integrate flags the spectral validity regime") {
  QuadratureSpec quad;
  quad.rel_tol = 1e-6;
  // unit metal: m_max = 0.1, k_max u = 40 * 0.01 = 0.4 exceeds it
  const PlateConfig cfg(1.0, 1.0, 1.0, ThermalState::zero_temperature());
  const auto flagged = band_integrate(out_and_back(0.01, 1.0), cfg, unit_metal,
                                      quad, TemperatureMode::t0);
  CHECK_FALSE(flagged.regime_ok);

  // a high plasma frequency restores validity
  const DrudeMetal stiff(100.0, 1.0, 1.0);
  const auto ok = band_integrate(out_and_back(0.01, 1.0), cfg, stiff, quad,
                                 TemperatureMode::t0);
  CHECK(ok.regime_ok);
}

TEST_CASE("band integrate raises an accuracy error when starved") {
  const PlateConfig cfg(1.0, 1.0, 1.0, ThermalState::zero_temperature());
  QuadratureSpec quad;
  quad.rel_tol = 1e-13;
  quad.max_subdivisions = 0;
  CHECK_THROWS_AS(band_integrate(out_and_back(0.01, 1.0), cfg, unit_metal,
                                 quad, TemperatureMode::t0),
                  AccuracyError);
}
