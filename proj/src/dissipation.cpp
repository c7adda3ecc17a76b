#include "casfric/dissipation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace casfric {

PlateConfig::PlateConfig(double gap_, double rho1_, double rho2_,
                         ThermalState thermal_)
    : gap(gap_), rho1(rho1_), rho2(rho2_), thermal(thermal_) {
  if (!(gap > 0.0) || !std::isfinite(gap)) {
    throw DomainError("plate config: gap must be positive");
  }
  if (rho1 < 0.0 || rho2 < 0.0 || !std::isfinite(rho1) ||
      !std::isfinite(rho2)) {
    throw DomainError("plate config: densities must be nonnegative");
  }
}

double coulomb_dipole_hat(double z0, const WaveVector& wv) {
  if (wv.k == 0.0) {
    throw SingularKernelError("coulomb_dipole_hat: k = 0");
  }
  return 2.0 * M_PI * std::exp(-wv.k * std::abs(z0)) / wv.k;
}

double g_kernel(double z0, double q) {
  if (!(q > 0.0)) {
    throw DomainError("g_kernel: q must be positive");
  }
  return 16.0 * M_PI * M_PI * q * q * std::exp(-2.0 * q * std::abs(z0));
}

double halfspace_z_integral(double q, double d) {
  if (!(q > 0.0) || d < 0.0) {
    throw DomainError("halfspace_z_integral: need q > 0, d >= 0");
  }
  return std::exp(-2.0 * q * d) / (4.0 * q * q);
}

double epsilon_substitution(double eps) {
  if (eps <= -1.0) {
    throw SingularKernelError("epsilon_substitution: eps <= -1");
  }
  return (eps - 1.0) / (eps + 1.0);
}

double j_of_omega_v(double I_minus, double I_plus,
                    const ResponseCoefficients& coeffs) {
  return coeffs.c_minus * I_minus + coeffs.c_plus * I_plus;
}

namespace {

// sinh(b S/2) / (sinh(b m1/2) sinh(b m2/2)) evaluated through logs so large
// arguments cannot overflow.
double sinh_ratio(double bs_half, double bm1_half, double bm2_half) {
  auto lsinh = [](double x) {
    return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
  };
  return std::exp(lsinh(bs_half) - lsinh(bm1_half) - lsinh(bm2_half));
}

// m / sinh(b m / 2) with its m -> 0 limit 2/b.
double m_over_sinh(double m, double beta) {
  const double x = 0.5 * beta * m;
  if (x < 1e-8) return (2.0 / beta) / (1.0 + x * x / 6.0);
  return m / std::sinh(x);
}

}  // namespace

double drude_shell_sum(double S, double beta, const QuadratureSpec& quad) {
  if (S < 0.0) throw DomainError("drude_shell_sum: S must be nonnegative");
  if (S == 0.0) return 0.0;
  const double ls = std::sinh(0.5 * beta * S);
  // integrand m (S-m) sinh(bS/2)/(sinh(bm/2) sinh(b(S-m)/2)); symmetric in
  // m <-> S-m, finite endpoints (value 2S/b).
  auto f = [&](double m) {
    if (m <= 0.0 || m >= S) return 2.0 * S / beta;
    const double a = m_over_sinh(m, beta);
    const double b = m_over_sinh(S - m, beta);
    if (0.5 * beta * S > 700.0) {
      // deep quantum regime: evaluate the ratio in log space
      return m * (S - m) *
             sinh_ratio(0.5 * beta * S, 0.5 * beta * m, 0.5 * beta * (S - m));
    }
    return a * b * ls;
  };
  return integrate_gk(f, 0.0, S, quad.rel_tol, quad.max_subdivisions,
                      "drude_shell_sum")
      .value;
}

double drude_shell_diff(double S, double beta, const QuadratureSpec& quad) {
  if (S < 0.0) throw DomainError("drude_shell_diff: S must be nonnegative");
  if (S == 0.0) return 0.0;
  // integrand decays like exp(-beta m); truncate where it is below 1e-26.
  const double m_hi = 62.0 / beta;
  auto g = [&](double m) {
    const double num = std::sinh(0.5 * beta * S);
    const double den2 = std::sinh(0.5 * beta * (m + S));
    if (std::isfinite(num) && std::isfinite(den2)) {
      return m_over_sinh(m, beta) * (m + S) * num / den2;
    }
    // overflow regime: log-space ratio sinh(bS/2)/sinh(b(m+S)/2)
    const double lr = 0.5 * beta * S - 0.5 * beta * (m + S) +
                      std::log1p(-std::exp(-beta * S)) -
                      std::log1p(-std::exp(-beta * (m + S)));
    return m_over_sinh(m, beta) * (m + S) * std::exp(lr);
  };
  return integrate_gk(g, 0.0, m_hi, quad.rel_tol, quad.max_subdivisions,
                      "drude_shell_diff")
      .value;
}

double drude_spectral_rate(double w, double dissipation_constant,
                           const ThermalState& thermal,
                           const QuadratureSpec& quad) {
  const double S = std::abs(w);
  if (S == 0.0) return 0.0;
  const double D2 = dissipation_constant * dissipation_constant;
  if (thermal.is_zero_temperature()) {
    // K+ -> S^3/3 exactly (the sinh ratio tends to 2), K- -> 0.
    return 0.5 * M_PI * D2 * S * (S * S * S / 3.0);
  }
  const double beta = thermal.beta();
  const double kp = drude_shell_sum(S, beta, quad);
  const double km = drude_shell_diff(S, beta, quad);
  return 0.5 * M_PI * D2 * S * (kp + 2.0 * km);
}

namespace {

// Segments grouped by speed; the spectral rate depends on a segment only
// through its speed and duration.
struct SpeedGroup {
  double speed;
  double duration;
};

std::vector<SpeedGroup> group_by_speed(const std::vector<Segment>& segs) {
  std::vector<SpeedGroup> groups;
  for (const Segment& s : segs) {
    const double u = s.speed();
    if (u == 0.0) continue;
    bool merged = false;
    for (auto& g : groups) {
      if (std::abs(g.speed - u) <= 1e-12 * std::max(g.speed, u)) {
        g.duration += 2.0 * s.tau;
        merged = true;
        break;
      }
    }
    if (!merged) groups.push_back({u, 2.0 * s.tau});
  }
  std::sort(groups.begin(), groups.end(),
            [](const SpeedGroup& a, const SpeedGroup& b) {
              return a.speed < b.speed;
            });
  return groups;
}

}  // namespace

BandResult sliding_rate(double u, const PlateConfig& config,
                        const DrudeMetal& metal, const QuadratureSpec& quad,
                        TemperatureMode mode) {
  if ((mode == TemperatureMode::t0) != config.thermal.is_zero_temperature()) {
    throw DomainError("sliding_rate: mode inconsistent with thermal state");
  }
  if (u < 0.0 || !std::isfinite(u)) {
    throw DomainError("sliding_rate: speed must be nonnegative");
  }
  const double D = metal.dissipation_constant();
  const double k_max = quad.k_max_factor / config.gap;
  const double m_max = quad.m_max > 0.0 ? quad.m_max : metal.default_m_max();

  BandResult result;
  // Validity of the linearized spectral density over the sampled band: the
  // delta shells reach k_max * u; at finite T the difference channel
  // additionally samples thermal energies ~ 5/beta.
  result.regime_ok = k_max * u <= m_max;
  if (mode == TemperatureMode::finite_t) {
    result.regime_ok = result.regime_ok && 5.0 / config.thermal.beta() <= m_max;
  }
  if (u == 0.0) return result;

  // Inner tolerances sit below the outer one; adaptive refinement of the
  // outer integral dominates the final error.
  QuadratureSpec inner = quad;
  inner.rel_tol = std::max(quad.rel_tol * 0.1, 1e-13);

  // Unit-duration probe segment: by the relative-angle symmetry only speed
  // and duration enter the rate, so the velocity is pinned along +x and the
  // angular average runs over one quadrant.
  const Segment probe(0.0, 0.5, 0.0, 0.0, u, 0.0);
  auto phi_integrand = [&](double k, double phi) {
    const WaveVector wv(k, phi);
    const auto terms = delta_I_limit(probe, wv);
    CompensatedSum shell;
    for (const DeltaTerm& term : terms) {
      if (term.center <= 0.0) continue;  // the shells sit at omega = |w| > 0
      const double S = term.center;
      double kfac;
      if (mode == TemperatureMode::t0) {
        kfac = S * S * S / 3.0;
      } else {
        kfac = drude_shell_sum(S, config.thermal.beta(), inner) +
               2.0 * drude_shell_diff(S, config.thermal.beta(), inner);
      }
      shell.add(term.amplitude * D * D * kfac / term.center);
    }
    return shell.value();
  };

  auto k_integrand = [&](double k) {
    auto fphi = [&](double phi) { return phi_integrand(k, phi); };
    const IntegralResult aphi =
        integrate_gk(fphi, 0.0, 0.5 * M_PI, inner.rel_tol,
                     quad.max_subdivisions, "sliding_rate: angular average");
    const double zfac = g_kernel(0.0, k) * halfspace_z_integral(k, config.gap);
    return k * zfac * 4.0 * aphi.value;
  };

  const IntegralResult rk =
      integrate_gk(k_integrand, 0.0, k_max, quad.rel_tol,
                   quad.max_subdivisions, "sliding_rate: k integral");
  const double prefactor = config.rho1 * config.rho2 / (4.0 * M_PI * M_PI);
  result.energy_per_area = prefactor * rk.value;
  result.error_estimate = prefactor * rk.error_estimate;
  return result;
}

BandResult band_integrate(const Trajectory& traj, const PlateConfig& config,
                          const DrudeMetal& metal, const QuadratureSpec& quad,
                          TemperatureMode mode) {
  if ((mode == TemperatureMode::t0) != config.thermal.is_zero_temperature()) {
    throw DomainError("band_integrate: mode inconsistent with thermal state");
  }
  traj.require_closed();

  const auto segments = segmentize(traj);
  const auto groups = group_by_speed(segments);

  BandResult result;
  CompensatedSum total;
  for (const auto& g : groups) {
    const BandResult r = sliding_rate(g.speed, config, metal, quad, mode);
    total.add(g.duration * r.energy_per_area);
    result.error_estimate += g.duration * r.error_estimate;
    result.regime_ok = result.regime_ok && r.regime_ok;
  }
  result.energy_per_area = total.value();
  return result;
}

}  // namespace casfric
