#include "casfric/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "casfric/dissipation.hpp"
#include "casfric/friction.hpp"
#include "casfric/oracle.hpp"
#include "casfric/response.hpp"
#include "casfric/trajectory.hpp"

namespace casfric {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

// Random closed piecewise-linear loop: n random legs plus a closing leg.
Trajectory random_closed_loop(std::mt19937_64& rng, int n_legs,
                              double max_speed, double leg_duration) {
  std::uniform_real_distribution<double> uv(-max_speed, max_speed);
  std::uniform_real_distribution<double> ud(0.5 * leg_duration,
                                            1.5 * leg_duration);
  std::vector<TrajectoryNode> nodes{{0.0, 0.0, 0.0}};
  for (int i = 0; i < n_legs; ++i) {
    const double dt = ud(rng);
    const auto& p = nodes.back();
    nodes.push_back({p.t + dt, p.x + uv(rng) * dt, p.y + uv(rng) * dt});
  }
  nodes.push_back({nodes.back().t + ud(rng), 0.0, 0.0});
  return Trajectory(std::move(nodes));
}

VerifyCheck check_sinc_window(const VerifyOptions&) {
  const double X = 1e3;
  auto f = [](double x) {
    const double s = sinc(x);
    return s * s;
  };
  const double integral = oracle_integrate_oscillatory(f, -X, X, M_PI, 1e-9);
  const double err = std::abs(integral - M_PI);
  return {"sinc-window", err <= 2.0 / X, err, 2.0 / X,
          "window X=1e3, integral=" + fmt(integral)};
}

VerifyCheck check_qhat_segment(const VerifyOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  QuadratureSpec quad = opts.quad;
  quad.rel_tol = 1e-10;
  double worst = 0.0;
  for (int i = 0; i < opts.qhat_draws; ++i) {
    const double tau = 0.5 + 19.5 * u01(rng);
    const Segment seg(4.0 * (u01(rng) - 0.5), tau, 2.0 * (u01(rng) - 0.5),
                      2.0 * (u01(rng) - 0.5), 2.0 * (u01(rng) - 0.5),
                      2.0 * (u01(rng) - 0.5));
    const WaveVector wv(0.1 + 2.9 * u01(rng), 2.0 * M_PI * u01(rng));
    const double omega = (u01(rng) < 0.5 ? -1.0 : 1.0) * (0.2 + 4.8 * u01(rng));
    const auto analytic = delta_qhat(seg, omega, wv);
    const auto brute = qhat_brute_segment(seg, omega, wv, quad);
    worst = std::max(worst, std::abs(analytic - brute));
  }
  return {"qhat-segment", worst <= 1e-6, worst, 1e-6,
          std::to_string(opts.qhat_draws) + " draws"};
}

VerifyCheck check_qhat_loop(const VerifyOptions& opts) {
  std::mt19937_64 rng(opts.seed + 1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  QuadratureSpec quad = opts.quad;
  quad.rel_tol = 1e-10;
  double worst = 0.0;
  for (int i = 0; i < opts.loop_draws; ++i) {
    const Trajectory traj =
        random_closed_loop(rng, 2 + static_cast<int>(4 * u01(rng)), 1.5, 6.0);
    const WaveVector wv(0.1 + 1.9 * u01(rng), 2.0 * M_PI * u01(rng));
    const double omega = (u01(rng) < 0.5 ? -1.0 : 1.0) * (0.3 + 3.7 * u01(rng));
    const auto brute = qhat_brute(traj, omega, wv, quad);
    // exact tiling: legs are exactly linear, so one segment per leg
    std::complex<double> summed = 0.0;
    for (const Segment& s : segmentize(traj, 0.0)) {
      summed += delta_qhat(s, omega, wv);
    }
    worst = std::max(worst, std::abs(brute - summed));
  }
  return {"qhat-loop", worst <= 1e-6, worst, 1e-6,
          std::to_string(opts.loop_draws) + " random closed loops"};
}

VerifyCheck check_zint(const VerifyOptions&) {
  double worst = 0.0;
  for (const auto& [q, d] : {std::pair{1.0, 0.0}, {1.0, std::log(2.0) / 2.0},
                             {2.5, 0.7}}) {
    const double closed = halfspace_z_integral(q, d);
    // truncated half-spaces; the tail beyond L contributes < 1e-12
    const double L = 16.0 / q;
    auto inner = [&](double z1) {
      return oracle_integrate(
          [&](double z2) { return std::exp(-2.0 * q * (z1 - z2)); }, -L, 0.0,
          1e-12);
    };
    const double brute = oracle_integrate(inner, d, d + L, 1e-11);
    worst = std::max(worst, std::abs(closed - brute));
  }
  return {"zint", worst <= 1e-8, worst, 1e-8, "3 (q, d) pairs"};
}

VerifyCheck check_torque(const VerifyOptions&) {
  const DiscSpec disc(1.0, 1.0);
  const auto t0 =
      torque_numeric_adaptive(disc, FrictionLaw(FrictionKind::t0_cubic, 1.0),
                              1e-12);
  const auto ft = torque_numeric_adaptive(
      disc, FrictionLaw(FrictionKind::finite_t_linear, 1.0), 1e-12);
  const double e0 = std::abs(t0.value - torque_T0(disc, 1.0)) /
                    std::abs(torque_T0(disc, 1.0));
  const double ef = std::abs(ft.value - torque_finiteT(disc, 1.0)) /
                    std::abs(torque_finiteT(disc, 1.0));
  const double worst = std::max(e0, ef);
  return {"torque", worst <= 1e-9, worst, 1e-9, "both closed-form laws"};
}

VerifyCheck check_crossterm(const VerifyOptions& opts) {
  // out-and-back base loop, Doppler shift 1 on each leg. Residuals at a
  // given gap are averaged over a little jitter so a zero of the window's
  // Fourier transform cannot fake perfect decay (or mask it).
  const double T = 30.0;
  const Trajectory base(
      {{0.0, 0.0, 0.0}, {T, T, 0.0}, {2.0 * T, 0.0, 0.0}});
  const WaveVector wv(1.0, 0.0);
  double diagonal = 0.0;
  auto averaged = [&](double g) {
    double acc = 0.0;
    for (const double j : {0.9, 1.0, 1.1}) {
      const auto r = cross_term_residual(base, 2.0, 0.8, wv, g * j, opts.quad);
      acc += r.residual;
      diagonal = r.diagonal;
    }
    return acc / 3.0;
  };
  const double g = 8.0;
  const double r1 = averaged(g);
  const double r2 = averaged(2.0 * g);
  const bool pass = r2 < r1 && diagonal > 0.0;
  std::ostringstream det;
  det << "residual(g)=" << fmt(r1) << " residual(2g)=" << fmt(r2)
      << " residual(2g)/diagonal=" << fmt(r2 / diagonal);
  return {"crossterm", pass, r2, r1, det.str()};
}

VerifyCheck check_pairlevel(const VerifyOptions& opts) {
  // resonant out-and-back: k v = omega_minus
  const OscillatorPair pair(1.0, 1.0, 1.0, 2.0);
  const ThermalState state = ThermalState::inverse_temperature(2.0);
  const WaveVector wv(1.0, 0.0);
  const double leg = opts.pair_periods * 0.5 * (2.0 * M_PI);
  const Trajectory traj(
      {{0.0, 0.0, 0.0}, {leg, leg, 0.0}, {2.0 * leg, 0.0, 0.0}});
  const double brute = dissipation_brute(pair, traj, wv, 1.0, state);
  const double spectral = spectral_pair_prediction(pair, traj, wv, 1.0, state);
  const double rel = std::abs(brute - spectral) / std::abs(spectral);
  std::ostringstream det;
  det << opts.pair_periods << " response periods, brute=" << fmt(brute)
      << " spectral=" << fmt(spectral);
  return {"pairlevel", rel <= 0.05, rel, 0.05, det.str()};
}

}  // namespace

std::vector<VerifyCheck> run_verify_suite(const VerifyOptions& opts) {
  static const std::vector<std::string> all = {
      "sinc-window", "qhat-segment", "qhat-loop", "zint",
      "torque",      "crossterm",    "pairlevel"};

  std::vector<std::string> selected;
  if (opts.select == "default" || opts.select == "all") {
    selected = all;
  } else if (opts.select.empty() || opts.select == "none") {
    // no checks: vacuous success
  } else {
    std::istringstream is(opts.select);
    std::string name;
    while (std::getline(is, name, ',')) {
      if (name.empty()) continue;
      if (std::find(all.begin(), all.end(), name) == all.end()) {
        throw DomainError("verify: unknown check '" + name + "'");
      }
      selected.push_back(name);
    }
  }

  std::vector<VerifyCheck> results;
  for (const std::string& name : selected) {
    if (name == "sinc-window") results.push_back(check_sinc_window(opts));
    if (name == "qhat-segment") results.push_back(check_qhat_segment(opts));
    if (name == "qhat-loop") results.push_back(check_qhat_loop(opts));
    if (name == "zint") results.push_back(check_zint(opts));
    if (name == "torque") results.push_back(check_torque(opts));
    if (name == "crossterm") results.push_back(check_crossterm(opts));
    if (name == "pairlevel") results.push_back(check_pairlevel(opts));
  }
  return results;
}

}  // namespace casfric
