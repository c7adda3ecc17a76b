#include "casfric/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace casfric {

namespace {

// ---------------------------------------------------------------------------
// Oracle quadrature kit: Gauss-Legendre rules (computed once by Newton
// iteration on the Legendre roots) and adaptive Simpson.

struct GLRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

GLRule make_gl(int n) {
  GLRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p1 = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double pa = 1.0, pb = x;
      for (int k = 2; k <= n; ++k) {
        const double pc = ((2 * k - 1) * x * pb - (k - 1) * pa) / k;
        pa = pb;
        pb = pc;
      }
      p1 = pb;
      dp = n * (x * pb - pa) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        pa = 1.0;
        pb = x;
        for (int k = 2; k <= n; ++k) {
          const double pc = ((2 * k - 1) * x * pb - (k - 1) * pa) / k;
          pa = pb;
          pb = pc;
        }
        dp = n * (x * pb - pa) / (x * x - 1.0);
        break;
      }
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  // ascending node order; the moment sweep relies on it
  std::vector<std::size_t> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return r.x[a] < r.x[b]; });
  GLRule sorted;
  sorted.x.resize(n);
  sorted.w.resize(n);
  for (int i = 0; i < n; ++i) {
    sorted.x[i] = r.x[idx[i]];
    sorted.w[i] = r.w[idx[i]];
  }
  return sorted;
}

const GLRule& gl6() {
  static const GLRule r = make_gl(6);
  return r;
}
const GLRule& gl12() {
  static const GLRule r = make_gl(12);
  return r;
}

template <typename F>
std::complex<double> simpson_step(F& f, double a, double b,
                                  std::complex<double> fa,
                                  std::complex<double> fm,
                                  std::complex<double> fb,
                                  std::complex<double> whole, double tol,
                                  int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const std::complex<double> flm = f(lm);
  const std::complex<double> frm = f(rm);
  const std::complex<double> left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const std::complex<double> right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const std::complex<double> delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
std::complex<double> adaptive_simpson(F f, double a, double b, double abs_tol,
                                      int max_depth = 40) {
  if (a == b) return 0.0;
  const std::complex<double> fa = f(a);
  const std::complex<double> fb = f(b);
  const std::complex<double> fm = f(0.5 * (a + b));
  const std::complex<double> whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

template <typename F>
double adaptive_simpson_real(F f, double a, double b, double abs_tol,
                             int max_depth = 40) {
  auto g = [&f](double x) { return std::complex<double>(f(x), 0.0); };
  return adaptive_simpson(g, a, b, abs_tol, max_depth).real();
}

// ---------------------------------------------------------------------------
// Piecewise-linear motion phase a(t) = k_x x(t) + k_y y(t) over a trajectory.

struct PhasePath {
  std::vector<double> t;     // node times
  std::vector<double> a;     // phase at node times
  std::vector<double> rate;  // per-leg d a / dt

  std::size_t leg_of(double tt) const {
    const auto it = std::upper_bound(t.begin(), t.end(), tt);
    const std::size_t i = it - t.begin();
    return std::min(std::max<std::size_t>(i, 1) - 1, rate.size() - 1);
  }
  double eval(double tt) const {
    const std::size_t l = leg_of(tt);
    return a[l] + rate[l] * (tt - t[l]);
  }
  double rate_at(double tt) const { return rate[leg_of(tt)]; }
  double max_rate() const {
    double m = 0.0;
    for (double r : rate) m = std::max(m, std::abs(r));
    return m;
  }
};

PhasePath make_phase(const Trajectory& traj, const WaveVector& wv) {
  PhasePath p;
  const auto& nodes = traj.nodes();
  p.t.reserve(nodes.size());
  p.a.reserve(nodes.size());
  p.rate.reserve(nodes.size() - 1);
  for (const auto& n : nodes) {
    p.t.push_back(n.t);
    // displacement phase, zero at the loop start
    p.a.push_back(wv.kx() * (n.x - nodes.front().x) +
                  wv.ky() * (n.y - nodes.front().y));
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    p.rate.push_back((p.a[i + 1] - p.a[i]) / (p.t[i + 1] - p.t[i]));
  }
  return p;
}

// Adaptive quadrature with panels capped at half the fastest oscillation
// period, so the dyadic sampling cannot alias the integrand.
template <typename F>
std::complex<double> adaptive_simpson_osc(F f, double a, double b,
                                          double rate_max, double abs_tol) {
  const double period = 2.0 * M_PI / std::max(rate_max, 1e-12);
  const int n = std::max(
      1, static_cast<int>(std::ceil((b - a) / (0.5 * period))));
  const double h = (b - a) / n;
  const double tol = abs_tol / n;
  std::complex<double> acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += adaptive_simpson(f, a + i * h, a + (i + 1) * h, tol);
  }
  return acc;
}

}  // namespace

std::complex<double> qhat_brute(const Trajectory& traj, double omega,
                                const WaveVector& wv,
                                const QuadratureSpec& quad) {
  if (omega == 0.0) throw DegenerateMatchingError("qhat_brute: omega = 0");
  traj.require_closed();
  const PhasePath ap = make_phase(traj, wv);
  std::complex<double> total = 0.0;
  const double tol = quad.rel_tol / static_cast<double>(ap.rate.size());
  for (std::size_t l = 0; l < ap.rate.size(); ++l) {
    const double a0 = ap.a[l];
    const double r = ap.rate[l];
    const double t0 = ap.t[l];
    auto f = [&](double tt) {
      const double a = a0 + r * (tt - t0);
      // (exp(i a) - 1) exp(-i omega t)
      const std::complex<double> q(std::cos(a) - 1.0, std::sin(a));
      return q * std::polar(1.0, -omega * tt);
    };
    total += adaptive_simpson_osc(f, ap.t[l], ap.t[l + 1],
                                  std::abs(omega) + std::abs(r), tol);
  }
  return total;
}

std::complex<double> qhat_brute_segment(const Segment& seg, double omega,
                                        const WaveVector& wv,
                                        const QuadratureSpec& quad) {
  if (omega == 0.0) {
    throw DegenerateMatchingError("qhat_brute_segment: omega = 0");
  }
  const double w = doppler_shift(seg, wv);
  const double a0 = midpoint_phase(seg, wv);
  const double tol = quad.rel_tol;

  // first term of the integral over the segment window
  auto f2 = [&](double tt) {
    const double a = a0 + w * (tt - seg.t0);
    return std::polar(1.0, a - omega * tt);
  };
  const std::complex<double> s2 =
      adaptive_simpson_osc(f2, seg.t0 - seg.tau, seg.t0 + seg.tau,
                           std::abs(omega - w), tol);

  // second term over the matched companion window
  const MatchedInterval m = matched_interval(seg, omega, wv);
  auto f1 = [&](double tt) { return std::polar(1.0, -omega * tt); };
  const double lo = m.t0_prime - m.tau_prime;
  const double hi = m.t0_prime + m.tau_prime;
  std::complex<double> s1;
  if (hi >= lo) {
    s1 = adaptive_simpson_osc(f1, lo, hi, std::abs(omega), tol);
  } else {
    s1 = -adaptive_simpson_osc(f1, hi, lo, std::abs(omega), tol);
  }
  return s2 - s1;
}

namespace {

struct Channel {
  double omega;
  double weight;
};

std::vector<Channel> response_channels(const OscillatorPair& pair,
                                       const ThermalState& state) {
  const ResponseCoefficients c = coefficients(pair, state);
  std::vector<Channel> ch;
  if (c.c_minus != 0.0 && pair.omega_minus() != 0.0) {
    ch.push_back({pair.omega_minus(), c.c_minus});
  }
  if (c.c_plus != 0.0) {
    ch.push_back({pair.omega_plus(), c.c_plus});
  }
  return ch;
}

// One swept evaluation of the double-time integral at a fixed panel size.
// The inner t' integral is carried as four cumulative moments per response
// channel (cos/sin of the phase against cos/sin of omega t'), updated
// incrementally between consecutive outer nodes; the trigonometric
// product-to-sum expansion makes the inner dependence separable, so no
// approximation is introduced beyond panel quadrature.
double brute_sweep(const PhasePath& ap, const std::vector<Channel>& channels,
                   double panel_len) {
  struct Moments {
    CompensatedSum cc, cs, sc, ss;
  };
  std::vector<Moments> mom(channels.size());
  std::vector<CompensatedSum> outer(channels.size());
  const GLRule& rule = gl12();
  const GLRule& gap_rule = gl6();

  double sweep_pos = ap.t.front();
  // advance cumulative moments over [sweep_pos, target], splitting at leg
  // boundaries
  auto advance = [&](double target) {
    while (sweep_pos < target) {
      const std::size_t leg = ap.leg_of(sweep_pos);
      const double stop = std::min(target, ap.t[leg + 1]);
      const double mid = 0.5 * (sweep_pos + stop);
      const double half = 0.5 * (stop - sweep_pos);
      if (half > 0.0) {
        for (std::size_t g = 0; g < gap_rule.x.size(); ++g) {
          const double tp = mid + half * gap_rule.x[g];
          const double wgt = half * gap_rule.w[g];
          const double a = ap.a[leg] + ap.rate[leg] * (tp - ap.t[leg]);
          const double ca = std::cos(a), sa = std::sin(a);
          for (std::size_t c = 0; c < channels.size(); ++c) {
            const double co = std::cos(channels[c].omega * tp);
            const double so = std::sin(channels[c].omega * tp);
            mom[c].cc.add(wgt * ca * co);
            mom[c].cs.add(wgt * ca * so);
            mom[c].sc.add(wgt * sa * co);
            mom[c].ss.add(wgt * sa * so);
          }
        }
      }
      if (stop >= target) {
        sweep_pos = target;
      } else {
        sweep_pos = ap.t[leg + 1];
      }
    }
  };

  for (std::size_t leg = 0; leg < ap.rate.size(); ++leg) {
    const double t_lo = ap.t[leg];
    const double t_hi = ap.t[leg + 1];
    const int n_panels =
        std::max(1, static_cast<int>(std::ceil((t_hi - t_lo) / panel_len)));
    const double h = (t_hi - t_lo) / n_panels;
    const double adot = ap.rate[leg];
    for (int p = 0; p < n_panels; ++p) {
      const double mid = t_lo + (p + 0.5) * h;
      for (std::size_t g = 0; g < rule.x.size(); ++g) {
        const double t = mid + 0.5 * h * rule.x[g];
        const double wgt = 0.5 * h * rule.w[g];
        advance(t);
        const double a = ap.a[leg] + adot * (t - t_lo);
        const double ca = std::cos(a), sa = std::sin(a);
        for (std::size_t c = 0; c < channels.size(); ++c) {
          const double co = std::cos(channels[c].omega * t);
          const double so = std::sin(channels[c].omega * t);
          // sin(a - a') sin(omega (t - t')) expanded; inner factors are the
          // cumulative moments
          const double inner = sa * (so * mom[c].cc.value() -
                                     co * mom[c].cs.value()) +
                               ca * (co * mom[c].ss.value() -
                                     so * mom[c].sc.value());
          outer[c].add(wgt * adot * inner);
        }
      }
    }
  }

  double total = 0.0;
  for (std::size_t c = 0; c < channels.size(); ++c) {
    total += channels[c].weight * outer[c].value();
  }
  return total;
}

}  // namespace

double dissipation_brute(const OscillatorPair& pair, const Trajectory& traj,
                         const WaveVector& wv, double coupling_gradient,
                         const ThermalState& state, int panels_per_period) {
  traj.require_closed();
  const auto channels = response_channels(pair, state);
  if (channels.empty()) return 0.0;
  const PhasePath ap = make_phase(traj, wv);
  double rate_max = ap.max_rate();
  for (const auto& c : channels) rate_max = std::max(rate_max, c.omega);
  if (rate_max == 0.0) return 0.0;
  const double panel = 2.0 * M_PI / rate_max / panels_per_period;

  const double coarse = brute_sweep(ap, channels, panel);
  const double fine = brute_sweep(ap, channels, 0.5 * panel);
  const double err = std::abs(fine - coarse);
  if (err > 0.01 * std::max(std::abs(fine), 1e-12)) {
    throw AccuracyError("dissipation_brute: panel refinement disagrees", fine,
                        err);
  }
  const double c2 = coupling_gradient * coupling_gradient;
  return 0.5 * c2 * fine;
}

double dissipation_brute_direct(const OscillatorPair& pair,
                                const Trajectory& traj, const WaveVector& wv,
                                double coupling_gradient,
                                const ThermalState& state,
                                int panels_per_period) {
  traj.require_closed();
  const auto channels = response_channels(pair, state);
  if (channels.empty()) return 0.0;
  const PhasePath ap = make_phase(traj, wv);
  double rate_max = ap.max_rate();
  for (const auto& c : channels) rate_max = std::max(rate_max, c.omega);
  if (rate_max == 0.0) return 0.0;
  const double panel = 2.0 * M_PI / rate_max / panels_per_period;
  const GLRule& rule = gl12();

  auto phi_val = [&](double s) {
    double v = 0.0;
    for (const auto& c : channels) v += c.weight * std::sin(c.omega * s);
    return v;
  };

  // composite nodes over [lo, hi] split at leg boundaries
  auto composite = [&](double lo, double hi, auto&& fn) {
    CompensatedSum acc;
    for (std::size_t leg = 0; leg < ap.rate.size(); ++leg) {
      const double a = std::max(lo, ap.t[leg]);
      const double b = std::min(hi, ap.t[leg + 1]);
      if (b <= a) continue;
      const int n = std::max(1, static_cast<int>(std::ceil((b - a) / panel)));
      const double h = (b - a) / n;
      for (int p = 0; p < n; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (std::size_t g = 0; g < rule.x.size(); ++g) {
          acc.add(0.5 * h * rule.w[g] * fn(mid + 0.5 * h * rule.x[g]));
        }
      }
    }
    return acc.value();
  };

  auto outer_fn = [&](double t) {
    const double a_t = ap.eval(t);
    const double adot = ap.rate_at(t);
    if (adot == 0.0) return 0.0;
    auto inner_fn = [&](double tp) {
      return std::sin(a_t - ap.eval(tp)) * phi_val(t - tp);
    };
    return adot * composite(ap.t.front(), t, inner_fn);
  };
  const double val = composite(ap.t.front(), ap.t.back(), outer_fn);
  const double c2 = coupling_gradient * coupling_gradient;
  return 0.5 * c2 * val;
}

double spectral_pair_prediction(const OscillatorPair& pair,
                                const Trajectory& traj, const WaveVector& wv,
                                double coupling_gradient,
                                const ThermalState& state,
                                double max_velocity_change) {
  const auto channels = response_channels(pair, state);
  double total = 0.0;
  for (const auto& c : channels) {
    total += c.weight * spectral_I(c.omega, traj, wv, max_velocity_change);
  }
  const double c2 = coupling_gradient * coupling_gradient;
  return 0.5 * c2 * total;
}

double oracle_integrate(const std::function<double(double)>& f, double a,
                        double b, double abs_tol) {
  return adaptive_simpson_real(f, a, b, abs_tol);
}

double oracle_integrate_oscillatory(const std::function<double(double)>& f,
                                    double a, double b, double period,
                                    double abs_tol) {
  if (!(period > 0.0)) {
    throw DomainError("oracle_integrate_oscillatory: period must be positive");
  }
  const int n = std::max(1, static_cast<int>(std::ceil((b - a) / period)));
  const double h = (b - a) / n;
  const double tol = abs_tol / n;
  CompensatedSum acc;
  for (int i = 0; i < n; ++i) {
    acc.add(adaptive_simpson_real(f, a + i * h, a + (i + 1) * h, tol, 20));
  }
  return acc.value();
}

CrossTermResidual cross_term_residual(const Trajectory& two_leg_loop,
                                      double omega_center,
                                      double omega_half_width,
                                      const WaveVector& wv, double separation,
                                      const QuadratureSpec& quad) {
  if (two_leg_loop.nodes().size() != 3) {
    throw DomainError("cross_term_residual: expect a two-leg trajectory");
  }
  if (separation < 0.0) {
    throw DomainError("cross_term_residual: separation must be nonnegative");
  }
  if (!(omega_center - omega_half_width > 0.0)) {
    throw DomainError("cross_term_residual: window must stay above omega = 0");
  }

  const auto& n = two_leg_loop.nodes();
  std::vector<TrajectoryNode> nodes;
  nodes.push_back(n[0]);
  nodes.push_back(n[1]);
  if (separation > 0.0) {
    nodes.push_back({n[1].t + separation, n[1].x, n[1].y});
  }
  nodes.push_back({n[2].t + separation, n[2].x, n[2].y});
  const Trajectory gapped(nodes, two_leg_loop.speed_scale());
  const auto segments = segmentize(gapped);

  // The full two-term integral: a single window over the closed loop, or the
  // exact matched tiling per segment when the path does not close (the two
  // coincide for closed loops).
  const bool closed = gapped.is_closed();
  auto full_sq = [&](double om) {
    if (closed) return std::norm(qhat_brute(gapped, om, wv, quad));
    std::complex<double> total = 0.0;
    for (const Segment& seg : segments) {
      total += qhat_brute_segment(seg, om, wv, quad);
    }
    return std::norm(total);
  };

  auto window = [&](double om) {
    const double u = (om - omega_center) / omega_half_width;
    const double c = std::cos(0.5 * M_PI * u);
    return c * c;
  };
  auto diag_fn = [&](double om) {
    double s = 0.0;
    for (const Segment& seg : segments) {
      s += std::norm(delta_qhat(seg, om, wv));
    }
    return window(om) * s;
  };
  const double lo = omega_center - omega_half_width;
  const double hi = omega_center + omega_half_width;
  const double probe = std::max(diag_fn(omega_center), 1e-30);
  const double tol = 1e-7 * probe * omega_half_width;

  // cross terms oscillate in omega on the scale of the total span; split the
  // window accordingly so the quadrature cannot alias them
  const double span = gapped.t_end() - gapped.t_start();
  const double period = M_PI / std::max(span, 1.0);

  const double diagonal =
      oracle_integrate_oscillatory(diag_fn, lo, hi, period, tol);
  auto diff_fn = [&](double om) {
    double s = 0.0;
    for (const Segment& seg : segments) {
      s += std::norm(delta_qhat(seg, om, wv));
    }
    return window(om) * (full_sq(om) - s);
  };
  const double residual =
      oracle_integrate_oscillatory(diff_fn, lo, hi, period, tol);
  return {std::abs(residual), diagonal};
}

}  // namespace casfric
