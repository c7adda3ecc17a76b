#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "casfric/errors.hpp"

namespace casfric {

/// In-plane wave vector in polar form.
struct WaveVector {
  double k;      // magnitude, >= 0
  double phi_k;  // polar angle

  WaveVector(double k, double phi_k);

  double kx() const { return k * std::cos(phi_k); }
  double ky() const { return k * std::sin(phi_k); }
};

struct TrajectoryNode {
  double t;
  double x;
  double y;
};

/// Piecewise-linear horizontal path (x(t), y(t)) = (v q_x(t), v q_y(t)).
/// Node times must be strictly increasing. Closure (return to the starting
/// position) is demanded by the spectral operations, not by construction, so
/// open paths can still be built and probed.
class Trajectory {
 public:
  explicit Trajectory(std::vector<TrajectoryNode> nodes,
                      double speed_scale = 1.0);

  const std::vector<TrajectoryNode>& nodes() const { return nodes_; }
  double speed_scale() const { return speed_scale_; }
  double t_start() const { return nodes_.front().t; }
  double t_end() const { return nodes_.back().t; }

  /// Position at time t by linear interpolation; t outside the span is a
  /// domain error.
  std::array<double, 2> position(double t) const;

  /// Bounding-box diagonal of the node set.
  double path_diameter() const;

  /// Start and end positions agree within tol_factor * path_diameter.
  bool is_closed(double tol_factor = 1e-12) const;
  void require_closed(double tol_factor = 1e-12) const;

  /// Plain-text table, one "t x y" per line, '#' comments. A header line
  ///   # units: time=<tok>, length=<tok>, v=<tok>
  /// declares column units; tokens are either `nat` or a numeric scale
  /// applied on read (the `v` token sets the speed scale).
  static Trajectory load(std::istream& in);
  static Trajectory load_file(const std::string& path);
  void save(std::ostream& out) const;

 private:
  std::vector<TrajectoryNode> nodes_;
  double speed_scale_;
};

/// One interval of approximately constant velocity: [t0 - tau, t0 + tau],
/// position (x0, y0) at the midpoint, velocity (vx, vy) = v (qdot_x, qdot_y).
struct Segment {
  double t0;
  double tau;
  double x0;
  double y0;
  double vx;
  double vy;

  Segment(double t0, double tau, double x0, double y0, double vx, double vy);

  double speed() const { return std::hypot(vx, vy); }
  double velocity_angle() const { return std::atan2(vy, vx); }
};

/// Covers [t_start, t_end] exactly once with maximal runs of legs whose
/// velocity stays within max_velocity_change (relative) of the run's first
/// leg. Every velocity discontinuity starts a new segment. Segment midpoint
/// positions are displacements from the trajectory's starting point, the
/// reference where q(t_s) = 0.
std::vector<Segment> segmentize(const Trajectory& traj,
                                double max_velocity_change = 0.01);

/// Doppler shift omega_v qdot = k . velocity of a segment.
double doppler_shift(const Segment& seg, const WaveVector& wv);

/// Motion phase k_x x(t) + k_y y(t) at the segment midpoint.
double midpoint_phase(const Segment& seg, const WaveVector& wv);

/// Trajectory phase factor Q(t, omega_v) = exp(-i (k_x x(t) + k_y y(t))) - 1,
/// with x, y the displacements from the starting position (q(t_s) = 0).
std::complex<double> q_factor(double t, const Trajectory& traj,
                              const WaveVector& wv);

/// Matched companion interval of a segment: the second term of the spectral
/// integral runs over [t0' - tau', t0' + tau'] with
///   omega tau' = (omega - k.v) tau,   omega t0' = omega t0 - phase(t0).
struct MatchedInterval {
  double t0_prime;
  double tau_prime;
};
MatchedInterval matched_interval(const Segment& seg, double omega,
                                 const WaveVector& wv);

/// Per-segment spectral contribution
///   dQhat = 2 exp(-i omega t0') w sin((omega - w) tau) / (omega (omega - w)),
/// with w = k.v, evaluated through its analytic limit at omega -> w.
std::complex<double> delta_qhat(const Segment& seg, double omega,
                                const WaveVector& wv);

/// Finite-tau spectral weight of one segment,
///   dI = (w^2/omega) sum_{n=+-1} [sin((omega - n w) tau)/(omega - n w)]^2.
double delta_I(const Segment& seg, double omega, const WaveVector& wv);

/// One delta-function term of the large-tau limit. Represents the
/// distribution  I(omega) += amplitude / omega * delta(omega - center)
/// with amplitude = pi tau w^2 and centers at +-w. The 1/omega factor stays
/// symbolic until a downstream integration sits on the shell.
struct DeltaTerm {
  double amplitude;
  double center;
};
std::array<DeltaTerm, 2> delta_I_limit(const Segment& seg,
                                       const WaveVector& wv);

/// Finite-tau I(omega): per-segment weights summed over a segmentation of the
/// closed loop, cross-terms between segments dropped.
double spectral_I(double omega, const Trajectory& traj, const WaveVector& wv,
                  double max_velocity_change = 0.01);
double spectral_I(double omega, std::span<const Segment> segments,
                  const WaveVector& wv);

/// Large-tau limit of the same sum: the list of delta terms for downstream
/// delta integration.
std::vector<DeltaTerm> spectral_I_delta(const Trajectory& traj,
                                        const WaveVector& wv,
                                        double max_velocity_change = 0.01);
std::vector<DeltaTerm> spectral_I_delta(std::span<const Segment> segments,
                                        const WaveVector& wv);

}  // namespace casfric
