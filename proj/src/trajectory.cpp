#include "casfric/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "casfric/quadrature.hpp"

namespace casfric {

WaveVector::WaveVector(double k_, double phi_k_) : k(k_), phi_k(phi_k_) {
  if (!(k >= 0.0) || !std::isfinite(k) || !std::isfinite(phi_k)) {
    throw DomainError("wave vector: need finite k >= 0");
  }
}

Trajectory::Trajectory(std::vector<TrajectoryNode> nodes, double speed_scale)
    : nodes_(std::move(nodes)), speed_scale_(speed_scale) {
  if (nodes_.size() < 2) {
    throw DomainError("trajectory: need at least 2 nodes");
  }
  if (!(speed_scale_ > 0.0) || !std::isfinite(speed_scale_)) {
    throw DomainError("trajectory: speed scale must be positive");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (!std::isfinite(n.t) || !std::isfinite(n.x) || !std::isfinite(n.y)) {
      throw DomainError("trajectory: non-finite node");
    }
    if (i > 0 && !(n.t > nodes_[i - 1].t)) {
      throw DomainError("trajectory: node times must be strictly increasing");
    }
  }
}

std::array<double, 2> Trajectory::position(double t) const {
  if (t < t_start() || t > t_end()) {
    throw DomainError("trajectory: time outside span");
  }
  auto it = std::upper_bound(
      nodes_.begin(), nodes_.end(), t,
      [](double v, const TrajectoryNode& n) { return v < n.t; });
  if (it == nodes_.begin()) ++it;
  if (it == nodes_.end()) --it;
  const TrajectoryNode& b = *it;
  const TrajectoryNode& a = *(it - 1);
  const double u = (t - a.t) / (b.t - a.t);
  return {a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
}

double Trajectory::path_diameter() const {
  double xmin = nodes_[0].x, xmax = xmin, ymin = nodes_[0].y, ymax = ymin;
  for (const auto& n : nodes_) {
    xmin = std::min(xmin, n.x);
    xmax = std::max(xmax, n.x);
    ymin = std::min(ymin, n.y);
    ymax = std::max(ymax, n.y);
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

bool Trajectory::is_closed(double tol_factor) const {
  const auto& a = nodes_.front();
  const auto& b = nodes_.back();
  const double gap = std::hypot(b.x - a.x, b.y - a.y);
  return gap <= tol_factor * path_diameter();
}

void Trajectory::require_closed(double tol_factor) const {
  if (!is_closed(tol_factor)) {
    throw LoopViolationError("trajectory: loop does not return to its start");
  }
}

namespace {

// Unit token: `nat` or a positive numeric scale factor.
double parse_unit_token(const std::string& tok, int line) {
  if (tok == "nat") return 1.0;
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos == tok.size() && v > 0.0 && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("trajectory: bad unit token '" + tok + "'", line);
}

}  // namespace

Trajectory Trajectory::load(std::istream& in) {
  std::vector<TrajectoryNode> nodes;
  double t_scale = 1.0, l_scale = 1.0, v_scale = 1.0;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) {
      std::string comment = line.substr(h + 1);
      line = line.substr(0, h);
      // header:  units: time=<tok>, length=<tok>, v=<tok>
      if (auto u = comment.find("units:"); u != std::string::npos) {
        std::string spec = comment.substr(u + 6);
        std::replace(spec.begin(), spec.end(), ',', ' ');
        std::istringstream us(spec);
        std::string item;
        while (us >> item) {
          auto eq = item.find('=');
          if (eq == std::string::npos) {
            throw ParseError("trajectory: bad units item '" + item + "'",
                             line_no);
          }
          const std::string key = item.substr(0, eq);
          const double scale = parse_unit_token(item.substr(eq + 1), line_no);
          if (key == "time") {
            t_scale = scale;
          } else if (key == "length") {
            l_scale = scale;
          } else if (key == "v") {
            v_scale = scale;
          } else {
            throw ParseError("trajectory: unknown units key '" + key + "'",
                             line_no);
          }
        }
      }
    }
    std::istringstream ls(line);
    double t, x, y;
    if (!(ls >> t)) continue;  // blank or comment-only line
    if (!(ls >> x >> y)) {
      throw ParseError("trajectory: expected 't x y'", line_no);
    }
    std::string extra;
    if (ls >> extra) {
      throw ParseError("trajectory: trailing content '" + extra + "'",
                       line_no);
    }
    nodes.push_back({t * t_scale, x * l_scale, y * l_scale});
  }
  try {
    return Trajectory(std::move(nodes), v_scale);
  } catch (const DomainError& e) {
    throw ParseError(std::string("trajectory: ") + e.what(), line_no);
  }
}

Trajectory Trajectory::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("trajectory: cannot open '" + path + "'", 0);
  }
  return load(in);
}

void Trajectory::save(std::ostream& out) const {
  out << "# units: time=nat, length=nat, v=" << std::setprecision(17)
      << speed_scale_ << "\n";
  out << std::setprecision(17);
  for (const auto& n : nodes_) {
    out << n.t << " " << n.x << " " << n.y << "\n";
  }
}

Segment::Segment(double t0_, double tau_, double x0_, double y0_, double vx_,
                 double vy_)
    : t0(t0_), tau(tau_), x0(x0_), y0(y0_), vx(vx_), vy(vy_) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError("segment: half-length must be positive");
  }
  if (!std::isfinite(vx) || !std::isfinite(vy) || !std::isfinite(x0) ||
      !std::isfinite(y0) || !std::isfinite(t0)) {
    throw DomainError("segment: non-finite parameters");
  }
}

std::vector<Segment> segmentize(const Trajectory& traj,
                                double max_velocity_change) {
  const auto& nodes = traj.nodes();
  struct Leg {
    double t0, t1, vx, vy;
  };
  std::vector<Leg> legs;
  legs.reserve(nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double dt = nodes[i + 1].t - nodes[i].t;
    legs.push_back({nodes[i].t, nodes[i + 1].t,
                    (nodes[i + 1].x - nodes[i].x) / dt,
                    (nodes[i + 1].y - nodes[i].y) / dt});
  }

  std::vector<Segment> out;
  std::size_t run_begin = 0;
  const auto& start = nodes.front();
  auto flush = [&](std::size_t end) {  // [run_begin, end)
    const double ta = legs[run_begin].t0;
    const double tb = legs[end - 1].t1;
    const double t0 = 0.5 * (ta + tb);
    const auto p = traj.position(t0);
    const auto pa = traj.position(ta);
    const auto pb = traj.position(tb);
    // midpoint position as displacement from the start: q(t_s) = 0
    out.emplace_back(t0, 0.5 * (tb - ta), p[0] - start.x, p[1] - start.y,
                     (pb[0] - pa[0]) / (tb - ta), (pb[1] - pa[1]) / (tb - ta));
    run_begin = end;
  };
  for (std::size_t i = 1; i < legs.size(); ++i) {
    const Leg& ref = legs[run_begin];
    const double dv =
        std::hypot(legs[i].vx - ref.vx, legs[i].vy - ref.vy);
    const double vref = std::hypot(ref.vx, ref.vy);
    if (dv > max_velocity_change * vref) flush(i);
  }
  flush(legs.size());
  return out;
}

double doppler_shift(const Segment& seg, const WaveVector& wv) {
  return wv.kx() * seg.vx + wv.ky() * seg.vy;
}

double midpoint_phase(const Segment& seg, const WaveVector& wv) {
  return wv.kx() * seg.x0 + wv.ky() * seg.y0;
}

std::complex<double> q_factor(double t, const Trajectory& traj,
                              const WaveVector& wv) {
  // displacement from the starting position: q(t_s) = 0
  const auto p = traj.position(t);
  const auto& start = traj.nodes().front();
  const double a =
      wv.kx() * (p[0] - start.x) + wv.ky() * (p[1] - start.y);
  // exp(-i a) - 1 without cancellation in the real part
  const double s = std::sin(0.5 * a);
  return {-2.0 * s * s, -std::sin(a)};
}

MatchedInterval matched_interval(const Segment& seg, double omega,
                                 const WaveVector& wv) {
  if (omega == 0.0) {
    throw DegenerateMatchingError("matched_interval: omega = 0");
  }
  const double w = doppler_shift(seg, wv);
  return {seg.t0 - midpoint_phase(seg, wv) / omega,
          (omega - w) * seg.tau / omega};
}

std::complex<double> delta_qhat(const Segment& seg, double omega,
                                const WaveVector& wv) {
  if (omega == 0.0) {
    throw DegenerateMatchingError("delta_qhat: omega = 0");
  }
  const double w = doppler_shift(seg, wv);
  const double t0p = seg.t0 - midpoint_phase(seg, wv) / omega;
  const double mag = 2.0 * w * seg.tau * sinc((omega - w) * seg.tau) / omega;
  return std::polar(mag, -omega * t0p);
}

double delta_I(const Segment& seg, double omega, const WaveVector& wv) {
  if (omega == 0.0) {
    throw DegenerateMatchingError("delta_I: omega = 0");
  }
  const double w = doppler_shift(seg, wv);
  const double sm = sinc((omega - w) * seg.tau);
  const double sp = sinc((omega + w) * seg.tau);
  return (w * w / omega) * seg.tau * seg.tau * (sm * sm + sp * sp);
}

std::array<DeltaTerm, 2> delta_I_limit(const Segment& seg,
                                       const WaveVector& wv) {
  const double w = doppler_shift(seg, wv);
  const double amp = M_PI * seg.tau * w * w;
  return {DeltaTerm{amp, w}, DeltaTerm{amp, -w}};
}

double spectral_I(double omega, std::span<const Segment> segments,
                  const WaveVector& wv) {
  if (omega == 0.0) {
    throw DegenerateMatchingError("spectral_I: omega = 0");
  }
  CompensatedSum sum;
  for (const Segment& s : segments) sum.add(delta_I(s, omega, wv));
  return sum.value();
}

double spectral_I(double omega, const Trajectory& traj, const WaveVector& wv,
                  double max_velocity_change) {
  traj.require_closed();
  const auto segs = segmentize(traj, max_velocity_change);
  return spectral_I(omega, std::span<const Segment>(segs), wv);
}

std::vector<DeltaTerm> spectral_I_delta(std::span<const Segment> segments,
                                        const WaveVector& wv) {
  std::vector<DeltaTerm> terms;
  terms.reserve(2 * segments.size());
  for (const Segment& s : segments) {
    const auto pair = delta_I_limit(s, wv);
    if (pair[0].amplitude != 0.0) {
      terms.push_back(pair[0]);
      terms.push_back(pair[1]);
    }
  }
  return terms;
}

std::vector<DeltaTerm> spectral_I_delta(const Trajectory& traj,
                                        const WaveVector& wv,
                                        double max_velocity_change) {
  traj.require_closed();
  const auto segs = segmentize(traj, max_velocity_change);
  return spectral_I_delta(std::span<const Segment>(segs), wv);
}

}  // namespace casfric
