#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

#include "casfric/errors.hpp"

namespace casfric {

/// Tolerances and truncation knobs governing the numeric integrals of the
/// main pipeline.
struct QuadratureSpec {
  double rel_tol = 1e-8;       // target relative tolerance per integral
  double k_max_factor = 40.0;  // wave-number cutoff as a multiple of 1/gap
  double m_max = 0.0;          // spectral validity cutoff; 0 = 0.1 * omega_p
  int max_subdivisions = 15;   // adaptive bisection depth
};

/// sin(x)/x with a series branch near zero so the resonant limit is exact.
inline double sinc(double x) {
  if (std::abs(x) < 1e-6) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

/// Neumaier-compensated accumulator. Keeps segment sums independent of
/// accumulation order beyond a single rounding.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod integration on [a, b]. Throws AccuracyError when the
/// error estimate does not reach rel_tol within max_depth subdivisions.
IntegralResult integrate_gk(const std::function<double(double)>& f, double a,
                            double b, double rel_tol, int max_depth,
                            const char* label = "integral");

/// Same, but returns whatever was achieved instead of throwing.
IntegralResult integrate_gk_lenient(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol,
                                    int max_depth);

}  // namespace casfric
