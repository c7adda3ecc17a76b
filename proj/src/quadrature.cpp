#include "casfric/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace casfric {

namespace {

IntegralResult run_gk(const std::function<double(double)>& f, double a,
                      double b, double rel_tol, int max_depth) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  const double v =
      gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, rel_tol, &err);
  return {v, err};
}

}  // namespace

IntegralResult integrate_gk(const std::function<double(double)>& f, double a,
                            double b, double rel_tol, int max_depth,
                            const char* label) {
  IntegralResult r = run_gk(f, a, b, rel_tol, max_depth);
  const double bound = rel_tol * std::max(std::abs(r.value), 1e-300);
  // The Kronrod error estimate is conservative; accept within a small margin.
  if (r.error_estimate > 50.0 * bound && r.error_estimate > 1e-14) {
    throw AccuracyError(std::string(label) + ": quadrature did not converge",
                        r.value, r.error_estimate);
  }
  return r;
}

IntegralResult integrate_gk_lenient(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol,
                                    int max_depth) {
  return run_gk(f, a, b, rel_tol, max_depth);
}

}  // namespace casfric
