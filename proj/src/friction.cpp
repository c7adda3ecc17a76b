#include "casfric/friction.hpp"

#include <cmath>

namespace casfric {

DiscSpec::DiscSpec(double radius_, double omega_cap_)
    : radius(radius_), omega_cap(omega_cap_) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(omega_cap)) {
    throw DomainError("disc: radius must be positive");
  }
}

FrictionLaw::FrictionLaw(FrictionKind kind_, double coefficient_)
    : kind(kind_), coefficient(coefficient_) {
  if (coefficient < 0.0 || !std::isfinite(coefficient)) {
    throw DomainError("friction law: coefficient must be nonnegative");
  }
}

double FrictionLaw::force(double v) const {
  return kind == FrictionKind::t0_cubic ? -coefficient * v * v * v
                                        : -coefficient * v;
}

double coefficient_T0_from_D(double D, double rho1, double rho2, double gap) {
  if (!(gap > 0.0)) throw DomainError("coefficient_T0: gap must be positive");
  const double d6 = std::pow(gap, 6);
  return 15.0 * M_PI * M_PI / (64.0 * d6) * rho1 * rho2 * D * D;
}

double coefficient_T0(const DrudeMetal& metal, const PlateConfig& config) {
  return coefficient_T0_from_D(metal.dissipation_constant(), config.rho1,
                               config.rho2, config.gap);
}

double coefficient_finiteT_from_D(double D, double rho1, double rho2,
                                  double gap, double beta) {
  if (!(gap > 0.0)) {
    throw DomainError("coefficient_finiteT: gap must be positive");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("coefficient_finiteT: need finite temperature");
  }
  const double pi4 = M_PI * M_PI * M_PI * M_PI;
  const double d4 = std::pow(gap, 4);
  return pi4 / (4.0 * beta * beta * d4) * rho1 * rho2 * D * D;
}

FiniteTCoefficient coefficient_finiteT(const DrudeMetal& metal,
                                       const PlateConfig& config,
                                       double v_max) {
  if (config.thermal.is_zero_temperature()) {
    throw DomainError("coefficient_finiteT: thermal state is T = 0");
  }
  const double beta = config.thermal.beta();
  const double c = coefficient_finiteT_from_D(
      metal.dissipation_constant(), config.rho1, config.rho2, config.gap, beta);
  // The linear law assumes d/(beta v) >> 1 across the velocity range.
  const bool ok = v_max <= 0.0 || config.gap / (beta * v_max) > 1.0;
  return {c, ok};
}

double torque_T0(const DiscSpec& disc, double c_p) {
  const double r6 = std::pow(disc.radius, 6);
  const double w3 = disc.omega_cap * disc.omega_cap * disc.omega_cap;
  return -(M_PI / 3.0) * c_p * r6 * w3;
}

double torque_finiteT(const DiscSpec& disc, double c) {
  const double r4 = std::pow(disc.radius, 4);
  return -(M_PI / 2.0) * c * r4 * disc.omega_cap;
}

double torque_numeric(const DiscSpec& disc,
                      const std::function<double(double)>& force_of_v,
                      int n_annuli) {
  if (n_annuli < 1) throw DomainError("torque_numeric: need n_annuli >= 1");
  const double h = disc.radius / n_annuli;
  const double node = 0.5 / std::sqrt(3.0);  // two-point Gauss offsets
  CompensatedSum sum;
  for (int i = 0; i < n_annuli; ++i) {
    const double rc = (i + 0.5) * h;
    for (const double r : {rc - node * h, rc + node * h}) {
      sum.add(0.5 * h * 2.0 * M_PI * r * r * force_of_v(disc.omega_cap * r));
    }
  }
  return sum.value();
}

double torque_numeric(const DiscSpec& disc, const FrictionLaw& law,
                      int n_annuli) {
  return torque_numeric(
      disc, [&law](double v) { return law.force(v); }, n_annuli);
}

TorqueResult torque_numeric_adaptive(
    const DiscSpec& disc, const std::function<double(double)>& force_of_v,
    double rel_tol, int max_annuli) {
  int n = 1;
  double prev = torque_numeric(disc, force_of_v, n);
  while (2 * n <= max_annuli) {
    n *= 2;
    const double cur = torque_numeric(disc, force_of_v, n);
    const double err = std::abs(cur - prev);
    if (err <= rel_tol * std::max(std::abs(cur), 1e-300)) {
      return {cur, err, n};
    }
    prev = cur;
  }
  throw AccuracyError("torque_numeric: annulus budget exhausted", prev,
                      std::abs(prev));
}

TorqueResult torque_numeric_adaptive(const DiscSpec& disc,
                                     const FrictionLaw& law, double rel_tol,
                                     int max_annuli) {
  return torque_numeric_adaptive(
      disc, [&law](double v) { return law.force(v); }, rel_tol, max_annuli);
}

}  // namespace casfric
