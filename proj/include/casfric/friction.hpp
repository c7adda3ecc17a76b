#pragma once

#include <functional>

#include "casfric/dissipation.hpp"
#include "casfric/response.hpp"

namespace casfric {

/// Rotating upper disc: radius and angular velocity about the vertical axis.
struct DiscSpec {
  double radius;
  double omega_cap;

  DiscSpec(double radius, double omega_cap);
};

enum class FrictionKind { t0_cubic, finite_t_linear };

/// Closed-form per-area friction law F(v) = -coefficient * v^p with p = 3
/// (T = 0) or p = 1 (finite T).
struct FrictionLaw {
  FrictionKind kind;
  double coefficient;

  FrictionLaw(FrictionKind kind, double coefficient);
  double force(double v) const;
};

/// T = 0 friction coefficient C_P = 15 pi^2 / (64 d^6) rho^2 D^2, with D
/// supplied directly (natural units, rho^2 = rho1 rho2).
double coefficient_T0_from_D(double D, double rho1, double rho2, double gap);
double coefficient_T0(const DrudeMetal& metal, const PlateConfig& config);

struct FiniteTCoefficient {
  double value;
  bool regime_ok;  // false when d/(beta v) <= 1 somewhere in the v range
};

/// Finite-T friction coefficient C = pi^4 / (4 beta^2 d^4) rho^2 D^2.
/// v_max, when positive, is the intended velocity range used for the
/// d/(beta v) >> 1 regime check.
double coefficient_finiteT_from_D(double D, double rho1, double rho2,
                                  double gap, double beta);
FiniteTCoefficient coefficient_finiteT(const DrudeMetal& metal,
                                       const PlateConfig& config,
                                       double v_max = 0.0);

/// Torque on the disc from the T = 0 law: -(pi/3) C_P R^6 Omega^3.
double torque_T0(const DiscSpec& disc, double c_p);

/// Torque from the finite-T law: -(pi/2) C R^4 Omega.
double torque_finiteT(const DiscSpec& disc, double c);

/// Composite annulus quadrature of tau = int_0^R r F(Omega r) 2 pi r dr with
/// a fixed number of annuli (two-point Gauss rule per annulus).
double torque_numeric(const DiscSpec& disc,
                      const std::function<double(double)>& force_of_v,
                      int n_annuli);
double torque_numeric(const DiscSpec& disc, const FrictionLaw& law,
                      int n_annuli);

struct TorqueResult {
  double value;
  double error_estimate;
  int annuli_used;
};

/// Doubles the annulus count until successive values agree to rel_tol.
/// Throws AccuracyError when max_annuli is insufficient.
TorqueResult torque_numeric_adaptive(
    const DiscSpec& disc, const std::function<double(double)>& force_of_v,
    double rel_tol, int max_annuli = 1 << 20);
TorqueResult torque_numeric_adaptive(const DiscSpec& disc,
                                     const FrictionLaw& law, double rel_tol,
                                     int max_annuli = 1 << 20);

}  // namespace casfric
