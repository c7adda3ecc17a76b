#include "casfric/response.hpp"

#include <cmath>
#include <limits>

namespace casfric {

namespace {

bool finite(double x) { return std::isfinite(x); }

// log(sinh(x)) - x = log1p(-exp(-2x)) - log 2 for x > 0; -inf at x = 0.
// Splitting off the linear part lets the coefficient exponents cancel
// algebraically instead of numerically, which matters for huge beta.
double log_sinh_reduced(double x) {
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
}

}  // namespace

OscillatorPair::OscillatorPair(double a1, double a2, double w1, double w2)
    : alpha1(a1), alpha2(a2), omega1(w1), omega2(w2) {
  if (!(finite(a1) && finite(a2) && finite(w1) && finite(w2))) {
    throw DomainError("oscillator pair: parameters must be finite");
  }
  if (w1 <= 0.0 || w2 <= 0.0) {
    throw DomainError("oscillator pair: eigenfrequencies must be positive");
  }
  if (a1 < 0.0 || a2 < 0.0) {
    throw DomainError("oscillator pair: polarizabilities must be nonnegative");
  }
}

double OscillatorPair::omega_minus() const { return std::abs(omega1 - omega2); }

ThermalState ThermalState::zero_temperature() {
  return ThermalState(true, std::numeric_limits<double>::infinity());
}

ThermalState ThermalState::inverse_temperature(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("thermal state: beta must be positive and finite");
  }
  return ThermalState(false, beta);
}

ResponseCoefficients coefficients(const OscillatorPair& pair,
                                  const ThermalState& state) {
  const double amp = pair.omega1 * pair.omega2 * pair.alpha1 * pair.alpha2;
  if (!finite(amp)) {
    throw NumericRangeError("coefficients: polarizability product overflowed");
  }
  const double wp = pair.omega_plus();
  const double wm = pair.omega_minus();

  if (state.is_zero_temperature()) {
    // sinh ratios in their beta -> inf exponential form: the omega_plus
    // exponents cancel exactly, the omega_minus channel is suppressed to 0.
    return ResponseCoefficients{0.0, 0.5 * amp, 0.0};
  }

  const double b = state.beta();
  const double lr1 = log_sinh_reduced(0.5 * b * pair.omega1);
  const double lr2 = log_sinh_reduced(0.5 * b * pair.omega2);
  // The linear parts of the exponents cancel identically: the sum channel
  // carries x_plus - x1 - x2 = 0, the difference channel
  // x_minus - x1 - x2 = -beta min(w1, w2).
  const double c_plus =
      amp == 0.0
          ? 0.0
          : 0.25 * amp * std::exp(log_sinh_reduced(0.5 * b * wp) - lr1 - lr2);
  const double c_minus =
      (wm == 0.0 || amp == 0.0)
          ? 0.0
          : 0.25 * amp *
                std::exp(-b * std::min(pair.omega1, pair.omega2) +
                         log_sinh_reduced(0.5 * b * wm) - lr1 - lr2);
  const double h =
      amp == 0.0
          ? 0.0
          : 0.25 * amp *
                std::exp(-0.5 * b * (pair.omega1 + pair.omega2) - lr1 - lr2);

  if (!(finite(c_minus) && finite(c_plus) && finite(h))) {
    throw NumericRangeError("coefficients: non-finite result");
  }
  return ResponseCoefficients{c_minus, c_plus, h};
}

double phi(double t, const OscillatorPair& pair, const ThermalState& state) {
  if (t < 0.0) return 0.0;
  const ResponseCoefficients c = coefficients(pair, state);
  return c.c_minus * std::sin(pair.omega_minus() * t) +
         c.c_plus * std::sin(pair.omega_plus() * t);
}

DrudeMetal::DrudeMetal(double omega_p_, double nu_, double rho_)
    : omega_p(omega_p_), nu(nu_), rho(rho_) {
  if (!(omega_p > 0.0) || !(rho > 0.0) || nu < 0.0 || !finite(omega_p) ||
      !finite(nu) || !finite(rho)) {
    throw DomainError("drude metal: need omega_p > 0, rho > 0, nu >= 0");
  }
}

double DrudeMetal::dissipation_constant() const {
  const double pw = M_PI * omega_p;
  return nu / (rho * pw * pw);
}

double drude_epsilon(double xi, const DrudeMetal& metal) {
  if (!(xi > 0.0)) {
    throw DomainError("drude_epsilon: xi must be positive");
  }
  return 1.0 + metal.omega_p * metal.omega_p / (xi * (xi + metal.nu));
}

SpectralDensity alpha_imag_density(double m, const DrudeMetal& metal,
                                   double m_max) {
  if (m < 0.0) {
    throw DomainError("alpha_imag_density: m must be nonnegative");
  }
  if (m_max <= 0.0) m_max = metal.default_m_max();
  return SpectralDensity{metal.dissipation_constant() * m, m <= m_max};
}

}  // namespace casfric
