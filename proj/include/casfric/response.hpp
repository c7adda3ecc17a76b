#pragma once

#include "casfric/errors.hpp"

// Natural units hbar = k_B = 1 are used throughout the library. Unit
// bookkeeping belongs at the CLI/file boundary.

namespace casfric {

/// Polarizabilities and eigenfrequencies of the microscopic two-oscillator
/// model. The response kernel lives on the sum/difference channels
/// omega_pm = |omega1 +- omega2|.
struct OscillatorPair {
  double alpha1;
  double alpha2;
  double omega1;
  double omega2;

  OscillatorPair(double alpha1, double alpha2, double omega1, double omega2);

  double omega_plus() const { return omega1 + omega2; }
  double omega_minus() const;
};

/// Inverse temperature. T = 0 is a distinguished state, not a huge beta:
/// the coefficients need the analytic sinh-ratio limit there.
class ThermalState {
 public:
  static ThermalState zero_temperature();
  static ThermalState inverse_temperature(double beta);

  bool is_zero_temperature() const { return zero_; }
  /// +inf at T = 0.
  double beta() const { return beta_; }

 private:
  ThermalState(bool zero, double beta) : zero_(zero), beta_(beta) {}
  bool zero_;
  double beta_;
};

/// Thermal channel weights of the response kernel:
///   C_pm = (H/hbar) sinh(beta hbar omega_pm / 2),
///   H    = hbar^2 w1 w2 a1 a2 / (4 sinh(beta hbar w1/2) sinh(beta hbar w2/2)).
/// At T = 0: c_plus -> w1 w2 a1 a2 / 2, c_minus -> 0, h_factor -> 0.
struct ResponseCoefficients {
  double c_minus;
  double c_plus;
  double h_factor;
};

ResponseCoefficients coefficients(const OscillatorPair& pair,
                                  const ThermalState& state);

/// Causal response kernel c_minus sin(w_minus t) + c_plus sin(w_plus t) for
/// t >= 0, exactly zero for t < 0.
double phi(double t, const OscillatorPair& pair, const ThermalState& state);

/// Drude half-space material. rho is the free-electron number density.
struct DrudeMetal {
  double omega_p;  // plasma frequency
  double nu;       // relaxation frequency
  double rho;      // electron density

  DrudeMetal(double omega_p, double nu, double rho);

  /// Low-frequency dissipation constant D = nu / (rho pi^2 omega_p^2).
  double dissipation_constant() const;

  /// Default validity cutoff of the linearized spectral density.
  double default_m_max() const { return 0.1 * omega_p; }
};

/// Dielectric function along the imaginary frequency axis,
/// eps(xi) = 1 + omega_p^2 / (xi (xi + nu)), xi > 0.
double drude_epsilon(double xi, const DrudeMetal& metal);

struct SpectralDensity {
  double value;
  bool within_validity;  // false when m exceeded the small-m cutoff
};

/// Linearized Drude spectral density m^2 alpha_I(m^2) = D m, valid for small
/// m. Above m_max the value is still returned but flagged. m_max = 0 selects
/// the metal's default cutoff.
SpectralDensity alpha_imag_density(double m, const DrudeMetal& metal,
                                   double m_max = 0.0);

}  // namespace casfric
