#pragma once

#include <complex>

#include "casfric/quadrature.hpp"
#include "casfric/response.hpp"
#include "casfric/trajectory.hpp"

// Brute-force reference computations validating the approximations of the
// spectral path: no interval matching, no cross-term dropping, no large-tau
// limit. Everything here runs on a separate quadrature family (adaptive
// Simpson and fixed Gauss-Legendre sweeps) from the main pipeline's
// Gauss-Kronrod, so agreement is evidence rather than tautology. Tolerances
// are looser by design; oscillatory double-time integrals are expensive.

namespace casfric {

/// Raw spectral integral of the trajectory phase over a closed loop,
///   Qhat(omega, -omega_v) = int (exp(i a(t)) - 1) exp(-i omega t) dt,
/// a(t) = k_x x(t) + k_y y(t), by adaptive quadrature split at the nodes.
std::complex<double> qhat_brute(const Trajectory& traj, double omega,
                                const WaveVector& wv,
                                const QuadratureSpec& quad);

/// Segment-level contribution by direct quadrature of the two matched
/// windows (first term over the segment, second over its matched companion).
/// This is the oracle for delta_qhat; exact for exactly-linear segments.
std::complex<double> qhat_brute_segment(const Segment& seg, double omega,
                                        const WaveVector& wv,
                                        const QuadratureSpec& quad);

/// Double-time quadrature of the dissipated energy of one oscillator pair
/// against one spatial Fourier mode of the coupling,
///   dE = (c^2/2) int int_{t > t'} adot(t) sin(a(t) - a(t')) phi(t - t'),
/// the translation average of the raw dissipation integral with coupling
/// amplitude c = coupling_gradient. Retains all cross-terms and finite-time
/// effects. Throws AccuracyError when panel refinement disagrees by more
/// than 1%.
double dissipation_brute(const OscillatorPair& pair, const Trajectory& traj,
                         const WaveVector& wv, double coupling_gradient,
                         const ThermalState& state,
                         int panels_per_period = 2);

/// Plain O(N^2) evaluation of the same integral. Cross-check for the swept
/// evaluation above; only affordable for short loops.
double dissipation_brute_direct(const OscillatorPair& pair,
                                const Trajectory& traj, const WaveVector& wv,
                                double coupling_gradient,
                                const ThermalState& state,
                                int panels_per_period = 3);

/// The spectral-path comparator for dissipation_brute:
///   (c^2/2) [C- I(omega_minus) + C+ I(omega_plus)]
/// with the finite-tau I from the segment machinery.
double spectral_pair_prediction(const OscillatorPair& pair,
                                const Trajectory& traj, const WaveVector& wv,
                                double coupling_gradient,
                                const ThermalState& state,
                                double max_velocity_change = 0.01);

/// Adaptive-Simpson quadrature of the oracle kit, exposed so reference
/// computations in tests and the verify suite stay on this rule family.
double oracle_integrate(const std::function<double(double)>& f, double a,
                        double b, double abs_tol);

/// Same, for integrands oscillating on a known scale: the range is split
/// into panels no longer than `period` before adapting, so the dyadic
/// sampling cannot alias the oscillation.
double oracle_integrate_oscillatory(const std::function<double(double)>& f,
                                    double a, double b, double period,
                                    double abs_tol);

struct CrossTermResidual {
  double residual;  // | int W (|Qhat|^2 - sum |dQhat|^2) domega |
  double diagonal;  // int W sum |dQhat|^2 domega, for normalization
};

/// Quantifies the dropped cross-terms for a two-leg closed loop with a
/// stationary pause of length `separation` inserted between the legs. The
/// window W is a Hann bump over [center - half_width, center + half_width].
CrossTermResidual cross_term_residual(const Trajectory& two_leg_loop,
                                      double omega_center,
                                      double omega_half_width,
                                      const WaveVector& wv, double separation,
                                      const QuadratureSpec& quad);

}  // namespace casfric
