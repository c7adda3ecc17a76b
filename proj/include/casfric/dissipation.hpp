#pragma once

#include "casfric/quadrature.hpp"
#include "casfric/response.hpp"
#include "casfric/trajectory.hpp"

namespace casfric {

/// Two half-space plates with surfaces at z = 0 and z = gap.
struct PlateConfig {
  double gap;
  double rho1;
  double rho2;
  ThermalState thermal;

  PlateConfig(double gap, double rho1, double rho2, ThermalState thermal);
};

/// In-plane Fourier transform of the Coulomb dipole coupling,
/// 2 pi exp(-k |z0|) / k.
double coulomb_dipole_hat(double z0, const WaveVector& wv);

/// Dipole-summed interaction kernel (2 q^2)^2 (2 pi exp(-q|z0|)/q)^2
/// = 16 pi^2 q^2 exp(-2 q |z0|).
double g_kernel(double z0, double q);

/// Closed form of the double half-space integral
/// int_{z1 > d} int_{z2 < 0} exp(-2 q (z1 - z2)) dz1 dz2 = exp(-2qd)/(2q)^2.
double halfspace_z_integral(double q, double d);

/// Pair-summation to arbitrary-density mapping 2 pi rho alpha -> (eps-1)/(eps+1).
double epsilon_substitution(double eps);

/// J(omega_v) = C_minus I(omega_minus) + C_plus I(omega_plus).
double j_of_omega_v(double I_minus, double I_plus,
                    const ResponseCoefficients& coeffs);

enum class TemperatureMode { t0, finite_t };

struct BandResult {
  double energy_per_area = 0.0;
  double error_estimate = 0.0;
  bool regime_ok = true;  // small-m spectral density stayed within its cutoff
};

/// Frequency-band shell integrals of the Drude spectral density against the
/// thermal channel weights, on the shells m1 + m2 = S (sum channel) and
/// |m1 - m2| = S (difference channel):
///   K+(S) = int_0^S   m (S - m) sinh(bS/2) / (sinh(bm/2) sinh(b(S-m)/2)) dm
///   K-(S) = int_0^inf m (m + S) sinh(bS/2) / (sinh(bm/2) sinh(b(m+S)/2)) dm
/// with b = beta. At T = 0, K+ -> S^3/3 and K- -> 0.
double drude_shell_sum(double S, double beta, const QuadratureSpec& quad);
double drude_shell_diff(double S, double beta, const QuadratureSpec& quad);

/// Dissipated power density per unit (wave-vector measure x time) of a
/// single Doppler shift w: j(w) = (pi/2) D^2 |w| [K+(|w|) + 2 K-(|w|)].
double drude_spectral_rate(double w, double dissipation_constant,
                           const ThermalState& thermal,
                           const QuadratureSpec& quad);

/// Dissipated energy per unit plate area and unit time for steady sliding at
/// speed u: the per-segment rate entering band_integrate,
///   rate(u) = rho1 rho2 / (2 pi)^2 * int dk_perp dz1 dz2  G(z0, k)
///             * [delta-limit spectral terms x shell integrals].
/// The z integration is analytic, the (k, phi_k) integration adaptive in
/// polar form with cutoff k_max_factor / gap.
BandResult sliding_rate(double u, const PlateConfig& config,
                        const DrudeMetal& metal, const QuadratureSpec& quad,
                        TemperatureMode mode);

/// Total dissipated energy per unit plate area for a closed-loop relative
/// motion of two identical Drude half-spaces: segment durations summed
/// against the per-speed sliding rate (contributions of slowly-varying
/// velocities are independent and additive).
BandResult band_integrate(const Trajectory& traj, const PlateConfig& config,
                          const DrudeMetal& metal, const QuadratureSpec& quad,
                          TemperatureMode mode);

}  // namespace casfric
