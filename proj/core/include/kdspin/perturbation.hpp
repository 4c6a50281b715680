#pragma once

#include "kdspin/field.hpp"
#include "kdspin/linalg.hpp"

namespace kdspin {

// Dimensionless expansion parameters: photon momentum q_l = k_l/m, transverse
// electron momentum q_2 = k_2/m (y), and the longitudinal offset
// q3_shift = k_3/m - 1 around the relativistic working point k_3 = m.
struct ScaledKinematics {
  double q_l = 0.0;
  double q_2 = 0.0;
  double q3_shift = 0.0;

  double k3() const { return 1.0 + q3_shift; }
};

struct Prefactors {
  double a, b, c, d;
};

// Resonance-denominator prefactors 1/(E_k0 -+ E_k1 +- k_l) of the four
// second-order paths; throws SingularKinematics when an intermediate state
// goes on shell.
Prefactors prefactors(const Vec3& k0, const Vec3& k1, double k_l);

// Resonant two-photon propagator block U^{+,s';+,s}_{2,0}(t, t0): grows
// linearly in (t - t0) under a global free phase. Requires the Bragg
// condition E_k2 = E_k0 within 1e-9.
SpinMatrix2 resonant_amplitude_20(double t, double t0, const LaserConfig& cfg,
                                  const MomentumLadder& ladder);

// Exact (non-expanded) spin coupling matrix M^{s',s;mu nu} evaluated at the
// three-rung ladder k0 = (-k_l, k2, k3), k1 = (0, k2, k3), k2 = (k_l, k2, k3).
SpinMatrix2 spin_matrix_M(const ScaledKinematics& kin, int mu, int nu);

// Closed-form quadratic Taylor polynomials of M^{mu nu}, mu, nu in {2, 3}.
SpinMatrix2 taylor_M(const ScaledKinematics& kin, int mu, int nu);

// Polarization contraction a'*_mu a_nu M^{mu nu} / (A A'), indices lowered
// with the metric. At tuned kinematics this is proportional to the spin
// filter outer product |nw><se|.
SpinMatrix2 contracted_spin_propagation(const FourVector& a,
                                        const FourVector& a_prime,
                                        const ScaledKinematics& kin);
SpinMatrix2 contracted_spin_propagation(const LaserConfig& cfg,
                                        const ScaledKinematics& kin);

// Longitudinal momentum p_z that cancels the spin-preserving second-order
// amplitude; golden-section search on [0.999, 1.002] to 1e-9.
double tune_longitudinal_momentum(double k_l);

// Short-time two-photon diffraction probability (eA eA' k_l t / (8 sqrt2))^2
// with all arguments in units of m.
double short_time_probability(double eA, double eA_prime, double k_l, double t);

}  // namespace kdspin
