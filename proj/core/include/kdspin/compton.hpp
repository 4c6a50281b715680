#pragma once

#include "kdspin/dirac.hpp"
#include "kdspin/linalg.hpp"

#include <array>
#include <cstdint>

namespace kdspin {

// Single-photon scattering kinematics. pol_in / pol_out are the photon
// *state* polarizations; the outgoing one enters the amplitudes complex
// conjugated, as usual for an emitted photon.
struct ComptonKinematics {
  Vec3 p_i, k_in, k_out;
  FourVector pol_in, pol_out;
  Vec3 p_f;                      // p_i + k_in - k_out
  double energy_residual = 0.0;  // |E_pi + |k| - E_pf - |k'||
  bool on_shell = false;
};

ComptonKinematics make_compton_kinematics(const Vec3& p_i, const Vec3& k_in,
                                          const Vec3& k_out,
                                          const FourVector& pol_in,
                                          const FourVector& pol_out);

// |k'| that closes energy conservation for an outgoing direction; unique by
// monotonicity, solved by bisection.
double solve_outgoing_photon_momentum(const Vec3& p_i, const Vec3& k_in,
                                      const Vec3& dir_out);

// The four time-ordered second-order terms, one complex amplitude each, with
// the intermediate spin summed explicitly (no completeness substitution).
std::array<cplx, 4> ofpt_terms(const ComptonKinematics& kin,
                               const SpinState& s, const SpinState& sp);

// Covariant amplitude
//   ubar_pf [ eps'* (p_i + k + m)/(2 p_i.k) eps
//           - eps (p_i - k' + m)/(2 p_i.k') eps'* ] u_pi
// with all four-momenta assembled on shell. Requires kin.on_shell.
cplx compton_tensor(const ComptonKinematics& kin, const SpinState& s,
                    const SpinState& sp);

// Helicity states for propagation along +x / -x, matching the circular
// creation-operator combinations used for the standing-wave beam.
FourVector photon_linear_z();
FourVector photon_circular(bool left_handed, bool along_positive_x);

// Amplitude table at the standing-wave kinematics (k = +k_l x, k' = -k_l x,
// incoming photon z-linear): initial tilted spin x final (tilted spin,
// helicity) channels.
struct ChannelTable {
  // [initial: 0=se 1=nw][final spin: 0=se 1=nw][final photon: 0=L 1=R]
  cplx amp[2][2][2];

  double weight(int ini, int fin, int hel) const;
  double total_weight(int ini) const;
};

ChannelTable channel_amplitudes(double k_l, double p_z);

// Deterministic random on-shell kinematics for property tests and the
// self-check CLI mode.
ComptonKinematics random_onshell_kinematics(std::uint64_t seed);

}  // namespace kdspin
