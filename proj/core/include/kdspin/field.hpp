#pragma once

#include "kdspin/dirac.hpp"
#include "kdspin/linalg.hpp"

#include <optional>
#include <vector>

namespace kdspin {

// Standing wave along x: beam `a` propagates +x and is linearly polarized
// along z, beam `a_prime` propagates -x and is circularly polarized in the
// y-z plane. Polarization four-vectors are contravariant and carry the
// vector-potential amplitudes.
struct LaserConfig {
  double k_l = 0.0;       // photon momentum, units of m
  FourVector a;           // +x beam
  FourVector a_prime;     // -x beam
  double ramp_cycles = 5.0;
  double plateau_cycles = 0.0;

  double optical_period() const;
  double total_cycles() const { return 2.0 * ramp_cycles + plateau_cycles; }
  double total_duration() const { return total_cycles() * optical_period(); }
};

// Build the paper geometry from dimensionless amplitudes xi = e*A/m.
LaserConfig standing_wave_config(double k_l, double xi, double xi_prime,
                                 double total_cycles, double ramp_cycles = 5.0);

// k_n = p_i + n k_l x-hat for n in [-N, N]
struct MomentumLadder {
  Vec3 p_i;
  double k_l = 0.0;
  int truncation = 12;

  Vec3 momentum(int n) const { return {p_i.x + n * k_l, p_i.y, p_i.z}; }
  double energy(int n) const;
  int size() const { return 2 * truncation + 1; }
  bool contains(int n) const { return n >= -truncation && n <= truncation; }
};

// p_i = (-k_l, 0, p_z), p_z = 1 unless overridden.
MomentumLadder standard_kinematics(double k_l,
                                   std::optional<double> pz_override = {},
                                   int truncation = 12);

// sin^2 ramp up, flat plateau, sin^2 ramp down; 0 outside the run window.
double envelope(double t, const LaserConfig& cfg);

// V^{gamma,s;gamma',s'}_{n,n'}(t): nearest-neighbor in n, Hermitian over the
// composite (n, branch, spin) index, envelope applied multiplicatively.
cplx potential_V(int n, int np, Branch g, Branch gp, const SpinState& s,
                 const SpinState& sp, double t, const LaserConfig& cfg,
                 const MomentumLadder& ladder);

// The same interaction as two static block structures:
//   V(t) = env(t) * ( e^{-i k_l t} A + e^{+i k_l t} B ),
// with A/B holding 4x4 composite-(branch,spin) blocks that couple row n to
// n-1 ("lo") and n+1 ("hi"). This is the integrator's working form;
// potential_V is the per-element reference.
struct InteractionBlocks {
  int truncation = 0;
  std::vector<Mat4> a_lo, a_hi, b_lo, b_hi;  // indexed by n + truncation

  static InteractionBlocks build(const LaserConfig& cfg,
                                 const MomentumLadder& ladder);
};

}  // namespace kdspin
