#pragma once

#include "kdspin/linalg.hpp"

#include <utility>

namespace kdspin {

// E(k) = sqrt(1 + |k|^2) in units of the electron mass.
double relativistic_energy(const Vec3& k);

// Dirac representation: gamma^0 = beta, gamma^i = beta alpha_i.
const Mat4& gamma(int mu);
const Mat4& gamma0();

// slash(a) = a_mu gamma^mu for contravariant a (indices lowered internally).
Mat4 slash(const FourVector& a);

// Free positive/negative solutions with u^dagger u = 1 normalization
// (the 1/sqrt(E) phase-space factor is absorbed).
Bispinor bispinor_u(const Vec3& k, const SpinState& s);
Bispinor bispinor_v(const Vec3& k, const SpinState& s);

enum class Branch { positive, negative };

// w^dagger gamma^0 gamma^mu w' with w in {u_kn, v_{-kn}} chosen by the
// branch labels; the negative branch evaluates v at the sign-flipped
// momentum to match the plane-wave ansatz.
cplx coupling_L(const Vec3& kn, const Vec3& knp, Branch g, Branch gp,
                const SpinState& s, const SpinState& sp, int mu);

// Same matrix element pre-contracted with a polarization four-vector and
// assembled as a 4x4 block over the composite (branch, spin) index with
// basis order [u_up, u_down, v_up, v_down]. Entry (r,c) equals
// sum_mu w_r^dagger gamma^0 slash(pol) w'_c.
Mat4 coupling_block(const Vec3& kn, const Vec3& knp, const FourVector& pol);

// 2x2 spin block of coupling_L for fixed branches and index mu, entry (s,s')
// in the up/down basis.
SpinMatrix2 coupling_spin_block(const Vec3& kn, const Vec3& knp, Branch g,
                                Branch gp, int mu);

// The 45-degree tilted pair in the x-z plane, named by their Bloch vectors:
// "southeast" (+x,-z) and "northwest" (-x,+z). Orthonormal.
const SpinState& spin_southeast();
const SpinState& spin_northwest();
std::pair<SpinState, SpinState> tilted_spin_basis();

// (1/sqrt8) [[-1, -1-sqrt2], [-1+sqrt2, 1]]; equals the outer product
// |nw><se|, so it annihilates nw and maps se -> nw.
SpinMatrix2 spin_filter_matrix();

}  // namespace kdspin
