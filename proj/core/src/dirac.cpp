#include "kdspin/dirac.hpp"

#include "kdspin/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kdspin {

double relativistic_energy(const Vec3& k) {
  if (!std::isfinite(k.x) || !std::isfinite(k.y) || !std::isfinite(k.z))
    throw std::invalid_argument("relativistic_energy: non-finite momentum");
  return std::sqrt(1.0 + norm2(k));
}

namespace {

Mat4 make_beta() {
  Mat4 b;
  b(0, 0) = 1.0;
  b(1, 1) = 1.0;
  b(2, 2) = -1.0;
  b(3, 3) = -1.0;
  return b;
}

Mat4 make_alpha(const SpinMatrix2& sigma) {
  Mat4 a;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      a(r, 2 + c) = sigma(r, c);
      a(2 + r, c) = sigma(r, c);
    }
  return a;
}

std::array<Mat4, 4> make_gammas() {
  const Mat4 beta = make_beta();
  return {beta, beta * make_alpha(pauli_x), beta * make_alpha(pauli_y),
          beta * make_alpha(pauli_z)};
}

const std::array<Mat4, 4>& gammas() {
  static const std::array<Mat4, 4> g = make_gammas();
  return g;
}

}  // namespace

const Mat4& gamma(int mu) {
  if (mu < 0 || mu > 3) throw std::invalid_argument("gamma: index out of range");
  return gammas()[mu];
}

const Mat4& gamma0() { return gammas()[0]; }

Mat4 slash(const FourVector& a) {
  Mat4 r = a[0] * gammas()[0];
  for (int i = 1; i < 4; ++i) r = r - a[i] * gammas()[i];
  return r;
}

namespace {

// (chi, sigma.k/(E+1) chi) for u, the swapped stacking for v
Bispinor assemble(const Vec3& k, const SpinState& s, bool upper_is_chi) {
  const double energy = relativistic_energy(k);
  const double pref = std::sqrt(1.0 / energy) * std::sqrt((energy + 1.0) / 2.0);
  const SpinMatrix2 sk{{cplx(k.z), cplx(k.x) - iu * k.y, cplx(k.x) + iu * k.y,
                        cplx(-k.z)}};
  const SpinState small = (1.0 / (energy + 1.0)) * (sk * s);
  Bispinor w;
  const SpinState& top = upper_is_chi ? s : small;
  const SpinState& bot = upper_is_chi ? small : s;
  w[0] = pref * top.up;
  w[1] = pref * top.down;
  w[2] = pref * bot.up;
  w[3] = pref * bot.down;
  return w;
}

}  // namespace

Bispinor bispinor_u(const Vec3& k, const SpinState& s) {
  return assemble(k, s, true);
}

Bispinor bispinor_v(const Vec3& k, const SpinState& s) {
  return assemble(k, s, false);
}

cplx coupling_L(const Vec3& kn, const Vec3& knp, Branch g, Branch gp,
                const SpinState& s, const SpinState& sp, int mu) {
  if (mu < 0 || mu > 3)
    throw std::invalid_argument("coupling_L: index mu out of range");
  const Bispinor w = (g == Branch::positive) ? bispinor_u(kn, s)
                                             : bispinor_v(-kn, s);
  const Bispinor wp = (gp == Branch::positive) ? bispinor_u(knp, sp)
                                               : bispinor_v(-knp, sp);
  return quadratic_form(w, gamma0() * gamma(mu), wp);
}

Mat4 coupling_block(const Vec3& kn, const Vec3& knp, const FourVector& pol) {
  const Mat4 op = gamma0() * slash(pol);
  const std::array<Bispinor, 4> w{bispinor_u(kn, spin_up),
                                  bispinor_u(kn, spin_down),
                                  bispinor_v(-kn, spin_up),
                                  bispinor_v(-kn, spin_down)};
  const std::array<Bispinor, 4> wp{bispinor_u(knp, spin_up),
                                   bispinor_u(knp, spin_down),
                                   bispinor_v(-knp, spin_up),
                                   bispinor_v(-knp, spin_down)};
  Mat4 block;
  for (int c = 0; c < 4; ++c) {
    const Bispinor owp = op * wp[c];
    for (int r = 0; r < 4; ++r) block(r, c) = adjoint_dot(w[r], owp);
  }
  return block;
}

SpinMatrix2 coupling_spin_block(const Vec3& kn, const Vec3& knp, Branch g,
                                Branch gp, int mu) {
  const Mat4 op = gamma0() * gamma(mu);
  const std::array<Bispinor, 2> w{
      g == Branch::positive ? bispinor_u(kn, spin_up) : bispinor_v(-kn, spin_up),
      g == Branch::positive ? bispinor_u(kn, spin_down)
                            : bispinor_v(-kn, spin_down)};
  const std::array<Bispinor, 2> wp{
      gp == Branch::positive ? bispinor_u(knp, spin_up)
                             : bispinor_v(-knp, spin_up),
      gp == Branch::positive ? bispinor_u(knp, spin_down)
                             : bispinor_v(-knp, spin_down)};
  SpinMatrix2 block;
  for (int c = 0; c < 2; ++c) {
    const Bispinor owp = op * wp[c];
    for (int r = 0; r < 2; ++r) block(r, c) = adjoint_dot(w[r], owp);
  }
  return block;
}

const SpinState& spin_southeast() {
  static const SpinState s{std::cos(11.0 * std::numbers::pi / 8.0),
                           std::sin(11.0 * std::numbers::pi / 8.0)};
  return s;
}

const SpinState& spin_northwest() {
  static const SpinState s{std::cos(15.0 * std::numbers::pi / 8.0),
                           std::sin(15.0 * std::numbers::pi / 8.0)};
  return s;
}

std::pair<SpinState, SpinState> tilted_spin_basis() {
  return {spin_southeast(), spin_northwest()};
}

SpinMatrix2 spin_filter_matrix() {
  const double r8 = 1.0 / std::sqrt(8.0);
  const double r2 = std::sqrt(2.0);
  return {{cplx(-r8), cplx((-1.0 - r2) * r8), cplx((-1.0 + r2) * r8),
           cplx(r8)}};
}

}  // namespace kdspin
