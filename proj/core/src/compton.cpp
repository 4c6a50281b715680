#include "kdspin/compton.hpp"

#include "kdspin/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace kdspin {

namespace {

FourVector onshell_electron(const Vec3& p) {
  return {{relativistic_energy(p), p.x, p.y, p.z}};
}

FourVector onshell_photon(const Vec3& k) {
  return {{std::sqrt(norm2(k)), k.x, k.y, k.z}};
}

}  // namespace

ComptonKinematics make_compton_kinematics(const Vec3& p_i, const Vec3& k_in,
                                          const Vec3& k_out,
                                          const FourVector& pol_in,
                                          const FourVector& pol_out) {
  ComptonKinematics kin;
  kin.p_i = p_i;
  kin.k_in = k_in;
  kin.k_out = k_out;
  kin.pol_in = pol_in;
  kin.pol_out = pol_out;
  kin.p_f = p_i + k_in - k_out;
  kin.energy_residual =
      std::abs(relativistic_energy(p_i) + std::sqrt(norm2(k_in)) -
               relativistic_energy(kin.p_f) - std::sqrt(norm2(k_out)));
  kin.on_shell = kin.energy_residual < 1e-9;
  return kin;
}

double solve_outgoing_photon_momentum(const Vec3& p_i, const Vec3& k_in,
                                      const Vec3& dir_out) {
  const double dn = std::sqrt(norm2(dir_out));
  if (dn == 0.0)
    throw std::invalid_argument("solve_outgoing_photon_momentum: zero direction");
  const Vec3 n = (1.0 / dn) * dir_out;
  const double w = relativistic_energy(p_i) + std::sqrt(norm2(k_in));
  const Vec3 big_p = p_i + k_in;

  auto f = [&](double k) {
    return relativistic_energy(big_p - k * n) + k - w;
  };
  // f(0) < 0, f' > 0 (electron speed below 1), so the root is unique.
  double lo = 0.0, hi = w;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::array<cplx, 4> ofpt_terms(const ComptonKinematics& kin,
                               const SpinState& s, const SpinState& sp) {
  const double e_i = relativistic_energy(kin.p_i);
  const double k = std::sqrt(norm2(kin.k_in));
  const double kp = std::sqrt(norm2(kin.k_out));
  const Vec3 q = kin.p_i + kin.k_in;   // after absorbing the incoming photon
  const Vec3 r = kin.p_i - kin.k_out;  // after emitting the outgoing photon
  const double e_q = relativistic_energy(q);
  const double e_r = relativistic_energy(r);

  const std::array<double, 4> denom{e_i - e_q + k, e_i - e_r - kp,
                                    e_i + e_r - kp, e_i + e_q + k};
  for (double d : denom)
    if (std::abs(d) < 1e-12)
      throw SingularKinematics("ofpt_terms: on-shell intermediate state");

  const Mat4 emit = gamma0() * slash(conj(kin.pol_out));
  const Mat4 absorb = gamma0() * slash(kin.pol_in);

  const Bispinor u_i = bispinor_u(kin.p_i, s);
  const Bispinor u_f = bispinor_u(kin.p_f, sp);

  std::array<cplx, 4> t{};
  for (const SpinState& chi : {spin_up, spin_down}) {
    const Bispinor u_q = bispinor_u(q, chi);
    const Bispinor u_r = bispinor_u(r, chi);
    const Bispinor v_r = bispinor_v(-r, chi);  // at -p_i + k'
    const Bispinor v_q = bispinor_v(-q, chi);  // at -p_i - k
    t[0] += quadratic_form(u_f, emit, u_q) * quadratic_form(u_q, absorb, u_i);
    t[1] += quadratic_form(u_f, absorb, u_r) * quadratic_form(u_r, emit, u_i);
    t[2] += quadratic_form(u_f, absorb, v_r) * quadratic_form(v_r, emit, u_i);
    t[3] += quadratic_form(u_f, emit, v_q) * quadratic_form(v_q, absorb, u_i);
  }
  for (int i = 0; i < 4; ++i) t[i] /= denom[i];
  return t;
}

cplx compton_tensor(const ComptonKinematics& kin, const SpinState& s,
                    const SpinState& sp) {
  if (!kin.on_shell)
    throw PreconditionError("compton_tensor: kinematics not on shell");

  const FourVector p_i4 = onshell_electron(kin.p_i);
  const FourVector k4 = onshell_photon(kin.k_in);
  const FourVector kp4 = onshell_photon(kin.k_out);

  const cplx pik = minkowski_dot(p_i4, k4);
  const cplx pikp = minkowski_dot(p_i4, kp4);
  if (std::abs(pik) < 1e-12 || std::abs(pikp) < 1e-12)
    throw SingularKinematics("compton_tensor: vanishing photon invariant");

  const Mat4 eps = slash(kin.pol_in);
  const Mat4 eps_out = slash(conj(kin.pol_out));
  const Mat4 one = Mat4::identity();

  const Mat4 absorb_leg = eps_out * (slash(p_i4 + k4) + one) * eps;
  const Mat4 emit_leg = eps * (slash(p_i4 - kp4) + one) * eps_out;
  const Mat4 amp = (1.0 / (2.0 * pik)) * absorb_leg -
                   (1.0 / (2.0 * pikp)) * emit_leg;

  const Bispinor u_i = bispinor_u(kin.p_i, s);
  const Bispinor u_f = bispinor_u(kin.p_f, sp);
  return quadratic_form(u_f, gamma0() * amp, u_i);
}

FourVector photon_linear_z() { return {{0.0, 0.0, 0.0, 1.0}}; }

FourVector photon_circular(bool left_handed, bool along_positive_x) {
  const double r = 1.0 / std::sqrt(2.0);
  // creation combinations a2 -+ i a3 map to these state polarizations
  const cplx zc = (left_handed == along_positive_x) ? -iu * r : iu * r;
  return {{0.0, 0.0, r, zc}};
}

double ChannelTable::weight(int ini, int fin, int hel) const {
  return std::norm(amp[ini][fin][hel]);
}

double ChannelTable::total_weight(int ini) const {
  double w = 0.0;
  for (int f = 0; f < 2; ++f)
    for (int h = 0; h < 2; ++h) w += weight(ini, f, h);
  return w;
}

ChannelTable channel_amplitudes(double k_l, double p_z) {
  if (k_l <= 0.0) throw std::invalid_argument("channel_amplitudes: k_l <= 0");
  const Vec3 p_i{-k_l, 0.0, p_z};
  const Vec3 k_in{k_l, 0.0, 0.0};
  const Vec3 k_out{-k_l, 0.0, 0.0};

  const SpinState tilted[2] = {spin_southeast(), spin_northwest()};
  ChannelTable table;
  for (int hel = 0; hel < 2; ++hel) {
    const auto kin = make_compton_kinematics(
        p_i, k_in, k_out, photon_linear_z(),
        photon_circular(/*left_handed=*/hel == 0, /*along_positive_x=*/false));
    for (int ini = 0; ini < 2; ++ini)
      for (int fin = 0; fin < 2; ++fin)
        table.amp[ini][fin][hel] =
            compton_tensor(kin, tilted[ini], tilted[fin]);
  }
  return table;
}

ComptonKinematics random_onshell_kinematics(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> mag(0.05, 1.0);

  auto random_unit = [&] {
    while (true) {
      const Vec3 v{uni(rng), uni(rng), uni(rng)};
      const double n2 = norm2(v);
      if (n2 > 1e-4 && n2 <= 1.0) return (1.0 / std::sqrt(n2)) * v;
    }
  };

  const Vec3 p_i = mag(rng) * (2.0 * random_unit());  // |p_i| <= 2
  const Vec3 k_in = mag(rng) * random_unit();
  const Vec3 dir_out = random_unit();
  const double k_out_mag = solve_outgoing_photon_momentum(p_i, k_in, dir_out);
  const Vec3 k_out = k_out_mag * dir_out;

  // random complex polarizations transverse to the propagation directions
  auto transverse_pol = [&](const Vec3& k) {
    const Vec3 n = (1.0 / std::sqrt(norm2(k))) * k;
    Vec3 t1 = std::abs(n.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    t1 = t1 - dot(t1, n) * n;
    t1 = (1.0 / std::sqrt(norm2(t1))) * t1;
    const Vec3 t2{n.y * t1.z - n.z * t1.y, n.z * t1.x - n.x * t1.z,
                  n.x * t1.y - n.y * t1.x};
    const cplx c1{uni(rng), uni(rng)};
    const cplx c2{uni(rng), uni(rng)};
    const double norm = std::sqrt(std::norm(c1) + std::norm(c2));
    FourVector pol;
    for (int i = 0; i < 3; ++i)
      pol[i + 1] = (c1 * t1[i] + c2 * t2[i]) / norm;
    return pol;
  };

  return make_compton_kinematics(p_i, k_in, k_out, transverse_pol(k_in),
                                 transverse_pol(k_out));
}

}  // namespace kdspin
