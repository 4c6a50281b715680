#include "kdspin/perturbation.hpp"

#include "kdspin/constants.hpp"
#include "kdspin/dirac.hpp"
#include "kdspin/errors.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace kdspin {

namespace {

double checked_inverse(double denom, const char* label) {
  if (std::abs(denom) < 1e-12)
    throw SingularKinematics(std::string("prefactors: on-shell intermediate "
                                         "state, vanishing denominator ") +
                             label);
  return 1.0 / denom;
}

constexpr double metric_sign(int mu) { return mu == 0 ? 1.0 : -1.0; }

struct CouplingSet {
  // spin blocks of the two ladder rungs for all four Lorentz components
  std::array<SpinMatrix2, 4> pp21, pp10, pm21, mp10;
};

CouplingSet build_couplings(const Vec3& k0, const Vec3& k1, const Vec3& k2) {
  CouplingSet c;
  for (int mu = 0; mu < 4; ++mu) {
    c.pp21[mu] =
        coupling_spin_block(k2, k1, Branch::positive, Branch::positive, mu);
    c.pp10[mu] =
        coupling_spin_block(k1, k0, Branch::positive, Branch::positive, mu);
    c.pm21[mu] =
        coupling_spin_block(k2, k1, Branch::positive, Branch::negative, mu);
    c.mp10[mu] =
        coupling_spin_block(k1, k0, Branch::negative, Branch::positive, mu);
  }
  return c;
}

// F_a L^mu_{21} L^nu_{10} + F_b L^nu_{21} L^mu_{10}
//   + F_c L^nu_{21} L^mu_{10} (negative intermediate)
//   + F_d L^mu_{21} L^nu_{10} (negative intermediate),
// the spin sum over the intermediate state being the 2x2 matrix product.
SpinMatrix2 path_sum(const CouplingSet& c, const Prefactors& f, int mu,
                     int nu) {
  return cplx(f.a) * (c.pp21[mu] * c.pp10[nu]) +
         cplx(f.b) * (c.pp21[nu] * c.pp10[mu]) +
         cplx(f.c) * (c.pm21[nu] * c.mp10[mu]) +
         cplx(f.d) * (c.pm21[mu] * c.mp10[nu]);
}

}  // namespace

Prefactors prefactors(const Vec3& k0, const Vec3& k1, double k_l) {
  const double e0 = relativistic_energy(k0);
  const double e1 = relativistic_energy(k1);
  return {checked_inverse(e0 - e1 + k_l, "a"),
          checked_inverse(e0 - e1 - k_l, "b"),
          checked_inverse(e0 + e1 - k_l, "c"),
          checked_inverse(e0 + e1 + k_l, "d")};
}

SpinMatrix2 resonant_amplitude_20(double t, double t0, const LaserConfig& cfg,
                                  const MomentumLadder& ladder) {
  const Vec3 k0 = ladder.momentum(0);
  const Vec3 k1 = ladder.momentum(1);
  const Vec3 k2 = ladder.momentum(2);
  const double e0 = relativistic_energy(k0);
  const double e2 = relativistic_energy(k2);
  if (std::abs(e2 - e0) > 1e-9)
    throw PreconditionError(
        "resonant_amplitude_20: Bragg condition E_k2 = E_k0 violated");

  const CouplingSet c = build_couplings(k0, k1, k2);
  const Prefactors f = prefactors(k0, k1, cfg.k_l);

  SpinMatrix2 amp = SpinMatrix2::zero();
  for (int mu = 0; mu < 4; ++mu) {
    const cplx ab = metric_sign(mu) * std::conj(cfg.a_prime[mu]);
    if (ab == 0.0) continue;
    for (int nu = 0; nu < 4; ++nu) {
      const cplx av = metric_sign(nu) * cfg.a[nu];
      if (av == 0.0) continue;
      amp = amp + (ab * av) * path_sum(c, f, mu, nu);
    }
  }
  const double e2q = coupling_e * coupling_e;
  const cplx scale = -iu * (e2q / 4.0) * (t - t0) *
                     std::exp(-iu * e0 * (t - t0));
  return scale * amp;
}

SpinMatrix2 spin_matrix_M(const ScaledKinematics& kin, int mu, int nu) {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3)
    throw std::invalid_argument("spin_matrix_M: index out of range");
  const Vec3 k0{-kin.q_l, kin.q_2, kin.k3()};
  const Vec3 k1{0.0, kin.q_2, kin.k3()};
  const Vec3 k2{kin.q_l, kin.q_2, kin.k3()};
  const CouplingSet c = build_couplings(k0, k1, k2);
  const Prefactors f = prefactors(k0, k1, kin.q_l);
  const double norm =
      std::sqrt(relativistic_energy(k2) * relativistic_energy(k0));
  return cplx(norm) * path_sum(c, f, mu, nu);
}

SpinMatrix2 taylor_M(const ScaledKinematics& kin, int mu, int nu) {
  if ((mu != 2 && mu != 3) || (nu != 2 && nu != 3))
    throw UnsupportedComponent(
        "taylor_M: expansion available for mu, nu in {2, 3} only");
  const double ql = kin.q_l;
  const double q2 = kin.q_2;
  const double q3 = kin.q3_shift;
  const double r2 = std::sqrt(2.0);
  const SpinMatrix2 one = SpinMatrix2::identity();

  if (mu == 2 && nu == 2) {
    return cplx(1.0 + 0.5 * (r2 - 1.0) * ql * ql - q2 * q2) * one +
           (-iu / r2 * ((r2 - 1.0) + 0.5 * (3.0 - 2.0 * r2) * q3) * ql) *
               pauli_y +
           (-iu / r2 * ql * q2) * pauli_z;
  }
  if (mu == 2 && nu == 3) {
    return cplx(-q2) * one +
           cplx(ql) * ((-0.5 * iu + 0.5 * iu * q3) * pauli_x +
                       (0.5 * iu * q2) * pauli_y + (-0.5 * iu) * pauli_z);
  }
  if (mu == 3 && nu == 2) {
    return cplx(-q2) * one +
           cplx(ql) * ((0.5 * iu - 0.5 * iu * q3) * pauli_x +
                       (0.5 * iu * q2) * pauli_y + (-0.5 * iu) * pauli_z);
  }
  // mu == 3 && nu == 3
  return cplx(-q3 + 0.5 * q3 * q3 + 0.5 * (r2 - 1.0) * ql * ql +
              0.5 * q2 * q2) *
             one +
         (-iu / r2 * (-1.0 + 0.5 * (3.0 - 2.0 * r2) * q3) * ql) * pauli_y +
         (iu * (r2 - 1.0) / r2 * q2 * ql) * pauli_z;
}

SpinMatrix2 contracted_spin_propagation(const FourVector& a,
                                        const FourVector& a_prime,
                                        const ScaledKinematics& kin) {
  double amp_a = 0.0, amp_ap = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    amp_a += std::norm(a[mu]);
    amp_ap += std::norm(a_prime[mu]);
  }
  const double norm = std::sqrt(amp_a) * std::sqrt(amp_ap);
  if (norm == 0.0)
    throw std::invalid_argument(
        "contracted_spin_propagation: vanishing polarization amplitude");

  SpinMatrix2 r = SpinMatrix2::zero();
  for (int mu = 0; mu < 4; ++mu) {
    const cplx ab = metric_sign(mu) * std::conj(a_prime[mu]);
    if (ab == 0.0) continue;
    for (int nu = 0; nu < 4; ++nu) {
      const cplx av = metric_sign(nu) * a[nu];
      if (av == 0.0) continue;
      r = r + (ab * av / norm) * spin_matrix_M(kin, mu, nu);
    }
  }
  return r;
}

SpinMatrix2 contracted_spin_propagation(const LaserConfig& cfg,
                                        const ScaledKinematics& kin) {
  return contracted_spin_propagation(cfg.a, cfg.a_prime, kin);
}

double tune_longitudinal_momentum(double k_l) {
  if (k_l <= 0.0)
    throw std::invalid_argument("tune_longitudinal_momentum: k_l <= 0");
  const FourVector unit_a{{0.0, 0.0, 0.0, 1.0}};
  const FourVector unit_ap{
      {0.0, 0.0, 1.0 / std::sqrt(2.0), iu / std::sqrt(2.0)}};
  const SpinState& se = spin_southeast();

  auto objective = [&](double pz) {
    const ScaledKinematics kin{k_l, 0.0, pz - 1.0};
    return std::norm(
        sandwich(se, contracted_spin_propagation(unit_a, unit_ap, kin), se));
  };

  // golden-section search
  double lo = 0.999, hi = 1.002;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  const double tol = 1e-9;
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = objective(x2);
    }
  }
  const double pz = 0.5 * (lo + hi);
  if (pz - 0.999 < 10.0 * tol || 1.002 - pz < 10.0 * tol)
    throw PhysicsError(
        "tune_longitudinal_momentum: no interior minimum in [0.999, 1.002]");
  return pz;
}

double short_time_probability(double eA, double eA_prime, double k_l,
                              double t) {
  if (eA <= 0.0 || eA_prime <= 0.0 || k_l <= 0.0 || t < 0.0)
    throw std::invalid_argument("short_time_probability: invalid arguments");
  const double amp = eA * eA_prime * k_l * t / (8.0 * std::sqrt(2.0));
  return amp * amp;
}

}  // namespace kdspin
