#include "kdspin/field.hpp"

#include "kdspin/constants.hpp"
#include "kdspin/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kdspin {

double LaserConfig::optical_period() const {
  return 2.0 * std::numbers::pi / k_l;
}

LaserConfig standing_wave_config(double k_l, double xi, double xi_prime,
                                 double total_cycles, double ramp_cycles) {
  if (k_l <= 0.0) throw std::invalid_argument("standing_wave_config: k_l <= 0");
  if (total_cycles < 2.0 * ramp_cycles)
    throw std::invalid_argument(
        "standing_wave_config: run shorter than the two envelope ramps");
  LaserConfig cfg;
  cfg.k_l = k_l;
  const double amp = xi / coupling_e;        // vector-potential amplitude
  const double amp_p = xi_prime / coupling_e;
  cfg.a = FourVector{{0.0, 0.0, 0.0, amp}};
  cfg.a_prime = FourVector{{0.0, 0.0, amp_p / std::sqrt(2.0),
                            iu * amp_p / std::sqrt(2.0)}};
  cfg.ramp_cycles = ramp_cycles;
  cfg.plateau_cycles = total_cycles - 2.0 * ramp_cycles;
  return cfg;
}

double MomentumLadder::energy(int n) const {
  return relativistic_energy(momentum(n));
}

MomentumLadder standard_kinematics(double k_l, std::optional<double> pz_override,
                                   int truncation) {
  if (k_l <= 0.0) throw std::invalid_argument("standard_kinematics: k_l <= 0");
  MomentumLadder ladder;
  ladder.k_l = k_l;
  ladder.p_i = {-k_l, 0.0, pz_override.value_or(1.0)};
  ladder.truncation = truncation;
  return ladder;
}

double envelope(double t, const LaserConfig& cfg) {
  const double ramp = cfg.ramp_cycles * cfg.optical_period();
  const double total = cfg.total_duration();
  if (t <= 0.0 || t >= total) return 0.0;
  if (t < ramp) {
    const double s = std::sin(0.5 * std::numbers::pi * t / ramp);
    return s * s;
  }
  if (t > total - ramp) {
    const double s = std::sin(0.5 * std::numbers::pi * (total - t) / ramp);
    return s * s;
  }
  return 1.0;
}

namespace {

int composite_index(Branch g, const SpinState& s) {
  // only the basis states are valid here
  const bool is_up = std::abs(s.up - 1.0) < 1e-14 && std::abs(s.down) < 1e-14;
  const bool is_down = std::abs(s.down - 1.0) < 1e-14 && std::abs(s.up) < 1e-14;
  if (!is_up && !is_down)
    throw std::invalid_argument("potential_V: spin label must be up or down");
  return (g == Branch::positive ? 0 : 2) + (is_up ? 0 : 1);
}

}  // namespace

cplx potential_V(int n, int np, Branch g, Branch gp, const SpinState& s,
                 const SpinState& sp, double t, const LaserConfig& cfg,
                 const MomentumLadder& ladder) {
  if (!ladder.contains(n) || !ladder.contains(np))
    throw std::invalid_argument("potential_V: ladder index out of range");
  if (np != n - 1 && np != n + 1) return 0.0;  // nearest-neighbor selection rule

  const Vec3 kn = ladder.momentum(n);
  const Vec3 knp = ladder.momentum(np);
  const cplx rot = std::exp(-iu * cfg.k_l * t);

  // raising (n' = n-1): a e^{-i k_l t} + a'* e^{+i k_l t}
  // lowering (n' = n+1): a' e^{-i k_l t} + a* e^{+i k_l t}
  const FourVector& pol_neg = (np == n - 1) ? cfg.a : cfg.a_prime;
  const FourVector pol_pos = (np == n - 1) ? conj(cfg.a_prime) : conj(cfg.a);

  const int row = composite_index(g, s);
  const int col = composite_index(gp, sp);
  const Mat4 neg = coupling_block(kn, knp, pol_neg);
  const Mat4 pos = coupling_block(kn, knp, pol_pos);

  const cplx bare = rot * neg(row, col) + std::conj(rot) * pos(row, col);
  return -0.5 * coupling_e * envelope(t, cfg) * bare;
}

InteractionBlocks InteractionBlocks::build(const LaserConfig& cfg,
                                           const MomentumLadder& ladder) {
  InteractionBlocks blocks;
  const int nsize = ladder.size();
  blocks.truncation = ladder.truncation;
  blocks.a_lo.assign(nsize, Mat4{});
  blocks.a_hi.assign(nsize, Mat4{});
  blocks.b_lo.assign(nsize, Mat4{});
  blocks.b_hi.assign(nsize, Mat4{});
  const cplx scale = -0.5 * coupling_e;
  for (int n = -ladder.truncation; n <= ladder.truncation; ++n) {
    const int i = n + ladder.truncation;
    const Vec3 kn = ladder.momentum(n);
    if (n - 1 >= -ladder.truncation) {
      const Vec3 km = ladder.momentum(n - 1);
      blocks.a_lo[i] = scale * coupling_block(kn, km, cfg.a);
      blocks.b_lo[i] = scale * coupling_block(kn, km, conj(cfg.a_prime));
    }
    if (n + 1 <= ladder.truncation) {
      const Vec3 kp = ladder.momentum(n + 1);
      blocks.a_hi[i] = scale * coupling_block(kn, kp, cfg.a_prime);
      blocks.b_hi[i] = scale * coupling_block(kn, kp, conj(cfg.a));
    }
  }
  return blocks;
}

}  // namespace kdspin
