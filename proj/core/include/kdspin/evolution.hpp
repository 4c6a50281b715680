#pragma once

#include "kdspin/field.hpp"
#include "kdspin/linalg.hpp"

#include <span>
#include <utility>
#include <vector>

namespace kdspin {

// Amplitudes c_n^s (positive branch) and d_n^s (negative branch) over the
// momentum ladder, flat layout [(n+N)*4 + comp] with comp 0=c_up, 1=c_down,
// 2=d_up, 3=d_down.
struct StateVector {
  int truncation = 0;
  std::vector<cplx> amps;

  static StateVector zero(int truncation) {
    StateVector s;
    s.truncation = truncation;
    s.amps.assign(4 * (2 * truncation + 1), cplx{});
    return s;
  }

  int dim() const { return static_cast<int>(amps.size()); }
  int offset(int n) const { return 4 * (n + truncation); }

  cplx& at(int n, Branch g, int spin) {
    return amps[offset(n) + (g == Branch::positive ? 0 : 2) + spin];
  }
  const cplx& at(int n, Branch g, int spin) const {
    return amps[offset(n) + (g == Branch::positive ? 0 : 2) + spin];
  }

  SpinState spin_pair(int n, Branch g) const {
    return {at(n, g, 0), at(n, g, 1)};
  }

  double norm2() const;
};

// Unit amplitude in mode (n, branch) with the given spin.
StateVector basis_state(const MomentumLadder& ladder, int n, Branch g,
                        const SpinState& s);

// Right-hand side of the coupled momentum-space system (reference form,
// Schrodinger picture): i dc = +E c + V..., i dd = -E d + V...
StateVector rhs(const StateVector& state, double t, const LaserConfig& cfg,
                const MomentumLadder& ladder);

enum class StepMethod {
  cf4_magnus,  // unitary 4th-order commutator-free Magnus (default)
  rk4,         // classical RK4; needs very fine steps to resolve the
               // counter-rotating c-d couplings at ~2E
};

struct PropagateOptions {
  int steps_per_cycle = 128;  // >= 16
  double sample_every_cycles = 1.0;
  double norm_abort = 1e-6;
  StepMethod method = StepMethod::cf4_magnus;
};

struct Sample {
  double t = 0.0;              // natural units
  double t_effective = 0.0;    // integral of envelope^2 up to t
  double norm_residual = 0.0;  // |psi|^2 - 1
  SpinState c0, c2;            // Schrodinger-picture spin pairs, positive branch
  double antiparticle_occupancy = 0.0;  // sum |d|^2
  double other_mode_occupancy = 0.0;    // sum |c_n|^2, n outside {0, 2}
};

struct SimulationResult {
  std::vector<Sample> samples;
  StateVector final_state;  // Schrodinger picture
  double duration = 0.0;
  double optical_period = 0.0;
  double max_norm_drift = 0.0;
};

// Interaction-picture propagation: the free +-E phases are applied exactly,
// the residual coupled system is advanced by classical RK4 with fixed step
// (2pi/k_l)/steps_per_cycle. Aborts if the norm drifts beyond opts.norm_abort.
SimulationResult propagate(const StateVector& initial, const LaserConfig& cfg,
                           const MomentumLadder& ladder, double t_final,
                           const PropagateOptions& opts = {});

struct PropagatorBlock {
  double t = 0.0;
  struct Entry {
    int n;
    Branch branch;
    SpinMatrix2 U;  // columns are the images of spin-up / spin-down
  };
  std::vector<Entry> entries;

  const SpinMatrix2* find(int n, Branch g) const;
};

// Runs one propagation per basis initial condition at (n=0, positive branch)
// and assembles the requested U_{n,0}(t,0) spin blocks.
PropagatorBlock extract_propagator(
    const LaserConfig& cfg, const MomentumLadder& ladder, double t_final,
    std::span<const std::pair<int, Branch>> channels,
    const PropagateOptions& opts = {});

}  // namespace kdspin
