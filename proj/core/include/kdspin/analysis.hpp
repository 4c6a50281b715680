#pragma once

#include "kdspin/evolution.hpp"
#include "kdspin/linalg.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace kdspin {

enum class Tilted { southeast, northwest };

const SpinState& tilted_state(Tilted which);

// <bra| U |ket> on the tilted pair for a 2x2 spin block given in the
// up/down basis.
cplx project_tilted(const SpinMatrix2& U, Tilted bra, Tilted ket);

struct RabiFit {
  double omega = 0.0;      // angular frequency, units of m
  double phase = 0.0;      // offset in P = (1 - cos(omega t - phase))/2
  double rms_residual = 0.0;
  double r_squared = 0.0;
  bool acceptable = false;  // false: poor-fit diagnostic
  std::string diagnostic;
};

// Least-squares fit of P = sin^2(omega t / 2 + ...) with fixed unit
// amplitude; frequency seeded from a periodogram (or the amplitude growth
// when the series spans less than a full oscillation), refined by
// damped Gauss-Newton.
RabiFit fit_rabi(std::span<const double> t, std::span<const double> p);

struct ChannelRow {
  double t_cycles = 0.0;
  double t_fs = 0.0;
  double p2_nw = 0.0;  // diffracted mode projected on nw
  double p0_se = 0.0;  // initial mode projected on se
  double norm_residual = 0.0;
};

std::vector<ChannelRow> channel_report(const SimulationResult& result);

// exact CSV contract: t_cycles,t_fs,P_2_nw,P_0_se,norm_residual
void write_channel_csv(std::ostream& os, std::span<const ChannelRow> rows);

// All four tilted projections of the two retained modes for one sample.
struct SpinChannels {
  double p0_se, p0_nw, p2_se, p2_nw;
};

SpinChannels spin_channels(const Sample& sample);

}  // namespace kdspin
