#include "kdspin/analysis.hpp"

#include "kdspin/constants.hpp"
#include "kdspin/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace kdspin {

const SpinState& tilted_state(Tilted which) {
  return which == Tilted::southeast ? spin_southeast() : spin_northwest();
}

cplx project_tilted(const SpinMatrix2& U, Tilted bra, Tilted ket) {
  return sandwich(tilted_state(bra), U, tilted_state(ket));
}

namespace {

struct Model {
  double ssr = 0.0;
  double omega = 0.0;
  double phase = 0.0;
};

double sum_squared_residuals(std::span<const double> t,
                             std::span<const double> p, double omega,
                             double phase) {
  double ssr = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double m = 0.5 * (1.0 - std::cos(omega * t[i] - phase));
    const double r = p[i] - m;
    ssr += r * r;
  }
  return ssr;
}

// linear LS for the phase at fixed omega:
// P ~ 1/2 - (cos(phase)/2) cos(omega t) - (sin(phase)/2) sin(omega t)
double phase_at_fixed_omega(std::span<const double> t,
                            std::span<const double> p, double omega) {
  double cc = 0.0, cs = 0.0, ss = 0.0, rc = 0.0, rs = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double c = std::cos(omega * t[i]);
    const double s = std::sin(omega * t[i]);
    const double r = p[i] - 0.5;
    cc += c * c;
    cs += c * s;
    ss += s * s;
    rc += r * c;
    rs += r * s;
  }
  const double det = cc * ss - cs * cs;
  if (std::abs(det) < 1e-300) return 0.0;
  const double a = (rc * ss - rs * cs) / det;  // coefficient of cos
  const double b = (rs * cc - rc * cs) / det;  // coefficient of sin
  return std::atan2(-b, -a);
}

Model refine(std::span<const double> t, std::span<const double> p,
             double omega0, double phase0) {
  double omega = omega0, phase = phase0;
  double ssr = sum_squared_residuals(t, p, omega, phase);
  double lambda = 1e-6;
  for (int it = 0; it < 200; ++it) {
    double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0, jr0 = 0.0, jr1 = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double arg = omega * t[i] - phase;
      const double m = 0.5 * (1.0 - std::cos(arg));
      const double r = p[i] - m;
      const double j0 = 0.5 * std::sin(arg) * t[i];  // d m / d omega
      const double j1 = -0.5 * std::sin(arg);        // d m / d phase
      jtj00 += j0 * j0;
      jtj01 += j0 * j1;
      jtj11 += j1 * j1;
      jr0 += j0 * r;
      jr1 += j1 * r;
    }
    const double a00 = jtj00 * (1.0 + lambda);
    const double a11 = jtj11 * (1.0 + lambda);
    const double det = a00 * a11 - jtj01 * jtj01;
    if (std::abs(det) < 1e-300) break;
    const double d_omega = (jr0 * a11 - jr1 * jtj01) / det;
    const double d_phase = (jr1 * a00 - jr0 * jtj01) / det;
    const double new_ssr =
        sum_squared_residuals(t, p, omega + d_omega, phase + d_phase);
    if (new_ssr < ssr) {
      omega += d_omega;
      phase += d_phase;
      const bool converged = ssr - new_ssr < 1e-15 * (1.0 + ssr);
      ssr = new_ssr;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (converged) break;
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  return {ssr, omega, phase};
}

}  // namespace

RabiFit fit_rabi(std::span<const double> t, std::span<const double> p) {
  if (t.size() != p.size())
    throw std::invalid_argument("fit_rabi: size mismatch");
  if (t.size() < 50)
    throw std::invalid_argument("fit_rabi: need at least 50 samples");

  const std::size_t n = t.size();
  double mean = 0.0;
  for (double v : p) mean += v;
  mean /= static_cast<double>(n);
  double sst = 0.0;
  for (double v : p) sst += (v - mean) * (v - mean);

  RabiFit fit;
  if (sst < 1e-20 * static_cast<double>(n)) {
    fit.diagnostic = "poor fit: non-oscillatory (constant) series";
    return fit;
  }

  const double span = t.back() - t.front();
  if (span <= 0.0) throw std::invalid_argument("fit_rabi: bad time axis");

  std::vector<double> candidates;

  // periodogram of the detrended series on a fine frequency grid
  {
    double dt_min = span;
    for (std::size_t i = 1; i < n; ++i) dt_min = std::min(dt_min, t[i] - t[i - 1]);
    const double w_min = 2.0 * std::numbers::pi / (4.0 * span);
    const double w_max = std::numbers::pi / std::max(dt_min, 1e-300);
    double best_power = -1.0, best_w = w_min;
    for (double w = w_min; w <= w_max; w += w_min) {
      double re = 0.0, im = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double v = p[i] - mean;
        re += v * std::cos(w * t[i]);
        im += v * std::sin(w * t[i]);
      }
      const double power = re * re + im * im;
      if (power > best_power) {
        best_power = power;
        best_w = w;
      }
    }
    candidates.push_back(best_w);
  }

  // growth-based seed for series shorter than one oscillation
  {
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (p[i] > p[imax]) imax = i;
    if (t[imax] > 0.0 && p[imax] > 1e-12) {
      const double amp = std::sqrt(std::clamp(p[imax], 0.0, 1.0));
      candidates.push_back(2.0 * std::asin(amp) / t[imax]);
    }
  }

  Model best{1e300, 0.0, 0.0};
  for (double w0 : candidates) {
    const Model m = refine(t, p, w0, phase_at_fixed_omega(t, p, w0));
    if (m.ssr < best.ssr) best = m;
  }

  fit.omega = std::abs(best.omega);
  fit.phase = std::remainder(best.phase, 2.0 * std::numbers::pi);
  fit.rms_residual = std::sqrt(best.ssr / static_cast<double>(n));
  fit.r_squared = 1.0 - best.ssr / sst;
  fit.acceptable = fit.r_squared >= 0.9;
  if (!fit.acceptable) fit.diagnostic = "poor fit: r_squared below 0.9";
  return fit;
}

std::vector<ChannelRow> channel_report(const SimulationResult& result) {
  std::vector<ChannelRow> rows;
  rows.reserve(result.samples.size());
  const SpinState& se = spin_southeast();
  const SpinState& nw = spin_northwest();
  for (const Sample& s : result.samples) {
    ChannelRow row;
    row.t_cycles = s.t / result.optical_period;
    row.t_fs = fs_from_natural_time(s.t);
    row.p2_nw = std::norm(inner(nw, s.c2));
    row.p0_se = std::norm(inner(se, s.c0));
    row.norm_residual = s.norm_residual;
    rows.push_back(row);
  }
  return rows;
}

void write_channel_csv(std::ostream& os, std::span<const ChannelRow> rows) {
  os << "t_cycles,t_fs,P_2_nw,P_0_se,norm_residual\n";
  os.precision(15);
  for (const auto& r : rows) {
    os << r.t_cycles << ',' << r.t_fs << ',' << r.p2_nw << ',' << r.p0_se
       << ',' << r.norm_residual << '\n';
  }
}

SpinChannels spin_channels(const Sample& sample) {
  const SpinState& se = spin_southeast();
  const SpinState& nw = spin_northwest();
  return {std::norm(inner(se, sample.c0)), std::norm(inner(nw, sample.c0)),
          std::norm(inner(se, sample.c2)), std::norm(inner(nw, sample.c2))};
}

}  // namespace kdspin
