#include "spinmkt/sojourn.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace spinmkt {

std::vector<Crossing> detect_crossings(const std::vector<PathRecord>& path, int ref_state) {
  std::vector<Crossing> out;
  for (size_t k = 0; k + 1 < path.size(); ++k) {
    const auto& r = path[k];
    if (r.xbar == 0 || r.i_after != ref_state) continue;
    const auto& next = path[k + 1];
    if (next.epoch != r.epoch + 1) continue;  // successor was a hold
    if (r.xbar * next.xbar > 0)
      out.push_back({r.epoch, r.time, r.xbar > 0 ? 1 : -1});
  }
  return out;
}

std::vector<SojournSample> samples_from_crossings(const std::vector<Crossing>& crossings,
                                                  int ref_state) {
  if (crossings.size() < 2)
    throw InsufficientCrossings("need at least two crossings of state " +
                                std::to_string(ref_state));
  std::vector<SojournSample> out;
  out.reserve(crossings.size() - 1);
  for (size_t l = 1; l < crossings.size(); ++l) {
    SojournSample s;
    s.ref_state = ref_state;
    s.index = static_cast<long long>(l);
    s.tau_epochs = crossings[l].epoch - crossings[l - 1].epoch;
    s.tau_time = crossings[l].time - crossings[l - 1].time;
    s.direction = crossings[l - 1].direction;
    out.push_back(s);
  }
  return out;
}

std::vector<SojournSample> sojourn_samples(const std::vector<PathRecord>& path, int ref_state) {
  return samples_from_crossings(detect_crossings(path, ref_state), ref_state);
}

namespace {

// type-7 (linear interpolation) percentile of a sorted sample
double percentile(const std::vector<double>& sorted, double pct) {
  const double pos = pct / 100.0 * (static_cast<double>(sorted.size()) - 1);
  const size_t lo = static_cast<size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

std::vector<std::pair<double, double>> empirical_survival(std::vector<double> durations,
                                                          const GridSpec& grid) {
  std::sort(durations.begin(), durations.end());
  const double n = static_cast<double>(durations.size());
  const double lo = percentile(durations, grid.lo_pct);
  const double hi = percentile(durations, grid.hi_pct);
  if (!(lo > 0) || !(hi >= lo)) throw DegenerateGrid("survival grid needs positive durations");
  const double log_lo = std::log(lo), log_hi = std::log(hi);
  const double floor = grid.floor_mult / n;
  std::vector<std::pair<double, double>> out;
  double prev_t = -1;
  for (int g = 0; g < grid.n_points; ++g) {
    const double f = grid.n_points == 1 ? 0.0 : static_cast<double>(g) / (grid.n_points - 1);
    const double t = std::exp(log_lo + f * (log_hi - log_lo));
    if (t == prev_t) continue;
    prev_t = t;
    const auto it = std::upper_bound(durations.begin(), durations.end(), t);
    const double surv = static_cast<double>(durations.end() - it) / n;
    if (surv >= floor && surv > 0) out.emplace_back(t, surv);
  }
  return out;
}

TailFit fit_log_tail(const std::vector<double>& durations, const GridSpec& grid) {
  if (static_cast<long long>(durations.size()) < grid.min_samples)
    throw InsufficientSamples("tail fit needs at least " + std::to_string(grid.min_samples) +
                              " durations, got " + std::to_string(durations.size()));
  const auto pts = empirical_survival(durations, grid);
  if (pts.size() < 4) throw DegenerateGrid("fewer than 4 distinct grid points");

  // normal equations on u = t / t_max, solved in long double; the scaling
  // keeps the 4x4 Gram matrix well conditioned
  const double scale = pts.back().first;
  long double m[4][5] = {};
  for (const auto& [t, s] : pts) {
    const long double u = t / scale, y = std::log(static_cast<long double>(s));
    long double pow_a = 1;
    for (int a = 0; a < 4; ++a) {
      long double pow_b = pow_a * pow_a;  // Gram entry (a,b) accumulates u^{a+b}
      for (int b = a; b < 4; ++b) {
        m[a][b] += pow_b;
        pow_b *= u;
      }
      m[a][4] += pow_a * y;
      pow_a *= u;
    }
  }
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < a; ++b) m[a][b] = m[b][a];

  for (int col = 0; col < 4; ++col) {  // gaussian elimination, partial pivoting
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (m[piv][col] == 0) throw DegenerateGrid("singular fit system");
    if (piv != col)
      for (int cc = 0; cc < 5; ++cc) std::swap(m[piv][cc], m[col][cc]);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const long double f = m[r][col] / m[col][col];
      for (int cc = col; cc < 5; ++cc) m[r][cc] -= f * m[col][cc];
    }
  }
  std::array<long double, 4> c;
  for (int a = 0; a < 4; ++a) c[a] = m[a][4] / m[a][a];

  TailFit fit;
  fit.c0 = static_cast<double>(c[0]);
  fit.c1 = static_cast<double>(c[1] / scale);
  fit.c2 = static_cast<double>(c[2] / (scale * scale));
  fit.c3 = static_cast<double>(c[3] / (scale * scale * scale));
  fit.t_min = pts.front().first;
  fit.t_max = pts.back().first;
  fit.n_samples = static_cast<long long>(durations.size());
  long double rss = 0;
  for (const auto& [t, s] : pts) {
    const long double u = t / scale;
    const long double pred = c[0] + u * (c[1] + u * (c[2] + u * c[3]));
    const long double resid = std::log(static_cast<long double>(s)) - pred;
    rss += resid * resid;
  }
  fit.rss = static_cast<double>(rss);
  return fit;
}

TailFit fit_log_tail(const std::vector<SojournSample>& samples, bool continuous_time,
                     const GridSpec& grid) {
  std::vector<double> durations;
  durations.reserve(samples.size());
  for (const auto& s : samples)
    durations.push_back(continuous_time ? s.tau_time : static_cast<double>(s.tau_epochs));
  return fit_log_tail(durations, grid);
}

}  // namespace spinmkt
