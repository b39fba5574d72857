#pragma once

// Deliberately naive reference implementations used only by tests. They
// restate the model definitions as literally as possible so the optimized
// library code has something independent to disagree with.

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdint>
#include <vector>

#include "spinmkt/kernel.hpp"
#include "spinmkt/sim.hpp"

namespace oracle {

// frozen update: new spin = sign(h), ties keep the current spin
inline int frozen_flip(double h, int eta) {
  if (h > 0) return 1;
  if (h < 0) return -1;
  return eta;
}

// Literal enumeration: every site J, every 2d-subset of the other N-1 sites,
// against an explicit spin array with the first i sites positive.
inline spinmkt::TransitionProbs enumerate_kernel(const spinmkt::Params& p, int i) {
  const int N = p.N, k = 2 * p.d;
  std::vector<int> spins(N, -1);
  for (int s = 0; s < i; ++s) spins[s] = 1;
  const long long abs_m = std::llabs(2LL * i - N);

  long long flips_plus = 0, flips_minus = 0, subsets = 0;
  for (int j_site = 0; j_site < N; ++j_site) {
    std::vector<int> others;
    for (int s = 0; s < N; ++s)
      if (s != j_site) others.push_back(s);
    std::vector<int> c(k);
    for (int a = 0; a < k; ++a) c[a] = a;
    subsets = 0;
    for (;;) {
      int sum = 0;
      for (int a = 0; a < k; ++a) sum += spins[others[c[a]]];
      const double h = sum - p.alpha * spins[j_site] * static_cast<double>(abs_m) / N;
      const int next = frozen_flip(h, spins[j_site]);
      if (spins[j_site] == 1 && next == -1) ++flips_plus;
      if (spins[j_site] == -1 && next == 1) ++flips_minus;
      ++subsets;
      int a = k - 1;
      while (a >= 0 && c[a] == N - 2 - (k - 1 - a)) --a;
      if (a < 0) break;
      ++c[a];
      for (int b = a + 1; b < k; ++b) c[b] = c[b - 1] + 1;
    }
  }
  const double denom = static_cast<double>(N) * static_cast<double>(subsets);
  spinmkt::TransitionProbs t;
  t.i = i;
  t.p_pm = flips_plus / denom;
  t.p_mp = flips_minus / denom;
  t.p_pp = static_cast<double>(i) / N - t.p_pm;
  t.p_mm = (1.0 - static_cast<double>(i) / N) - t.p_mp;
  return t;
}

// Same enumeration collapsed over the two site classes (all same-spin sites
// see exchangeable neighborhoods), which keeps N=128 affordable. d=2 only.
inline spinmkt::TransitionProbs enumerate_kernel_by_class(const spinmkt::Params& p, int i) {
  const int N = p.N;
  const long long abs_m = std::llabs(2LL * i - N);
  auto flip_fraction = [&](int eta, int plus_others) {
    // others: sites 0..plus_others-1 positive, plus_others..N-2 negative
    long long flips = 0, subsets = 0;
    for (int a = 0; a < N - 1; ++a)
      for (int b = a + 1; b < N - 1; ++b)
        for (int c = b + 1; c < N - 1; ++c)
          for (int e = c + 1; e < N - 1; ++e) {
            const int j = (a < plus_others) + (b < plus_others) + (c < plus_others) +
                          (e < plus_others);
            const double h = (2 * j - 4) - p.alpha * eta * static_cast<double>(abs_m) / N;
            if (frozen_flip(h, eta) != eta) ++flips;
            ++subsets;
          }
    return static_cast<double>(flips) / static_cast<double>(subsets);
  };
  spinmkt::TransitionProbs t;
  t.i = i;
  const double frac_plus = static_cast<double>(i) / N;
  t.p_pm = i == 0 ? 0.0 : frac_plus * flip_fraction(1, i - 1);
  t.p_mp = i == N ? 0.0 : (1.0 - frac_plus) * flip_fraction(-1, i);
  t.p_pp = frac_plus - t.p_pm;
  t.p_mm = (1.0 - frac_plus) - t.p_mp;
  return t;
}

// Literal scan of the crossing definition over a dense path given by the
// initial state and the per-epoch increments (epoch k = xbars[k-1]).
inline std::vector<long long> brute_force_crossings(int i0, const std::vector<int>& xbars,
                                                    int ref_state) {
  std::vector<long long> epochs;
  std::vector<int> state(xbars.size() + 1);
  state[0] = i0;
  for (size_t k = 1; k <= xbars.size(); ++k) state[k] = state[k - 1] + xbars[k - 1];
  for (size_t k = 1; k + 1 <= xbars.size(); ++k)
    if (state[k] == ref_state && xbars[k - 1] * xbars[k] > 0)
      epochs.push_back(static_cast<long long>(k));
  return epochs;
}

// Dense PathRecord sequence for a synthetic increment sequence; continuous
// time runs at one unit per epoch.
inline std::vector<spinmkt::PathRecord> synthetic_path(int i0, const std::vector<int>& xbars,
                                                       long long record_every = 1) {
  std::vector<spinmkt::PathRecord> path;
  int state = i0;
  for (size_t k = 1; k <= xbars.size(); ++k) {
    spinmkt::PathRecord r;
    r.epoch = static_cast<long long>(k);
    r.time = static_cast<double>(k);
    r.i_before = state;
    state += xbars[k - 1];
    r.i_after = state;
    r.xbar = xbars[k - 1];
    if (r.xbar != 0 || r.epoch % record_every == 0) path.push_back(r);
  }
  return path;
}

inline double chi_square_p(const std::vector<long long>& obs, const std::vector<double>& probs) {
  long long n = 0;
  for (auto o : obs) n += o;
  double stat = 0;
  int df = -1;
  for (size_t c = 0; c < probs.size(); ++c) {
    const double expected = probs[c] * static_cast<double>(n);
    if (expected < 1e-9) {
      if (obs[c] != 0) return 0.0;  // impossible cell observed
      continue;
    }
    const double diff = static_cast<double>(obs[c]) - expected;
    stat += diff * diff / expected;
    ++df;
  }
  if (df < 1) return 1.0;
  boost::math::chi_squared dist(df);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

struct Moments {
  double mean = 0, var = 0, se_mean = 0, se_var = 0;
};

inline Moments moments(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  long double s = 0;
  for (double x : xs) s += x;
  const double mean = static_cast<double>(s / n);
  long double m2 = 0, m4 = 0;
  for (double x : xs) {
    const long double d = x - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  Moments m;
  m.mean = mean;
  m.var = static_cast<double>(m2 / (n - 1));
  m.se_mean = std::sqrt(m.var / n);
  m.se_var = std::sqrt(std::max(0.0L, (m4 / n - static_cast<long double>(m.var) * m.var) / n));
  return m;
}

}  // namespace oracle
