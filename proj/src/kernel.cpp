#include "spinmkt/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace spinmkt {

namespace {

using u128 = unsigned __int128;

long double log_binom(int n, int k) {
  return std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) - std::lgamma(n - k + 1.0L);
}

}  // namespace

long double binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0L;
  k = std::min(k, n - k);
  u128 r = 1;
  for (int i = 1; i <= k; ++i) {
    const u128 f = static_cast<u128>(n - k + i);
    if (r > ~static_cast<u128>(0) / f) return std::exp(log_binom(n, k));
    r = r * f / static_cast<u128>(i);  // exact: each prefix is C(n-k+i, i)
  }
  return static_cast<long double>(r);
}

int threshold_c(const Params& p, int i) {
  const long long m = std::llabs(2LL * i - p.N);  // alpha|i/N - 1/2| = alpha m / 2N
  if (p.alpha_ratio) {
    const __int128 num = static_cast<__int128>(p.alpha_ratio->num) * m;
    const __int128 den = static_cast<__int128>(p.alpha_ratio->den) * 2 * p.N;
    return static_cast<int>((num + den - 1) / den);
  }
  const double a = p.alpha * static_cast<double>(m) / (2.0 * p.N);
  const double r = std::nearbyint(a);
  if (std::fabs(a - r) <= 1e-9 * std::max(1.0, std::fabs(a))) return static_cast<int>(r);
  return static_cast<int>(std::ceil(a));
}

bool in_band(const Params& p, int i) {
  // alpha|i/N - 1/2| <= d is exactly ceil(alpha|i/N - 1/2|) <= d, so the band
  // test shares the threshold arithmetic and cannot drift from it.
  return threshold_c(p, i) <= p.d;
}

double neighbor_count_pmf_plus(const Params& p, int i, int j) {
  return static_cast<double>(binom(i - 1, j) * binom(p.N - i, 2 * p.d - j) /
                             binom(p.N - 1, 2 * p.d));
}

double neighbor_count_pmf_minus(const Params& p, int i, int j) {
  return static_cast<double>(binom(i, j) * binom(p.N - i - 1, 2 * p.d - j) /
                             binom(p.N - 1, 2 * p.d));
}

TransitionProbs transition_probs(const Params& p, int i) {
  if (p.phase != Phase::Frozen)
    throw InvalidParams("transition probabilities are defined in the frozen phase only");
  const int N = p.N, twod = 2 * p.d;
  const double i_over_n = static_cast<double>(i) / N;
  double p_pp = 0, p_mm = 0;
  if (in_band(p, i)) {
    const int c = threshold_c(p, i);
    long double s = 0;
    for (int j = std::max(p.d + c, i + twod - N); j <= std::min(twod, i); ++j)
      s += neighbor_count_pmf_plus(p, i, j);
    p_pp = i_over_n * static_cast<double>(s);
    s = 0;
    for (int j = std::max(0, i + twod - N); j <= std::min(p.d - c, i); ++j)
      s += neighbor_count_pmf_minus(p, i, j);
    p_mm = (1.0 - i_over_n) * static_cast<double>(s);
  }
  TransitionProbs t;
  t.i = i;
  t.p_pp = p_pp;
  t.p_mm = p_mm;
  t.p_pm = std::max(0.0, i_over_n - p_pp);
  t.p_mp = std::max(0.0, (1.0 - i_over_n) - p_mm);
  return t;
}

KernelTable::KernelTable(const Params& p) {
  p.validate();
  rows_.reserve(p.N + 1);
  for (int i = 0; i <= p.N; ++i) rows_.push_back(transition_probs(p, i));
}

}  // namespace spinmkt
