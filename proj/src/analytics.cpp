#include "spinmkt/analytics.hpp"

#include <cmath>
#include <stdexcept>

namespace spinmkt {

const char* to_string(RegionKind k) {
  switch (k) {
    case RegionKind::TwoIntervals: return "TwoIntervals";
    case RegionKind::Merged: return "Merged";
    case RegionKind::UpperOnly: return "UpperOnly";
  }
  return "?";
}

const char* to_string(RiskBranch b) {
  switch (b) {
    case RiskBranch::LossBelowG1: return "LossBelowG1";
    case RiskBranch::GainLower: return "GainLower";
    case RiskBranch::GainUpper: return "GainUpper";
    case RiskBranch::LossAboveG4: return "LossAboveG4";
  }
  return "?";
}

double log_price(const Params& p, int i) { return p.lambda * (2.0 * i - p.N) / p.N; }

long long volume(const Params& p, int i) {
  const long long v = std::max<long long>(i, p.N - i);
  // V = N+ v N- is the same as (|2i-N| + N)/2
  if (v != (std::llabs(2LL * i - p.N) + p.N) / 2) throw std::logic_error("volume identity");
  return v;
}

double conditional_volatility(const Params& p, const TransitionProbs& k) {
  const double move = k.p_pm + k.p_mp;  // P(X=1)
  return 2.0 * p.lambda / p.N * std::sqrt((1.0 - move) * move);
}

double log_return_sd(const Params& p, const TransitionProbs& k) {
  const double var = (k.p_pm + k.p_mp) - (k.p_mp - k.p_pm) * (k.p_mp - k.p_pm);
  return 2.0 * p.lambda / p.N * std::sqrt(std::max(0.0, var));
}

double aggregate_drift_bracket(const Params& p, const TransitionProbs& k) {
  const double m = 2.0 * k.i - p.N;
  const double e = std::exp(-2.0 * p.lambda / p.N);
  return (m + 1.0) * k.p_mp - e * (m - 1.0) * k.p_pm;
}

double aggregate_drift(const Params& p, const TransitionProbs& k, double price) {
  return price * std::expm1(2.0 * p.lambda / p.N) * aggregate_drift_bracket(p, k);
}

double aggregate_variance(const Params& p, const TransitionProbs& k, double price) {
  const double m = 2.0 * k.i - p.N;
  const double g = std::expm1(2.0 * p.lambda / p.N);
  const double e = std::exp(-2.0 * p.lambda / p.N);
  const double q = k.p_mp, r = k.p_pm;
  return price * price * g * g *
         ((m + 1.0) * (m + 1.0) * q * (1.0 - q) +
          e * e * (m - 1.0) * (m - 1.0) * r * (1.0 - r) +
          2.0 * e * q * r * (m * m - 1.0));
}

double local_drift(const Params& p, const TransitionProbs& k, int spin, double price) {
  const double e = std::exp(-2.0 * p.lambda / p.N);
  return spin * price * (1.0 - 1.0 / p.N) * std::expm1(2.0 * p.lambda / p.N) *
         (k.p_mp - e * k.p_pm);
}

double local_drift_exact(const Params& p, const TransitionProbs& k, int spin, double price) {
  // The watched agent is never the flipping site on its own-side moves: a +
  // holder only sees p_pm realized through the other i-1 plus sites, and
  // symmetrically for a - holder, hence the (count-1)/count factors.
  const int i = k.i;
  if ((spin > 0 && i < 1) || (spin < 0 && i > p.N - 1))
    throw InvalidParams("no agent with the requested spin at this state");
  const double e = std::exp(-2.0 * p.lambda / p.N);
  const double g = std::expm1(2.0 * p.lambda / p.N);
  if (spin > 0) return price * g * (k.p_mp - e * k.p_pm * (i - 1.0) / i);
  return -price * g * (k.p_mp * (p.N - i - 1.0) / (p.N - i) - e * k.p_pm);
}

StationaryDistribution stationary_distribution(const Params& p, const KernelTable& kt) {
  const int n = kt.N();
  std::vector<long double> logpi(n + 1, 0.0L);
  for (int i = 0; i < n; ++i) {
    const double up = kt.row(i).p_mp, down = kt.row(i + 1).p_pm;
    if (!(up > 0) || !(down > 0))
      throw ZeroTransition("kernel is not irreducible at state " + std::to_string(i));
    logpi[i + 1] = logpi[i] + std::log(static_cast<long double>(up)) -
                   std::log(static_cast<long double>(down));
  }
  long double mx = logpi[0];
  for (auto v : logpi) mx = std::max(mx, v);
  long double total = 0;
  for (auto v : logpi) total += std::exp(v - mx);
  StationaryDistribution out;
  out.pi.resize(n + 1);
  for (int i = 0; i <= n; ++i) out.pi[i] = static_cast<double>(std::exp(logpi[i] - mx) / total);
  (void)p;
  return out;
}

MartingaleRegions martingale_regions(const Params& p, const KernelTable& kt) {
  if (!p.supercritical())
    throw NotSupercritical("martingale classification requires alpha > 2d");
  const int n = kt.N();
  MartingaleRegions out;
  out.drift_sign.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double b = aggregate_drift_bracket(p, kt.row(i));
    out.drift_sign[i] = b > 0 ? 1 : (b < 0 ? -1 : 0);
  }
  std::vector<std::pair<int, int>> runs;  // maximal runs of drift_sign >= 0
  for (int i = 0; i <= n;) {
    if (out.drift_sign[i] < 0) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 <= n && out.drift_sign[j + 1] >= 0) ++j;
    runs.emplace_back(i, j);
    i = j + 1;
  }
  if (runs.empty()) throw std::logic_error("empty submartingale set");
  if (runs.size() > 2)
    throw MoreThanTwoIntervals("found " + std::to_string(runs.size()) +
                               " submartingale intervals; at most two are possible");
  if (runs.size() == 2) {
    out.kind = RegionKind::TwoIntervals;
    out.g1 = runs[0].first;
    out.g2 = runs[0].second;
    out.g3 = runs[1].first;
    out.g4 = runs[1].second;
    return out;
  }
  // Single run: merged if the lower strategic equilibrium (the below-center
  // mode of the invariant measure, which g1 tracks) is still part of the run;
  // once the run has detached from that mode the lower interval is gone.
  const auto pi = stationary_distribution(p, kt).pi;
  int mode_lo = 0;
  for (int i = 1; 2 * i < n; ++i)
    if (pi[i] > pi[mode_lo]) mode_lo = i;
  const auto [lo, hi] = runs[0];
  if (lo <= mode_lo) {
    out.kind = RegionKind::Merged;
    out.g1 = lo;
    out.g4 = hi;
  } else {
    out.kind = RegionKind::UpperOnly;
    out.g3 = lo;
    out.g4 = hi;
  }
  return out;
}

std::vector<RiskPoint> risk_frontier(const Params& p, const KernelTable& kt,
                                     const std::vector<int>& states) {
  const auto reg = martingale_regions(p, kt);
  const int lo = reg.g1 ? *reg.g1 : *reg.g3;  // UpperOnly: the run starts at g3
  const int hi = *reg.g4;
  std::vector<RiskPoint> out;
  out.reserve(states.size());
  for (int i : states) {
    RiskPoint r;
    r.i = i;
    const double price = std::exp(log_price(p, i));
    r.mean = aggregate_drift(p, kt.row(i), price);
    r.sd = std::sqrt(std::max(0.0, aggregate_variance(p, kt.row(i), price)));
    r.branch = i < lo               ? RiskBranch::LossBelowG1
               : 2 * i < p.N        ? RiskBranch::GainLower
               : i <= hi            ? RiskBranch::GainUpper
                                    : RiskBranch::LossAboveG4;
    out.push_back(r);
  }
  return out;
}

}  // namespace spinmkt
