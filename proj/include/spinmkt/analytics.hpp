#pragma once

#include <optional>
#include <vector>

#include "spinmkt/kernel.hpp"

namespace spinmkt {

enum class RegionKind { TwoIntervals, Merged, UpperOnly };
const char* to_string(RegionKind k);

// Submartingale set of the aggregate wealth process: the states where the
// conditional drift bracket is >= 0, reported as one or two intervals.
struct MartingaleRegions {
  RegionKind kind = RegionKind::Merged;
  std::optional<int> g1, g2, g3, g4;
  std::vector<int> drift_sign;  // over i in [0,N]; -1 / 0 / +1
};

struct StationaryDistribution {
  std::vector<double> pi;  // over i in [0,N]
};

enum class RiskBranch { LossBelowG1, GainLower, GainUpper, LossAboveG4 };
const char* to_string(RiskBranch b);

struct RiskPoint {
  int i = 0;
  double mean = 0;  // E[dW | state i] at price exp(log_price(i))
  double sd = 0;
  RiskBranch branch = RiskBranch::GainLower;
};

double log_price(const Params& p, int i);  // lambda (2i - N) / N
long long volume(const Params& p, int i);  // max(i, N-i)

// Conditional one-step volatility of the log price in the classic compact
// form (2 lambda / N) sqrt(P(X=0) P(X=1)). That expression equals the
// standard deviation of the log return only for equiprobable up/down moves,
// so the exact sd of (2 lambda / N) Xbar is exposed alongside; callers pick.
double conditional_volatility(const Params& p, const TransitionProbs& k);
double log_return_sd(const Params& p, const TransitionProbs& k);

// Braced factor [2i-N+1] p_mp - e^{-2 lambda/N} [2i-N-1] p_pm. Its sign is
// the sign of the conditional drift of the aggregate wealth; the positive
// prefactor price (e^{2 lambda/N} - 1) is applied by aggregate_drift.
double aggregate_drift_bracket(const Params& p, const TransitionProbs& k);
double aggregate_drift(const Params& p, const TransitionProbs& k, double price);

// Conditional variance of the one-step aggregate wealth increment.
double aggregate_variance(const Params& p, const TransitionProbs& k, double price);

// Conditional drift of one agent's wealth, in the compact closed form
// spin * price (1 - 1/N)(e^{2 lambda/N} - 1) {p_mp - e^{-2 lambda/N} p_pm}.
// That form is an O(1/N) approximation; local_drift_exact carries the exact
// one-step expectation for an agent currently holding the given spin
// (it differs in which term the held-out agent is excluded from).
double local_drift(const Params& p, const TransitionProbs& k, int spin, double price);
double local_drift_exact(const Params& p, const TransitionProbs& k, int spin, double price);

MartingaleRegions martingale_regions(const Params& p, const KernelTable& kt);
StationaryDistribution stationary_distribution(const Params& p, const KernelTable& kt);

// mean/sd of dW per state with a branch label assigned by position relative
// to the region boundaries (below g1 / [g1, N/2) / [N/2, g4] / above g4).
std::vector<RiskPoint> risk_frontier(const Params& p, const KernelTable& kt,
                                     const std::vector<int>& states);

}  // namespace spinmkt
