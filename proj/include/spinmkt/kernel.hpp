#pragma once

#include <vector>

#include "spinmkt/params.hpp"

namespace spinmkt {

// One-step transition probabilities of the buyer-count chain at state i.
struct TransitionProbs {
  int i = 0;
  double p_pp = 0;  // chosen site is + and stays +
  double p_mm = 0;  // chosen site is - and stays -
  double p_pm = 0;  // + flips to -  (i -> i-1)
  double p_mp = 0;  // - flips to +  (i -> i+1)
  double hold() const { return p_pp + p_mm; }
};

// C(n,k); 0 when out of range. Exact integer arithmetic while the product
// fits 128 bits (N ~ 1e4 at d=2), log-gamma beyond that.
long double binom(int n, int k);

// c = ceil(alpha |i/N - 1/2|), exact for ratio-valued alpha; otherwise values
// within 1e-9 of an integer are treated as that integer before the ceiling.
int threshold_c(const Params& p, int i);

// closed band [N(1/2 - d/alpha), N(1/2 + d/alpha)], same arithmetic as threshold_c
bool in_band(const Params& p, int i);

// probability that a +/- site sees exactly j positive spins among its 2d
// sampled neighbors; out-of-support j yields 0
double neighbor_count_pmf_plus(const Params& p, int i, int j);
double neighbor_count_pmf_minus(const Params& p, int i, int j);

TransitionProbs transition_probs(const Params& p, int i);  // frozen phase only

// Immutable all-states kernel; shareable across threads.
class KernelTable {
 public:
  explicit KernelTable(const Params& p);
  const TransitionProbs& row(int i) const { return rows_[i]; }
  int N() const { return static_cast<int>(rows_.size()) - 1; }

 private:
  std::vector<TransitionProbs> rows_;
};

}  // namespace spinmkt
