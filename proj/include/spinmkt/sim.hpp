#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "spinmkt/kernel.hpp"
#include "spinmkt/rng.hpp"

namespace spinmkt {

struct MarketState {
  std::vector<std::int8_t> spins;  // empty for reduced-fidelity runs
  int n_plus = 0;
  double log_price = 0;
  double wealth = 0;
  std::optional<std::vector<double>> agent_wealth;  // W(y, .), lattice only
  long long epoch = 0;
  double time = 0;  // cumulative unit-rate exponential gaps

 private:
  double wealth_comp_ = 0;  // Kahan carry
  friend void add_wealth(MarketState& s, double dw);
};

void add_wealth(MarketState& s, double dw);  // compensated accumulation

// One recorded step; x, y and volume are derived from the primaries.
struct PathRecord {
  long long epoch = 0;
  double time = 0;
  int agent = -1;  // chosen site J, -1 for reduced fidelity
  int i_before = 0;
  int i_after = 0;
  int xbar = 0;  // i_after - i_before
  double log_price = 0;
  double d_wealth = 0;
  bool cross_g1 = false, cross_g4 = false;
  std::vector<double> watched_dw;  // aligned with RunSpec::watch
  int x() const { return xbar < 0 ? -xbar : xbar; }
  long long y_abs(int N) const;       // |2 N+ - N| after the step
  long long volume_after(int N) const;  // (y + N)/2
};

// Uniform spin arrangement with the given buyer count.
MarketState make_state(const Params& p, int n_plus, Rng& rng, bool per_agent_wealth = false);

// 2d distinct sites != x, uniform over ordered 2d-tuples (rejection sampling).
void sample_neighborhood(Rng& rng, int N, int d, int x, std::vector<int>& out);

double local_field(const Params& p, const MarketState& s, int x,
                   const std::vector<int>& neighborhood);

// One lattice step. RNG draw order is pinned: site, neighborhood, (finite-T
// acceptance), time gap. Frozen flips follow sign(h) with h = 0 keeping the
// current spin, evaluated exactly for ratio-valued alpha.
void step_lattice(Rng& rng, const Params& p, MarketState& s, PathRecord& rec,
                  const std::vector<int>& watch = {});

// One reduced-chain step from the kernel row; returns (new state, xbar).
// Draw order: one u01 against (p_pm | hold | p_mp), then the time gap.
std::pair<int, int> step_reduced(Rng& rng, const TransitionProbs& k);

enum class Fidelity { Lattice, Reduced };

struct RunSpec {
  long long n_steps = 0;
  int initial_state = 0;
  Fidelity fidelity = Fidelity::Reduced;
  std::vector<int> watch;        // lattice only; enables per-agent wealth
  long long record_every = 1;    // every k-th step is recorded...
  std::optional<int> cross_lo, cross_hi;  // ...plus every step with xbar != 0
};

using RecordSink = std::function<void(const PathRecord&)>;

// Runs either fidelity, streaming records to the sink (a step is recorded when
// its epoch is a multiple of record_every or its xbar is nonzero). cross_lo /
// cross_hi mark steps whose state passes those boundary values. Returns the
// final state.
MarketState run_path(Rng& rng, const Params& p, const RunSpec& spec, const RecordSink& sink);

}  // namespace spinmkt
