#pragma once

#include <vector>

#include "spinmkt/errors.hpp"
#include "spinmkt/sim.hpp"

namespace spinmkt {

// A directed pass-through of the reference state: the state equals i after
// step k and the incoming and outgoing increments share a sign.
struct Crossing {
  long long epoch = 0;
  double time = 0;
  int direction = 0;  // sign of the shared increment
};

struct SojournSample {
  int ref_state = 0;
  long long index = 0;       // 1-based position in the crossing sequence
  long long tau_epochs = 0;  // duration in epochs
  double tau_time = 0;       // duration in continuous time
  int direction = 0;         // direction of the crossing opening the interval
};

struct GridSpec {
  int n_points = 50;        // log-spaced survival grid
  double lo_pct = 5.0;      // percentile window of the pooled durations
  double hi_pct = 99.0;
  double floor_mult = 5.0;  // keep grid points with S >= floor_mult / n
  long long min_samples = 200;
};

struct TailFit {
  double c0 = 0, c1 = 0, c2 = 0, c3 = 0;  // log S(t) ~ c3 t^3 + c2 t^2 + c1 t + c0
  double t_min = 0, t_max = 0;
  double rss = 0;
  long long n_samples = 0;
};

// Records must be epoch-sorted. A crossing at epoch k needs the record for
// epoch k+1 to be present with a nonzero increment; since every nonzero-xbar
// step is always recorded, a missing successor record means the next step was
// a hold and the visit cannot qualify. The last step never qualifies.
std::vector<Crossing> detect_crossings(const std::vector<PathRecord>& path, int ref_state);

// Consecutive differences of the crossing sequence; needs >= 2 crossings.
std::vector<SojournSample> samples_from_crossings(const std::vector<Crossing>& crossings,
                                                  int ref_state);
std::vector<SojournSample> sojourn_samples(const std::vector<PathRecord>& path, int ref_state);

// Right-continuous empirical survival on the grid: (t, S(t)) pairs.
std::vector<std::pair<double, double>> empirical_survival(std::vector<double> durations,
                                                          const GridSpec& grid = {});

// Least-squares cubic fit of log S(t) over the grid.
TailFit fit_log_tail(const std::vector<double>& durations, const GridSpec& grid = {});
TailFit fit_log_tail(const std::vector<SojournSample>& samples, bool continuous_time,
                     const GridSpec& grid = {});

}  // namespace spinmkt
