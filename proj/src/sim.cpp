#include "spinmkt/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace spinmkt {

void add_wealth(MarketState& s, double dw) {
  const double y = dw - s.wealth_comp_;
  const double t = s.wealth + y;
  s.wealth_comp_ = (t - s.wealth) - y;
  s.wealth = t;
}

long long PathRecord::y_abs(int N) const { return std::llabs(2LL * i_after - N); }
long long PathRecord::volume_after(int N) const { return (y_abs(N) + N) / 2; }

MarketState make_state(const Params& p, int n_plus, Rng& rng, bool per_agent_wealth) {
  p.validate();
  if (n_plus < 0 || n_plus > p.N) throw InvalidParams("initial state outside [0, N]");
  MarketState s;
  s.spins.assign(p.N, -1);
  std::vector<int> idx(p.N);
  std::iota(idx.begin(), idx.end(), 0);
  for (int k = 0; k < n_plus; ++k) {  // partial Fisher-Yates: uniform subset
    const int j = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(p.N - k)));
    std::swap(idx[k], idx[j]);
    s.spins[idx[k]] = 1;
  }
  s.n_plus = n_plus;
  s.log_price = p.lambda * (2.0 * n_plus - p.N) / p.N;
  if (per_agent_wealth) s.agent_wealth.emplace(p.N, 0.0);  // K(y) = 0
  return s;
}

void sample_neighborhood(Rng& rng, int N, int d, int x, std::vector<int>& out) {
  out.clear();
  const int twod = 2 * d;
  while (static_cast<int>(out.size()) < twod) {
    const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(N) - 1));
    const int site = r + (r >= x);
    if (std::find(out.begin(), out.end(), site) == out.end()) out.push_back(site);
  }
}

double local_field(const Params& p, const MarketState& s, int x,
                   const std::vector<int>& neighborhood) {
  int sum = 0;
  for (int y : neighborhood) sum += s.spins[y];
  const long long m = 2LL * s.n_plus - p.N;
  return sum - p.alpha * s.spins[x] * static_cast<double>(std::llabs(m)) / p.N;
}

namespace {

// sign(h) with h = 0 keeping the current spin; exact for ratio-valued alpha.
int frozen_spin(const Params& p, int eta, int neighbor_sum, long long abs_m) {
  if (p.alpha_ratio) {
    const __int128 h_num = static_cast<__int128>(neighbor_sum) * p.alpha_ratio->den * p.N -
                           static_cast<__int128>(eta) * p.alpha_ratio->num * abs_m;
    return h_num > 0 ? 1 : (h_num < 0 ? -1 : eta);
  }
  const double h = neighbor_sum - p.alpha * eta * static_cast<double>(abs_m) / p.N;
  if (std::fabs(h) <= 1e-9) return eta;
  return h > 0 ? 1 : -1;
}

}  // namespace

void step_lattice(Rng& rng, const Params& p, MarketState& s, PathRecord& rec,
                  const std::vector<int>& watch) {
  thread_local std::vector<int> hood;
  const int j_site = static_cast<int>(rng.below(static_cast<std::uint64_t>(p.N)));
  sample_neighborhood(rng, p.N, p.d, j_site, hood);

  const int eta = s.spins[j_site];
  int neighbor_sum = 0;
  for (int y : hood) neighbor_sum += s.spins[y];
  const long long abs_m = std::llabs(2LL * s.n_plus - p.N);

  int next;
  if (p.phase == Phase::Frozen) {
    next = frozen_spin(p, eta, neighbor_sum, abs_m);
  } else {
    const double h = neighbor_sum - p.alpha * eta * static_cast<double>(abs_m) / p.N;
    const double p_plus = 1.0 / (1.0 + std::exp(-2.0 * p.beta * h));
    next = rng.u01() < p_plus ? 1 : -1;
  }

  const int i_before = s.n_plus;
  const int xbar = (next - eta) / 2;
  const double price_before = std::exp(s.log_price);
  const double dp = xbar == 0 ? 0.0 : price_before * std::expm1(2.0 * p.lambda * xbar / p.N);
  const double dw = dp * ((2.0 * i_before - p.N) + xbar);

  s.spins[j_site] = static_cast<std::int8_t>(next);
  s.n_plus += xbar;
  s.log_price = p.lambda * (2.0 * s.n_plus - p.N) / p.N;
  add_wealth(s, dw);
  if (s.agent_wealth && dp != 0.0) {
    // every agent but the chosen one books eta(y, T_{k-1}) * dP; spins[y] for
    // y != j_site is still the pre-step value here
    auto& w = *s.agent_wealth;
    for (int y = 0; y < p.N; ++y)
      if (y != j_site) w[y] += s.spins[y] * dp;
  }
  s.epoch += 1;
  s.time += rng.exponential();

  rec.epoch = s.epoch;
  rec.time = s.time;
  rec.agent = j_site;
  rec.i_before = i_before;
  rec.i_after = s.n_plus;
  rec.xbar = xbar;
  rec.log_price = s.log_price;
  rec.d_wealth = dw;
  rec.cross_g1 = rec.cross_g4 = false;
  rec.watched_dw.clear();
  for (int y : watch)
    rec.watched_dw.push_back(y == j_site ? 0.0 : s.spins[y] * dp);
}

std::pair<int, int> step_reduced(Rng& rng, const TransitionProbs& k) {
  const double u = rng.u01();
  int xbar;
  if (u < k.p_pm) xbar = -1;
  else if (u < k.p_pm + k.hold()) xbar = 0;
  else xbar = 1;
  return {k.i + xbar, xbar};
}

namespace {

bool crosses(int before, int after, int boundary) {
  return (before >= boundary) != (after >= boundary);
}

}  // namespace

MarketState run_path(Rng& rng, const Params& p, const RunSpec& spec, const RecordSink& sink) {
  p.validate();
  if (spec.n_steps < 0) throw InvalidParams("n_steps must be nonnegative");
  if (spec.record_every < 1) throw InvalidParams("record_every must be at least 1");
  if (spec.fidelity == Fidelity::Reduced && p.phase != Phase::Frozen)
    throw InvalidParams("reduced fidelity is frozen-phase only");

  const bool lattice = spec.fidelity == Fidelity::Lattice;
  MarketState s;
  std::optional<KernelTable> kt;
  if (lattice) {
    s = make_state(p, spec.initial_state, rng, !spec.watch.empty());
  } else {
    kt.emplace(p);
    if (spec.initial_state < 0 || spec.initial_state > p.N)
      throw InvalidParams("initial state outside [0, N]");
    s.n_plus = spec.initial_state;
    s.log_price = p.lambda * (2.0 * spec.initial_state - p.N) / p.N;
  }

  PathRecord rec;
  for (long long k = 1; k <= spec.n_steps; ++k) {
    if (lattice) {
      step_lattice(rng, p, s, rec, spec.watch);
    } else {
      const int i_before = s.n_plus;
      const auto [i_after, xbar] = step_reduced(rng, kt->row(i_before));
      const double dp =
          xbar == 0 ? 0.0 : std::exp(s.log_price) * std::expm1(2.0 * p.lambda * xbar / p.N);
      const double dw = dp * ((2.0 * i_before - p.N) + xbar);
      s.n_plus = i_after;
      s.log_price = p.lambda * (2.0 * i_after - p.N) / p.N;
      add_wealth(s, dw);
      s.epoch += 1;
      s.time += rng.exponential();
      rec.epoch = s.epoch;
      rec.time = s.time;
      rec.agent = -1;
      rec.i_before = i_before;
      rec.i_after = i_after;
      rec.xbar = xbar;
      rec.log_price = s.log_price;
      rec.d_wealth = dw;
      rec.watched_dw.clear();
    }
    rec.cross_g1 = spec.cross_lo && crosses(rec.i_before, rec.i_after, *spec.cross_lo);
    rec.cross_g4 = spec.cross_hi && crosses(rec.i_before, rec.i_after, *spec.cross_hi);
    if (rec.xbar != 0 || k % spec.record_every == 0) sink(rec);
  }
  return s;
}

}  // namespace spinmkt
