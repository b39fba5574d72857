// spinmarket: analysis and simulation CLI for the randomized-neighborhood
// spin market. Commands write plot-ready CSV artifacts; every artifact embeds
// the seed, tool version, and a hash of the canonical config so reruns are
// byte-identical.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "spinmkt/analytics.hpp"
#include "spinmkt/csv.hpp"
#include "spinmkt/errors.hpp"
#include "spinmkt/reference_regions.hpp"
#include "spinmkt/sim.hpp"
#include "spinmkt/sojourn.hpp"
#include "spinmkt/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace spinmkt;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int N = 128;
  int d = 2;
  std::string alpha = "4.1";
  double lambda = 1.0;
  std::uint64_t seed = 42;
  long long steps = 10000;
  std::string init = "half";
  std::string fidelity = "reduced";
  std::string out_dir = ".";
  long long record_every = 1;
  std::optional<double> beta;
  std::vector<int> watch;
};

struct CommonOpts {
  CLI::Option* N = nullptr;
  CLI::Option* d = nullptr;
  CLI::Option* alpha = nullptr;
  CLI::Option* lambda = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* steps = nullptr;
  CLI::Option* init = nullptr;
  CLI::Option* fidelity = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* record_every = nullptr;
  std::string config_path;
};

CommonOpts add_common(CLI::App* cmd, RunConfig& cfg) {
  CommonOpts o;
  o.N = cmd->add_option("--N", cfg.N, "number of agents");
  o.d = cmd->add_option("--d", cfg.d, "neighborhood half-size (2d sites drawn)");
  o.alpha = cmd->add_option("--alpha", cfg.alpha, "herding strength (decimal or a/b)");
  o.lambda = cmd->add_option("--lambda", cfg.lambda, "price impact per unit imbalance");
  o.seed = cmd->add_option("--seed", cfg.seed, "master RNG seed");
  o.steps = cmd->add_option("--steps", cfg.steps, "number of steps to simulate");
  o.init = cmd->add_option("--init", cfg.init, "initial buyer count, or 'half'");
  o.fidelity = cmd->add_option("--fidelity", cfg.fidelity, "lattice | reduced")
                   ->check(CLI::IsMember({"lattice", "reduced"}));
  o.out = cmd->add_option("--out", cfg.out_dir, "output directory");
  o.record_every = cmd->add_option("--record-every", cfg.record_every,
                                   "record every k-th step (moves always recorded)");
  cmd->add_option("--config", o.config_path, "key=value config file (flags win)")
      ->check(CLI::ExistingFile);
  return o;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [p, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || p != last)
    throw UsageError("config key '" + key + "': cannot parse '" + text + "'");
  return value;
}

// Simple key=value lines; '#' starts a comment. Flags given on the command
// line keep precedence over file values, which beat the built-in defaults.
// Returns the set of keys the file mentioned.
std::set<std::string> apply_config_file(const CommonOpts& o, RunConfig& cfg) {
  std::set<std::string> seen;
  if (o.config_path.empty()) return seen;
  std::ifstream in(o.config_path);
  if (!in) throw UsageError("cannot read config file " + o.config_path);
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(o.config_path + ":" + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    seen.insert(key == "record-every" ? "record_every" : key);
    auto unset = [](const CLI::Option* opt) { return opt && opt->count() == 0; };
    if (key == "N") {
      if (unset(o.N)) cfg.N = parse_number<int>(key, value);
    } else if (key == "d") {
      if (unset(o.d)) cfg.d = parse_number<int>(key, value);
    } else if (key == "alpha") {
      if (unset(o.alpha)) cfg.alpha = value;
    } else if (key == "lambda") {
      if (unset(o.lambda)) cfg.lambda = parse_number<double>(key, value);
    } else if (key == "seed") {
      if (unset(o.seed)) cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "steps") {
      if (unset(o.steps)) cfg.steps = parse_number<long long>(key, value);
    } else if (key == "init") {
      if (unset(o.init)) cfg.init = value;
    } else if (key == "fidelity") {
      if (value != "lattice" && value != "reduced")
        throw UsageError("config key 'fidelity': expected lattice or reduced");
      if (unset(o.fidelity)) cfg.fidelity = value;
    } else if (key == "out") {
      if (unset(o.out)) cfg.out_dir = value;
    } else if (key == "record_every" || key == "record-every") {
      if (unset(o.record_every)) cfg.record_every = parse_number<long long>(key, value);
    } else {
      throw UsageError("config key '" + key + "' is not recognized");
    }
  }
  return seen;
}

Params params_from(const RunConfig& cfg) {
  Params p = make_params(cfg.N, cfg.d, cfg.alpha, cfg.lambda);
  if (cfg.beta) {
    p.phase = Phase::FiniteTemperature;
    p.beta = *cfg.beta;
  }
  return p;
}

int initial_state(const RunConfig& cfg) {
  if (cfg.init == "half") return cfg.N / 2;
  try {
    return parse_number<int>("init", cfg.init);
  } catch (const UsageError&) {
    throw UsageError("--init expects an integer or 'half', got '" + cfg.init + "'");
  }
}

// Canonical config text: sorted key=value lines, one per line, excluding the
// output directory (artifacts hash identically wherever they land).
std::string canonical_config(const RunConfig& cfg,
                             const std::map<std::string, std::string>& extra = {}) {
  std::map<std::string, std::string> kv = {
      {"N", std::to_string(cfg.N)},
      {"d", std::to_string(cfg.d)},
      {"alpha", cfg.alpha},
      {"lambda", format_double(cfg.lambda)},
      {"seed", std::to_string(cfg.seed)},
      {"steps", std::to_string(cfg.steps)},
      {"init", cfg.init},
      {"fidelity", cfg.fidelity},
      {"record_every", std::to_string(cfg.record_every)},
  };
  if (cfg.beta) kv["beta"] = format_double(*cfg.beta);
  if (!cfg.watch.empty()) {
    std::string w;
    for (int y : cfg.watch) {
      if (!w.empty()) w += ';';
      w += std::to_string(y);
    }
    kv["watch"] = w;
  }
  for (const auto& [k, v] : extra) kv[k] = v;
  std::string out;
  for (const auto& [k, v] : kv) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

std::string cell(const std::optional<int>& g) { return g ? std::to_string(*g) : std::string(); }

void write_regions_row(CsvWriter& w, const Params& p, const std::string& alpha_text,
                       const MartingaleRegions& r) {
  w.row({std::to_string(p.N), alpha_text, std::to_string(p.d), format_double(p.lambda),
         to_string(r.kind), cell(r.g1), cell(r.g2), cell(r.g3), cell(r.g4)});
}

const std::vector<std::string> kRegionsHeader = {"N",    "alpha", "d",  "lambda", "kind",
                                                 "g1",   "g2",    "g3", "g4"};

int cmd_regions(const RunConfig& cfg, bool paper_table) {
  CsvWriter w(out_path(cfg, "regions.csv"));
  standard_meta(w, "regions", 1, cfg.seed,
                canonical_config(cfg, {{"paper_table", paper_table ? "1" : "0"}}));
  w.header(kRegionsHeader);

  if (!paper_table) {
    Params p = params_from(cfg);
    MartingaleRegions r = martingale_regions(p, KernelTable(p));
    write_regions_row(w, p, cfg.alpha, r);
    std::cout << to_string(r.kind) << " g1=" << cell(r.g1) << " g2=" << cell(r.g2)
              << " g3=" << cell(r.g3) << " g4=" << cell(r.g4) << "\n";
    return 0;
  }

  int mismatches = 0;
  for (const auto& row : kReferenceRegions) {
    Params p = make_params(row.N, row.d, row.alpha, row.lambda);
    MartingaleRegions r = martingale_regions(p, KernelTable(p));
    write_regions_row(w, p, row.alpha, r);
    auto diff = [&](const char* name, int expected, const std::optional<int>& got) {
      const int have = got ? *got : -1;
      if (expected != have) {
        ++mismatches;
        std::cerr << "mismatch alpha=" << row.alpha << " lambda=" << row.lambda << " " << name
                  << ": expected " << (expected < 0 ? std::string("blank") : std::to_string(expected))
                  << ", computed " << (have < 0 ? std::string("blank") : std::to_string(have))
                  << "\n";
      }
    };
    diff("g1", row.g1, r.g1);
    diff("g2", row.g2, r.g2);
    diff("g3", row.g3, r.g3);
    diff("g4", row.g4, r.g4);
  }
  const size_t n = kReferenceRegions.size();
  if (mismatches) {
    std::cerr << "reference table: " << mismatches << " mismatching cells across " << n
              << " rows\n";
    return kExitMismatch;
  }
  std::cout << "reference table: " << n << "/" << n << " rows match\n";
  return 0;
}

int cmd_invariant(const RunConfig& cfg, bool with_empirical) {
  Params p = params_from(cfg);
  KernelTable kt(p);
  const auto pi = stationary_distribution(p, kt).pi;

  std::vector<long long> visits;
  long long total = 0;
  double tv = 0;
  with_empirical = with_empirical && cfg.steps > 0;
  if (with_empirical) {
    RunSpec spec;
    spec.n_steps = cfg.steps;
    spec.initial_state = initial_state(cfg);
    spec.fidelity = cfg.fidelity == "lattice" ? Fidelity::Lattice : Fidelity::Reduced;
    visits.assign(p.N + 1, 0);
    const long long burn = cfg.steps / 10;  // discard the first 10%
    Rng rng(cfg.seed);
    run_path(rng, p, spec, [&](const PathRecord& rec) {
      if (rec.epoch > burn) visits[rec.i_after]++;
    });
    for (long long v : visits) total += v;
    for (int i = 0; i <= p.N; ++i)
      tv += std::abs(static_cast<double>(visits[i]) / static_cast<double>(total) - pi[i]);
    tv /= 2;
  }

  CsvWriter w(out_path(cfg, "invariant.csv"));
  standard_meta(w, "invariant", 1, cfg.seed,
                canonical_config(cfg, {{"empirical", with_empirical ? "1" : "0"}}));
  if (with_empirical) w.meta("tv", format_double(tv));
  if (with_empirical) {
    w.header({"i", "pi", "empirical"});
    for (int i = 0; i <= p.N; ++i)
      w.row({std::to_string(i), format_double(pi[i]),
             format_double(static_cast<double>(visits[i]) / static_cast<double>(total))});
    std::cout << "tv=" << format_double(tv) << "\n";
  } else {
    w.header({"i", "pi"});
    for (int i = 0; i <= p.N; ++i) w.row({std::to_string(i), format_double(pi[i])});
  }
  return 0;
}

ordered_json regions_json(const Params& p) {
  try {
    MartingaleRegions r = martingale_regions(p, KernelTable(p));
    ordered_json j;
    j["kind"] = to_string(r.kind);
    j["g1"] = r.g1 ? ordered_json(*r.g1) : ordered_json(nullptr);
    j["g2"] = r.g2 ? ordered_json(*r.g2) : ordered_json(nullptr);
    j["g3"] = r.g3 ? ordered_json(*r.g3) : ordered_json(nullptr);
    j["g4"] = r.g4 ? ordered_json(*r.g4) : ordered_json(nullptr);
    return j;
  } catch (const Error&) {
    return ordered_json(nullptr);  // subcritical or finite-temperature run
  }
}

int cmd_simulate(const RunConfig& cfg) {
  Params p = params_from(cfg);
  if (!cfg.watch.empty() && cfg.fidelity != "lattice")
    throw UsageError("--watch requires --fidelity lattice");
  for (int y : cfg.watch)
    if (y < 0 || y >= cfg.N) throw UsageError("--watch agent out of range");

  const ordered_json regions = regions_json(p);

  RunSpec spec;
  spec.n_steps = cfg.steps;
  spec.initial_state = initial_state(cfg);
  spec.fidelity = cfg.fidelity == "lattice" ? Fidelity::Lattice : Fidelity::Reduced;
  spec.watch = cfg.watch;
  spec.record_every = cfg.record_every;
  if (!regions.is_null()) {
    spec.cross_lo = regions["g1"].is_null() ? regions["g3"].get<int>() : regions["g1"].get<int>();
    spec.cross_hi = regions["g4"].get<int>();
  }

  const std::string canonical = canonical_config(cfg);
  CsvWriter w(out_path(cfg, "path.csv"));
  standard_meta(w, "path", 1, cfg.seed, canonical);
  std::vector<std::string> header = {"epoch",     "time", "agent",    "i_before", "i_after",
                                     "xbar",      "x",    "y",        "volume",   "log_price",
                                     "dw",        "cross_g1", "cross_g4"};
  for (int y : cfg.watch) header.push_back("dw_" + std::to_string(y));
  w.header(header);

  Rng rng(cfg.seed);
  MarketState final_state = run_path(rng, p, spec, [&](const PathRecord& rec) {
    std::vector<std::string> cells = {
        std::to_string(rec.epoch),
        format_double(rec.time),
        std::to_string(rec.agent),
        std::to_string(rec.i_before),
        std::to_string(rec.i_after),
        std::to_string(rec.xbar),
        std::to_string(rec.x()),
        std::to_string(rec.y_abs(p.N)),
        std::to_string(rec.volume_after(p.N)),
        format_double(rec.log_price),
        format_double(rec.d_wealth),
        rec.cross_g1 ? "1" : "0",
        rec.cross_g4 ? "1" : "0",
    };
    for (double dw : rec.watched_dw) cells.push_back(format_double(dw));
    w.row(cells);
  });

  ordered_json j;
  j["tool"] = kToolName;
  j["tool_version"] = kToolVersion;
  j["generator"] = kGeneratorName;
  j["generator_version"] = kGeneratorVersion;
  j["seed"] = cfg.seed;
  j["config"] = ordered_json::object();
  j["config"]["N"] = cfg.N;
  j["config"]["d"] = cfg.d;
  j["config"]["alpha"] = cfg.alpha;
  j["config"]["lambda"] = cfg.lambda;
  j["config"]["steps"] = cfg.steps;
  j["config"]["init"] = cfg.init;
  j["config"]["fidelity"] = cfg.fidelity;
  j["config"]["record_every"] = cfg.record_every;
  if (cfg.beta) j["config"]["beta"] = *cfg.beta;
  if (!cfg.watch.empty()) j["config"]["watch"] = cfg.watch;
  j["config_hash"] = hex64(fnv1a64(canonical));
  j["regions"] = regions;
  j["final"] = {{"n_plus", final_state.n_plus},
                {"log_price", final_state.log_price},
                {"wealth", final_state.wealth},
                {"epoch", final_state.epoch},
                {"time", final_state.time}};
  std::ofstream sidecar(out_path(cfg, "path.json"), std::ios::binary);
  sidecar << j.dump(2) << '\n';

  std::cout << "final n_plus=" << final_state.n_plus << " wealth=" << format_double(final_state.wealth)
            << " epochs=" << final_state.epoch << "\n";
  return 0;
}

int cmd_frontier(const RunConfig& cfg) {
  Params p = params_from(cfg);
  KernelTable kt(p);

  RunSpec spec;
  spec.n_steps = cfg.steps;
  spec.initial_state = initial_state(cfg);
  spec.fidelity = cfg.fidelity == "lattice" ? Fidelity::Lattice : Fidelity::Reduced;
  spec.record_every = 1;  // occupancy needs every step
  std::vector<long long> visits(p.N + 1, 0);
  visits[spec.initial_state] = 1;
  Rng rng(cfg.seed);
  run_path(rng, p, spec, [&](const PathRecord& rec) { visits[rec.i_after]++; });

  std::vector<int> states;
  for (int i = 0; i <= p.N; ++i)
    if (visits[i] > 0) states.push_back(i);
  const auto points = risk_frontier(p, kt, states);

  CsvWriter w(out_path(cfg, "frontier.csv"));
  standard_meta(w, "frontier", 1, cfg.seed, canonical_config(cfg));
  w.header({"i", "visits", "mean", "sd", "branch"});
  for (const auto& r : points)
    w.row({std::to_string(r.i), std::to_string(visits[r.i]), format_double(r.mean),
           format_double(r.sd), to_string(r.branch)});
  std::cout << "frontier over " << points.size() << " visited states\n";
  return 0;
}

int cmd_sojourn(const RunConfig& cfg) {
  Params p = params_from(cfg);
  MartingaleRegions r = martingale_regions(p, KernelTable(p));
  std::set<int> refs = {r.g1 ? *r.g1 : *r.g3, p.N / 2, *r.g4};

  RunSpec spec;
  spec.n_steps = cfg.steps;
  spec.initial_state = initial_state(cfg);
  spec.fidelity = cfg.fidelity == "lattice" ? Fidelity::Lattice : Fidelity::Reduced;
  spec.record_every = cfg.record_every;
  std::vector<PathRecord> path;
  Rng rng(cfg.seed);
  run_path(rng, p, spec, [&](const PathRecord& rec) { path.push_back(rec); });

  const std::string canonical = canonical_config(cfg);
  CsvWriter samples_csv(out_path(cfg, "sojourn_samples.csv"));
  standard_meta(samples_csv, "sojourn_samples", 1, cfg.seed, canonical);
  samples_csv.header({"i", "l", "tau_epochs", "tau_time", "direction"});

  CsvWriter fits_csv(out_path(cfg, "sojourn_fits.csv"));
  standard_meta(fits_csv, "sojourn_fits", 1, cfg.seed, canonical);
  fits_csv.header({"i", "unit", "c0", "c1", "c2", "c3", "t_min", "t_max", "rss", "n"});

  int fits_written = 0;
  for (int ref : refs) {
    std::vector<SojournSample> samples;
    try {
      samples = sojourn_samples(path, ref);
    } catch (const Error& e) {
      std::cerr << "state " << ref << ": " << e.what() << "\n";
      continue;
    }
    for (const auto& s : samples)
      samples_csv.row({std::to_string(ref), std::to_string(s.index),
                       std::to_string(s.tau_epochs), format_double(s.tau_time),
                       std::to_string(s.direction)});
    // drop the transient head before fitting
    if (samples.size() > 10) samples.erase(samples.begin(), samples.begin() + 10);
    for (bool continuous : {false, true}) {
      try {
        const TailFit f = fit_log_tail(samples, continuous);
        fits_csv.row({std::to_string(ref), continuous ? "time" : "epochs", format_double(f.c0),
                      format_double(f.c1), format_double(f.c2), format_double(f.c3),
                      format_double(f.t_min), format_double(f.t_max), format_double(f.rss),
                      std::to_string(f.n_samples)});
        ++fits_written;
      } catch (const Error& e) {
        std::cerr << "state " << ref << " (" << (continuous ? "time" : "epochs")
                  << "): " << e.what() << "\n";
      }
    }
  }
  if (fits_written == 0)
    throw InsufficientSamples("no reference state produced a tail fit; increase --steps");
  std::cout << fits_written << " tail fits across " << refs.size() << " reference states\n";
  return 0;
}

struct SweepCell {
  std::string alpha;
  double lambda = 0;
};

int cmd_sweep(const RunConfig& cfg, const std::vector<std::string>& alphas,
              const std::vector<double>& lambdas, bool paper_table, int jobs) {
  std::vector<SweepCell> cells;
  if (paper_table) {
    for (const auto& row : kReferenceRegions)
      cells.push_back({row.alpha, static_cast<double>(row.lambda)});
  } else {
    if (alphas.empty() || lambdas.empty())
      throw UsageError("sweep needs --alphas and --lambdas, or --paper-table");
    for (const auto& a : alphas)
      for (double l : lambdas) cells.push_back({a, l});
  }

  struct CellResult {
    std::string kind, g1, g2, g3, g4, mode_lo, mode_hi, pi_center, error;
  };
  std::vector<CellResult> results(cells.size());

  auto work = [&](size_t idx) {
    const auto& c = cells[idx];
    auto& res = results[idx];
    try {
      Params p = make_params(cfg.N, cfg.d, c.alpha, c.lambda);
      KernelTable kt(p);
      MartingaleRegions r = martingale_regions(p, kt);
      res.kind = to_string(r.kind);
      res.g1 = cell(r.g1);
      res.g2 = cell(r.g2);
      res.g3 = cell(r.g3);
      res.g4 = cell(r.g4);
      const auto pi = stationary_distribution(p, kt).pi;
      int lo = 0, hi = p.N;
      for (int i = 1; 2 * i < p.N; ++i)
        if (pi[i] > pi[lo]) lo = i;
      for (int i = p.N - 1; 2 * i > p.N; --i)
        if (pi[i] > pi[hi]) hi = i;
      res.mode_lo = std::to_string(lo);
      res.mode_hi = std::to_string(hi);
      res.pi_center = format_double(pi[p.N / 2]);
    } catch (const Error& e) {
      res.error = e.name();
    }
  };

  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  std::atomic<size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int t = 0; t < jobs; ++t)
    workers.emplace_back([&] {
      for (size_t idx = next.fetch_add(1); idx < cells.size(); idx = next.fetch_add(1)) work(idx);
    });
  for (auto& t : workers) t.join();

  std::string alphas_text, lambdas_text;
  for (const auto& c : cells) {
    alphas_text += c.alpha + ";";
    lambdas_text += format_double(c.lambda) + ";";
  }
  CsvWriter w(out_path(cfg, "sweep.csv"));
  standard_meta(w, "sweep", 1, cfg.seed,
                canonical_config(cfg, {{"cells_alpha", alphas_text},
                                       {"cells_lambda", lambdas_text},
                                       {"paper_table", paper_table ? "1" : "0"}}));
  w.header({"N", "alpha", "d", "lambda", "kind", "g1", "g2", "g3", "g4", "pi_mode_lower",
            "pi_mode_upper", "pi_center", "error"});
  int failures = 0;
  for (size_t idx = 0; idx < cells.size(); ++idx) {
    const auto& c = cells[idx];
    const auto& res = results[idx];
    failures += !res.error.empty();
    w.row({std::to_string(cfg.N), c.alpha, std::to_string(cfg.d), format_double(c.lambda),
           res.kind, res.g1, res.g2, res.g3, res.g4, res.mode_lo, res.mode_hi, res.pi_center,
           res.error});
  }
  std::cout << cells.size() - failures << "/" << cells.size() << " cells computed";
  if (failures) std::cout << " (" << failures << " failed; see the error column)";
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin market analytics and simulation"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  RunConfig cfg;

  auto* regions = app.add_subcommand("regions", "submartingale region boundaries");
  CommonOpts regions_opts = add_common(regions, cfg);
  bool regions_paper_table = false;
  regions->add_flag("--paper-table", regions_paper_table,
                    "compute the 14 reference parameter sets and verify each cell");

  auto* invariant = app.add_subcommand("invariant", "stationary buyer-count distribution");
  CommonOpts invariant_opts = add_common(invariant, cfg);

  auto* simulate = app.add_subcommand("simulate", "simulate one path and write records");
  CommonOpts simulate_opts = add_common(simulate, cfg);
  simulate->add_option("--watch", cfg.watch, "agent ids to track per-agent wealth (lattice)");
  double beta_value = 0;
  auto* beta_opt =
      simulate->add_option("--beta", beta_value, "inverse temperature (default: frozen)");

  auto* frontier = app.add_subcommand("frontier", "risk/return per visited state");
  CommonOpts frontier_opts = add_common(frontier, cfg);

  auto* sojourn = app.add_subcommand("sojourn", "sojourn samples and tail fits");
  CommonOpts sojourn_opts = add_common(sojourn, cfg);

  auto* sweep = app.add_subcommand("sweep", "regions + stationary summary over a grid");
  CommonOpts sweep_opts = add_common(sweep, cfg);
  std::vector<std::string> sweep_alphas;
  std::vector<double> sweep_lambdas;
  bool sweep_paper_table = false;
  int sweep_jobs = 0;
  sweep->add_option("--alphas", sweep_alphas, "alpha values (decimal or a/b)")->delimiter(',');
  sweep->add_option("--lambdas", sweep_lambdas, "lambda values")->delimiter(',');
  sweep->add_flag("--paper-table", sweep_paper_table, "use the 14 reference parameter sets");
  sweep->add_option("--jobs", sweep_jobs, "worker threads (default: hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*regions) {
      apply_config_file(regions_opts, cfg);
      return cmd_regions(cfg, regions_paper_table);
    }
    if (*invariant) {
      const auto file_keys = apply_config_file(invariant_opts, cfg);
      const bool with_empirical =
          invariant_opts.steps->count() > 0 || file_keys.count("steps") > 0;
      return cmd_invariant(cfg, with_empirical);
    }
    if (*simulate) {
      apply_config_file(simulate_opts, cfg);
      if (beta_opt->count() > 0) cfg.beta = beta_value;
      return cmd_simulate(cfg);
    }
    if (*frontier) {
      apply_config_file(frontier_opts, cfg);
      return cmd_frontier(cfg);
    }
    if (*sojourn) {
      apply_config_file(sojourn_opts, cfg);
      return cmd_sojourn(cfg);
    }
    if (*sweep) {
      apply_config_file(sweep_opts, cfg);
      return cmd_sweep(cfg, sweep_alphas, sweep_lambdas, sweep_paper_table, sweep_jobs);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
