// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero when any
// criterion fails.
#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "nsfts/adaptive.hpp"
#include "nsfts/checkpoint.hpp"
#include "nsfts/dataset.hpp"
#include "nsfts/evaluate.hpp"
#include "nsfts/metamodels.hpp"
#include "nsfts/metrics.hpp"
#include "oracles.hpp"

#ifdef NSFTS_HAVE_CLI
#include "cli/commands.hpp"
#endif

namespace {

using namespace nsfts;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> synthetic(DriftKind kind, std::size_t length = 1000) {
  DriftSpec s;
  s.kind = kind;
  s.seed = kSeed;
  s.length = length;
  return generate(s).values;
}

Outcome ac1_perturbation_algebra() {
  const auto start = Clock::now();
  testing::Gen g(101);
  bool identity_exact = true;
  double shift = 0.0, width = 0.0, mid = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double c = g.real(-100.0, 100.0);
    const Triangle t{c - g.real(0.1, 10.0), c, c + g.real(0.1, 10.0)};
    const Perturbation p{g.real(-10.0, 10.0), g.real(0.0, 10.0)};
    identity_exact = identity_exact && apply_perturbation(t, {}) == t;
    const double x = g.real(t.lower, t.upper);
    const auto moved = apply_perturbation(t, {p.displacement, 0.0});
    shift = std::max(shift, std::abs(membership(x + p.displacement, moved) - membership(x, t)));
    width = std::max(width, std::abs(apply_perturbation(t, p).width() - (t.width() + p.scale)));
    mid = std::max(mid, std::abs(apply_perturbation(t, {0.0, p.scale}).mid - t.mid));
  }
  const double secs = seconds_since(start);
  const double worst = std::max({shift, width, mid});
  return {identity_exact && worst <= 1e-12 && secs < 5.0,
          "10000 cases; identity " + std::string(identity_exact ? "exact" : "NOT exact") + "; max deviation shift " +
              num(shift) + ", width " + num(width) + ", midpoint " + num(mid) + " (tol 1e-12); " + num(secs) +
              " s (limit 5 s)"};
}

Outcome ac2_partition_of_unity() {
  testing::Gen g(102);
  double worst = 0.0;
  for (std::size_t k : {3u, 5u, 35u, 100u}) {
    const auto p = grid_partition(g.universe(), k);
    std::vector<double> mu(k);
    for (int i = 0; i < 1000; ++i) {
      const double x = g.real(p.midpoint(0, false), p.midpoint(k - 1, false));
      p.fuzzify_into(x, false, mu);
      worst = std::max(worst, std::abs(std::accumulate(mu.begin(), mu.end(), 0.0) - 1.0));
    }
  }
  return {worst <= 1e-9, "k in {3,5,35,100} x 1000 points; max |sum - 1| = " + num(worst) + " (tol 1e-9)"};
}

Outcome ac3_adaptation_oracle() {
  testing::Gen g(103);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t k = g.index(3, 100);
    const std::size_t w = g.index(2, 30);
    const double lo = g.real(-100.0, 100.0);
    const Universe u{lo, lo + g.real(0.5, 100.0)};
    const double noise = g.real(0.01, 10.0);
    std::vector<double> history(w - 1);
    for (auto& e : history) e = g.normal(g.real(-2.0, 2.0), noise);
    const double last = g.real(u.lower, u.upper);
    const double y = g.real(u.lower - u.width(), u.upper + u.width());

    ResidualWindow rw(w);
    for (double e : history) rw.push(e);
    NsftsModel model(FtsModel(grid_partition(u, k), RuleBase(k)), rw, last);
    model.adapt(y);

    auto window = history;
    window.push_back(y - last);
    const auto d = oracle::deltas(window, y, u.lower, u.upper, k);
    const auto r = oracle::rhos(d);
    for (std::size_t j = 0; j < k; ++j) {
      const auto& pert = model.partition()[j].perturbation();
      worst = std::max({worst, std::abs(pert.displacement - d[j]), std::abs(pert.scale - r[j])});
    }
  }
  return {worst <= 1e-12, "1000 random states; max |delta/rho - brute force| = " + num(worst) + " (tol 1e-12)"};
}

Outcome ac4_structural_stability() {
  testing::Gen g(104);
  const auto y = g.drifting(10200, 10.0, 0.002, 1.0);
  auto model = train_nsfts(std::span(y).first(200));
  const auto before = serialize_rulebase(model.rules());
  for (std::size_t t = 200; t < y.size(); ++t) {
    model.adapt(y[t]);
    (void)model.forecast(y[t]);
  }
  const auto after = serialize_rulebase(model.rules());
  return {before == after, "10000 adapt calls on a drifting stream; rulebase " +
                               std::string(before == after ? "byte-identical" : "CHANGED") + " (" +
                               std::to_string(before.size()) + " bytes)"};
}

Outcome ac5_drift_recovery() {
  const auto start = Clock::now();
  const auto y = synthetic(DriftKind::IncrementalMean);
  const MethodParams params;  // k=35, W=100, R=10, M=2
  const double nsfts = evaluate(Method::Nsfts, y, params).metrics.u2;
  const double fixed = evaluate(Method::StaticFts, y, params).metrics.u2;
  const double ensemble = evaluate(Method::IncrementalEnsemble, y, params).metrics.u2;
  const double secs = seconds_since(start);
  const bool a = nsfts <= 1.5;
  const bool b = fixed >= 3.0 * nsfts;
  const bool c = ensemble > nsfts;
  return {a && b && c && secs < 30.0,
          "incremental-mean seed 42: u2 nsfts " + num(nsfts) + (a ? " <= 1.5" : " > 1.5") + "; static " + num(fixed) +
              (b ? " >= " : " < ") + "3 x nsfts (" + num(3.0 * nsfts) + "); ensemble " + num(ensemble) +
              (c ? " > nsfts" : " <= nsfts") + "; " + num(secs) + " s (limit 30 s)"};
}

Outcome ac6_stationary_parity() {
  const auto y = synthetic(DriftKind::Stationary);
  const double u2 = evaluate(Method::Nsfts, y, {}).metrics.u2;
  return {u2 >= 0.85 && u2 <= 1.2, "stationary seed 42: nsfts u2 " + num(u2) + " (required in [0.85, 1.2])"};
}

Outcome ac7_cost() {
  const auto y = synthetic(DriftKind::IncrementalMean, 10000);
  const RetrainPolicy policy{100, 10};
  const FtsConfig fts;  // k = 35
  NsftsConfig config;
  config.fts = fts;

  double adapt_best = std::numeric_limits<double>::infinity();
  double loop_best = adapt_best;
  double retrain_best = adapt_best;
  std::uint64_t nsfts_trains = 0;
  std::size_t tv_trainings = 0;
  std::uint64_t tv_counted = 0;
  volatile double sink = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    auto model = train_nsfts(std::span(y).first(policy.window), config);
    const auto calls = train_call_count();
    double adapt_time = 0.0;
    const auto loop_start = Clock::now();
    for (std::size_t t = policy.window; t < y.size(); ++t) {
      const auto a = Clock::now();
      model.adapt(y[t]);
      adapt_time += std::chrono::duration<double>(Clock::now() - a).count();
      sink = sink + model.forecast(y[t]).value;
    }
    loop_best = std::min(loop_best, seconds_since(loop_start));
    adapt_best = std::min(adapt_best, adapt_time);
    nsfts_trains = std::max(nsfts_trains, train_call_count() - calls);

    const auto before = train_call_count();
    const auto tv_start = Clock::now();
    const auto run = run_time_variant(y, policy, fts);
    retrain_best = std::min(retrain_best, seconds_since(tv_start));
    tv_trainings = run.trainings;
    tv_counted = train_call_count() - before;
  }
  const std::size_t expected = (y.size() - policy.window) / policy.refresh + 1;
  const double ratio = adapt_best / retrain_best;
  const bool pass = ratio <= 0.2 && nsfts_trains == 0 && tv_trainings == expected && tv_counted == expected;
  return {pass, "T=10000 k=35 W=100 R=10: adaptation " + num(adapt_best) + " s vs time-variant " + num(retrain_best) +
                    " s, ratio " + num(ratio) + " (limit 0.2; adapt+forecast loop ratio " +
                    num(loop_best / retrain_best) + "); trains after warm-up nsfts " + std::to_string(nsfts_trains) +
                    ", time-variant " + std::to_string(tv_counted) + " (expected " + std::to_string(expected) + ")"};
}

Outcome ac8_metric_oracle() {
  testing::Gen g(108);
  double oracle_dev = 0.0, scale_dev = 0.0, ulps = 0.0, largest = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = g.index(2, 300);
    const auto y = g.series(n, g.real(1.0, 20.0), g.real(0.1, 5.0));
    const auto f = g.series(n, g.real(1.0, 20.0), g.real(0.1, 5.0));
    const std::array<std::pair<double, double>, 4> pairs{{{rmse(y, f), oracle::rmse(y, f)},
                                                          {mape(y, f).value, oracle::mape_pct(y, f)},
                                                          {theil_u1(y, f), oracle::u1(y, f)},
                                                          {theil_u2(y, f), oracle::u2(y, f)}}};
    for (const auto& [got, want] : pairs) {
      const double dev = std::abs(got - want);
      oracle_dev = std::max(oracle_dev, dev);
      ulps = std::max(ulps, dev / (std::nextafter(std::abs(want), HUGE_VAL) - std::abs(want)));
      largest = std::max(largest, std::abs(want));
    }
    const double a = g.real(0.01, 100.0);
    auto ya = y, fa = f;
    for (auto& v : ya) v *= a;
    for (auto& v : fa) v *= a;
    const double rel_rmse = std::abs(rmse(ya, fa) - a * rmse(y, f)) / (a * rmse(y, f));
    scale_dev = std::max({scale_dev, rel_rmse, std::abs(mape(ya, fa).value - mape(y, f).value),
                          std::abs(theil_u1(ya, fa) - theil_u1(y, f)), std::abs(theil_u2(ya, fa) - theil_u2(y, f))});
  }
  return {oracle_dev <= 1e-12 && scale_dev <= 1e-9, "1000 random pairs; max oracle deviation " + num(oracle_dev) +
                                                        " (tol 1e-12; worst " + num(ulps) + " ulp, largest metric value " + num(largest) +
                                                        "); max scaling deviation " + num(scale_dev) +
                                                        " (tol 1e-9)"};
}

#ifdef NSFTS_HAVE_CLI
std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ac9_end_to_end_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "nsfts_acceptance_bench";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string datasets;
  for (auto kind : kAllDriftKinds) {
    if (!datasets.empty()) datasets += ", ";
    datasets += R"({"synthetic": {"kind": ")" + std::string(to_string(kind)) + R"("}})";
  }
  std::ofstream(dir / "manifest.json") << R"({"version": 1, "seed": 42, "datasets": [)" << datasets
                                       << R"(], "methods": ["nsfts", "time-variant", "incremental-ensemble"]})";

  const auto start = Clock::now();
  std::ostringstream log;
  int rc = 0;
  for (const char* out : {"run1", "run2"}) {
    cli::BenchOptions o;
    o.manifest = dir / "manifest.json";
    o.out = dir / out;
    rc = std::max(rc, cli::run_bench(o, log));
  }
  const double secs = seconds_since(start) / 2.0;

  bool identical = true;
  for (const char* f : {"report.csv", "report.json", "cells.csv"})
    identical = identical && slurp(dir / "run1" / f) == slurp(dir / "run2" / f);
  for (const auto& entry : fs::directory_iterator(dir / "run1" / "trace"))
    identical = identical && slurp(entry.path()) == slurp(dir / "run2" / "trace" / entry.path().filename());

  const auto doc = nlohmann::json::parse(slurp(dir / "run1" / "report.json"));
  std::size_t finite = 0;
  for (const auto& c : doc.at("cells")) {
    bool ok = c.at("status") == "ok";
    for (const char* m : {"rmse", "mape_pct", "u1", "u2"}) ok = ok && c.at(m).is_number();
    finite += ok;
  }
  fs::remove_all(dir);
  const bool pass = rc == 0 && identical && finite == 24 && secs < 300.0;
  return {pass, "8 synthetic x 3 methods: " + std::to_string(finite) + "/24 cells finite; reports " +
                    std::string(identical ? "byte-identical" : "DIFFER") + " across two runs; " + num(secs) +
                    " s per run (limit 300 s); exit " + std::to_string(rc)};
}
#endif

std::string decimal(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

Outcome ac10_checkpoint_completeness() {
  namespace fs = std::filesystem;
  const auto y = synthetic(DriftKind::IncrementalMeanVariance, 1500);
  const auto train_y = std::span(y).first(500);
  const auto stream = std::span(y).subspan(500);  // 1000 points

  auto whole = train_nsfts(train_y);
  std::string expected;
  for (const auto& f : whole.run_online(stream)) expected += decimal(f.value) + "\n";

  auto first = train_nsfts(train_y);
  std::string resumed;
  for (const auto& f : first.run_online(stream.first(500))) resumed += decimal(f.value) + "\n";
  const fs::path path = fs::temp_directory_path() / "nsfts_acceptance_checkpoint.json";
  save_checkpoint(first, path);
  auto second = load_checkpoint(path);
  fs::remove(path);
  for (const auto& f : second.run_online(stream.subspan(500))) resumed += decimal(f.value) + "\n";

  const bool same = resumed == expected;
  return {same, "1000-point stream, checkpoint after 500: serialized forecasts " +
                    std::string(same ? "identical" : "DIFFER") + " to the uninterrupted run"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "perturbation algebra", ac1_perturbation_algebra},
      {"AC2", "partition of unity", ac2_partition_of_unity},
      {"AC3", "adaptation oracle", ac3_adaptation_oracle},
      {"AC4", "structural stability", ac4_structural_stability},
      {"AC5", "drift recovery", ac5_drift_recovery},
      {"AC6", "stationary parity", ac6_stationary_parity},
      {"AC7", "cost of adaptation vs retraining", ac7_cost},
      {"AC8", "metric oracle", ac8_metric_oracle},
#ifdef NSFTS_HAVE_CLI
      {"AC9", "end-to-end determinism", ac9_end_to_end_determinism},
#else
      {"AC9", "end-to-end determinism", [] { return Outcome{false, "built without the CLI"}; }},
#endif
      {"AC10", "checkpoint completeness", ac10_checkpoint_completeness},
  };

  int passed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    passed += o.pass;
    std::printf("%-4s %s  %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%zu criteria passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
