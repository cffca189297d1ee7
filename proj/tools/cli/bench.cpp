#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "cli/commands.hpp"
#include "cli/format.hpp"
#include "nsfts/errors.hpp"

namespace nsfts::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Cell {
  std::size_t dataset = 0;
  std::size_t method = 0;
  json params;
  std::string params_hash;
  std::optional<MetricReport> metrics;
  std::size_t trainings = 0;
  std::string error;
};

std::string_view source_name(ForecastSource s) {
  switch (s) {
    case ForecastSource::Rules:
      return "rules";
    case ForecastSource::Fallback:
      return "fallback";
    case ForecastSource::Warmup:
      return "warmup";
  }
  return "rules";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_trace(const fs::path& path, const Evaluation& ev, bool nsfts) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write trace file '" + tmp.string() + "'");
    out << "t,y,forecast,residual,source";
    if (nsfts) out << ",delta_min,delta_max,rho_max";
    out << '\n';
    for (const auto& r : ev.trace) {
      out << r.t << ',' << format_double(r.y) << ',' << format_double(r.forecast) << ','
          << format_double(r.residual) << ',' << source_name(r.source);
      if (nsfts) {
        const auto p = r.perturbation.value_or(PerturbationSummary{});
        out << ',' << format_double(p.delta_min) << ',' << format_double(p.delta_max) << ','
            << format_double(p.rho_max);
      }
      out << '\n';
    }
    if (!out) throw Error("failed writing trace file '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::uint64_t dataset_seed(const DatasetEntry& d, std::uint64_t fallback) {
  if (const auto* spec = std::get_if<DriftSpec>(&d.source)) return spec->seed;
  return fallback;
}

json metric_or_null(const std::optional<MetricReport>& m, double MetricReport::*field) {
  if (!m) return nullptr;
  return (*m).*field;
}

}  // namespace

int run_bench(const BenchOptions& options, std::ostream& log) {
  Manifest manifest;
  try {
    manifest = load_manifest(options.manifest, options.seed);
  } catch (const Error& e) {
    log << "bench: " << e.what() << '\n';
    return kExitInvalid;
  }
  for (auto& m : manifest.methods) apply_flags(options.flags, m.params);
  if (options.no_trace) manifest.options.trace = false;
  const fs::path out_dir = options.out.value_or(manifest.output);
  const fs::path trace_dir = out_dir / "trace";

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!ec && manifest.options.trace) fs::create_directories(trace_dir, ec);
  if (ec) {
    log << "bench: cannot create output directory '" << out_dir.string() << "': " << ec.message() << '\n';
    return kExitInvalid;
  }

  std::vector<Dataset> data(manifest.datasets.size());
  std::vector<std::string> data_errors(manifest.datasets.size());
  for (std::size_t i = 0; i < manifest.datasets.size(); ++i) {
    try {
      data[i] = materialize(manifest.datasets[i]);
    } catch (const std::exception& e) {
      data_errors[i] = e.what();
    }
  }

  std::vector<Cell> cells;
  cells.reserve(data.size() * manifest.methods.size());
  for (std::size_t d = 0; d < data.size(); ++d) {
    for (std::size_t m = 0; m < manifest.methods.size(); ++m) {
      Cell c;
      c.dataset = d;
      c.method = m;
      c.params = cell_params(manifest.methods[m], manifest.options);
      c.params_hash = fnv1a_hex(c.params.dump());
      cells.push_back(std::move(c));
    }
  }

  auto run_cell = [&](Cell& c) {
    const auto& method = manifest.methods[c.method];
    const auto& name = manifest.datasets[c.dataset].name;
    const fs::path trace_path = trace_dir / (sanitize_filename(name) + "_" + sanitize_filename(method.label) + ".csv");
    try {
      if (!data_errors[c.dataset].empty()) throw Error("dataset '" + name + "': " + data_errors[c.dataset]);
      const auto ev = evaluate(method.method, data[c.dataset].values, method.params, manifest.options);
      if (manifest.options.trace) write_trace(trace_path, ev, method.method == Method::Nsfts);
      c.metrics = ev.metrics;
      c.trainings = ev.trainings;
    } catch (const std::exception& e) {
      c.error = e.what();
      if (manifest.options.trace) fs::remove(trace_path, ec);
    }
  };

  std::size_t workers = options.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) run_cell(cells[i]);
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }

  std::size_t failed = 0;
  for (const auto& c : cells) {
    if (c.error.empty()) continue;
    ++failed;
    log << "bench: cell (" << manifest.datasets[c.dataset].name << ", " << manifest.methods[c.method].label
        << ") failed: " << c.error << '\n';
  }

  const std::string mape_name = manifest.options.mape_percent ? "mape_pct" : "mape";
  const std::vector<std::pair<std::string, double MetricReport::*>> metrics{
      {"rmse", &MetricReport::rmse}, {mape_name, &MetricReport::mape}, {"u1", &MetricReport::u1},
      {"u2", &MetricReport::u2}};
  const std::size_t nm = manifest.methods.size();

  // Wide table: one row per dataset, one column per metric x method.
  {
    std::ofstream out(out_dir / "report.csv", std::ios::binary | std::ios::trunc);
    out << "dataset";
    for (const auto& [metric, field] : metrics)
      for (const auto& m : manifest.methods) out << ',' << csv_field(metric + ":" + m.label);
    out << '\n';
    for (std::size_t d = 0; d < data.size(); ++d) {
      out << csv_field(manifest.datasets[d].name);
      for (const auto& [metric, field] : metrics) {
        for (std::size_t m = 0; m < nm; ++m) {
          const auto& c = cells[d * nm + m];
          out << ',';
          if (c.metrics) out << format_double((*c.metrics).*field);
        }
      }
      out << '\n';
    }
    if (!out) {
      log << "bench: failed writing report.csv\n";
      return kExitCellFailed;
    }
  }

  // Long table: one row per cell.
  {
    std::ofstream out(out_dir / "cells.csv", std::ios::binary | std::ios::trunc);
    out << "dataset,method,rmse," << mape_name << ",u1,u2,n,skipped,seed,params_hash,trainings,status\n";
    for (const auto& c : cells) {
      out << csv_field(manifest.datasets[c.dataset].name) << ',' << csv_field(manifest.methods[c.method].label);
      for (const auto& [metric, field] : metrics) {
        out << ',';
        if (c.metrics) out << format_double((*c.metrics).*field);
      }
      out << ',';
      if (c.metrics) out << c.metrics->n;
      out << ',';
      if (c.metrics) out << c.metrics->skipped;
      out << ',' << dataset_seed(manifest.datasets[c.dataset], manifest.seed) << ',' << c.params_hash << ',';
      if (c.metrics) out << c.trainings;
      out << ',' << (c.error.empty() ? "ok" : "failed") << '\n';
    }
    if (!out) {
      log << "bench: failed writing cells.csv\n";
      return kExitCellFailed;
    }
  }

  {
    json doc;
    doc["format"] = "nsfts-report";
    doc["version"] = 1;
    doc["seed"] = manifest.seed;
    doc["split"] = manifest.options.split;
    json labels = json::array();
    for (const auto& m : manifest.methods) labels.push_back(m.label);
    doc["methods"] = labels;
    json metric_names = json::array();
    for (const auto& [metric, field] : metrics) metric_names.push_back(metric);
    doc["metrics"] = metric_names;

    json rows = json::array();
    for (std::size_t d = 0; d < data.size(); ++d) {
      json row;
      row["dataset"] = manifest.datasets[d].name;
      for (const auto& [metric, field] : metrics) {
        json group = json::object();
        for (std::size_t m = 0; m < nm; ++m)
          group[manifest.methods[m].label] = metric_or_null(cells[d * nm + m].metrics, field);
        row[metric] = group;
      }
      rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);

    json cell_docs = json::array();
    for (const auto& c : cells) {
      json j;
      j["dataset"] = manifest.datasets[c.dataset].name;
      j["method"] = manifest.methods[c.method].label;
      j["status"] = c.error.empty() ? "ok" : "failed";
      if (!c.error.empty()) j["error"] = c.error;
      for (const auto& [metric, field] : metrics) j[metric] = metric_or_null(c.metrics, field);
      if (c.metrics) {
        j["n"] = c.metrics->n;
        j["skipped"] = c.metrics->skipped;
        j["mape_zero_targets"] = c.metrics->mape_zero_targets;
        j["trainings"] = c.trainings;
      }
      j["seed"] = dataset_seed(manifest.datasets[c.dataset], manifest.seed);
      j["params"] = c.params;
      j["params_hash"] = c.params_hash;
      cell_docs.push_back(std::move(j));
    }
    doc["cells"] = std::move(cell_docs);

    std::ofstream out(out_dir / "report.json", std::ios::binary | std::ios::trunc);
    out << doc.dump(2) << '\n';
    if (!out) {
      log << "bench: failed writing report.json\n";
      return kExitCellFailed;
    }
  }

  log << "bench: " << cells.size() - failed << " of " << cells.size() << " cells succeeded; reports in "
      << out_dir.string() << '\n';
  return failed == 0 ? kExitOk : kExitCellFailed;
}

}  // namespace nsfts::cli
