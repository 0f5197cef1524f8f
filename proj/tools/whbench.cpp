// Copyright 2026 The whbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// whbench command-line front end.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "whbench/config.hpp"
#include "whbench/emitter.hpp"
#include "whbench/executor.hpp"
#include "whbench/manifest.hpp"
#include "whbench/pipeline.hpp"
#include "whbench/presets.hpp"
#include "whbench/schema_generator.hpp"
#include "whbench/sqlite_session.hpp"

namespace {

using namespace whbench;

struct CommonOptions {
  std::optional<std::string> config;
  std::optional<std::string> preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> workload_seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> dialect;
  std::optional<unsigned> threads;
  std::optional<int> runs;
  std::optional<int> warmup;

  RunConfig load() const {
    ConfigOverrides o;
    o.preset = preset;
    o.seed = seed;
    o.workload_seed = workload_seed;
    if (out) o.out = *out;
    o.format = format;
    o.dialect = dialect;
    o.threads = threads;
    o.runs = runs;
    o.warmup = warmup;
    std::optional<std::filesystem::path> file;
    if (config) file = *config;
    return load_config(file, o);
  }
};

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

int cmd_estimate(const CommonOptions& opts) {
  const auto config = opts.load();
  const auto low = resolve_low_level(config);
  const auto schema = build_schema(low, config.seed);
  const auto estimate = estimate_size(schema);

  std::printf("schema: %s\n", std::string(to_string(schema.kind())).c_str());
  std::printf("%-12s %16s %10s %14s\n", "table", "rows", "row bytes", "MB");
  for (const auto& t : estimate.tables) {
    std::printf("%-12s %16s %10s %14s\n", t.table.c_str(), fixed(t.rows, 0).c_str(),
                fixed(t.flat_row_bytes, 2).c_str(), fixed(t.flat_bytes() / 1e6, 3).c_str());
  }
  std::printf("total: %s MB (delimited files), %s MB (4-byte fields)\n",
              fixed(estimate.megabytes(), 3).c_str(), fixed(estimate.binary_megabytes(), 3).c_str());
  return 0;
}

int cmd_generate(const CommonOptions& opts) {
  const auto config = opts.load();
  const auto manifest = generate_all(config);
  std::printf("wrote %s: %zu tables, %llu rows, %llu bytes, fingerprint %s\n", config.out.c_str(),
              manifest.tables.size(), static_cast<unsigned long long>(manifest.total_rows()),
              static_cast<unsigned long long>(manifest.total_bytes()),
              manifest.schema_fingerprint.c_str());
  return 0;
}

Manifest read_manifest_in(const std::filesystem::path& dir) {
  const auto path = dir / kManifestFile;
  if (!std::filesystem::exists(path)) {
    throw ConfigError({"missing manifest " + path.string() + " (run generate first)"});
  }
  return parse_manifest(read_text_file(path));
}

int cmd_workload(const CommonOptions& opts, const std::optional<std::string>& output) {
  const std::filesystem::path dir = opts.out.value_or("whbench_out");
  const auto manifest = read_manifest_in(dir);
  WorkloadParams params = manifest.workload;
  if (opts.config) params = opts.load().workload;
  const auto seed = opts.workload_seed.value_or(opts.seed.value_or(manifest.workload_seed));
  const auto workload = regenerate_workload(manifest, params, seed);
  const std::filesystem::path path = output ? std::filesystem::path(*output) : dir / kWorkloadFile;
  write_text_file(path, render_workload_file(workload));
  std::printf("wrote %s: %zu queries (%zu initial)\n", path.c_str(), workload.queries.size(),
              workload.initial_query_count());
  return 0;
}

int cmd_load(const CommonOptions& opts, const std::string& database) {
  const std::filesystem::path dir = opts.out.value_or("whbench_out");
  const auto manifest = read_manifest_in(dir);
  SqliteSession session(database);
  load_directory(session, dir / kSchemaFile, dir / kDataDir, manifest.format, manifest.schema_fingerprint);
  std::printf("loaded %llu rows into %s\n", static_cast<unsigned long long>(manifest.total_rows()),
              database.c_str());
  return 0;
}

int cmd_execute(const CommonOptions& opts, const std::optional<std::string>& connection,
                std::optional<std::string> database, const std::string& workload_path,
                const std::string& timings_path) {
  const auto config = opts.load();
  if (connection) {
    auto it = config.connections.find(*connection);
    if (it == config.connections.end()) throw ConfigError({"unknown connection " + *connection});
    if (it->second.engine != "sqlite") {
      throw ConfigError({"connection " + *connection + ": engine " + it->second.engine +
                         " is not supported by this build"});
    }
    database = it->second.path;
  }
  if (!database || database->empty()) throw ConfigError({"give --connection or --database"});

  const auto file = parse_workload_file(read_text_file(workload_path));
  SqliteSession session(*database);
  const auto stored = stored_fingerprint(session);
  const auto expected = file.header.count("schema_fingerprint") ? file.header.at("schema_fingerprint") : "";
  if (!stored.empty() && !expected.empty() && stored != expected) {
    std::fprintf(stderr, "warning: workload fingerprint %s does not match warehouse %s\n",
                 expected.c_str(), stored.c_str());
  }

  const auto result = run_workload(session, file.statements, {config.runs, config.warmup});
  write_timings(timings_path, result.records);
  std::size_t failed = 0;
  for (const auto& r : result.records) failed += r.ok() ? 0 : 1;
  std::printf("wrote %s: %zu records, %zu failed\n", timings_path.c_str(), result.records.size(), failed);
  if (result.aborted) {
    std::fprintf(stderr, "run aborted: %s\n", result.reason.c_str());
    return 1;
  }
  return 0;
}

int cmd_report(const std::string& reference, const std::vector<std::string>& candidates,
               const std::optional<std::string>& csv) {
  std::vector<TimingSet> sets;
  sets.push_back({std::filesystem::path(reference).stem().string(), read_timings(reference)});
  for (const auto& c : candidates) {
    sets.push_back({std::filesystem::path(c).stem().string(), read_timings(c)});
  }
  const auto report = build_gain_report(sets);
  std::cout << render_gain_table(report);
  if (csv) write_text_file(*csv, render_gain_csv(report));
  return 0;
}

void add_warehouse_options(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config, "Configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--preset", opts.preset, "Reference warehouse")
      ->check(CLI::IsMember(preset_names()));
  cmd->add_option("--seed", opts.seed, "Master seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data warehouse benchmark generator and workload runner"};
  app.require_subcommand(1);
  CommonOptions opts;

  auto* estimate = app.add_subcommand("estimate", "Print the expected warehouse size");
  add_warehouse_options(estimate, opts);

  auto* generate = app.add_subcommand("generate", "Generate schema, data and workload");
  add_warehouse_options(generate, opts);
  generate->add_option("--workload-seed", opts.workload_seed, "Seed of the workload stream");
  generate->add_option("--out", opts.out, "Output directory");
  generate->add_option("--format", opts.format, "Data file format")->check(CLI::IsMember({"dat", "sql"}));
  generate->add_option("--dialect", opts.dialect, "DDL type names")
      ->check(CLI::IsMember({"standard", "sqlite", "oracle"}));
  generate->add_option("--threads", opts.threads, "Worker threads")->check(CLI::PositiveNumber);

  std::optional<std::string> workload_output;
  auto* workload = app.add_subcommand("workload", "Regenerate the workload of a generated warehouse");
  workload->add_option("--config", opts.config, "Configuration file with a [workload] section")
      ->check(CLI::ExistingFile);
  workload->add_option("--out", opts.out, "Directory holding the manifest");
  workload->add_option("--seed", opts.workload_seed, "Workload seed");
  workload->add_option("--output", workload_output, "Workload file to write");

  std::string load_database;
  auto* load = app.add_subcommand("load", "Load generated files into a SQLite database");
  load->add_option("--out", opts.out, "Directory holding the generated files");
  load->add_option("--database", load_database, "SQLite database file")->required();

  std::optional<std::string> connection, database;
  std::string workload_path, timings_path = "timings.csv";
  auto* execute = app.add_subcommand("execute", "Run a workload and export timings");
  execute->add_option("--config", opts.config, "Configuration file")->check(CLI::ExistingFile);
  execute->add_option("--connection", connection, "Connection section name");
  execute->add_option("--database", database, "SQLite database file");
  execute->add_option("--workload", workload_path, "Workload file")->required()->check(CLI::ExistingFile);
  execute->add_option("--timings", timings_path, "Timing CSV to write");
  execute->add_option("--runs", opts.runs, "Measured passes")->check(CLI::PositiveNumber);
  execute->add_option("--warmup", opts.warmup, "Unmeasured passes")->check(CLI::NonNegativeNumber);

  std::string reference;
  std::vector<std::string> candidates;
  std::optional<std::string> report_csv;
  auto* report = app.add_subcommand("report", "Compute gains from timing files");
  report->add_option("--reference", reference, "Reference timings")->required()->check(CLI::ExistingFile);
  report->add_option("--candidate", candidates, "Candidate timings")->required()->check(CLI::ExistingFile);
  report->add_option("--csv", report_csv, "Write the report as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*estimate) return cmd_estimate(opts);
    if (*generate) return cmd_generate(opts);
    if (*workload) return cmd_workload(opts, workload_output);
    if (*load) return cmd_load(opts, load_database);
    if (*execute) return cmd_execute(opts, connection, database, workload_path, timings_path);
    if (*report) return cmd_report(reference, candidates, report_csv);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const SchemaError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
