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

#include "whbench/pipeline.hpp"

#include "whbench/emitter.hpp"
#include "whbench/schema_generator.hpp"

namespace whbench {

Warehouse plan_warehouse(const LowLevelParams& low, std::uint64_t seed) {
  return Warehouse{low, build_schema(low, seed), StringReferential(seed), {}};
}

DataSettings data_settings(const RunConfig& config) {
  DataSettings settings;
  settings.seed = config.seed;
  settings.max_combinations = config.max_combinations;
  settings.threads = config.threads;
  return settings;
}

Workload make_workload(const Warehouse& warehouse, const WorkloadParams& params,
                       std::uint64_t warehouse_seed, std::uint64_t workload_seed,
                       double spread_ratio) {
  RandomSource source(workload_seed);
  WorkloadSettings settings;
  settings.spread_ratio = spread_ratio;
  auto workload = generate_workload(warehouse.schema, warehouse.referential, params, source, settings);
  workload.seed = workload_seed;
  workload.warehouse_seed = warehouse_seed;
  workload.schema_fingerprint = schema_fingerprint(warehouse.schema);
  return workload;
}

Manifest generate_all(const RunConfig& config) {
  const auto low = resolve_low_level(config);
  auto warehouse = plan_warehouse(low, config.seed);
  warehouse.tables = generate_warehouse(warehouse.schema, warehouse.referential, data_settings(config));

  const auto workload_seed = config.workload_seed.value_or(config.seed);
  const auto workload =
      make_workload(warehouse, config.workload, config.seed, workload_seed, config.spread_ratio);

  std::filesystem::create_directories(config.out);
  write_text_file(config.out / kSchemaFile, emit_ddl(warehouse.schema, config.dialect));
  const auto files = emit_data(warehouse.tables, config.format, config.out / kDataDir, config.threads);
  write_text_file(config.out / kWorkloadFile, render_workload_file(workload));

  Manifest manifest;
  manifest.seed = config.seed;
  manifest.workload_seed = workload_seed;
  manifest.origin = config.origin;
  manifest.spread_ratio = config.spread_ratio;
  manifest.max_combinations = config.max_combinations;
  manifest.format = config.format;
  manifest.dialect = config.dialect;
  manifest.schema_kind = std::string(to_string(warehouse.schema.kind()));
  manifest.schema_fingerprint = schema_fingerprint(warehouse.schema);
  manifest.low = low;
  manifest.workload = config.workload;
  for (const auto& f : files) manifest.tables.push_back({f.table, f.rows, f.bytes});
  write_text_file(config.out / kManifestFile, render_manifest(manifest));
  return manifest;
}

Workload regenerate_workload(const Manifest& manifest, const WorkloadParams& params,
                             std::uint64_t workload_seed) {
  const auto warehouse = plan_warehouse(manifest.low, manifest.seed);
  auto workload = make_workload(warehouse, params, manifest.seed, workload_seed, manifest.spread_ratio);
  if (!manifest.schema_fingerprint.empty() && manifest.schema_fingerprint != workload.schema_fingerprint) {
    throw std::runtime_error("manifest fingerprint " + manifest.schema_fingerprint +
                             " does not match the rebuilt schema " + workload.schema_fingerprint);
  }
  return workload;
}

}  // namespace whbench
