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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "whbench/config.hpp"
#include "whbench/core_model.hpp"
#include "whbench/data_generator.hpp"
#include "whbench/manifest.hpp"
#include "whbench/random.hpp"
#include "whbench/workload_generator.hpp"

namespace whbench {

/// Names of the files a generate run writes under its output directory.
inline constexpr const char* kSchemaFile = "schema.sql";
inline constexpr const char* kDataDir = "data";
inline constexpr const char* kWorkloadFile = "workload.sql";
inline constexpr const char* kManifestFile = "manifest.ini";

struct Warehouse {
  LowLevelParams low;
  SchemaModel schema;
  StringReferential referential;
  std::vector<TableExtension> tables;  // empty until populated
};

/// Schema and referential for `low` under `seed`, without data.
Warehouse plan_warehouse(const LowLevelParams& low, std::uint64_t seed);

DataSettings data_settings(const RunConfig& config);

/// The workload stream is seeded directly by the workload seed.
Workload make_workload(const Warehouse& warehouse, const WorkloadParams& params,
                       std::uint64_t warehouse_seed, std::uint64_t workload_seed,
                       double spread_ratio);

/// Generates data and workload and writes schema.sql, data/<TABLE>.<ext>,
/// workload.sql and manifest.ini under config.out.
Manifest generate_all(const RunConfig& config);

/// Regenerates the workload of an existing output directory from its
/// manifest, optionally with another workload seed or parameters.
Workload regenerate_workload(const Manifest& manifest, const WorkloadParams& params,
                             std::uint64_t workload_seed);

}  // namespace whbench
