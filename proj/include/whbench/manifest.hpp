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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "whbench/config.hpp"

namespace whbench {

struct TableRecord {
  std::string name;
  std::uint64_t rows = 0;
  std::uint64_t bytes = 0;
};

/// Everything needed to reproduce a generated warehouse and its workload.
struct Manifest {
  std::uint64_t seed = 0;
  std::uint64_t workload_seed = 0;
  std::string origin;
  double spread_ratio = 0.2;
  std::uint64_t max_combinations = 0;
  DataFormat format = DataFormat::delimited;
  SqlDialect dialect = SqlDialect::standard;
  std::string schema_kind;
  std::string schema_fingerprint;
  LowLevelParams low;
  WorkloadParams workload;
  std::vector<TableRecord> tables;

  std::uint64_t total_rows() const;
  std::uint64_t total_bytes() const;
};

/// INI text readable by parse_config (the manifest is itself a valid
/// low-level configuration).
std::string render_manifest(const Manifest& manifest);

/// Throws ConfigError.
Manifest parse_manifest(std::string_view text);

}  // namespace whbench
