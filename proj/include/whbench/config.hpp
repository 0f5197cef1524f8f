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
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "whbench/core_model.hpp"
#include "whbench/emitter.hpp"

namespace whbench {

struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> problems);
  std::vector<std::string> problems;
};

struct ConnectionSettings {
  std::string engine = "sqlite";
  std::string path;          // database file for file-based engines
  std::string address;       // host[:port] for server engines
  std::string user_env;      // names of environment variables, never values
  std::string password_env;
};

struct RunConfig {
  // Exactly one source of warehouse parameters, when present.
  std::optional<std::variant<HighLevelParams, LowLevelParams>> warehouse;
  std::string origin;  // "high", "low" or "preset:<name>"
  WorkloadParams workload;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> workload_seed;  // defaults to seed
  double spread_ratio = 0.2;
  std::uint64_t max_combinations = 1'000'000'000;
  std::filesystem::path out = "whbench_out";
  DataFormat format = DataFormat::delimited;
  SqlDialect dialect = SqlDialect::standard;
  unsigned threads = 1;
  int runs = 1;
  int warmup = 0;
  std::map<std::string, ConnectionSettings> connections;
};

/// Command-line values; they win over the config file.
struct ConfigOverrides {
  std::optional<std::string> preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> workload_seed;
  std::optional<std::filesystem::path> out;
  std::optional<std::string> format;
  std::optional<std::string> dialect;
  std::optional<unsigned> threads;
  std::optional<int> runs;
  std::optional<int> warmup;
};

/// Parses the key=value configuration text (INI sections [high], [low],
/// [workload], [output], [run], [connection:<name>]; top-level seed,
/// preset, spread_ratio, max_combinations). Omitted high-level and workload
/// fields take their defaults. Throws ConfigError listing every problem,
/// including derived workload probabilities set explicitly and more than one
/// warehouse parameter source.
RunConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});

RunConfig load_config(const std::optional<std::filesystem::path>& file,
                      const ConfigOverrides& overrides = {});

/// The low-level parameters a run uses: given directly, from a preset, or
/// derived from the high-level averages on the "__params__" sub-stream.
/// Throws ConfigError when no source is configured or the result is invalid.
LowLevelParams resolve_low_level(const RunConfig& config);

/// INI text of the sections, in the same notation parse_config reads.
std::string format_low_level_section(const LowLevelParams& low);
std::string format_workload_section(const WorkloadParams& params);

}  // namespace whbench
