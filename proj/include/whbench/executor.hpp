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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "whbench/emitter.hpp"

namespace whbench {

/// The engine rejected one statement; the run continues.
struct StatementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The session can no longer be used; the run stops.
struct ConnectionLost : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Connection to a target engine. Implementations drain and discard results.
class SqlSession {
 public:
  virtual ~SqlSession() = default;

  /// Returns the number of result rows drained.
  virtual std::uint64_t execute(std::string_view statement) = 0;
};

struct TimingRecord {
  std::string query_id;
  int run_index = 1;
  std::int64_t elapsed_ms = 0;
  std::optional<std::string> error;  // set when the statement failed

  bool ok() const { return !error.has_value(); }
  bool operator==(const TimingRecord&) const = default;
};

struct RunOptions {
  int runs = 1;
  int warmup = 0;
};

struct RunResult {
  std::vector<TimingRecord> records;
  bool aborted = false;  // connection lost; records are partial
  std::string reason;
};

/// Executes the statements sequentially in order, `warmup` unmeasured
/// passes then `runs` measured ones. Only the execute call is timed.
RunResult run_workload(SqlSession& session, std::span<const WorkloadStatement> statements,
                       const RunOptions& options = {});

/// CSV with header "query_id,run_index,elapsed_ms,status"; status is "ok"
/// or "error:<message>". Records are ordered by first appearance of their
/// query id, then run index.
std::string format_timings(std::span<const TimingRecord> records);
std::vector<TimingRecord> parse_timings(std::string_view csv);

void write_timings(const std::filesystem::path& path, std::span<const TimingRecord> records);
std::vector<TimingRecord> read_timings(const std::filesystem::path& path);

struct GainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QueryMean {
  std::string query_id;
  double elapsed_ms = 0;
};

/// Mean elapsed time per query, in first-appearance order. Throws GainError
/// on error records.
std::vector<QueryMean> per_query_means(std::span<const TimingRecord> records);

/// 1 - total(candidate) / total(reference), on per-query means. Throws
/// GainError on mismatched query sets, error records or a zero reference.
double compute_gain(std::span<const TimingRecord> reference, std::span<const TimingRecord> candidate);

/// Mean over queries of 1 - candidate / reference (queries with a zero
/// reference time are skipped).
double compute_mean_query_gain(std::span<const TimingRecord> reference,
                               std::span<const TimingRecord> candidate);

struct TimingSet {
  std::string name;
  std::vector<TimingRecord> records;
};

struct GainReport {
  std::vector<std::string> query_ids;
  std::vector<std::string> configurations;  // the first one is the reference
  std::vector<std::vector<double>> times;   // [configuration][query], mean ms
  std::vector<double> totals;
  std::vector<double> gains;
  std::vector<double> mean_query_gains;
};

/// The first set is the reference. Needs at least two sets.
GainReport build_gain_report(std::span<const TimingSet> sets);

std::string render_gain_table(const GainReport& report);
std::string render_gain_csv(const GainReport& report);

}  // namespace whbench
