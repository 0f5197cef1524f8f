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
#include <stdexcept>
#include <string>
#include <vector>

#include "whbench/core_model.hpp"
#include "whbench/random.hpp"

namespace whbench {

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kDefaultSpreadRatio = 0.2;

/// Draws every low-level count around its high-level average, then repairs
/// the result so it validates (TOT_NB_DIM is raised, never NB_DIM lowered).
LowLevelParams derive_low_level(const HighLevelParams& high, RandomSource& source,
                                double spread_ratio = kDefaultSpreadRatio);

/// Instantiates dimensions (coarsest level first, cardinality multiplied by
/// DIM_SFACTOR at each finer level) and fact tables. Each fact table picks
/// its dimensions without replacement by skewed selection over all
/// dimensions, so sharing across fact tables emerges from the draws.
SchemaModel build_schema(const LowLevelParams& low, RandomSource& source);

/// Same as above on the dedicated "schema" sub-stream of a master seed.
SchemaModel build_schema(const LowLevelParams& low, std::uint64_t master_seed);

struct TableSizeEstimate {
  std::string table;
  double rows = 0;            // expected, not realized
  double flat_row_bytes = 0;  // one delimited record including separators
  double binary_row_bytes = 0;

  double flat_bytes() const { return rows * flat_row_bytes; }
  double binary_bytes() const { return rows * binary_row_bytes; }
};

struct SizeEstimate {
  std::vector<TableSizeEstimate> tables;

  double flat_bytes() const;
  double binary_bytes() const;
  /// Flat-file volume in MB (10^6 bytes).
  double megabytes() const { return flat_bytes() / 1e6; }
  double binary_megabytes() const { return binary_bytes() / 1e6; }
};

/// Expected storage before any data is generated. Fact rows are
/// DENSITY x product of entry-level cardinalities. Throws
/// std::overflow_error when the combination count does not fit in 64 bits.
SizeEstimate estimate_size(const SchemaModel& schema);

/// Mean number of decimal digits over the keys 1..n.
double mean_decimal_digits(std::int64_t n);

/// Number of key combinations of a fact table (product of entry-level
/// cardinalities). Throws std::overflow_error.
std::uint64_t combination_count(const SchemaModel& schema, const FactTableSpec& fact);

}  // namespace whbench
