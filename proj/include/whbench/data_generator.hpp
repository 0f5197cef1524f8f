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
#include <variant>
#include <vector>

#include "whbench/core_model.hpp"
#include "whbench/random.hpp"

namespace whbench {

/// Column-major storage: keys, descriptors, or measures.
using KeyColumn = std::vector<std::int32_t>;
using StringColumn = std::vector<std::string>;
using MeasureColumn = std::vector<float>;
using Column = std::variant<KeyColumn, StringColumn, MeasureColumn>;

/// Generated rows of one table. columns[i] describes data[i].
struct TableExtension {
  std::string table_name;
  std::vector<Attribute> columns;
  std::vector<Column> data;

  std::size_t row_count() const;
  std::size_t column_index(std::string_view name) const;
  const KeyColumn& keys(std::string_view column) const;
};

struct CombinationCapExceeded : std::runtime_error {
  CombinationCapExceeded(const std::string& table, std::uint64_t required, std::uint64_t cap);
  std::uint64_t required;
  std::uint64_t cap;
};

struct DataSettings {
  std::uint64_t seed = 1;
  std::uint64_t max_combinations = 1'000'000'000;
  float measure_max = 10000.0f;  // measures are uniform in [0, measure_max)
  unsigned threads = 1;
};

/// Levels of one dimension, coarsest first. Every level draws from its own
/// sub-stream keyed by the table name.
std::vector<TableExtension> generate_dimension(const DimensionSpec& spec,
                                               const StringReferential& referential,
                                               const DataSettings& settings);

TableExtension generate_level(const HierarchyLevelSpec& level, std::int64_t coarser_cardinality,
                              const StringReferential& referential, const DataSettings& settings);

/// Walks the Cartesian product of the referenced entry-level keys in
/// lexicographic order (dimension_refs order, keys ascending) and keeps each
/// combination with probability DENSITY. The product is never materialized.
TableExtension generate_fact_table(const FactTableSpec& spec, const SchemaModel& schema,
                                   const DataSettings& settings);

/// Every table of the warehouse, in SchemaModel::intentions() order.
/// Tables are generated on settings.threads workers; content does not
/// depend on the thread count.
std::vector<TableExtension> generate_warehouse(const SchemaModel& schema,
                                               const StringReferential& referential,
                                               const DataSettings& settings);

}  // namespace whbench
