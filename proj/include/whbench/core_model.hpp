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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace whbench {

enum class AttributeKind { primary_key, foreign_key, descriptor, measure };

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::descriptor;
  // Set iff kind == foreign_key.
  std::optional<std::string> referenced_table;

  bool operator==(const Attribute&) const = default;
};

/// Column definition of one relational table.
struct TableIntention {
  std::string name;
  std::vector<Attribute> attributes;

  const Attribute* find(std::string_view attribute) const;
  std::vector<const Attribute*> of_kind(AttributeKind kind) const;
};

/// One level of a dimension hierarchy. Level 1 is the coarsest level and is
/// generated first; the last level is the one fact tables reference.
struct HierarchyLevelSpec {
  int dimension_index = 1;
  int level_index = 1;
  std::string table_name;
  int nb_descriptors = 1;
  std::int64_t cardinality = 1;
  std::optional<int> coarser;  // level_index - 1
  std::optional<int> finer;    // level_index + 1

  TableIntention intention() const;
};

struct DimensionSpec {
  int index = 1;
  std::vector<HierarchyLevelSpec> levels;  // coarsest first

  const HierarchyLevelSpec& entry_level() const { return levels.back(); }
  const HierarchyLevelSpec& level(int level_index) const;
  int nb_levels() const { return static_cast<int>(levels.size()); }
};

struct FactTableSpec {
  int index = 1;
  std::string table_name;
  std::vector<int> dimension_refs;
  int nb_measures = 1;
  double density = 1.0;
};

enum class SchemaKind { star, snowflake, constellation };

std::string_view to_string(SchemaKind kind);

struct SchemaModel {
  std::vector<FactTableSpec> fact_tables;
  std::vector<DimensionSpec> dimensions;

  const DimensionSpec& dimension(int index) const;
  TableIntention fact_intention(const FactTableSpec& fact) const;

  /// All table intentions, referenced tables before referencing ones:
  /// dimensions coarsest level first, then fact tables.
  std::vector<TableIntention> intentions() const;

  /// Dimension indices referenced by two or more fact tables.
  std::vector<int> shared_dimensions() const;
  SchemaKind kind() const;
};

/// Full per-table control over the warehouse shape.
struct LowLevelParams {
  int nb_ft = 1;
  std::vector<int> nb_dim;       // per fact table
  int tot_nb_dim = 1;
  std::vector<int> nb_meas;      // per fact table
  std::vector<double> density;   // per fact table
  std::vector<int> nb_levels;    // per dimension
  std::vector<std::vector<int>> nb_att;  // per dimension, per level
  std::vector<std::int64_t> hhlevel_size;  // per dimension
  // Per dimension; not applicable (ignored) when nb_levels(d) == 1.
  std::vector<std::int64_t> dim_sfactor;

  bool operator==(const LowLevelParams&) const = default;
};

/// Averages from which low-level parameters are drawn.
struct HighLevelParams {
  double avg_nb_ft = 1;
  double avg_nb_dim = 5;
  double avg_tot_nb_dim = 5;
  double avg_nb_meas = 5;
  double avg_density = 0.6;
  double avg_nb_levels = 3;
  double avg_nb_att = 5;
  double avg_hhlevel_size = 10;
  double dim_sfactor = 10;

  bool operator==(const HighLevelParams&) const = default;
};

struct WorkloadParams {
  int nb_q = 100;
  double avg_nb_att = 5;
  double avg_nb_restr = 3;
  double prob_olap = 0.9;
  double avg_nb_aggreg = 3;
  double prob_cube = 0.3;
  double prob_having = 0.2;
  double avg_nb_dd = 3;

  double prob_extract() const { return 1.0 - prob_olap; }
  double prob_rollup() const { return 1.0 - prob_cube; }

  bool operator==(const WorkloadParams&) const = default;
};

struct Violation {
  std::string field;
  std::string message;
};

/// Empty means valid.
using ValidationReport = std::vector<Violation>;

ValidationReport validate_low_level(const LowLevelParams& params);
ValidationReport validate_high_level(const HighLevelParams& params);
ValidationReport validate_workload(const WorkloadParams& params);

/// Pure function of the parameters: several fact tables make a
/// constellation, any multi-level dimension a snowflake, otherwise a star.
SchemaKind classify(const LowLevelParams& params);

std::string format_report(const ValidationReport& report);

// Table and attribute naming.
std::string fact_table_name(int fact_index);
std::string level_table_name(int dimension_index, int level_index);
std::string primary_key_name(std::string_view table);
std::string descriptor_name(std::string_view table, int k);
std::string measure_name(int fact_index, int k);

}  // namespace whbench
