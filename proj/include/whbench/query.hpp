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

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace whbench {

/// table.column; table may be empty for an unqualified reference.
struct ColumnRef {
  std::string table;
  std::string column;

  bool operator==(const ColumnRef&) const = default;
};

/// SUM(measure) AS alias. Sum is the only aggregate function.
struct Aggregate {
  ColumnRef measure;
  std::string alias;  // may be empty when parsed without AS

  bool operator==(const Aggregate&) const = default;
};

struct JoinCondition {
  ColumnRef left;   // referencing side (foreign key)
  ColumnRef right;  // referenced primary key

  bool operator==(const JoinCondition&) const = default;
};

enum class CompareOp { eq, ne, lt, le, gt, ge };

std::string_view to_string(CompareOp op);

/// Literal: string or number.
using Literal = std::variant<std::string, double>;

struct Restriction {
  ColumnRef attribute;
  CompareOp op = CompareOp::eq;
  Literal value;

  bool operator==(const Restriction&) const = default;
};

enum class GroupOperator { plain, cube, rollup };

struct GroupBy {
  GroupOperator op = GroupOperator::plain;
  std::vector<ColumnRef> attributes;

  bool operator==(const GroupBy&) const = default;
};

/// HAVING <alias or SUM(measure)> <op> <threshold>.
struct Having {
  std::variant<std::string, ColumnRef> target;  // alias, or the summed measure
  CompareOp op = CompareOp::ge;
  double threshold = 0;

  bool operator==(const Having&) const = default;
};

enum class QueryKind { olap, extraction, drill_down };

std::string_view to_string(QueryKind kind);

struct QueryAst {
  std::string id;
  std::vector<ColumnRef> select_attributes;
  std::vector<Aggregate> aggregates;
  std::vector<std::string> from_tables;
  std::vector<JoinCondition> joins;
  std::vector<Restriction> restrictions;
  std::optional<GroupBy> group_by;
  std::optional<Having> having;
  QueryKind kind = QueryKind::extraction;
  std::optional<std::string> parent;  // set iff kind == drill_down

  /// Equality of the SQL-visible parts (ignores id, kind and parent).
  bool same_statement(const QueryAst& other) const;
};

/// Violated structural invariants, empty when well formed.
std::vector<std::string> check_invariants(const QueryAst& query);

/// Deterministic SQL text, no trailing semicolon:
///
///   SELECT a, b, SUM(m) AS AGG1
///   FROM FT1, DIM1_3
///   WHERE FT1.DIM1_3_PK = DIM1_3.DIM1_3_PK AND DIM1_3.DIM1_3_DESCR1 = '...'
///   GROUP BY CUBE(a, b)
///   HAVING AGG1 >= 1234.56
std::string render_sql(const QueryAst& query);

std::string render_column(const ColumnRef& column);
std::string render_literal(const Literal& value);
/// Fixed two-decimal rendering used for thresholds and numeric literals.
std::string render_number(double value);

}  // namespace whbench
