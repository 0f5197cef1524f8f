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

#include "whbench/query.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace whbench {

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::eq: return "=";
    case CompareOp::ne: return "<>";
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::gt: return ">";
    case CompareOp::ge: return ">=";
  }
  return "=";
}

std::string_view to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::olap: return "olap";
    case QueryKind::extraction: return "extraction";
    case QueryKind::drill_down: return "drilldown";
  }
  return "extraction";
}

bool QueryAst::same_statement(const QueryAst& o) const {
  return select_attributes == o.select_attributes && aggregates == o.aggregates &&
         from_tables == o.from_tables && joins == o.joins && restrictions == o.restrictions &&
         group_by == o.group_by && having == o.having;
}

std::vector<std::string> check_invariants(const QueryAst& q) {
  std::vector<std::string> problems;
  const bool grouped_kind = q.kind == QueryKind::olap || q.kind == QueryKind::drill_down;
  if (q.kind == QueryKind::extraction) {
    if (!q.aggregates.empty()) problems.push_back("extraction query has aggregates");
    if (q.group_by) problems.push_back("extraction query has GROUP BY");
    if (q.having) problems.push_back("extraction query has HAVING");
  }
  if (grouped_kind) {
    if (q.aggregates.empty()) problems.push_back("OLAP query without aggregates");
    if (!q.group_by) {
      problems.push_back("OLAP query without GROUP BY");
    } else if (q.group_by->op == GroupOperator::plain) {
      problems.push_back("OLAP query must group with CUBE or ROLLUP");
    }
  }
  if (q.group_by && q.group_by->attributes != q.select_attributes) {
    problems.push_back("GROUP BY list differs from the select attribute list");
  }
  if (q.having) {
    if (const auto* alias = std::get_if<std::string>(&q.having->target)) {
      const bool known = std::any_of(q.aggregates.begin(), q.aggregates.end(),
                                     [&](const Aggregate& a) { return a.alias == *alias; });
      if (!known) problems.push_back("HAVING names unknown alias " + *alias);
    }
  }
  const std::set<std::string> from(q.from_tables.begin(), q.from_tables.end());
  for (const auto& j : q.joins) {
    if (!from.count(j.left.table) || !from.count(j.right.table)) {
      problems.push_back("join references a table missing from FROM");
    }
  }
  if ((q.kind == QueryKind::drill_down) != q.parent.has_value()) {
    problems.push_back("parent must be set exactly for drill-down queries");
  }
  return problems;
}

std::string render_column(const ColumnRef& column) {
  return column.table.empty() ? column.column : column.table + "." + column.column;
}

std::string render_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::string render_literal(const Literal& value) {
  if (const auto* s = std::get_if<std::string>(&value)) {
    std::string out = "'";
    for (char c : *s) {
      out += c;
      if (c == '\'') out += '\'';
    }
    return out + "'";
  }
  return render_number(std::get<double>(value));
}

namespace {

template <typename Range, typename Fn>
std::string join(const Range& items, std::string_view separator, Fn render) {
  std::string out;
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += separator;
    out += render(item);
    first = false;
  }
  return out;
}

}  // namespace

std::string render_sql(const QueryAst& q) {
  std::vector<std::string> select;
  for (const auto& a : q.select_attributes) select.push_back(render_column(a));
  for (const auto& agg : q.aggregates) {
    std::string item = "SUM(" + render_column(agg.measure) + ")";
    if (!agg.alias.empty()) item += " AS " + agg.alias;
    select.push_back(std::move(item));
  }

  std::string sql = "SELECT " + join(select, ", ", [](const std::string& s) { return s; });
  sql += "\nFROM " + join(q.from_tables, ", ", [](const std::string& s) { return s; });

  std::vector<std::string> conditions;
  for (const auto& j : q.joins) {
    conditions.push_back(render_column(j.left) + " = " + render_column(j.right));
  }
  for (const auto& r : q.restrictions) {
    conditions.push_back(render_column(r.attribute) + " " + std::string(to_string(r.op)) + " " +
                         render_literal(r.value));
  }
  if (!conditions.empty()) {
    sql += "\nWHERE " + join(conditions, " AND ", [](const std::string& s) { return s; });
  }

  if (q.group_by) {
    const auto columns = join(q.group_by->attributes, ", ", render_column);
    switch (q.group_by->op) {
      case GroupOperator::plain: sql += "\nGROUP BY " + columns; break;
      case GroupOperator::cube: sql += "\nGROUP BY CUBE(" + columns + ")"; break;
      case GroupOperator::rollup: sql += "\nGROUP BY ROLLUP(" + columns + ")"; break;
    }
  }
  if (q.having) {
    std::string target;
    if (const auto* alias = std::get_if<std::string>(&q.having->target)) {
      target = *alias;
    } else {
      target = "SUM(" + render_column(std::get<ColumnRef>(q.having->target)) + ")";
    }
    sql += "\nHAVING " + target + " " + std::string(to_string(q.having->op)) + " " +
           render_number(q.having->threshold);
  }
  return sql;
}

}  // namespace whbench
