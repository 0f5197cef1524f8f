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

#include "whbench/workload_generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace whbench {

namespace {

constexpr int kMaxPickRetries = 8;

struct LevelPick {
  int dimension = 0;
  int level = 0;  // level_index within the dimension
};

template <typename T>
T take_skewed(RandomSource& source, std::vector<T>& pool) {
  const auto pick = skewed_index(source, static_cast<std::int64_t>(pool.size()));
  const auto it = pool.begin() + (pick - 1);
  T value = *it;
  pool.erase(it);
  return value;
}

bool contains(const std::vector<ColumnRef>& list, const ColumnRef& ref) {
  return std::find(list.begin(), list.end(), ref) != list.end();
}

class QueryBuilder {
 public:
  QueryBuilder(const SchemaModel& schema, const StringReferential& referential,
               const WorkloadParams& params, const WorkloadSettings& settings, RandomSource& source)
      : schema_(schema), referential_(referential), params_(params), settings_(settings),
        source_(source) {}

  // Returns the initial query and the level of its last attribute pick.
  std::pair<QueryAst, LevelPick> initial_query() {
    const auto& fact = schema_.fact_tables[static_cast<std::size_t>(
        skewed_index(source_, static_cast<std::int64_t>(schema_.fact_tables.size())) - 1)];
    QueryAst q;
    q.from_tables.push_back(fact.table_name);

    // Select, from and where.
    std::vector<int> unused_dims = fact.dimension_refs;
    LevelPick last;
    const auto picks = gaussian_int(source_, params_.avg_nb_att, settings_.spread_ratio);
    for (std::int64_t k = 0; k < picks; ++k) {
      for (int attempt = 0; attempt < kMaxPickRetries; ++attempt) {
        int dim_index;
        if (!unused_dims.empty()) {
          dim_index = take_skewed(source_, unused_dims);
        } else {
          dim_index = fact.dimension_refs[static_cast<std::size_t>(
              skewed_index(source_, static_cast<std::int64_t>(fact.dimension_refs.size())) - 1)];
        }
        const auto& dim = schema_.dimension(dim_index);
        // l counts levels from the entry level (l = 1) toward the coarsest.
        const auto l = source_.uniform_int(1, dim.nb_levels());
        const int level_index = dim.nb_levels() - static_cast<int>(l) + 1;
        const auto& level = dim.level(level_index);
        ColumnRef attribute{level.table_name, pick_descriptor(level)};
        if (contains(q.select_attributes, attribute)) continue;
        add_join_chain(q, fact, dim, level_index);
        q.select_attributes.push_back(std::move(attribute));
        last = {dim_index, level_index};
        break;
      }
    }

    // Supplementary restrictions on distinct selected attributes.
    const auto wanted = gaussian_int(source_, params_.avg_nb_restr, settings_.spread_ratio);
    std::vector<ColumnRef> restrictable = q.select_attributes;
    const auto n_restr = std::min<std::size_t>(static_cast<std::size_t>(wanted), restrictable.size());
    for (std::size_t k = 0; k < n_restr; ++k) {
      auto attribute = take_skewed(source_, restrictable);
      auto literal = referential_string(source_, referential_, attribute.column);
      q.restrictions.push_back({std::move(attribute), CompareOp::eq, std::move(literal)});
    }

    // OLAP or extraction.
    if (source_.next_unit() < params_.prob_olap) {
      q.kind = QueryKind::olap;
      std::vector<int> measures(static_cast<std::size_t>(fact.nb_measures));
      for (int m = 0; m < fact.nb_measures; ++m) measures[static_cast<std::size_t>(m)] = m + 1;
      const auto wanted_aggs = gaussian_int(source_, params_.avg_nb_aggreg, settings_.spread_ratio);
      const auto n_aggs = std::min<std::size_t>(static_cast<std::size_t>(wanted_aggs), measures.size());
      if (n_aggs == 0) throw std::logic_error(fact.table_name + " has no measures");
      for (std::size_t k = 0; k < n_aggs; ++k) {
        const int m = take_skewed(source_, measures);
        q.aggregates.push_back({{fact.table_name, measure_name(fact.index, m)},
                                "AGG" + std::to_string(k + 1)});
      }
      GroupBy group;
      group.attributes = q.select_attributes;
      group.op = source_.next_unit() < params_.prob_cube ? GroupOperator::cube
                                                         : GroupOperator::rollup;
      q.group_by = std::move(group);
      if (source_.next_unit() < params_.prob_having) {
        const auto& agg = q.aggregates[static_cast<std::size_t>(
            skewed_index(source_, static_cast<std::int64_t>(q.aggregates.size())) - 1)];
        const double raw = source_.uniform_float(0.0, settings_.having_max);
        q.having = Having{agg.alias, CompareOp::ge, std::floor(raw * 100.0) / 100.0};
      }
    } else {
      q.kind = QueryKind::extraction;
    }
    return {std::move(q), last};
  }

  // Next drill-down of `previous`, moving one level finer from `at`.
  // Returns false when `at` is already the finest level or every attribute
  // of the finer level is already selected.
  bool drill_down(const QueryAst& previous, LevelPick& at, QueryAst& out) {
    if (at.dimension == 0) return false;
    const auto& dim = schema_.dimension(at.dimension);
    const auto& level = dim.level(at.level);
    if (!level.finer) return false;
    const auto& finer = dim.level(*level.finer);

    std::vector<std::string> unused;
    for (int k = 1; k <= finer.nb_descriptors; ++k) {
      auto name = descriptor_name(finer.table_name, k);
      if (!contains(previous.select_attributes, {finer.table_name, name})) unused.push_back(name);
    }
    if (unused.empty()) return false;
    std::string attribute = take_skewed(source_, unused);

    out = previous;
    out.select_attributes.push_back({finer.table_name, attribute});
    out.group_by->attributes.push_back({finer.table_name, attribute});
    out.kind = QueryKind::drill_down;
    out.parent = previous.id;
    at.level = finer.level_index;
    return true;
  }

 private:
  std::string pick_descriptor(const HierarchyLevelSpec& level) {
    const auto k = skewed_index(source_, level.nb_descriptors);
    return descriptor_name(level.table_name, static_cast<int>(k));
  }

  static void add_join_chain(QueryAst& q, const FactTableSpec& fact, const DimensionSpec& dim,
                             int target_level) {
    const auto& entry = dim.entry_level();
    ColumnRef referencing{fact.table_name, primary_key_name(entry.table_name)};
    for (int h = entry.level_index; h >= target_level; --h) {
      const auto& level = dim.level(h);
      const auto pk = primary_key_name(level.table_name);
      if (std::find(q.from_tables.begin(), q.from_tables.end(), level.table_name) ==
          q.from_tables.end()) {
        q.from_tables.push_back(level.table_name);
        q.joins.push_back({referencing, {level.table_name, pk}});
      }
      if (level.coarser) {
        const auto coarser_pk = primary_key_name(dim.level(*level.coarser).table_name);
        referencing = {level.table_name, coarser_pk};
      }
    }
  }

  const SchemaModel& schema_;
  const StringReferential& referential_;
  const WorkloadParams& params_;
  const WorkloadSettings& settings_;
  RandomSource& source_;
};

}  // namespace

std::size_t Workload::initial_query_count() const {
  return static_cast<std::size_t>(std::count_if(queries.begin(), queries.end(), [](const QueryAst& q) {
    return q.kind != QueryKind::drill_down;
  }));
}

std::string query_id(std::size_t initial, std::size_t drill_down) {
  std::string id = "Q" + std::to_string(initial);
  if (drill_down > 0) id += ".D" + std::to_string(drill_down);
  return id;
}

Workload generate_workload(const SchemaModel& schema, const StringReferential& referential,
                           const WorkloadParams& params, RandomSource& source,
                           const WorkloadSettings& settings) {
  if (schema.fact_tables.empty()) throw std::invalid_argument("schema has no fact table");
  Workload workload;
  workload.params = params;
  workload.seed = source.seed();

  QueryBuilder builder(schema, referential, params, settings, source);
  std::size_t initial = 0;
  while (workload.queries.size() < static_cast<std::size_t>(params.nb_q)) {
    auto [query, at] = builder.initial_query();
    query.id = query_id(++initial);
    const bool olap = query.kind == QueryKind::olap;
    workload.queries.push_back(std::move(query));
    if (!olap) continue;

    const auto wanted = gaussian_int(source, params.avg_nb_dd, settings.spread_ratio);
    for (std::int64_t k = 1; k <= wanted; ++k) {
      QueryAst next;
      if (!builder.drill_down(workload.queries.back(), at, next)) break;
      next.id = query_id(initial, static_cast<std::size_t>(k));
      workload.queries.push_back(std::move(next));
    }
  }
  return workload;
}

}  // namespace whbench
