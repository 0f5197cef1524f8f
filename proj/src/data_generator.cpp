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

#include "whbench/data_generator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "whbench/schema_generator.hpp"

namespace whbench {

std::size_t TableExtension::row_count() const {
  if (data.empty()) return 0;
  return std::visit([](const auto& column) { return column.size(); }, data.front());
}

std::size_t TableExtension::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  throw std::out_of_range(table_name + " has no column " + std::string(name));
}

const KeyColumn& TableExtension::keys(std::string_view column) const {
  return std::get<KeyColumn>(data[column_index(column)]);
}

CombinationCapExceeded::CombinationCapExceeded(const std::string& table, std::uint64_t required,
                                               std::uint64_t cap)
    : std::runtime_error("fact table " + table + " spans " + std::to_string(required) +
                         " key combinations, above the cap of " + std::to_string(cap) +
                         "; raise max_combinations to at least " + std::to_string(required)),
      required(required),
      cap(cap) {}

TableExtension generate_level(const HierarchyLevelSpec& level, std::int64_t coarser_cardinality,
                              const StringReferential& referential, const DataSettings& settings) {
  auto source = RandomSource::substream(settings.seed, level.table_name);
  const auto rows = static_cast<std::size_t>(level.cardinality);

  TableExtension ext;
  ext.table_name = level.table_name;
  ext.columns = level.intention().attributes;

  KeyColumn pk;
  pk.reserve(rows);
  std::vector<StringColumn> descriptors(static_cast<std::size_t>(level.nb_descriptors));
  for (auto& d : descriptors) d.reserve(rows);
  KeyColumn fk;
  if (level.coarser) fk.reserve(rows);

  KeySequence keys;
  for (std::size_t r = 0; r < rows; ++r) {
    pk.push_back(static_cast<std::int32_t>(keys.next()));
    for (int k = 0; k < level.nb_descriptors; ++k) {
      descriptors[static_cast<std::size_t>(k)].push_back(referential_string(
          source, referential, ext.columns[static_cast<std::size_t>(k) + 1].name));
    }
    if (level.coarser) {
      fk.push_back(static_cast<std::int32_t>(skewed_index(source, coarser_cardinality)));
    }
  }

  ext.data.emplace_back(std::move(pk));
  for (auto& d : descriptors) ext.data.emplace_back(std::move(d));
  if (level.coarser) ext.data.emplace_back(std::move(fk));
  return ext;
}

std::vector<TableExtension> generate_dimension(const DimensionSpec& spec,
                                               const StringReferential& referential,
                                               const DataSettings& settings) {
  std::vector<TableExtension> out;
  for (const auto& level : spec.levels) {
    const std::int64_t coarser = level.coarser ? spec.level(*level.coarser).cardinality : 0;
    out.push_back(generate_level(level, coarser, referential, settings));
  }
  return out;
}

TableExtension generate_fact_table(const FactTableSpec& spec, const SchemaModel& schema,
                                   const DataSettings& settings) {
  const std::uint64_t combinations = combination_count(schema, spec);
  if (combinations > settings.max_combinations) {
    throw CombinationCapExceeded(spec.table_name, combinations, settings.max_combinations);
  }

  auto source = RandomSource::substream(settings.seed, spec.table_name);
  TableExtension ext;
  ext.table_name = spec.table_name;
  ext.columns = schema.fact_intention(spec).attributes;

  const std::size_t n_dims = spec.dimension_refs.size();
  const auto n_meas = static_cast<std::size_t>(spec.nb_measures);
  std::vector<std::int32_t> bounds;
  for (int ref : spec.dimension_refs) {
    bounds.push_back(static_cast<std::int32_t>(schema.dimension(ref).entry_level().cardinality));
  }

  const auto expected = static_cast<std::size_t>(spec.density * static_cast<double>(combinations) * 1.01) + 16;
  std::vector<KeyColumn> keys(n_dims);
  std::vector<MeasureColumn> measures(n_meas);
  for (auto& k : keys) k.reserve(expected);
  for (auto& m : measures) m.reserve(expected);

  // Odometer over the product; the last dimension varies fastest.
  std::vector<std::int32_t> current(n_dims, 1);
  for (std::uint64_t c = 0; c < combinations; ++c) {
    if (source.next_unit() < spec.density) {
      for (std::size_t d = 0; d < n_dims; ++d) keys[d].push_back(current[d]);
      for (auto& m : measures) {
        float v = static_cast<float>(source.next_unit()) * settings.measure_max;
        // Rounding to float can reach the upper bound.
        if (!(v < settings.measure_max)) v = std::nextafter(settings.measure_max, 0.0f);
        m.push_back(v);
      }
    }
    for (std::size_t d = n_dims; d-- > 0;) {
      if (++current[d] <= bounds[d]) break;
      current[d] = 1;
    }
  }

  for (auto& k : keys) ext.data.emplace_back(std::move(k));
  for (auto& m : measures) ext.data.emplace_back(std::move(m));
  return ext;
}

std::vector<TableExtension> generate_warehouse(const SchemaModel& schema,
                                               const StringReferential& referential,
                                               const DataSettings& settings) {
  // Every table depends only on cardinalities known from the schema, so all
  // of them can be generated independently.
  std::vector<std::function<TableExtension()>> jobs;
  for (const auto& dim : schema.dimensions) {
    for (const auto& level : dim.levels) {
      const std::int64_t coarser = level.coarser ? dim.level(*level.coarser).cardinality : 0;
      jobs.emplace_back([&level, coarser, &referential, &settings] {
        return generate_level(level, coarser, referential, settings);
      });
    }
  }
  for (const auto& fact : schema.fact_tables) {
    jobs.emplace_back([&fact, &schema, &settings] {
      return generate_fact_table(fact, schema, settings);
    });
  }

  std::vector<TableExtension> out(jobs.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(settings.threads,
                                                            static_cast<unsigned>(jobs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) out[i] = jobs[i]();
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(jobs.size());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) {
        try {
          out[i] = jobs[i]();
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  // Report the first failing table in schema order, whatever the schedule.
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return out;
}

}  // namespace whbench
