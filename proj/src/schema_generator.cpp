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

#include "whbench/schema_generator.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace whbench {

namespace {

constexpr double kKeyBinaryBytes = 4;
constexpr double kMeasureBinaryBytes = 4;
// %.6g text of a float in [0, 10000) is 7 characters unless trailing zeros
// are dropped.
constexpr double kMeasureTextBytes = 7;

int draw_count(RandomSource& source, double mean, double spread_ratio) {
  const auto v = gaussian_int(source, mean, spread_ratio);
  return static_cast<int>(std::min<std::int64_t>(v, std::numeric_limits<int>::max()));
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const std::string& what) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error(what + " overflows 64-bit arithmetic");
  }
  return out;
}

double descriptor_bytes(const std::string& name) {
  // prefix + '_' + 20-character referential entry
  return static_cast<double>(name.size()) + 21.0;
}

}  // namespace

LowLevelParams derive_low_level(const HighLevelParams& high, RandomSource& source,
                                double spread_ratio) {
  LowLevelParams low;
  low.nb_ft = draw_count(source, high.avg_nb_ft, spread_ratio);
  for (int f = 0; f < low.nb_ft; ++f) {
    low.nb_dim.push_back(draw_count(source, high.avg_nb_dim, spread_ratio));
    low.nb_meas.push_back(draw_count(source, high.avg_nb_meas, spread_ratio));
    low.density.push_back(gaussian_probability(source, high.avg_density, spread_ratio));
  }
  low.tot_nb_dim = draw_count(source, high.avg_tot_nb_dim, spread_ratio);

  // Repair: every fact table must find enough distinct dimensions, and
  // there cannot be more dimensions than fact-table slots.
  const int max_dim = *std::max_element(low.nb_dim.begin(), low.nb_dim.end());
  const int sum_dim = std::accumulate(low.nb_dim.begin(), low.nb_dim.end(), 0);
  low.tot_nb_dim = std::clamp(low.tot_nb_dim, max_dim, sum_dim);

  for (int d = 0; d < low.tot_nb_dim; ++d) {
    const int levels = draw_count(source, high.avg_nb_levels, spread_ratio);
    low.nb_levels.push_back(levels);
    std::vector<int> atts;
    for (int h = 0; h < levels; ++h) {
      atts.push_back(draw_count(source, high.avg_nb_att, spread_ratio));
    }
    low.nb_att.push_back(std::move(atts));
    low.hhlevel_size.push_back(gaussian_int(source, high.avg_hhlevel_size, spread_ratio));
    low.dim_sfactor.push_back(gaussian_int(source, high.dim_sfactor, spread_ratio));
  }
  return low;
}

SchemaModel build_schema(const LowLevelParams& low, RandomSource& source) {
  if (auto report = validate_low_level(low); !report.empty()) {
    throw SchemaError("invalid low-level parameters:\n" + format_report(report));
  }

  SchemaModel schema;
  for (int d = 1; d <= low.tot_nb_dim; ++d) {
    const auto di = static_cast<std::size_t>(d - 1);
    DimensionSpec dim;
    dim.index = d;
    const int levels = low.nb_levels[di];
    std::int64_t size = low.hhlevel_size[di];
    for (int h = 1; h <= levels; ++h) {
      if (size > std::numeric_limits<std::int32_t>::max()) {
        throw SchemaError("cardinality of " + level_table_name(d, h) +
                          " exceeds the 4-byte key range");
      }
      HierarchyLevelSpec level;
      level.dimension_index = d;
      level.level_index = h;
      level.table_name = level_table_name(d, h);
      level.nb_descriptors = low.nb_att[di][static_cast<std::size_t>(h - 1)];
      level.cardinality = size;
      if (h > 1) level.coarser = h - 1;
      if (h < levels) level.finer = h + 1;
      dim.levels.push_back(std::move(level));
      if (h < levels) {
        size = static_cast<std::int64_t>(checked_mul(static_cast<std::uint64_t>(size),
                                                     static_cast<std::uint64_t>(low.dim_sfactor[di]),
                                                     "cardinality of dimension " + std::to_string(d)));
      }
    }
    schema.dimensions.push_back(std::move(dim));
  }

  for (int f = 1; f <= low.nb_ft; ++f) {
    const auto fi = static_cast<std::size_t>(f - 1);
    FactTableSpec fact;
    fact.index = f;
    fact.table_name = fact_table_name(f);
    fact.nb_measures = low.nb_meas[fi];
    fact.density = low.density[fi];

    std::vector<int> candidates(static_cast<std::size_t>(low.tot_nb_dim));
    std::iota(candidates.begin(), candidates.end(), 1);
    if (low.nb_dim[fi] > static_cast<int>(candidates.size())) {
      throw SchemaError("fact table " + fact.table_name + " needs " +
                        std::to_string(low.nb_dim[fi]) + " distinct dimensions but only " +
                        std::to_string(candidates.size()) + " exist");
    }
    for (int k = 0; k < low.nb_dim[fi]; ++k) {
      const auto pick = skewed_index(source, static_cast<std::int64_t>(candidates.size()));
      const auto it = candidates.begin() + (pick - 1);
      fact.dimension_refs.push_back(*it);
      candidates.erase(it);
    }
    schema.fact_tables.push_back(std::move(fact));
  }
  return schema;
}

SchemaModel build_schema(const LowLevelParams& low, std::uint64_t master_seed) {
  auto source = RandomSource::substream(master_seed, "__schema__");
  return build_schema(low, source);
}

double SizeEstimate::flat_bytes() const {
  double total = 0;
  for (const auto& t : tables) total += t.flat_bytes();
  return total;
}

double SizeEstimate::binary_bytes() const {
  double total = 0;
  for (const auto& t : tables) total += t.binary_bytes();
  return total;
}

double mean_decimal_digits(std::int64_t n) {
  if (n < 1) return 0;
  std::int64_t total = 0;
  std::int64_t low = 1;
  int digits = 1;
  while (low <= n) {
    const std::int64_t high = (low > n / 10) ? n : std::min(n, low * 10 - 1);
    total += (high - low + 1) * digits;
    if (high == n) break;
    low *= 10;
    ++digits;
  }
  return static_cast<double>(total) / static_cast<double>(n);
}

std::uint64_t combination_count(const SchemaModel& schema, const FactTableSpec& fact) {
  std::uint64_t product = 1;
  for (int ref : fact.dimension_refs) {
    product = checked_mul(product,
                          static_cast<std::uint64_t>(schema.dimension(ref).entry_level().cardinality),
                          "combination count of " + fact.table_name);
  }
  return product;
}

SizeEstimate estimate_size(const SchemaModel& schema) {
  SizeEstimate estimate;
  for (const auto& dim : schema.dimensions) {
    for (const auto& level : dim.levels) {
      const auto intention = level.intention();
      TableSizeEstimate t;
      t.table = level.table_name;
      t.rows = static_cast<double>(level.cardinality);
      t.flat_row_bytes = static_cast<double>(intention.attributes.size());  // separators + newline
      for (const auto& a : intention.attributes) {
        switch (a.kind) {
          case AttributeKind::primary_key:
            t.flat_row_bytes += mean_decimal_digits(level.cardinality);
            t.binary_row_bytes += kKeyBinaryBytes;
            break;
          case AttributeKind::foreign_key:
            t.flat_row_bytes += mean_decimal_digits(dim.level(*level.coarser).cardinality);
            t.binary_row_bytes += kKeyBinaryBytes;
            break;
          case AttributeKind::descriptor:
            t.flat_row_bytes += descriptor_bytes(a.name);
            t.binary_row_bytes += descriptor_bytes(a.name);
            break;
          case AttributeKind::measure:
            break;
        }
      }
      estimate.tables.push_back(t);
    }
  }
  for (const auto& fact : schema.fact_tables) {
    TableSizeEstimate t;
    t.table = fact.table_name;
    t.rows = fact.density * static_cast<double>(combination_count(schema, fact));
    const auto columns = fact.dimension_refs.size() + static_cast<std::size_t>(fact.nb_measures);
    t.flat_row_bytes = static_cast<double>(columns);
    for (int ref : fact.dimension_refs) {
      t.flat_row_bytes += mean_decimal_digits(schema.dimension(ref).entry_level().cardinality);
      t.binary_row_bytes += kKeyBinaryBytes;
    }
    t.flat_row_bytes += kMeasureTextBytes * fact.nb_measures;
    t.binary_row_bytes += kMeasureBinaryBytes * fact.nb_measures;
    estimate.tables.push_back(t);
  }
  return estimate;
}

}  // namespace whbench
