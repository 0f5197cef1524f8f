#include "whbench/data_generator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "test_support.hpp"
#include "whbench/presets.hpp"
#include "whbench/schema_generator.hpp"

namespace whbench {
namespace {

using testing::find_table;
using testing::star_params;

TEST(GenerateLevel, RowsKeysAndDescriptors) {
  const auto schema = build_schema(preset_dw1(), 1);
  StringReferential ref(1);
  const auto& dim = schema.dimension(2);
  const auto levels = generate_dimension(dim, ref, DataSettings{});
  ASSERT_EQ(levels.size(), 3u);
  EXPECT_EQ(levels[0].row_count(), 18u);
  EXPECT_EQ(levels[1].row_count(), 324u);
  EXPECT_EQ(levels[2].row_count(), 5832u);

  const auto& pk = levels[2].keys("DIM2_3_PK");
  for (std::size_t i = 0; i < pk.size(); ++i) ASSERT_EQ(pk[i], static_cast<std::int32_t>(i + 1));
  for (auto fk : levels[2].keys("DIM2_2_PK")) {
    ASSERT_GE(fk, 1);
    ASSERT_LE(fk, 324);
  }
  const auto& descr = std::get<StringColumn>(levels[0].data[1]);
  for (const auto& s : descr) {
    ASSERT_EQ(s.rfind("DIM2_1_DESCR1_", 0), 0u);
    ASSERT_EQ(s.size(), std::string("DIM2_1_DESCR1_").size() + 20);
  }
}

TEST(GenerateLevel, OneLevelHasNoForeignKey) {
  const auto schema = build_schema(preset_dw3(), 1);
  StringReferential ref(1);
  const auto levels = generate_dimension(schema.dimension(1), ref, DataSettings{});
  ASSERT_EQ(levels.size(), 1u);
  EXPECT_EQ(levels[0].columns.size(), 6u);
  for (const auto& c : levels[0].columns) EXPECT_NE(c.kind, AttributeKind::foreign_key);
}

TEST(GenerateLevel, ForeignKeysFavourMiddleOfCoarserLevel) {
  LowLevelParams p = star_params({1}, 1.0);
  p.nb_levels = {2};
  p.nb_att = {{1, 1}};
  p.hhlevel_size = {100};
  p.dim_sfactor = {400};
  const auto schema = build_schema(p, 1);
  StringReferential ref(1);
  const auto levels = generate_dimension(schema.dimension(1), ref, DataSettings{});
  std::map<int, int> freq;
  for (auto fk : levels[1].keys("DIM1_1_PK")) ++freq[fk];
  int centre = 0, edge = 0;
  for (int k = 45; k <= 55; ++k) centre += freq[k];
  for (int k = 1; k <= 11; ++k) edge += freq[k];
  EXPECT_GT(centre, 5 * edge);
}

TEST(GenerateFactTable, FullDensityIsCartesianProduct) {
  const auto schema = build_schema(star_params({3, 4}, 1.0, 2), 1);
  const auto fact = generate_fact_table(schema.fact_tables[0], schema, DataSettings{});
  ASSERT_EQ(fact.row_count(), 12u);
  std::set<std::pair<int, int>> seen;
  const auto& fact_spec = schema.fact_tables[0];
  const auto& a = fact.keys(primary_key_name(level_table_name(fact_spec.dimension_refs[0], 1)));
  const auto& b = fact.keys(primary_key_name(level_table_name(fact_spec.dimension_refs[1], 1)));
  for (std::size_t i = 0; i < fact.row_count(); ++i) seen.emplace(a[i], b[i]);
  EXPECT_EQ(seen.size(), 12u);
}

TEST(GenerateFactTable, LexicographicOrder) {
  const auto schema = build_schema(star_params({3, 4, 2}, 1.0), 1);
  const auto fact = generate_fact_table(schema.fact_tables[0], schema, DataSettings{});
  const auto n = schema.fact_tables[0].dimension_refs.size();
  for (std::size_t r = 1; r < fact.row_count(); ++r) {
    std::vector<int> prev, cur;
    for (std::size_t d = 0; d < n; ++d) {
      prev.push_back(std::get<KeyColumn>(fact.data[d])[r - 1]);
      cur.push_back(std::get<KeyColumn>(fact.data[d])[r]);
    }
    ASSERT_LT(prev, cur);
  }
}

TEST(GenerateFactTable, MeasuresInRange) {
  const auto schema = build_schema(star_params({20, 20}, 0.5, 3), 4);
  const auto fact = generate_fact_table(schema.fact_tables[0], schema, DataSettings{});
  for (std::size_t c = 2; c < fact.data.size(); ++c) {
    for (float v : std::get<MeasureColumn>(fact.data[c])) {
      ASSERT_GE(v, 0.0f);
      ASSERT_LT(v, 10000.0f);
    }
  }
}

TEST(GenerateFactTable, KeepFrequencyMatchesDensity) {
  const auto schema = build_schema(star_params({2, 2}, 0.5), 1);
  std::map<std::pair<int, int>, int> kept;
  const int seeds = 10000;
  for (int s = 1; s <= seeds; ++s) {
    DataSettings settings;
    settings.seed = static_cast<std::uint64_t>(s);
    const auto fact = generate_fact_table(schema.fact_tables[0], schema, settings);
    const auto& a = std::get<KeyColumn>(fact.data[0]);
    const auto& b = std::get<KeyColumn>(fact.data[1]);
    for (std::size_t i = 0; i < fact.row_count(); ++i) ++kept[{a[i], b[i]}];
  }
  ASSERT_EQ(kept.size(), 4u);
  for (const auto& [combo, count] : kept) {
    EXPECT_NEAR(static_cast<double>(count) / seeds, 0.5, 0.02);
  }
}

TEST(GenerateFactTable, CapRejectsLargeProducts) {
  const auto schema = build_schema(star_params({100, 100}, 0.5), 1);
  DataSettings settings;
  settings.max_combinations = 9999;
  try {
    generate_fact_table(schema.fact_tables[0], schema, settings);
    FAIL() << "expected CombinationCapExceeded";
  } catch (const CombinationCapExceeded& e) {
    EXPECT_EQ(e.required, 10000u);
    EXPECT_EQ(e.cap, 9999u);
  }
}

TEST(GenerateWarehouse, ThreadCountDoesNotChangeContent) {
  const auto schema = build_schema(scaled(preset_dw2(), 4, 3), 7);
  StringReferential ref(7);
  DataSettings serial;
  serial.seed = 7;
  DataSettings parallel = serial;
  parallel.threads = 4;
  const auto a = generate_warehouse(schema, ref, serial);
  const auto b = generate_warehouse(schema, ref, parallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].table_name, b[i].table_name);
    EXPECT_EQ(a[i].data, b[i].data);
  }
}

TEST(GenerateWarehouse, FailureNamesTableRegardlessOfThreads) {
  const auto schema = build_schema(star_params({50, 50}, 0.5), 1);
  StringReferential ref(1);
  DataSettings settings;
  settings.max_combinations = 10;
  settings.threads = 3;
  EXPECT_THROW(generate_warehouse(schema, ref, settings), CombinationCapExceeded);
}

TEST(GenerateWarehouse, Dw1FactRowsWithinFourSigma) {
  const auto schema = build_schema(preset_dw1(), 1);
  StringReferential ref(1);
  DataSettings settings;
  settings.threads = 4;
  const auto tables = generate_warehouse(schema, ref, settings);
  const double n = 324.0 * 5832.0;
  const double sigma = std::sqrt(n * 0.6 * 0.4);
  EXPECT_NEAR(static_cast<double>(find_table(tables, "FT1").row_count()), 0.6 * n, 4 * sigma);
}

}  // namespace
}  // namespace whbench
