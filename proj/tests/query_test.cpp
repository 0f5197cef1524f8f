#include <gtest/gtest.h>

#include "test_support.hpp"
#include "whbench/grammar.hpp"
#include "whbench/presets.hpp"
#include "whbench/query.hpp"
#include "whbench/schema_generator.hpp"
#include "whbench/workload_generator.hpp"

namespace whbench {
namespace {

QueryAst sample_olap() {
  QueryAst q;
  q.id = "Q1";
  q.select_attributes = {{"DIM1_2", "DIM1_2_DESCR1"}, {"DIM1_1", "DIM1_1_DESCR2"}};
  q.aggregates = {{{"FT1", "FT1_MEAS1"}, "AGG1"}, {{"FT1", "FT1_MEAS3"}, "AGG2"}};
  q.from_tables = {"FT1", "DIM1_2", "DIM1_1"};
  q.joins = {{{"FT1", "DIM1_2_PK"}, {"DIM1_2", "DIM1_2_PK"}},
             {{"DIM1_2", "DIM1_1_PK"}, {"DIM1_1", "DIM1_1_PK"}}};
  q.restrictions = {{{"DIM1_1", "DIM1_1_DESCR2"}, CompareOp::eq, std::string("DIM1_1_DESCR2_AB")}};
  q.group_by = GroupBy{GroupOperator::cube, q.select_attributes};
  q.having = Having{std::string("AGG2"), CompareOp::ge, 1234.5};
  q.kind = QueryKind::olap;
  return q;
}

TEST(RenderSql, OlapLayout) {
  EXPECT_EQ(render_sql(sample_olap()),
            "SELECT DIM1_2.DIM1_2_DESCR1, DIM1_1.DIM1_1_DESCR2, SUM(FT1.FT1_MEAS1) AS AGG1, "
            "SUM(FT1.FT1_MEAS3) AS AGG2\n"
            "FROM FT1, DIM1_2, DIM1_1\n"
            "WHERE FT1.DIM1_2_PK = DIM1_2.DIM1_2_PK AND DIM1_2.DIM1_1_PK = DIM1_1.DIM1_1_PK AND "
            "DIM1_1.DIM1_1_DESCR2 = 'DIM1_1_DESCR2_AB'\n"
            "GROUP BY CUBE(DIM1_2.DIM1_2_DESCR1, DIM1_1.DIM1_1_DESCR2)\n"
            "HAVING AGG2 >= 1234.50");
}

TEST(RenderSql, ExtractionHasNoGrouping) {
  QueryAst q;
  q.select_attributes = {{"DIM1_1", "DIM1_1_DESCR1"}};
  q.from_tables = {"FT1", "DIM1_1"};
  q.joins = {{{"FT1", "DIM1_1_PK"}, {"DIM1_1", "DIM1_1_PK"}}};
  const auto sql = render_sql(q);
  EXPECT_EQ(sql.find("GROUP BY"), std::string::npos);
  EXPECT_EQ(sql.find("SUM("), std::string::npos);
  EXPECT_TRUE(check_invariants(q).empty());
}

TEST(RenderSql, LiteralsQuoted) {
  EXPECT_EQ(render_literal(std::string("it's")), "'it''s'");
  EXPECT_EQ(render_literal(2.5), "2.50");
  EXPECT_EQ(render_number(0.004), "0.00");
}

TEST(CheckInvariants, DetectsUngroupedAttribute) {
  auto q = sample_olap();
  EXPECT_TRUE(check_invariants(q).empty());
  q.group_by->attributes.pop_back();
  EXPECT_FALSE(check_invariants(q).empty());
}

TEST(ParseQuery, RoundTripOfSample) {
  const auto sql = render_sql(sample_olap());
  const auto parsed = parse_query(sql);
  EXPECT_TRUE(parsed.same_statement(sample_olap()));
  EXPECT_EQ(parsed.kind, QueryKind::olap);
  EXPECT_EQ(render_sql(parsed), sql);
  EXPECT_NO_THROW(parse_query(sql + ";"));
}

TEST(ParseQuery, QuotedLiteralRoundTrip) {
  QueryAst q;
  q.select_attributes = {{"T", "A"}};
  q.from_tables = {"T"};
  q.restrictions = {{{"T", "A"}, CompareOp::ne, std::string("x'y")},
                    {{"T", "B"}, CompareOp::lt, 3.25}};
  const auto parsed = parse_query(render_sql(q));
  EXPECT_TRUE(parsed.same_statement(q));
}

TEST(CheckGrammar, RejectsOutsideTheGrammar) {
  const std::vector<std::string> rejected = {
      "SELECT * FROM t",
      "SELECT T.A FROM T GROUP BY ROLLUP(T.A)",
      "SELECT T.A, SUM(T.M) AS X FROM T GROUP BY T.A HAVING Y >= 1.00",
      "SELECT T.A FROM T HAVING SUM(T.M) >= 1.00",
      "SELECT T.A, SUM(T.M) AS X FROM T GROUP BY T.B",
      "SELECT SUM(T.M) AS X, T.A FROM T GROUP BY T.A",
      "SELECT AVG(T.M) AS X FROM T",
      "SELECT T.A FROM T WHERE T.A = 'x' OR T.A = 'y'",
      "SELECT T.A FROM T WHERE T.A IN (SELECT U.A FROM U)",
      "SELECT U.A FROM T",
      "SELECT T.A, SUM(T.M) AS X, SUM(T.N) AS X FROM T GROUP BY T.A",
      "SELECT T.A FROM T WHERE T.A = 'open",
      "SELECT T.A FROM T ORDER BY T.A",
      "",
  };
  for (const auto& text : rejected) {
    const auto result = check_grammar(text);
    EXPECT_FALSE(result.ok()) << text;
    EXPECT_FALSE(result.message.empty()) << text;
  }
}

TEST(CheckGrammar, ReportsPosition) {
  const auto result = check_grammar("SELECT * FROM t");
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(result.position, 7u);
  EXPECT_NE(result.message.find("star projection"), std::string::npos);

  const auto rollup = check_grammar("SELECT T.A FROM T GROUP BY ROLLUP(T.A)");
  ASSERT_FALSE(rollup.ok());
  EXPECT_NE(rollup.message.find("aggregate"), std::string::npos);
}

TEST(CheckGrammar, AcceptsCaseInsensitiveKeywords) {
  EXPECT_TRUE(check_grammar("select T.A, sum(T.M) as X from T group by rollup(T.A) having X >= 2").ok());
}

TEST(CheckGrammar, FuzzBatchRoundTrips) {
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 1000; ++seed) {
    const auto low = testing::random_small_params(seed);
    const auto schema = build_schema(low, seed);
    StringReferential ref(seed);
    RandomSource source(seed);
    WorkloadParams params;
    params.nb_q = 50;
    params.prob_having = 0.5;
    const auto workload = generate_workload(schema, ref, params, source);
    for (const auto& q : workload.queries) {
      const auto text = render_sql(q);
      const auto result = check_grammar(text);
      ASSERT_TRUE(result.ok()) << result.message << "\n" << text;
      ASSERT_TRUE(result.query->same_statement(q)) << text;
      ASSERT_EQ(render_sql(*result.query), text);
      ASSERT_TRUE(check_invariants(q).empty()) << text;
      ++checked;
    }
  }
}

TEST(GenerateWorkload, ExtractionOnlyWhenOlapDisabled) {
  const auto schema = build_schema(preset_dw1(), 3);
  StringReferential ref(3);
  RandomSource source(3);
  WorkloadParams params;
  params.nb_q = 20;
  params.prob_olap = 0;
  const auto w = generate_workload(schema, ref, params, source);
  ASSERT_EQ(w.queries.size(), 20u);
  for (std::size_t i = 0; i < w.queries.size(); ++i) {
    EXPECT_EQ(w.queries[i].kind, QueryKind::extraction);
    EXPECT_FALSE(w.queries[i].group_by);
    EXPECT_EQ(w.queries[i].id, query_id(i + 1));
  }
}

TEST(GenerateWorkload, StoppingRule) {
  const auto schema = build_schema(preset_dw1(), 4);
  StringReferential ref(4);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    RandomSource source(seed);
    WorkloadParams params;
    params.nb_q = 20;
    const auto w = generate_workload(schema, ref, params, source);
    EXPECT_GE(w.queries.size(), 20u);
    // The last initial query starts below NB_Q; its drill-downs are bounded
    // by the number of levels.
    EXPECT_LE(w.queries.size(), 19u + 3u);
  }
}

TEST(GenerateWorkload, DefaultDistributions) {
  const auto schema = build_schema(scaled(preset_dw1(), 3, 3), 5);
  StringReferential ref(5);
  RandomSource source(5);
  WorkloadParams params;
  params.nb_q = 40000;
  const auto w = generate_workload(schema, ref, params, source);
  int initial = 0, olap = 0, cube = 0, having = 0;
  for (const auto& q : w.queries) {
    if (q.kind == QueryKind::drill_down) continue;
    ++initial;
    if (q.kind != QueryKind::olap) continue;
    ++olap;
    cube += q.group_by->op == GroupOperator::cube;
    having += q.having.has_value();
  }
  ASSERT_GE(initial, 10000);
  EXPECT_NEAR(static_cast<double>(olap) / initial, 0.9, 0.01);
  EXPECT_NEAR(static_cast<double>(cube) / olap, 0.3, 0.02);
  EXPECT_NEAR(static_cast<double>(having) / olap, 0.2, 0.02);
}

TEST(GenerateWorkload, DrillDownsRefineTheirParent) {
  const auto schema = build_schema(preset_dw2(), 6);
  StringReferential ref(6);
  RandomSource source(6);
  WorkloadParams params;
  params.nb_q = 300;
  const auto w = generate_workload(schema, ref, params, source);
  int drill_downs = 0;
  for (std::size_t i = 0; i < w.queries.size(); ++i) {
    const auto& q = w.queries[i];
    if (q.kind != QueryKind::drill_down) continue;
    ++drill_downs;
    ASSERT_GT(i, 0u);
    const auto& parent = w.queries[i - 1];
    ASSERT_EQ(q.parent, std::optional<std::string>(parent.id));
    ASSERT_EQ(q.select_attributes.size(), parent.select_attributes.size() + 1);
    for (std::size_t k = 0; k < parent.select_attributes.size(); ++k) {
      ASSERT_EQ(q.select_attributes[k], parent.select_attributes[k]);
    }
    EXPECT_EQ(q.group_by->attributes, q.select_attributes);
    EXPECT_EQ(q.aggregates, parent.aggregates);
    EXPECT_EQ(q.restrictions, parent.restrictions);
  }
  EXPECT_GT(drill_downs, 0);
}

TEST(GenerateWorkload, JoinChainsReachEntryLevel) {
  const auto schema = build_schema(preset_dw2(), 8);
  StringReferential ref(8);
  RandomSource source(8);
  WorkloadParams params;
  params.nb_q = 200;
  const auto w = generate_workload(schema, ref, params, source);
  for (const auto& q : w.queries) {
    const auto& fact = q.from_tables.front();
    for (const auto& a : q.select_attributes) {
      // Walk joins from the attribute's table back to the fact table.
      std::string table = a.table;
      int guard = 0;
      while (table != fact && guard++ < 10) {
        bool found = false;
        for (const auto& j : q.joins) {
          if (j.right.table == table) {
            table = j.left.table;
            found = true;
            break;
          }
        }
        ASSERT_TRUE(found) << "no join reaches " << table;
      }
      ASSERT_EQ(table, fact);
    }
    EXPECT_EQ(q.joins.size() + 1, q.from_tables.size());
  }
}

TEST(GenerateWorkload, Deterministic) {
  const auto schema = build_schema(preset_dw1(), 9);
  StringReferential ref(9);
  RandomSource a(77), b(77);
  WorkloadParams params;
  params.nb_q = 30;
  const auto wa = generate_workload(schema, ref, params, a);
  const auto wb = generate_workload(schema, ref, params, b);
  ASSERT_EQ(wa.queries.size(), wb.queries.size());
  for (std::size_t i = 0; i < wa.queries.size(); ++i) {
    EXPECT_EQ(render_sql(wa.queries[i]), render_sql(wb.queries[i]));
  }
}

}  // namespace
}  // namespace whbench
