#include "whbench/config.hpp"

#include <gtest/gtest.h>

#include "whbench/manifest.hpp"
#include "whbench/presets.hpp"

namespace whbench {
namespace {

bool mentions(const ConfigError& e, const std::string& text) {
  for (const auto& p : e.problems) {
    if (p.find(text) != std::string::npos) return true;
  }
  return false;
}

std::vector<std::string> problems_of(std::string_view text, const ConfigOverrides& o = {}) {
  try {
    parse_config(text, o);
  } catch (const ConfigError& e) {
    return e.problems;
  }
  return {};
}

TEST(ParseConfig, EmptyHighSectionTakesDefaults) {
  const auto config = parse_config("[high]\n");
  ASSERT_TRUE(config.warehouse);
  EXPECT_EQ(std::get<HighLevelParams>(*config.warehouse), HighLevelParams{});
  EXPECT_EQ(config.workload, WorkloadParams{});
  EXPECT_EQ(config.origin, "high");
  EXPECT_EQ(config.seed, 1u);
}

TEST(ParseConfig, HighValuesOverrideDefaults) {
  const auto config = parse_config("seed = 9\n[high]\nAVG_NB_FT = 2\nAVG_DENSITY = 0.3\n");
  const auto& high = std::get<HighLevelParams>(*config.warehouse);
  EXPECT_DOUBLE_EQ(high.avg_nb_ft, 2);
  EXPECT_DOUBLE_EQ(high.avg_density, 0.3);
  EXPECT_DOUBLE_EQ(high.avg_nb_levels, 3);
  EXPECT_EQ(config.seed, 9u);
}

TEST(ParseConfig, PresetIsVerbatim) {
  const auto config = parse_config("preset = dw1\n");
  EXPECT_EQ(std::get<LowLevelParams>(*config.warehouse), preset_dw1());
  EXPECT_EQ(config.workload.nb_q, 20);
  EXPECT_EQ(config.origin, "preset:dw1");

  ConfigOverrides o;
  o.preset = "dw3";
  EXPECT_EQ(resolve_low_level(parse_config("", o)), preset_dw3());
}

TEST(ParseConfig, LowSectionNotation) {
  const auto config = parse_config(
      "[low]\n"
      "NB_FT = 1\nNB_DIM = 2\nTOT_NB_DIM = 2\nNB_MEAS = 5\nDENSITY = 0.6\n"
      "NB_LEVELS = 2, 3\nNB_ATT = 5/5, 4/4/4\nHHLEVEL_SIZE = 18\nDIM_SFACTOR = 18\n");
  EXPECT_EQ(std::get<LowLevelParams>(*config.warehouse), preset_dw1());
}

TEST(ParseConfig, LowSectionNotApplicableScaleFactor) {
  const auto config = parse_config(
      "[low]\n"
      "NB_FT = 1\nNB_DIM = 3\nTOT_NB_DIM = 3\nNB_MEAS = 5\nDENSITY = 0.8\n"
      "NB_LEVELS = 1\nNB_ATT = 5\nHHLEVEL_SIZE = 100, 100, 70\n");
  EXPECT_EQ(std::get<LowLevelParams>(*config.warehouse), preset_dw3());
  const auto with_na = parse_config(
      "[low]\n"
      "NB_FT = 1\nNB_DIM = 3\nTOT_NB_DIM = 3\nNB_MEAS = 5\nDENSITY = 0.8\n"
      "NB_LEVELS = 1\nNB_ATT = 5\nHHLEVEL_SIZE = 100, 100, 70\nDIM_SFACTOR = n/a, n/a, n/a\n");
  EXPECT_EQ(std::get<LowLevelParams>(*with_na.warehouse), preset_dw3());
}

TEST(ParseConfig, LowSectionValidationDelegated) {
  const auto problems = problems_of(
      "[low]\n"
      "NB_FT = 1\nNB_DIM = 2\nTOT_NB_DIM = 2\nNB_MEAS = 5\nDENSITY = 1.5\n"
      "NB_LEVELS = 1\nNB_ATT = 5\nHHLEVEL_SIZE = 4\n");
  ASSERT_FALSE(problems.empty());
  EXPECT_NE(problems.front().find("density outside (0,1]"), std::string::npos);
}

TEST(ParseConfig, MissingScaleFactorForHierarchies) {
  const auto problems = problems_of(
      "[low]\nNB_FT = 1\nNB_DIM = 1\nTOT_NB_DIM = 1\nNB_MEAS = 1\nDENSITY = 1\n"
      "NB_LEVELS = 2\nNB_ATT = 1\nHHLEVEL_SIZE = 4\n");
  ASSERT_EQ(problems.size(), 1u);
  EXPECT_NE(problems[0].find("DIM_SFACTOR"), std::string::npos);
}

TEST(ParseConfig, DerivedProbabilitiesRejected) {
  try {
    parse_config("[high]\n[workload]\nPROB_EXTRACT = 0.5\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_TRUE(mentions(e, "derived parameter"));
  }
  try {
    parse_config("[high]\n[workload]\nPROB_ROLLUP = 0.5\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_TRUE(mentions(e, "derived parameter"));
  }
}

TEST(ParseConfig, ExactlyOneWarehouseSource) {
  EXPECT_FALSE(problems_of("preset = dw1\n[high]\n").empty());
  EXPECT_FALSE(problems_of("[high]\n[low]\nNB_FT = 1\n").empty());
  ConfigOverrides o;
  o.preset = "dw2";
  EXPECT_FALSE(problems_of("[high]\n", o).empty());
  // Neither: parsing succeeds, resolving does not.
  const auto config = parse_config("seed = 3\n");
  EXPECT_FALSE(config.warehouse);
  EXPECT_THROW(resolve_low_level(config), ConfigError);
}

TEST(ParseConfig, UnknownNamesRejected) {
  EXPECT_FALSE(problems_of("[high]\nAVG_NB_FACTS = 2\n").empty());
  EXPECT_FALSE(problems_of("[hihg]\n").empty());
  EXPECT_FALSE(problems_of("sede = 2\n[high]\n").empty());
  EXPECT_FALSE(problems_of("preset = dw9\n").empty());
  EXPECT_FALSE(problems_of("[high]\nAVG_NB_FT = many\n").empty());
}

TEST(ParseConfig, EveryProblemListed) {
  const auto problems = problems_of("[high]\nAVG_NB_FT = 0\nAVG_DENSITY = 2\n[workload]\nPROB_OLAP = 1.5\n");
  EXPECT_EQ(problems.size(), 3u);
}

TEST(ParseConfig, WorkloadSectionUsesParameterNames) {
  const auto config = parse_config("[high]\n[workload]\nNB_Q = 40\nPROB_CUBE = 0.5\nAVG_NB_DD = 1\n");
  EXPECT_EQ(config.workload.nb_q, 40);
  EXPECT_DOUBLE_EQ(config.workload.prob_cube, 0.5);
  EXPECT_DOUBLE_EQ(config.workload.prob_rollup(), 0.5);
  EXPECT_DOUBLE_EQ(config.workload.avg_nb_dd, 1);
  EXPECT_DOUBLE_EQ(config.workload.prob_olap, 0.9);
}

TEST(ParseConfig, OutputRunAndConnections) {
  const auto config = parse_config(
      "preset = dw2\n"
      "[output]\nout = build/dw2\nformat = sql\ndialect = oracle\nthreads = 4\n"
      "[run]\nruns = 3\nwarmup = 1\n"
      "[connection:local]\nengine = sqlite\npath = dw2.db\n"
      "[connection:remote]\nengine = oracle\naddress = db:1521\nuser_env = DB_USER\npassword_env = DB_PASS\n");
  EXPECT_EQ(config.out, "build/dw2");
  EXPECT_EQ(config.format, DataFormat::insert_script);
  EXPECT_EQ(config.dialect, SqlDialect::oracle);
  EXPECT_EQ(config.threads, 4u);
  EXPECT_EQ(config.runs, 3);
  EXPECT_EQ(config.warmup, 1);
  ASSERT_EQ(config.connections.size(), 2u);
  EXPECT_EQ(config.connections.at("local").path, "dw2.db");
  EXPECT_EQ(config.connections.at("remote").password_env, "DB_PASS");
  EXPECT_FALSE(problems_of("[connection:x]\npassword = secret\n").empty());
}

TEST(ParseConfig, OverridesWin) {
  ConfigOverrides o;
  o.seed = 77;
  o.format = "sql";
  o.runs = 5;
  const auto config = parse_config("seed = 3\n[high]\n[output]\nformat = dat\n", o);
  EXPECT_EQ(config.seed, 77u);
  EXPECT_EQ(config.format, DataFormat::insert_script);
  EXPECT_EQ(config.runs, 5);
  o.format = "xml";
  EXPECT_FALSE(problems_of("[high]\n", o).empty());
}

TEST(ParseConfig, MalformedIni) {
  EXPECT_THROW(parse_config("[high\n"), ConfigError);
}

TEST(ResolveLowLevel, HighDerivationIsSeeded) {
  const auto a = resolve_low_level(parse_config("seed = 5\n[high]\n"));
  const auto b = resolve_low_level(parse_config("seed = 5\n[high]\n"));
  EXPECT_EQ(a, b);
  EXPECT_TRUE(validate_low_level(a).empty());
  const auto exact = resolve_low_level(parse_config("seed = 5\nspread_ratio = 0\n[high]\n"));
  EXPECT_EQ(exact.nb_levels, std::vector<int>(5, 3));
}

TEST(FormatSections, ParseBack) {
  for (const auto& low : {preset_dw1(), preset_dw2(), preset_dw3()}) {
    const auto config = parse_config(format_low_level_section(low) + format_workload_section(preset_workload()));
    EXPECT_EQ(std::get<LowLevelParams>(*config.warehouse), low);
    EXPECT_EQ(config.workload, preset_workload());
  }
}

TEST(Manifest, RoundTripAndIsAConfiguration) {
  Manifest m;
  m.seed = 42;
  m.workload_seed = 43;
  m.origin = "preset:dw2";
  m.spread_ratio = 0.2;
  m.max_combinations = 1000000000;
  m.format = DataFormat::insert_script;
  m.dialect = SqlDialect::sqlite;
  m.schema_kind = "snowflake";
  m.schema_fingerprint = "0123456789abcdef";
  m.low = preset_dw2();
  m.workload = preset_workload();
  m.tables = {{"DIM1_1", 8, 100}, {"FT1", 800000, 28000000}};
  const auto text = render_manifest(m);

  const auto back = parse_manifest(text);
  EXPECT_EQ(back.seed, 42u);
  EXPECT_EQ(back.workload_seed, 43u);
  EXPECT_EQ(back.origin, "preset:dw2");
  EXPECT_EQ(back.format, DataFormat::insert_script);
  EXPECT_EQ(back.dialect, SqlDialect::sqlite);
  EXPECT_EQ(back.schema_fingerprint, m.schema_fingerprint);
  EXPECT_EQ(back.low, m.low);
  EXPECT_EQ(back.workload, m.workload);
  ASSERT_EQ(back.tables.size(), 2u);
  EXPECT_EQ(back.tables[1].rows, 800000u);
  EXPECT_EQ(back.tables[1].bytes, 28000000u);
  EXPECT_EQ(back.total_rows(), 800008u);
  EXPECT_EQ(render_manifest(back), text);

  const auto config = parse_config(text);
  EXPECT_EQ(resolve_low_level(config), preset_dw2());
  EXPECT_EQ(config.seed, 42u);
  EXPECT_EQ(config.workload_seed, std::optional<std::uint64_t>(43));
}

}  // namespace
}  // namespace whbench
