#include "whbench/emitter.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "test_support.hpp"
#include "whbench/grammar.hpp"
#include "whbench/presets.hpp"
#include "whbench/schema_generator.hpp"

namespace whbench {
namespace {

namespace fs = std::filesystem;

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("whbench_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TableExtension tiny_table() {
  TableExtension t;
  t.table_name = "FT9";
  t.columns = {{"DIM1_1_PK", AttributeKind::foreign_key, "DIM1_1"},
               {"DIM1_1_DESCR1", AttributeKind::descriptor, std::nullopt},
               {"FT9_MEAS1", AttributeKind::measure, std::nullopt}};
  t.data = {KeyColumn{1, 2, 30}, StringColumn{"A_X", "A_Y", "A_Z"}, MeasureColumn{0.5f, 1234.5678f, 9999.99f}};
  return t;
}

TEST(EmitDdl, TableCounts) {
  EXPECT_EQ(count_of(emit_ddl(build_schema(preset_dw3(), 1)), "CREATE TABLE"), 4u);
  EXPECT_EQ(count_of(emit_ddl(build_schema(preset_dw1(), 1)), "CREATE TABLE"), 6u);
}

TEST(EmitDdl, KeysAndReferences) {
  const auto ddl = emit_ddl(build_schema(preset_dw1(), 1));
  EXPECT_NE(ddl.find("CREATE TABLE DIM2_2 (\n  DIM2_2_PK INTEGER NOT NULL,\n"), std::string::npos);
  EXPECT_NE(ddl.find("DIM2_2_DESCR1 CHAR(34) NOT NULL"), std::string::npos);
  EXPECT_NE(ddl.find("FOREIGN KEY (DIM2_1_PK) REFERENCES DIM2_1 (DIM2_1_PK)"), std::string::npos);
  EXPECT_NE(ddl.find("FT1_MEAS5 REAL NOT NULL"), std::string::npos);
  // Referenced tables come first.
  EXPECT_LT(ddl.find("CREATE TABLE DIM2_3"), ddl.find("CREATE TABLE FT1"));
  EXPECT_LT(ddl.find("CREATE TABLE DIM2_1"), ddl.find("CREATE TABLE DIM2_2"));
}

TEST(EmitDdl, DialectsOnlyChangeTypeNames) {
  const auto schema = build_schema(preset_dw2(), 2);
  const auto oracle = emit_ddl(schema, SqlDialect::oracle);
  EXPECT_NE(oracle.find("NUMBER(10)"), std::string::npos);
  EXPECT_NE(oracle.find("BINARY_FLOAT"), std::string::npos);
  EXPECT_EQ(count_of(oracle, "CREATE TABLE"), count_of(emit_ddl(schema), "CREATE TABLE"));
  EXPECT_EQ(schema_fingerprint(schema), schema_fingerprint(build_schema(preset_dw2(), 2)));
  EXPECT_EQ(schema_fingerprint(schema).size(), 16u);
}

TEST(WriteTable, DelimitedRecords) {
  std::ostringstream out;
  write_table(tiny_table(), DataFormat::delimited, out);
  EXPECT_EQ(out.str(), "1|A_X|0.5\n2|A_Y|1234.57\n30|A_Z|9999.99\n");
  EXPECT_EQ(serialized_size(tiny_table(), DataFormat::delimited), out.str().size());
}

TEST(WriteTable, InsertScript) {
  std::ostringstream out;
  write_table(tiny_table(), DataFormat::insert_script, out);
  EXPECT_EQ(out.str(),
            "INSERT INTO FT9 VALUES (1, 'A_X', 0.5);\n"
            "INSERT INTO FT9 VALUES (2, 'A_Y', 1234.57);\n"
            "INSERT INTO FT9 VALUES (30, 'A_Z', 9999.99);\n");
  EXPECT_EQ(serialized_size(tiny_table(), DataFormat::insert_script), out.str().size());
}

TEST(EmitData, OneFilePerTableWithOneLinePerRow) {
  TempDir dir;
  const auto schema = build_schema(testing::star_params({3, 5}, 1.0, 2), 1);
  StringReferential ref(1);
  const auto tables = generate_warehouse(schema, ref, DataSettings{});
  const auto files = emit_data(tables, DataFormat::delimited, dir.path(), 2);
  ASSERT_EQ(files.size(), 3u);
  for (std::size_t i = 0; i < files.size(); ++i) {
    EXPECT_EQ(files[i].path, dir.path() / data_file_name(tables[i].table_name, DataFormat::delimited));
    const auto content = read_text_file(files[i].path);
    EXPECT_EQ(static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n')), tables[i].row_count());
    EXPECT_EQ(files[i].bytes, content.size());
    EXPECT_EQ(files[i].rows, tables[i].row_count());
  }
  EXPECT_EQ(files[0].rows, 3u);
}

TEST(EmitData, SameSeedSameBytes) {
  TempDir dir;
  const auto schema = build_schema(scaled(preset_dw1(), 3, 3), 4);
  StringReferential ref(4);
  DataSettings settings;
  settings.seed = 4;
  const auto a = emit_data(generate_warehouse(schema, ref, settings), DataFormat::insert_script,
                           dir.path() / "a", 1);
  settings.threads = 3;
  const auto b = emit_data(generate_warehouse(schema, ref, settings), DataFormat::insert_script,
                           dir.path() / "b", 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(read_text_file(a[i].path), read_text_file(b[i].path));
  }
}

TEST(EmitData, UnwritableDirectoryNamesTheProblem) {
  TempDir dir;
  const auto blocker = dir.path() / "file";
  write_text_file(blocker, "x");
  const std::vector<TableExtension> tables{tiny_table()};
  EXPECT_THROW(emit_data(tables, DataFormat::delimited, blocker / "sub", 1), std::runtime_error);
}

TEST(WorkloadFile, RoundTrip) {
  const auto schema = build_schema(preset_dw2(), 3);
  StringReferential ref(3);
  RandomSource source(12);
  WorkloadParams params;
  params.nb_q = 25;
  auto workload = generate_workload(schema, ref, params, source);
  workload.warehouse_seed = 3;
  workload.schema_fingerprint = schema_fingerprint(schema);
  const auto text = render_workload_file(workload);
  const auto file = parse_workload_file(text);

  EXPECT_EQ(file.header.at("seed"), "12");
  EXPECT_EQ(file.header.at("warehouse_seed"), "3");
  EXPECT_EQ(file.header.at("schema_fingerprint"), workload.schema_fingerprint);
  EXPECT_EQ(file.header.at("NB_Q"), "25");
  EXPECT_EQ(file.header.at("queries"), std::to_string(workload.queries.size()));
  ASSERT_EQ(file.statements.size(), workload.queries.size());
  for (std::size_t i = 0; i < file.statements.size(); ++i) {
    const auto& s = file.statements[i];
    const auto& q = workload.queries[i];
    EXPECT_EQ(s.id, q.id);
    EXPECT_EQ(s.kind, q.kind);
    EXPECT_EQ(s.parent, q.parent);
    EXPECT_EQ(s.sql, render_sql(q));
    EXPECT_TRUE(check_grammar(s.sql).ok());
  }
}

TEST(WorkloadFile, PlainStatementsAreNumbered) {
  const auto file = parse_workload_file("SELECT T.A\nFROM T;\n\nSELECT T.B FROM T;\n");
  ASSERT_EQ(file.statements.size(), 2u);
  EXPECT_EQ(file.statements[0].id, "Q1");
  EXPECT_EQ(file.statements[0].sql, "SELECT T.A\nFROM T");
  EXPECT_EQ(file.statements[1].id, "Q2");
}

TEST(WorkloadFile, UnterminatedStatementRejected) {
  EXPECT_THROW(parse_workload_file("-- Q1 kind=olap parent=none\nSELECT T.A FROM T\n"), std::runtime_error);
  EXPECT_THROW(parse_workload_file("-- Q1 kind=cube parent=none\nSELECT T.A FROM T;\n"), std::runtime_error);
}

TEST(FormatNames, ParseAndPrint) {
  EXPECT_EQ(parse_data_format("dat"), DataFormat::delimited);
  EXPECT_EQ(parse_data_format("sql"), DataFormat::insert_script);
  EXPECT_FALSE(parse_data_format("csv"));
  EXPECT_EQ(parse_dialect("oracle"), SqlDialect::oracle);
  EXPECT_EQ(to_string(SqlDialect::sqlite), "sqlite");
  EXPECT_EQ(data_file_name("FT1", DataFormat::insert_script), "FT1.sql");
}

}  // namespace
}  // namespace whbench
