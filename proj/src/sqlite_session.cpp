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

#include "whbench/sqlite_session.hpp"

#include <sqlite3.h>

#include <algorithm>
#include <cctype>
#include <fstream>

#include "whbench/grammar.hpp"
#include "whbench/text.hpp"

namespace whbench {

std::vector<unsigned> grouping_masks(GroupOperator op, std::size_t attributes) {
  std::vector<unsigned> masks;
  switch (op) {
    case GroupOperator::plain:
      masks.push_back(0);
      break;
    case GroupOperator::cube:
      for (unsigned m = 0; m < (1u << attributes); ++m) masks.push_back(m);
      break;
    case GroupOperator::rollup:
      // Roll up the trailing attributes first: 0, then the last, then the
      // last two, up to all of them.
      for (std::size_t k = 0; k <= attributes; ++k) {
        unsigned m = 0;
        for (std::size_t i = attributes - k; i < attributes; ++i) m |= 1u << i;
        masks.push_back(m);
      }
      break;
  }
  return masks;
}

namespace {

constexpr std::string_view kMaskTable = "WHBENCH_GS";

std::string join_strings(const std::vector<std::string>& items, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += separator;
    out += items[i];
  }
  return out;
}

std::string masked(const ColumnRef& column, std::size_t bit) {
  return "CASE WHEN (" + std::string(kMaskTable) + ".M & " + std::to_string(1u << bit) +
         ") = 0 THEN " + render_column(column) + " END";
}

}  // namespace

std::string lower_grouping_sets(const QueryAst& query) {
  if (!query.group_by || query.group_by->op == GroupOperator::plain) return render_sql(query);
  const auto& group = query.group_by->attributes;
  if (group.size() > 16) throw std::invalid_argument("too many grouping attributes to lower");

  auto position = [&](const ColumnRef& c) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (group[i] == c) return i;
    }
    return std::nullopt;
  };

  std::vector<std::string> select;
  for (const auto& a : query.select_attributes) {
    const auto pos = position(a);
    select.push_back(pos ? masked(a, *pos) + " AS " + a.column : render_column(a));
  }
  for (const auto& agg : query.aggregates) {
    std::string item = "SUM(" + render_column(agg.measure) + ")";
    if (!agg.alias.empty()) item += " AS " + agg.alias;
    select.push_back(std::move(item));
  }

  std::vector<std::string> masks;
  for (unsigned m : grouping_masks(query.group_by->op, group.size())) {
    masks.push_back("SELECT " + std::to_string(m) + " AS M");
  }

  std::string sql = "SELECT " + join_strings(select, ", ");
  sql += "\nFROM (" + join_strings(masks, " UNION ALL ") + ") AS " + std::string(kMaskTable);
  for (const auto& t : query.from_tables) sql += ", " + t;

  std::vector<std::string> conditions;
  for (const auto& j : query.joins) {
    conditions.push_back(render_column(j.left) + " = " + render_column(j.right));
  }
  for (const auto& r : query.restrictions) {
    conditions.push_back(render_column(r.attribute) + " " + std::string(to_string(r.op)) + " " +
                         render_literal(r.value));
  }
  if (!conditions.empty()) sql += "\nWHERE " + join_strings(conditions, " AND ");

  std::vector<std::string> grouping{std::string(kMaskTable) + ".M"};
  for (std::size_t i = 0; i < group.size(); ++i) grouping.push_back(masked(group[i], i));
  sql += "\nGROUP BY " + join_strings(grouping, ", ");

  if (query.having) {
    std::string target;
    if (const auto* alias = std::get_if<std::string>(&query.having->target)) {
      target = *alias;
      for (const auto& agg : query.aggregates) {
        if (agg.alias == *alias) target = "SUM(" + render_column(agg.measure) + ")";
      }
    } else {
      target = "SUM(" + render_column(std::get<ColumnRef>(query.having->target)) + ")";
    }
    sql += "\nHAVING " + target + " " + std::string(to_string(query.having->op)) + " " +
           render_number(query.having->threshold);
  }
  return sql;
}

namespace {

bool uses_grouping_sets(std::string_view sql) {
  std::string upper(sql);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  const auto group = upper.find("GROUP BY");
  if (group == std::string::npos) return false;
  return upper.find("CUBE", group) != std::string::npos ||
         upper.find("ROLLUP", group) != std::string::npos;
}

bool connection_failure(int code) {
  switch (code & 0xff) {
    case SQLITE_IOERR:
    case SQLITE_CORRUPT:
    case SQLITE_NOTADB:
    case SQLITE_CANTOPEN:
    case SQLITE_FULL:
      return true;
    default:
      return false;
  }
}

[[noreturn]] void fail(sqlite3* db, int code, std::string_view context) {
  std::string message = std::string(context) + ": " + sqlite3_errmsg(db);
  if (connection_failure(code)) throw ConnectionLost(message);
  throw StatementError(message);
}

struct Statement {
  sqlite3_stmt* stmt = nullptr;
  ~Statement() { sqlite3_finalize(stmt); }
};

}  // namespace

SqliteSession::SqliteSession(const std::string& path) {
  const int rc = sqlite3_open_v2(path.c_str(), &db_,
                                 SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_NOMUTEX, nullptr);
  if (rc != SQLITE_OK) {
    std::string message = db_ ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    db_ = nullptr;
    throw ConnectionLost("cannot open " + path + ": " + message);
  }
}

SqliteSession::~SqliteSession() { sqlite3_close(db_); }

std::uint64_t SqliteSession::execute(std::string_view statement) {
  std::string sql(statement);
  if (uses_grouping_sets(sql)) {
    try {
      sql = lower_grouping_sets(parse_query(sql));
    } catch (const std::exception& e) {
      throw StatementError(std::string("cannot lower grouping sets: ") + e.what());
    }
  }

  std::uint64_t rows = 0;
  const char* tail = sql.c_str();
  const char* end = sql.c_str() + sql.size();
  while (tail < end) {
    Statement s;
    int rc = sqlite3_prepare_v2(db_, tail, static_cast<int>(end - tail), &s.stmt, &tail);
    if (rc != SQLITE_OK) fail(db_, rc, "prepare");
    if (!s.stmt) break;  // trailing whitespace or comment
    while ((rc = sqlite3_step(s.stmt)) == SQLITE_ROW) ++rows;
    if (rc != SQLITE_DONE) fail(db_, rc, "step");
  }
  return rows;
}

void SqliteSession::exec_script(std::string_view script) {
  std::string sql(script);
  char* error = nullptr;
  const int rc = sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &error);
  if (rc != SQLITE_OK) {
    std::string message = error ? error : sqlite3_errstr(rc);
    sqlite3_free(error);
    if (connection_failure(rc)) throw ConnectionLost(message);
    throw StatementError(message);
  }
}

std::string SqliteSession::query_text(std::string_view statement) {
  Statement s;
  int rc = sqlite3_prepare_v2(db_, statement.data(), static_cast<int>(statement.size()), &s.stmt, nullptr);
  if (rc != SQLITE_OK) fail(db_, rc, "prepare");
  rc = sqlite3_step(s.stmt);
  if (rc == SQLITE_ROW) {
    const auto* value = sqlite3_column_text(s.stmt, 0);
    return value ? reinterpret_cast<const char*>(value) : "";
  }
  if (rc != SQLITE_DONE) fail(db_, rc, "step");
  return {};
}

namespace {

void write_meta(SqliteSession& session, const std::string& fingerprint) {
  session.exec_script(
      "CREATE TABLE IF NOT EXISTS WHBENCH_META (NAME TEXT PRIMARY KEY, VALUE TEXT);"
      "INSERT OR REPLACE INTO WHBENCH_META VALUES ('schema_fingerprint', '" +
      fingerprint + "');");
}

class Inserter {
 public:
  Inserter(sqlite3* db, const std::string& table, std::size_t columns) : db_(db) {
    std::string sql = "INSERT INTO " + table + " VALUES (";
    for (std::size_t i = 0; i < columns; ++i) sql += i ? ", ?" : "?";
    sql += ")";
    const int rc = sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt_.stmt, nullptr);
    if (rc != SQLITE_OK) fail(db, rc, "prepare insert into " + table);
  }

  void bind(int index, std::int64_t v) { sqlite3_bind_int64(stmt_.stmt, index, v); }
  void bind(int index, double v) { sqlite3_bind_double(stmt_.stmt, index, v); }
  void bind(int index, std::string_view v) {
    sqlite3_bind_text(stmt_.stmt, index, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT);
  }

  void step(std::string_view table) {
    const int rc = sqlite3_step(stmt_.stmt);
    if (rc != SQLITE_DONE) fail(db_, rc, "insert into " + std::string(table));
    sqlite3_reset(stmt_.stmt);
  }

 private:
  sqlite3* db_;
  Statement stmt_;
};

}  // namespace

void load_tables(SqliteSession& session, const SchemaModel& schema,
                 std::span<const TableExtension> tables) {
  session.exec_script(emit_ddl(schema, SqlDialect::sqlite));
  session.exec_script("BEGIN");
  try {
    for (const auto& table : tables) {
      Inserter insert(session.handle(), table.table_name, table.data.size());
      const auto rows = table.row_count();
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < table.data.size(); ++c) {
          const int index = static_cast<int>(c) + 1;
          std::visit(
              [&](const auto& column) {
                using T = std::decay_t<decltype(column)>;
                if constexpr (std::is_same_v<T, KeyColumn>) {
                  insert.bind(index, static_cast<std::int64_t>(column[r]));
                } else if constexpr (std::is_same_v<T, MeasureColumn>) {
                  insert.bind(index, static_cast<double>(column[r]));
                } else {
                  insert.bind(index, std::string_view(column[r]));
                }
              },
              table.data[c]);
        }
        insert.step(table.table_name);
      }
    }
    session.exec_script("COMMIT");
  } catch (...) {
    session.exec_script("ROLLBACK");
    throw;
  }
  write_meta(session, schema_fingerprint(schema));
}

void load_directory(SqliteSession& session, const std::filesystem::path& ddl_path,
                    const std::filesystem::path& data_dir, DataFormat format,
                    const std::string& fingerprint) {
  const auto ddl = read_text_file(ddl_path);
  session.exec_script(ddl);

  // Table names in creation order, so referenced rows load first.
  std::vector<std::pair<std::string, std::size_t>> tables;
  {
    Statement s;
    sqlite3_prepare_v2(session.handle(),
                       "SELECT name FROM sqlite_master WHERE type = 'table' AND name <> 'WHBENCH_META' "
                       "ORDER BY rowid",
                       -1, &s.stmt, nullptr);
    while (sqlite3_step(s.stmt) == SQLITE_ROW) {
      tables.emplace_back(reinterpret_cast<const char*>(sqlite3_column_text(s.stmt, 0)), 0);
    }
  }
  for (auto& [name, columns] : tables) {
    Statement s;
    const auto sql = "SELECT count(*) FROM pragma_table_info('" + name + "')";
    sqlite3_prepare_v2(session.handle(), sql.c_str(), -1, &s.stmt, nullptr);
    if (sqlite3_step(s.stmt) == SQLITE_ROW) columns = static_cast<std::size_t>(sqlite3_column_int(s.stmt, 0));
  }

  session.exec_script("BEGIN");
  try {
    for (const auto& [name, columns] : tables) {
      const auto path = data_dir / data_file_name(name, format);
      if (format == DataFormat::insert_script) {
        session.exec_script(read_text_file(path));
        continue;
      }
      std::ifstream in(path, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open " + path.string());
      Inserter insert(session.handle(), name, columns);
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        // Column affinity converts the text to the declared type.
        const auto fields = text::split(line, '|');
        if (fields.size() != columns) {
          throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected " +
                                   std::to_string(columns) + " fields");
        }
        for (std::size_t c = 0; c < fields.size(); ++c) insert.bind(static_cast<int>(c) + 1, fields[c]);
        insert.step(name);
      }
    }
    session.exec_script("COMMIT");
  } catch (...) {
    session.exec_script("ROLLBACK");
    throw;
  }
  write_meta(session, fingerprint);
}

std::string stored_fingerprint(SqliteSession& session) {
  if (session.query_text("SELECT count(*) FROM sqlite_master WHERE name = 'WHBENCH_META'") == "0") {
    return {};
  }
  return session.query_text("SELECT VALUE FROM WHBENCH_META WHERE NAME = 'schema_fingerprint'");
}

}  // namespace whbench
