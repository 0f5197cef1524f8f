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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "whbench/core_model.hpp"
#include "whbench/data_generator.hpp"
#include "whbench/emitter.hpp"
#include "whbench/executor.hpp"
#include "whbench/query.hpp"

struct sqlite3;

namespace whbench {

/// Rewrites a CUBE or ROLLUP query into plain grouping for engines without
/// those operators: the base rows are crossed with one row per grouping set
/// and the columns left out of a set are replaced by NULL. Plain queries are
/// rendered unchanged.
std::string lower_grouping_sets(const QueryAst& query);

/// Grouping sets as bit masks over the GROUP BY attributes (bit i set means
/// attribute i is rolled up). CUBE yields all 2^n masks, ROLLUP the n+1
/// suffix masks, plain grouping only 0.
std::vector<unsigned> grouping_masks(GroupOperator op, std::size_t attributes);

class SqliteSession final : public SqlSession {
 public:
  /// Opens (creating if needed) a database file, or ":memory:".
  explicit SqliteSession(const std::string& path = ":memory:");
  ~SqliteSession() override;

  SqliteSession(const SqliteSession&) = delete;
  SqliteSession& operator=(const SqliteSession&) = delete;

  /// Runs one statement and drains its rows. Statements using CUBE or
  /// ROLLUP are lowered first. Throws StatementError.
  std::uint64_t execute(std::string_view statement) override;

  /// Runs a script of several statements. Throws StatementError.
  void exec_script(std::string_view script);

  /// First column of the first row as text, or empty.
  std::string query_text(std::string_view statement);

  sqlite3* handle() const { return db_; }

 private:
  sqlite3* db_ = nullptr;
};

/// Creates the schema and inserts the rows in one transaction, then records
/// the schema fingerprint in WHBENCH_META.
void load_tables(SqliteSession& session, const SchemaModel& schema,
                 std::span<const TableExtension> tables);

/// Same from emitted files: `ddl_path` (schema.sql) and one data file per
/// table under `data_dir`.
void load_directory(SqliteSession& session, const std::filesystem::path& ddl_path,
                    const std::filesystem::path& data_dir, DataFormat format,
                    const std::string& fingerprint);

/// Fingerprint stored by a previous load, or empty.
std::string stored_fingerprint(SqliteSession& session);

}  // namespace whbench
