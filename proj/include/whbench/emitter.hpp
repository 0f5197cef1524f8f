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
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "whbench/core_model.hpp"
#include "whbench/data_generator.hpp"
#include "whbench/workload_generator.hpp"

namespace whbench {

enum class DataFormat { delimited, insert_script };
enum class SqlDialect { standard, sqlite, oracle };

std::string_view to_string(DataFormat format);
std::string_view to_string(SqlDialect dialect);
std::optional<DataFormat> parse_data_format(std::string_view text);  // "dat" | "sql"
std::optional<SqlDialect> parse_dialect(std::string_view text);

/// CREATE TABLE statements, referenced tables first. Only type names vary
/// with the dialect.
std::string emit_ddl(const SchemaModel& schema, SqlDialect dialect = SqlDialect::standard);

/// 16 hex digits identifying the schema (hash of its standard DDL).
std::string schema_fingerprint(const SchemaModel& schema);

/// Delimited records: "|" between fields, "\n" after each row, no header,
/// keys as decimal integers, measures with 6 significant digits.
/// Insert scripts: one INSERT per row with the same value formatting.
void write_table(const TableExtension& table, DataFormat format, std::ostream& out);

/// Byte size write_table would produce, without keeping the text.
std::uint64_t serialized_size(const TableExtension& table, DataFormat format);

struct EmittedFile {
  std::string table;
  std::filesystem::path path;
  std::uint64_t rows = 0;
  std::uint64_t bytes = 0;
};

/// One file per table under `dir` (<TABLE>.dat or <TABLE>.sql), written on
/// up to `threads` workers. Throws std::runtime_error naming the table on
/// file-system failures.
std::vector<EmittedFile> emit_data(std::span<const TableExtension> tables, DataFormat format,
                                   const std::filesystem::path& dir, unsigned threads = 1);

std::string data_file_name(std::string_view table, DataFormat format);

/// Workload file: header comments, then per query a line
/// "-- <id> kind=<olap|extraction|drilldown> parent=<id|none>" followed by
/// the statement terminated by ";".
std::string render_workload_file(const Workload& workload);

struct WorkloadStatement {
  std::string id;
  QueryKind kind = QueryKind::extraction;
  std::optional<std::string> parent;
  std::string sql;  // without the terminating ';'
};

struct WorkloadFile {
  std::map<std::string, std::string> header;  // seed, warehouse_seed, schema_fingerprint, params
  std::vector<WorkloadStatement> statements;
};

/// Throws std::runtime_error with the line number on malformed input.
WorkloadFile parse_workload_file(std::string_view text);

/// Writes text to a file, replacing it. Throws std::runtime_error.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace whbench
