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

#include "whbench/emitter.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "whbench/text.hpp"

namespace whbench {

std::string_view to_string(DataFormat format) {
  return format == DataFormat::delimited ? "dat" : "sql";
}

std::string_view to_string(SqlDialect dialect) {
  switch (dialect) {
    case SqlDialect::standard: return "standard";
    case SqlDialect::sqlite: return "sqlite";
    case SqlDialect::oracle: return "oracle";
  }
  return "standard";
}

std::optional<DataFormat> parse_data_format(std::string_view text) {
  if (text == "dat") return DataFormat::delimited;
  if (text == "sql") return DataFormat::insert_script;
  return std::nullopt;
}

std::optional<SqlDialect> parse_dialect(std::string_view text) {
  if (text == "standard") return SqlDialect::standard;
  if (text == "sqlite") return SqlDialect::sqlite;
  if (text == "oracle") return SqlDialect::oracle;
  return std::nullopt;
}

namespace {

struct TypeNames {
  std::string_view key;
  std::string_view measure;
  std::string_view fixed_char;  // followed by (n)
};

TypeNames types_for(SqlDialect dialect) {
  switch (dialect) {
    case SqlDialect::oracle: return {"NUMBER(10)", "BINARY_FLOAT", "CHAR"};
    case SqlDialect::sqlite: return {"INTEGER", "REAL", "CHARACTER"};
    case SqlDialect::standard: break;
  }
  return {"INTEGER", "REAL", "CHAR"};
}

}  // namespace

std::string emit_ddl(const SchemaModel& schema, SqlDialect dialect) {
  const auto types = types_for(dialect);
  std::string out;
  for (const auto& table : schema.intentions()) {
    out += "CREATE TABLE " + table.name + " (\n";
    std::vector<std::string> keys;
    std::vector<const Attribute*> foreign;
    for (const auto& a : table.attributes) {
      out += "  " + a.name + " ";
      switch (a.kind) {
        case AttributeKind::primary_key:
          keys.push_back(a.name);
          out += types.key;
          break;
        case AttributeKind::foreign_key:
          foreign.push_back(&a);
          out += types.key;
          break;
        case AttributeKind::descriptor:
          out += std::string(types.fixed_char) + "(" + std::to_string(a.name.size() + 21) + ")";
          break;
        case AttributeKind::measure:
          out += types.measure;
          break;
      }
      out += " NOT NULL,\n";
    }
    // A fact table's key is the composite of its foreign keys.
    if (keys.empty()) {
      for (const auto* fk : foreign) keys.push_back(fk->name);
    }
    out += "  PRIMARY KEY (";
    for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? ", " : "") + keys[i];
    out += ")";
    for (const auto* fk : foreign) {
      out += ",\n  FOREIGN KEY (" + fk->name + ") REFERENCES " + *fk->referenced_table + " (" +
             primary_key_name(*fk->referenced_table) + ")";
    }
    out += "\n);\n";
  }
  return out;
}

std::string schema_fingerprint(const SchemaModel& schema) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(emit_ddl(schema, SqlDialect::standard))));
  return buf;
}

namespace {

// Formats rows into `chunk` and hands it to `sink` whenever it grows past
// the flush threshold.
template <typename Sink>
void format_rows(const TableExtension& table, DataFormat format, Sink&& sink) {
  constexpr std::size_t kFlushBytes = 1 << 20;
  const std::size_t rows = table.row_count();
  const std::size_t cols = table.data.size();
  const bool inserts = format == DataFormat::insert_script;
  const std::string insert_prefix = "INSERT INTO " + table.table_name + " VALUES (";

  std::string chunk;
  chunk.reserve(kFlushBytes + 4096);
  for (std::size_t r = 0; r < rows; ++r) {
    if (inserts) chunk += insert_prefix;
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) chunk += inserts ? ", " : "|";
      std::visit(
          [&](const auto& column) {
            using T = std::decay_t<decltype(column)>;
            if constexpr (std::is_same_v<T, KeyColumn>) {
              text::append_int(chunk, column[r]);
            } else if constexpr (std::is_same_v<T, MeasureColumn>) {
              text::append_float6(chunk, column[r]);
            } else {
              if (inserts) chunk += '\'';
              chunk += column[r];
              if (inserts) chunk += '\'';
            }
          },
          table.data[c]);
    }
    chunk += inserts ? ");\n" : "\n";
    if (chunk.size() >= kFlushBytes) {
      sink(std::string_view(chunk));
      chunk.clear();
    }
  }
  if (!chunk.empty()) sink(std::string_view(chunk));
}

}  // namespace

void write_table(const TableExtension& table, DataFormat format, std::ostream& out) {
  format_rows(table, format, [&](std::string_view chunk) {
    out.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
  });
}

std::uint64_t serialized_size(const TableExtension& table, DataFormat format) {
  std::uint64_t bytes = 0;
  format_rows(table, format, [&](std::string_view chunk) { bytes += chunk.size(); });
  return bytes;
}

std::string data_file_name(std::string_view table, DataFormat format) {
  return std::string(table) + (format == DataFormat::delimited ? ".dat" : ".sql");
}

std::vector<EmittedFile> emit_data(std::span<const TableExtension> tables, DataFormat format,
                                   const std::filesystem::path& dir, unsigned threads) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  std::vector<EmittedFile> files(tables.size());
  std::vector<std::exception_ptr> failures(tables.size());
  auto emit_one = [&](std::size_t i) {
    const auto& table = tables[i];
    EmittedFile file{table.table_name, dir / data_file_name(table.table_name, format),
                     table.row_count(), 0};
    try {
      std::ofstream out(file.path, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot open " + file.path.string());
      format_rows(table, format, [&](std::string_view chunk) {
        out.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
        file.bytes += chunk.size();
      });
      out.close();
      if (!out) throw std::runtime_error("write to " + file.path.string() + " failed");
    } catch (const std::exception& e) {
      failures[i] = std::make_exception_ptr(
          std::runtime_error("table " + table.table_name + ": " + e.what()));
      return;
    }
    files[i] = std::move(file);
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tables.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < tables.size(); ++i) emit_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tables.size(); i = next++) emit_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return files;
}

std::string render_workload_file(const Workload& workload) {
  const auto& p = workload.params;
  std::string out = "-- whbench workload\n";
  out += "-- seed=" + std::to_string(workload.seed) + "\n";
  out += "-- warehouse_seed=" + std::to_string(workload.warehouse_seed) + "\n";
  out += "-- schema_fingerprint=" + workload.schema_fingerprint + "\n";
  out += "-- NB_Q=" + std::to_string(p.nb_q) + "\n";
  out += "-- AVG_NB_ATT=" + text::shortest(p.avg_nb_att) + "\n";
  out += "-- AVG_NB_RESTR=" + text::shortest(p.avg_nb_restr) + "\n";
  out += "-- PROB_OLAP=" + text::shortest(p.prob_olap) + "\n";
  out += "-- AVG_NB_AGGREG=" + text::shortest(p.avg_nb_aggreg) + "\n";
  out += "-- PROB_CUBE=" + text::shortest(p.prob_cube) + "\n";
  out += "-- PROB_HAVING=" + text::shortest(p.prob_having) + "\n";
  out += "-- AVG_NB_DD=" + text::shortest(p.avg_nb_dd) + "\n";
  out += "-- queries=" + std::to_string(workload.queries.size()) + "\n";
  for (const auto& q : workload.queries) {
    out += "\n-- " + q.id + " kind=" + std::string(to_string(q.kind)) +
           " parent=" + q.parent.value_or("none") + "\n";
    out += render_sql(q) + ";\n";
  }
  return out;
}

namespace {

bool is_query_header(std::string_view body) {
  return body.size() > 1 && body[0] == 'Q' && body.find(" kind=") != std::string_view::npos;
}

}  // namespace

WorkloadFile parse_workload_file(std::string_view content) {
  WorkloadFile file;
  std::optional<WorkloadStatement> current;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& message) {
    throw std::runtime_error("workload file line " + std::to_string(line_no) + ": " + message);
  };

  for (auto line : text::split(content, '\n')) {
    ++line_no;
    if (current && !current->sql.empty()) {
      // Inside a statement: lines accumulate until one ends with ';'.
      current->sql += "\n";
      current->sql += line;
    } else if (line.empty()) {
      continue;
    } else if (line.starts_with("--")) {
      auto body = text::trim(line.substr(2));
      if (is_query_header(body)) {
        if (current) fail("query header without a statement");
        WorkloadStatement s;
        auto fields = text::split(body, ' ');
        s.id = std::string(fields[0]);
        for (std::size_t i = 1; i < fields.size(); ++i) {
          const auto eq = fields[i].find('=');
          if (eq == std::string_view::npos) continue;
          auto key = fields[i].substr(0, eq);
          auto value = fields[i].substr(eq + 1);
          if (key == "kind") {
            if (value == "olap") s.kind = QueryKind::olap;
            else if (value == "extraction") s.kind = QueryKind::extraction;
            else if (value == "drilldown") s.kind = QueryKind::drill_down;
            else fail("unknown query kind " + std::string(value));
          } else if (key == "parent" && value != "none") {
            s.parent = std::string(value);
          }
        }
        current = std::move(s);
      } else if (file.statements.empty() && !current) {
        const auto eq = body.find('=');
        if (eq != std::string_view::npos) {
          file.header[std::string(body.substr(0, eq))] = std::string(body.substr(eq + 1));
        }
      }
      continue;
    } else {
      if (!current) {
        // Statement without a header line: number it by position.
        current = WorkloadStatement{"Q" + std::to_string(file.statements.size() + 1),
                                    QueryKind::extraction, std::nullopt, ""};
      }
      current->sql = std::string(line);
    }
    if (current && !current->sql.empty() && text::trim(current->sql).ends_with(";")) {
      auto sql = text::trim(current->sql);
      current->sql = std::string(sql.substr(0, sql.size() - 1));
      file.statements.push_back(std::move(*current));
      current.reset();
    }
  }
  if (current) fail("unterminated statement " + current->id);
  return file;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace whbench
