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

#include "whbench/executor.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <unordered_map>

#include "whbench/text.hpp"

namespace whbench {

RunResult run_workload(SqlSession& session, std::span<const WorkloadStatement> statements,
                       const RunOptions& options) {
  using clock = std::chrono::steady_clock;
  RunResult result;
  result.records.reserve(statements.size() * static_cast<std::size_t>(std::max(options.runs, 0)));

  const int passes = options.warmup + options.runs;
  for (int pass = 0; pass < passes; ++pass) {
    const bool measured = pass >= options.warmup;
    const int run_index = pass - options.warmup + 1;
    for (const auto& statement : statements) {
      std::optional<std::string> error;
      bool lost = false;
      const auto start = clock::now();
      try {
        session.execute(statement.sql);
      } catch (const ConnectionLost& e) {
        error = std::string("connection lost: ") + e.what();
        lost = true;
      } catch (const std::exception& e) {
        error = e.what();
      }
      const auto stop = clock::now();

      if (measured || lost) {
        TimingRecord record;
        record.query_id = statement.id;
        record.run_index = measured ? run_index : 0;
        const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
        record.elapsed_ms = static_cast<std::int64_t>(std::llround(static_cast<double>(ns) / 1e6));
        record.error = std::move(error);
        result.records.push_back(std::move(record));
      }
      if (lost) {
        result.aborted = true;
        result.reason = *result.records.back().error;
        return result;
      }
    }
  }
  return result;
}

namespace {

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_open = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"': quoted = true; row_open = true; break;
      case ',': row.push_back(std::move(field)); field.clear(); row_open = true; break;
      case '\r': break;
      case '\n':
        row.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row.clear();
        row_open = false;
        break;
      default: field += c; row_open = true;
    }
  }
  if (quoted) throw std::runtime_error("timings: unterminated quoted field");
  if (row_open) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

constexpr std::string_view kHeader = "query_id,run_index,elapsed_ms,status";

}  // namespace

std::string format_timings(std::span<const TimingRecord> records) {
  std::unordered_map<std::string, std::size_t> first_seen;
  for (const auto& r : records) first_seen.emplace(r.query_id, first_seen.size());
  std::vector<const TimingRecord*> order;
  for (const auto& r : records) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [&](const TimingRecord* a, const TimingRecord* b) {
    const auto fa = first_seen.at(a->query_id);
    const auto fb = first_seen.at(b->query_id);
    if (fa != fb) return fa < fb;
    return a->run_index < b->run_index;
  });

  std::string out(kHeader);
  out += '\n';
  for (const auto* r : order) {
    out += csv_field(r->query_id);
    out += ',' + std::to_string(r->run_index) + ',' + std::to_string(r->elapsed_ms) + ',';
    out += r->error ? csv_field("error:" + *r->error) : "ok";
    out += '\n';
  }
  return out;
}

std::vector<TimingRecord> parse_timings(std::string_view csv) {
  const auto rows = parse_csv(csv);
  if (rows.empty()) throw std::runtime_error("timings: missing header");
  const auto& header = rows.front();
  if (header.size() != 4 || header[0] != "query_id" || header[1] != "run_index" ||
      header[2] != "elapsed_ms" || header[3] != "status") {
    throw std::runtime_error("timings: expected header \"" + std::string(kHeader) + "\"");
  }
  std::vector<TimingRecord> records;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const auto line = std::to_string(i + 1);
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 4) throw std::runtime_error("timings: row " + line + ": expected 4 fields");
    TimingRecord r;
    r.query_id = row[0];
    auto run = text::parse_number<int>(row[1]);
    auto elapsed = text::parse_number<std::int64_t>(row[2]);
    if (!run || !elapsed || *elapsed < 0) {
      throw std::runtime_error("timings: row " + line + ": bad run_index or elapsed_ms");
    }
    r.run_index = *run;
    r.elapsed_ms = *elapsed;
    if (row[3].starts_with("error:")) {
      r.error = row[3].substr(6);
    } else if (row[3] != "ok") {
      throw std::runtime_error("timings: row " + line + ": bad status " + row[3]);
    }
    records.push_back(std::move(r));
  }
  return records;
}

void write_timings(const std::filesystem::path& path, std::span<const TimingRecord> records) {
  write_text_file(path, format_timings(records));
}

std::vector<TimingRecord> read_timings(const std::filesystem::path& path) {
  try {
    return parse_timings(read_text_file(path));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::vector<QueryMean> per_query_means(std::span<const TimingRecord> records) {
  std::vector<QueryMean> means;
  std::vector<int> counts;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& r : records) {
    if (!r.ok()) throw GainError("query " + r.query_id + " run " + std::to_string(r.run_index) + " failed: " + *r.error);
    auto [it, inserted] = index.emplace(r.query_id, means.size());
    if (inserted) {
      means.push_back({r.query_id, 0});
      counts.push_back(0);
    }
    means[it->second].elapsed_ms += static_cast<double>(r.elapsed_ms);
    ++counts[it->second];
  }
  for (std::size_t i = 0; i < means.size(); ++i) means[i].elapsed_ms /= counts[i];
  return means;
}

namespace {

// Candidate means aligned to the reference query order.
std::pair<std::vector<double>, std::vector<double>> aligned_means(
    std::span<const TimingRecord> reference, std::span<const TimingRecord> candidate) {
  const auto ref = per_query_means(reference);
  const auto cand = per_query_means(candidate);
  std::unordered_map<std::string, double> by_id;
  for (const auto& m : cand) by_id.emplace(m.query_id, m.elapsed_ms);

  std::vector<std::string> missing;
  std::vector<double> r, c;
  for (const auto& m : ref) {
    auto it = by_id.find(m.query_id);
    if (it == by_id.end()) {
      missing.push_back(m.query_id);
      continue;
    }
    r.push_back(m.elapsed_ms);
    c.push_back(it->second);
  }
  if (!missing.empty() || cand.size() != ref.size()) {
    std::string message = "reference and candidate cover different queries";
    if (!missing.empty()) message += " (candidate lacks " + missing.front() + ")";
    throw GainError(message);
  }
  if (ref.empty()) throw GainError("no timing records");
  return {std::move(r), std::move(c)};
}

}  // namespace

double compute_gain(std::span<const TimingRecord> reference, std::span<const TimingRecord> candidate) {
  const auto [r, c] = aligned_means(reference, candidate);
  const double total_r = std::accumulate(r.begin(), r.end(), 0.0);
  const double total_c = std::accumulate(c.begin(), c.end(), 0.0);
  if (total_r <= 0) throw GainError("reference total time is zero");
  return 1.0 - total_c / total_r;
}

double compute_mean_query_gain(std::span<const TimingRecord> reference,
                               std::span<const TimingRecord> candidate) {
  const auto [r, c] = aligned_means(reference, candidate);
  double sum = 0;
  int n = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] <= 0) continue;
    sum += 1.0 - c[i] / r[i];
    ++n;
  }
  if (n == 0) throw GainError("every reference time is zero");
  return sum / n;
}

GainReport build_gain_report(std::span<const TimingSet> sets) {
  if (sets.size() < 2) throw GainError("a gain report needs a reference and at least one candidate");
  GainReport report;
  for (const auto& m : per_query_means(sets.front().records)) report.query_ids.push_back(m.query_id);

  for (const auto& set : sets) {
    report.configurations.push_back(set.name);
    const auto [r, c] = aligned_means(sets.front().records, set.records);
    report.times.push_back(c);
    report.totals.push_back(std::accumulate(c.begin(), c.end(), 0.0));
    report.gains.push_back(compute_gain(sets.front().records, set.records));
    report.mean_query_gains.push_back(compute_mean_query_gain(sets.front().records, set.records));
  }
  return report;
}

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string percent(double fraction) { return fixed(fraction * 100.0, 1) + "%"; }

}  // namespace

std::string render_gain_table(const GainReport& report) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"Query"};
  for (const auto& c : report.configurations) header.push_back(c);
  rows.push_back(header);
  for (std::size_t q = 0; q < report.query_ids.size(); ++q) {
    std::vector<std::string> row{report.query_ids[q]};
    for (const auto& t : report.times) row.push_back(fixed(t[q], 1));
    rows.push_back(row);
  }
  std::vector<std::string> total{"Total"}, gain{"Gain"}, mean_gain{"Mean per-query gain"};
  for (std::size_t i = 0; i < report.configurations.size(); ++i) {
    total.push_back(fixed(report.totals[i], 1));
    gain.push_back(i == 0 ? "-" : percent(report.gains[i]));
    mean_gain.push_back(i == 0 ? "-" : percent(report.mean_query_gains[i]));
  }
  const std::size_t body_end = rows.size();
  rows.push_back(total);
  rows.push_back(gain);
  rows.push_back(mean_gain);

  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::string out;
  auto rule = [&] {
    std::size_t len = 0;
    for (auto w : widths) len += w + 2;
    out += std::string(len - 2, '-') + '\n';
  };
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r == 1 || r == body_end) rule();
    const auto& row = rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == 0) {
        out += row[i] + std::string(widths[i] - row[i].size(), ' ');
      } else {
        out += "  " + std::string(widths[i] - row[i].size(), ' ') + row[i];
      }
    }
    out += '\n';
  }
  return out;
}

std::string render_gain_csv(const GainReport& report) {
  std::string out = "configuration,total_ms,gain,mean_query_gain\n";
  for (std::size_t i = 0; i < report.configurations.size(); ++i) {
    out += csv_field(report.configurations[i]) + ',' + fixed(report.totals[i], 3) + ',' +
           fixed(report.gains[i], 6) + ',' + fixed(report.mean_query_gains[i], 6) + '\n';
  }
  return out;
}

}  // namespace whbench
