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

#include "whbench/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <numeric>
#include <set>
#include <sstream>

#include "whbench/manifest.hpp"
#include "whbench/presets.hpp"
#include "whbench/random.hpp"
#include "whbench/schema_generator.hpp"
#include "whbench/text.hpp"

namespace whbench {

namespace pt = boost::property_tree;

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = "configuration error";
  for (const auto& p : problems) out += "\n  " + p;
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems(std::move(problems)) {}

namespace {

const std::set<std::string> kTopLevelKeys = {
    "seed",   "workload_seed", "preset",      "spread_ratio",      "max_combinations", "origin",
    "format", "dialect",       "schema_kind", "schema_fingerprint"};

const std::set<std::string> kIgnoredSections = {"rows", "bytes"};

class Reader {
 public:
  explicit Reader(std::vector<std::string>& problems) : problems_(problems) {}

  template <typename T>
  void number(const pt::ptree& section, const std::string& where, const std::string& key, T& out) {
    if (auto v = section.get_optional<std::string>(key)) {
      if (auto parsed = text::parse_number<T>(*v)) {
        out = *parsed;
      } else {
        problems_.push_back(where + "." + key + ": not a valid number: " + *v);
      }
    }
  }

  template <typename T>
  std::optional<std::vector<T>> list(const pt::ptree& section, const std::string& key,
                                     std::size_t expected, bool allow_na = false) {
    auto raw = section.get_optional<std::string>(key);
    if (!raw) return std::nullopt;
    std::vector<T> values;
    for (auto item : text::split(*raw, ',')) {
      if (allow_na && item == "n/a") {
        values.push_back(T{1});
        continue;
      }
      auto parsed = text::parse_number<T>(item);
      if (!parsed) {
        problems_.push_back("low." + key + ": not a valid number: " + std::string(item));
        return std::nullopt;
      }
      values.push_back(*parsed);
    }
    // One value stands for every entry, e.g. "HHLEVEL_SIZE = 18".
    if (values.size() == 1 && expected > 1) values.assign(expected, values.front());
    return values;
  }

 private:
  std::vector<std::string>& problems_;
};

void check_keys(const pt::ptree& section, const std::string& name, const std::set<std::string>& known,
                std::vector<std::string>& problems) {
  for (const auto& [key, child] : section) {
    if (!known.count(key)) problems.push_back(name + ": unknown key " + key);
  }
}

HighLevelParams read_high(const pt::ptree& s, std::vector<std::string>& problems) {
  check_keys(s, "high",
             {"AVG_NB_FT", "AVG_NB_DIM", "AVG_TOT_NB_DIM", "AVG_NB_MEAS", "AVG_DENSITY",
              "AVG_NB_LEVELS", "AVG_NB_ATT", "AVG_HHLEVEL_SIZE", "DIM_SFACTOR"},
             problems);
  Reader r(problems);
  HighLevelParams h;
  r.number(s, "high", "AVG_NB_FT", h.avg_nb_ft);
  r.number(s, "high", "AVG_NB_DIM", h.avg_nb_dim);
  r.number(s, "high", "AVG_TOT_NB_DIM", h.avg_tot_nb_dim);
  r.number(s, "high", "AVG_NB_MEAS", h.avg_nb_meas);
  r.number(s, "high", "AVG_DENSITY", h.avg_density);
  r.number(s, "high", "AVG_NB_LEVELS", h.avg_nb_levels);
  r.number(s, "high", "AVG_NB_ATT", h.avg_nb_att);
  r.number(s, "high", "AVG_HHLEVEL_SIZE", h.avg_hhlevel_size);
  r.number(s, "high", "DIM_SFACTOR", h.dim_sfactor);
  for (const auto& v : validate_high_level(h)) problems.push_back("high." + v.field + ": " + v.message);
  return h;
}

LowLevelParams read_low(const pt::ptree& s, std::vector<std::string>& problems) {
  check_keys(s, "low",
             {"NB_FT", "NB_DIM", "TOT_NB_DIM", "NB_MEAS", "DENSITY", "NB_LEVELS", "NB_ATT",
              "HHLEVEL_SIZE", "DIM_SFACTOR"},
             problems);
  const auto before = problems.size();
  Reader r(problems);
  LowLevelParams low;
  for (const char* key : {"NB_FT", "NB_DIM", "TOT_NB_DIM", "NB_MEAS", "DENSITY", "NB_LEVELS",
                          "NB_ATT", "HHLEVEL_SIZE"}) {
    if (!s.get_optional<std::string>(key)) problems.push_back(std::string("low: missing ") + key);
  }
  if (problems.size() != before) return low;

  r.number(s, "low", "NB_FT", low.nb_ft);
  r.number(s, "low", "TOT_NB_DIM", low.tot_nb_dim);
  const auto n_ft = static_cast<std::size_t>(std::max(low.nb_ft, 0));
  const auto n_dim = static_cast<std::size_t>(std::max(low.tot_nb_dim, 0));
  if (auto v = r.list<int>(s, "NB_DIM", n_ft)) low.nb_dim = *v;
  if (auto v = r.list<int>(s, "NB_MEAS", n_ft)) low.nb_meas = *v;
  if (auto v = r.list<double>(s, "DENSITY", n_ft)) low.density = *v;
  if (auto v = r.list<int>(s, "NB_LEVELS", n_dim)) low.nb_levels = *v;
  if (auto v = r.list<std::int64_t>(s, "HHLEVEL_SIZE", n_dim)) low.hhlevel_size = *v;

  if (auto raw = s.get_optional<std::string>("NB_ATT")) {
    for (auto dim : text::split(*raw, ',')) {
      std::vector<int> levels;
      for (auto item : text::split(dim, '/')) {
        if (auto parsed = text::parse_number<int>(item)) {
          levels.push_back(*parsed);
        } else {
          problems.push_back("low.NB_ATT: not a valid number: " + std::string(item));
        }
      }
      low.nb_att.push_back(std::move(levels));
    }
    // A single list applies to every dimension.
    if (low.nb_att.size() == 1 && n_dim > 1) low.nb_att.assign(n_dim, low.nb_att.front());
    // A single count applies to every level of its dimension.
    for (std::size_t d = 0; d < low.nb_att.size() && d < low.nb_levels.size(); ++d) {
      auto& atts = low.nb_att[d];
      if (atts.size() == 1 && low.nb_levels[d] > 1) {
        atts.assign(static_cast<std::size_t>(low.nb_levels[d]), atts.front());
      }
    }
  }

  if (auto v = r.list<std::int64_t>(s, "DIM_SFACTOR", n_dim, true)) {
    low.dim_sfactor = *v;
  } else if (std::all_of(low.nb_levels.begin(), low.nb_levels.end(), [](int l) { return l == 1; })) {
    low.dim_sfactor.assign(n_dim, 1);
  } else if (!s.get_optional<std::string>("DIM_SFACTOR")) {
    problems.push_back("low: missing DIM_SFACTOR (required for multi-level dimensions)");
  }

  if (problems.size() == before) {
    for (const auto& v : validate_low_level(low)) problems.push_back("low." + v.field + ": " + v.message);
  }
  return low;
}

WorkloadParams read_workload(const pt::ptree& s, WorkloadParams w, std::vector<std::string>& problems) {
  for (const char* derived : {"PROB_EXTRACT", "PROB_ROLLUP"}) {
    if (s.get_optional<std::string>(derived)) {
      problems.push_back(std::string("workload.") + derived +
                         ": derived parameter, set " +
                         (std::string(derived) == "PROB_EXTRACT" ? "PROB_OLAP" : "PROB_CUBE") +
                         " instead");
    }
  }
  check_keys(s, "workload",
             {"NB_Q", "AVG_NB_ATT", "AVG_NB_RESTR", "PROB_OLAP", "AVG_NB_AGGREG", "PROB_CUBE",
              "PROB_HAVING", "AVG_NB_DD", "PROB_EXTRACT", "PROB_ROLLUP"},
             problems);
  Reader r(problems);
  r.number(s, "workload", "NB_Q", w.nb_q);
  r.number(s, "workload", "AVG_NB_ATT", w.avg_nb_att);
  r.number(s, "workload", "AVG_NB_RESTR", w.avg_nb_restr);
  r.number(s, "workload", "PROB_OLAP", w.prob_olap);
  r.number(s, "workload", "AVG_NB_AGGREG", w.avg_nb_aggreg);
  r.number(s, "workload", "PROB_CUBE", w.prob_cube);
  r.number(s, "workload", "PROB_HAVING", w.prob_having);
  r.number(s, "workload", "AVG_NB_DD", w.avg_nb_dd);
  for (const auto& v : validate_workload(w)) problems.push_back("workload." + v.field + ": " + v.message);
  return w;
}

pt::ptree read_ini_text(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({"line " + std::to_string(e.line()) + ": " + e.message()});
  }
  // read_ini drops sections without keys; an empty [high] still selects defaults.
  std::istringstream lines{std::string(text)};
  for (std::string line; std::getline(lines, line);) {
    const auto first = line.find_first_not_of(" \t");
    const auto last = line.find_last_not_of(" \t\r");
    if (first == std::string::npos || line[first] != '[' || line[last] != ']') continue;
    const auto name = line.substr(first + 1, last - first - 1);
    if (tree.find(name) == tree.not_found()) tree.push_back({name, pt::ptree()});
  }
  return tree;
}

}  // namespace

RunConfig parse_config(std::string_view content, const ConfigOverrides& overrides) {
  const auto tree = read_ini_text(content);
  std::vector<std::string> problems;
  RunConfig config;
  Reader r(problems);

  std::optional<std::string> preset;
  const pt::ptree* high = nullptr;
  const pt::ptree* low = nullptr;
  const pt::ptree* workload = nullptr;
  const pt::ptree* output = nullptr;
  const pt::ptree* run = nullptr;

  for (const auto& [key, child] : tree) {
    const bool is_section = !child.empty() || child.data().empty();
    if (!is_section || kTopLevelKeys.count(key)) {
      if (!kTopLevelKeys.count(key)) problems.push_back("unknown key " + key);
      continue;
    }
    if (key == "high") high = &child;
    else if (key == "low") low = &child;
    else if (key == "workload") workload = &child;
    else if (key == "output") output = &child;
    else if (key == "run") run = &child;
    else if (key.starts_with("connection:")) {
      ConnectionSettings c;
      check_keys(child, key, {"engine", "path", "address", "user_env", "password_env"}, problems);
      c.engine = child.get<std::string>("engine", c.engine);
      c.path = child.get<std::string>("path", "");
      c.address = child.get<std::string>("address", "");
      c.user_env = child.get<std::string>("user_env", "");
      c.password_env = child.get<std::string>("password_env", "");
      config.connections[key.substr(std::string_view("connection:").size())] = c;
    } else if (!kIgnoredSections.count(key)) {
      problems.push_back("unknown section [" + key + "]");
    }
  }

  r.number(tree, "config", "seed", config.seed);
  if (tree.get_optional<std::string>("workload_seed")) {
    std::uint64_t ws = 0;
    r.number(tree, "config", "workload_seed", ws);
    config.workload_seed = ws;
  }
  r.number(tree, "config", "spread_ratio", config.spread_ratio);
  r.number(tree, "config", "max_combinations", config.max_combinations);
  if (auto p = tree.get_optional<std::string>("preset")) preset = *p;
  if (overrides.preset) preset = overrides.preset;

  const int sources = (high ? 1 : 0) + (low ? 1 : 0) + (preset ? 1 : 0);
  if (sources > 1) {
    problems.push_back("give exactly one of a [high] section, a [low] section or a preset");
  } else if (high) {
    config.warehouse = read_high(*high, problems);
    config.origin = "high";
  } else if (low) {
    config.warehouse = read_low(*low, problems);
    config.origin = "low";
  } else if (preset) {
    if (auto params = find_preset(*preset)) {
      config.warehouse = *params;
      config.origin = "preset:" + *preset;
      config.workload = preset_workload();
    } else {
      problems.push_back("unknown preset " + *preset);
    }
  }
  if (workload) config.workload = read_workload(*workload, config.workload, problems);

  std::optional<std::string> format, dialect;
  if (auto v = tree.get_optional<std::string>("format")) format = *v;
  if (auto v = tree.get_optional<std::string>("dialect")) dialect = *v;
  if (output) {
    check_keys(*output, "output", {"out", "format", "dialect", "threads"}, problems);
    if (auto v = output->get_optional<std::string>("out")) config.out = *v;
    if (auto v = output->get_optional<std::string>("format")) format = *v;
    if (auto v = output->get_optional<std::string>("dialect")) dialect = *v;
    r.number(*output, "output", "threads", config.threads);
  }
  if (run) {
    check_keys(*run, "run", {"runs", "warmup"}, problems);
    r.number(*run, "run", "runs", config.runs);
    r.number(*run, "run", "warmup", config.warmup);
  }

  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.workload_seed) config.workload_seed = *overrides.workload_seed;
  if (overrides.out) config.out = *overrides.out;
  if (overrides.format) format = overrides.format;
  if (overrides.dialect) dialect = overrides.dialect;
  if (overrides.threads) config.threads = *overrides.threads;
  if (overrides.runs) config.runs = *overrides.runs;
  if (overrides.warmup) config.warmup = *overrides.warmup;

  if (format) {
    if (auto f = parse_data_format(*format)) config.format = *f;
    else problems.push_back("format must be dat or sql, got " + *format);
  }
  if (dialect) {
    if (auto d = parse_dialect(*dialect)) config.dialect = *d;
    else problems.push_back("dialect must be standard, sqlite or oracle, got " + *dialect);
  }
  if (!(config.spread_ratio >= 0)) problems.push_back("spread_ratio must be non-negative");
  if (config.threads < 1) problems.push_back("threads must be at least 1");
  if (config.runs < 1) problems.push_back("runs must be at least 1");
  if (config.warmup < 0) problems.push_back("warmup must be non-negative");

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return config;
}

RunConfig load_config(const std::optional<std::filesystem::path>& file,
                      const ConfigOverrides& overrides) {
  if (!file) return parse_config("", overrides);
  std::string content;
  try {
    content = read_text_file(*file);
  } catch (const std::exception& e) {
    throw ConfigError({e.what()});
  }
  return parse_config(content, overrides);
}

LowLevelParams resolve_low_level(const RunConfig& config) {
  if (!config.warehouse) {
    throw ConfigError({"no warehouse parameters: give a [high] section, a [low] section or a preset"});
  }
  if (const auto* low = std::get_if<LowLevelParams>(&*config.warehouse)) return *low;
  auto source = RandomSource::substream(config.seed, "__params__");
  auto low = derive_low_level(std::get<HighLevelParams>(*config.warehouse), source,
                              config.spread_ratio);
  if (auto report = validate_low_level(low); !report.empty()) {
    std::vector<std::string> problems;
    for (const auto& v : report) problems.push_back(v.field + ": " + v.message);
    throw ConfigError(std::move(problems));
  }
  return low;
}

namespace {

template <typename T, typename Fn>
std::string join_values(const std::vector<T>& values, std::string_view separator, Fn format) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += separator;
    out += format(values[i]);
  }
  return out;
}

std::string int_text(std::int64_t v) { return std::to_string(v); }

}  // namespace

std::string format_low_level_section(const LowLevelParams& low) {
  auto ints = [](const auto& values) { return join_values(values, ", ", [](auto v) { return int_text(v); }); };
  std::string out = "[low]\n";
  out += "NB_FT = " + std::to_string(low.nb_ft) + "\n";
  out += "NB_DIM = " + ints(low.nb_dim) + "\n";
  out += "TOT_NB_DIM = " + std::to_string(low.tot_nb_dim) + "\n";
  out += "NB_MEAS = " + ints(low.nb_meas) + "\n";
  out += "DENSITY = " + join_values(low.density, ", ", [](double v) { return text::shortest(v); }) + "\n";
  out += "NB_LEVELS = " + ints(low.nb_levels) + "\n";
  out += "NB_ATT = " +
         join_values(low.nb_att, ", ",
                     [](const std::vector<int>& levels) {
                       return join_values(levels, "/", [](int v) { return int_text(v); });
                     }) +
         "\n";
  out += "HHLEVEL_SIZE = " + ints(low.hhlevel_size) + "\n";
  std::vector<std::string> factors;
  for (std::size_t d = 0; d < low.dim_sfactor.size(); ++d) {
    const bool applicable = d < low.nb_levels.size() && low.nb_levels[d] > 1;
    factors.push_back(applicable || low.dim_sfactor[d] != 1 ? int_text(low.dim_sfactor[d]) : "n/a");
  }
  out += "DIM_SFACTOR = " + join_values(factors, ", ", [](const std::string& s) { return s; }) + "\n";
  return out;
}

std::string format_workload_section(const WorkloadParams& w) {
  std::string out = "[workload]\n";
  out += "NB_Q = " + std::to_string(w.nb_q) + "\n";
  out += "AVG_NB_ATT = " + text::shortest(w.avg_nb_att) + "\n";
  out += "AVG_NB_RESTR = " + text::shortest(w.avg_nb_restr) + "\n";
  out += "PROB_OLAP = " + text::shortest(w.prob_olap) + "\n";
  out += "AVG_NB_AGGREG = " + text::shortest(w.avg_nb_aggreg) + "\n";
  out += "PROB_CUBE = " + text::shortest(w.prob_cube) + "\n";
  out += "PROB_HAVING = " + text::shortest(w.prob_having) + "\n";
  out += "AVG_NB_DD = " + text::shortest(w.avg_nb_dd) + "\n";
  return out;
}

std::uint64_t Manifest::total_rows() const {
  return std::accumulate(tables.begin(), tables.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const TableRecord& t) { return acc + t.rows; });
}

std::uint64_t Manifest::total_bytes() const {
  return std::accumulate(tables.begin(), tables.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const TableRecord& t) { return acc + t.bytes; });
}

std::string render_manifest(const Manifest& m) {
  std::string out = "; whbench manifest\n";
  out += "seed = " + std::to_string(m.seed) + "\n";
  out += "workload_seed = " + std::to_string(m.workload_seed) + "\n";
  out += "origin = " + m.origin + "\n";
  out += "spread_ratio = " + text::shortest(m.spread_ratio) + "\n";
  out += "max_combinations = " + std::to_string(m.max_combinations) + "\n";
  out += "format = " + std::string(to_string(m.format)) + "\n";
  out += "dialect = " + std::string(to_string(m.dialect)) + "\n";
  out += "schema_kind = " + m.schema_kind + "\n";
  out += "schema_fingerprint = " + m.schema_fingerprint + "\n";
  out += "\n" + format_low_level_section(m.low);
  out += "\n" + format_workload_section(m.workload);
  out += "\n[rows]\n";
  for (const auto& t : m.tables) out += t.name + " = " + std::to_string(t.rows) + "\n";
  out += "total = " + std::to_string(m.total_rows()) + "\n";
  out += "\n[bytes]\n";
  for (const auto& t : m.tables) out += t.name + " = " + std::to_string(t.bytes) + "\n";
  out += "total = " + std::to_string(m.total_bytes()) + "\n";
  return out;
}

Manifest parse_manifest(std::string_view content) {
  const auto config = parse_config(content);
  const auto tree = read_ini_text(content);
  Manifest m;
  m.seed = config.seed;
  m.workload_seed = config.workload_seed.value_or(config.seed);
  m.origin = tree.get<std::string>("origin", "low");
  m.spread_ratio = config.spread_ratio;
  m.max_combinations = config.max_combinations;
  m.format = config.format;
  m.dialect = config.dialect;
  m.schema_kind = tree.get<std::string>("schema_kind", "");
  m.schema_fingerprint = tree.get<std::string>("schema_fingerprint", "");
  if (!config.warehouse || !std::holds_alternative<LowLevelParams>(*config.warehouse)) {
    throw ConfigError({"manifest lacks a [low] section"});
  }
  m.low = std::get<LowLevelParams>(*config.warehouse);
  m.workload = config.workload;

  std::vector<std::string> problems;
  if (auto rows = tree.get_child_optional("rows")) {
    const auto bytes = tree.get_child_optional("bytes");
    for (const auto& [name, value] : *rows) {
      if (name == "total") continue;
      TableRecord t;
      t.name = name;
      t.rows = text::parse_number<std::uint64_t>(value.data()).value_or(0);
      if (bytes) {
        t.bytes = text::parse_number<std::uint64_t>(bytes->get<std::string>(name, "0")).value_or(0);
      }
      m.tables.push_back(std::move(t));
    }
  }
  return m;
}

}  // namespace whbench
