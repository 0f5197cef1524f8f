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

#include "whbench/core_model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace whbench {

const Attribute* TableIntention::find(std::string_view attribute) const {
  for (const auto& a : attributes) {
    if (a.name == attribute) return &a;
  }
  return nullptr;
}

std::vector<const Attribute*> TableIntention::of_kind(AttributeKind kind) const {
  std::vector<const Attribute*> out;
  for (const auto& a : attributes) {
    if (a.kind == kind) out.push_back(&a);
  }
  return out;
}

TableIntention HierarchyLevelSpec::intention() const {
  TableIntention t;
  t.name = table_name;
  t.attributes.push_back({primary_key_name(table_name), AttributeKind::primary_key, std::nullopt});
  for (int k = 1; k <= nb_descriptors; ++k) {
    t.attributes.push_back({descriptor_name(table_name, k), AttributeKind::descriptor, std::nullopt});
  }
  if (coarser) {
    auto parent = level_table_name(dimension_index, *coarser);
    t.attributes.push_back({primary_key_name(parent), AttributeKind::foreign_key, parent});
  }
  return t;
}

const HierarchyLevelSpec& DimensionSpec::level(int level_index) const {
  if (level_index < 1 || level_index > nb_levels()) {
    throw std::out_of_range("dimension " + std::to_string(index) + " has no level " +
                            std::to_string(level_index));
  }
  return levels[static_cast<std::size_t>(level_index - 1)];
}

std::string_view to_string(SchemaKind kind) {
  switch (kind) {
    case SchemaKind::star: return "star";
    case SchemaKind::snowflake: return "snowflake";
    case SchemaKind::constellation: return "constellation";
  }
  return "unknown";
}

const DimensionSpec& SchemaModel::dimension(int index) const {
  for (const auto& d : dimensions) {
    if (d.index == index) return d;
  }
  throw std::out_of_range("no dimension " + std::to_string(index));
}

TableIntention SchemaModel::fact_intention(const FactTableSpec& fact) const {
  TableIntention t;
  t.name = fact.table_name;
  for (int ref : fact.dimension_refs) {
    const auto& entry = dimension(ref).entry_level();
    t.attributes.push_back(
        {primary_key_name(entry.table_name), AttributeKind::foreign_key, entry.table_name});
  }
  for (int k = 1; k <= fact.nb_measures; ++k) {
    t.attributes.push_back({measure_name(fact.index, k), AttributeKind::measure, std::nullopt});
  }
  return t;
}

std::vector<TableIntention> SchemaModel::intentions() const {
  std::vector<TableIntention> out;
  for (const auto& d : dimensions) {
    for (const auto& level : d.levels) out.push_back(level.intention());
  }
  for (const auto& f : fact_tables) out.push_back(fact_intention(f));
  return out;
}

std::vector<int> SchemaModel::shared_dimensions() const {
  std::map<int, int> uses;
  for (const auto& f : fact_tables) {
    for (int ref : f.dimension_refs) ++uses[ref];
  }
  std::vector<int> out;
  for (auto [index, count] : uses) {
    if (count >= 2) out.push_back(index);
  }
  return out;
}

SchemaKind SchemaModel::kind() const {
  if (fact_tables.size() > 1) return SchemaKind::constellation;
  for (const auto& d : dimensions) {
    if (d.nb_levels() > 1) return SchemaKind::snowflake;
  }
  return SchemaKind::star;
}

namespace {

std::string indexed(std::string_view name, std::size_t i) {
  return std::string(name) + "(" + std::to_string(i + 1) + ")";
}

}  // namespace

ValidationReport validate_low_level(const LowLevelParams& p) {
  ValidationReport report;
  auto fail = [&](std::string field, std::string message) {
    report.push_back({std::move(field), std::move(message)});
  };

  if (p.nb_ft < 1) fail("NB_FT", "NB_FT must be at least 1");
  const auto n_ft = static_cast<std::size_t>(std::max(p.nb_ft, 0));
  if (p.nb_dim.size() != n_ft) fail("NB_DIM", "expected one NB_DIM entry per fact table");
  if (p.nb_meas.size() != n_ft) fail("NB_MEAS", "expected one NB_MEAS entry per fact table");
  if (p.density.size() != n_ft) fail("DENSITY", "expected one DENSITY entry per fact table");

  if (p.tot_nb_dim < 1) fail("TOT_NB_DIM", "TOT_NB_DIM must be at least 1");

  long long sum_dims = 0;
  for (std::size_t f = 0; f < p.nb_dim.size(); ++f) {
    sum_dims += p.nb_dim[f];
    if (p.nb_dim[f] < 1) {
      fail(indexed("NB_DIM", f), "NB_DIM must be at least 1");
    } else if (p.nb_dim[f] > p.tot_nb_dim) {
      fail(indexed("NB_DIM", f), "NB_DIM exceeds TOT_NB_DIM");
    }
  }
  if (!p.nb_dim.empty() && p.tot_nb_dim > sum_dims) {
    fail("TOT_NB_DIM", "TOT_NB_DIM exceeds Σ NB_DIM");
  }
  for (std::size_t f = 0; f < p.nb_meas.size(); ++f) {
    if (p.nb_meas[f] < 1) fail(indexed("NB_MEAS", f), "NB_MEAS must be at least 1");
  }
  for (std::size_t f = 0; f < p.density.size(); ++f) {
    if (!(p.density[f] > 0.0 && p.density[f] <= 1.0)) {
      fail(indexed("DENSITY", f), "density outside (0,1]");
    }
  }

  const auto n_dim = static_cast<std::size_t>(std::max(p.tot_nb_dim, 0));
  if (p.nb_levels.size() != n_dim) fail("NB_LEVELS", "expected one NB_LEVELS entry per dimension");
  if (p.nb_att.size() != n_dim) fail("NB_ATT", "expected one NB_ATT list per dimension");
  if (p.hhlevel_size.size() != n_dim) {
    fail("HHLEVEL_SIZE", "expected one HHLEVEL_SIZE entry per dimension");
  }
  if (p.dim_sfactor.size() != n_dim) {
    fail("DIM_SFACTOR", "expected one DIM_SFACTOR entry per dimension");
  }

  for (std::size_t d = 0; d < p.nb_levels.size(); ++d) {
    const int levels = p.nb_levels[d];
    if (levels < 1) {
      fail(indexed("NB_LEVELS", d), "NB_LEVELS must be at least 1");
      continue;
    }
    if (d < p.nb_att.size()) {
      const auto& atts = p.nb_att[d];
      if (atts.size() != static_cast<std::size_t>(levels)) {
        fail(indexed("NB_ATT", d), "expected one NB_ATT entry per hierarchy level");
      }
      for (std::size_t h = 0; h < atts.size(); ++h) {
        if (atts[h] < 1) {
          fail("NB_ATT(" + std::to_string(d + 1) + "," + std::to_string(h + 1) + ")",
               "NB_ATT must be at least 1");
        }
      }
    }
    if (d < p.hhlevel_size.size() && p.hhlevel_size[d] < 1) {
      fail(indexed("HHLEVEL_SIZE", d), "HHLEVEL_SIZE must be at least 1");
    }
    if (levels > 1 && d < p.dim_sfactor.size() && p.dim_sfactor[d] < 1) {
      fail(indexed("DIM_SFACTOR", d), "DIM_SFACTOR must be at least 1");
    }
  }
  return report;
}

ValidationReport validate_high_level(const HighLevelParams& p) {
  ValidationReport report;
  auto positive = [&](double v, const char* field) {
    if (!(v > 0)) report.push_back({field, std::string(field) + " must be positive"});
  };
  positive(p.avg_nb_ft, "AVG_NB_FT");
  positive(p.avg_nb_dim, "AVG_NB_DIM");
  positive(p.avg_tot_nb_dim, "AVG_TOT_NB_DIM");
  positive(p.avg_nb_meas, "AVG_NB_MEAS");
  positive(p.avg_nb_levels, "AVG_NB_LEVELS");
  positive(p.avg_nb_att, "AVG_NB_ATT");
  positive(p.avg_hhlevel_size, "AVG_HHLEVEL_SIZE");
  positive(p.dim_sfactor, "DIM_SFACTOR");
  if (!(p.avg_density > 0.0 && p.avg_density <= 1.0)) {
    report.push_back({"AVG_DENSITY", "density outside (0,1]"});
  }
  return report;
}

ValidationReport validate_workload(const WorkloadParams& p) {
  ValidationReport report;
  if (p.nb_q < 1) report.push_back({"NB_Q", "NB_Q must be at least 1"});
  auto average = [&](double v, const char* field) {
    if (!(v >= 1)) report.push_back({field, std::string(field) + " must be at least 1"});
  };
  average(p.avg_nb_att, "AVG_NB_ATT");
  average(p.avg_nb_restr, "AVG_NB_RESTR");
  average(p.avg_nb_aggreg, "AVG_NB_AGGREG");
  average(p.avg_nb_dd, "AVG_NB_DD");
  auto probability = [&](double v, const char* field) {
    if (!(v >= 0.0 && v <= 1.0)) report.push_back({field, "probability outside [0,1]"});
  };
  probability(p.prob_olap, "PROB_OLAP");
  probability(p.prob_cube, "PROB_CUBE");
  probability(p.prob_having, "PROB_HAVING");
  return report;
}

SchemaKind classify(const LowLevelParams& params) {
  if (params.nb_ft > 1) return SchemaKind::constellation;
  bool hierarchical = std::any_of(params.nb_levels.begin(), params.nb_levels.end(),
                                  [](int levels) { return levels > 1; });
  return hierarchical ? SchemaKind::snowflake : SchemaKind::star;
}

std::string format_report(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report) {
    out += "  " + v.field + ": " + v.message + "\n";
  }
  return out;
}

std::string fact_table_name(int fact_index) { return "FT" + std::to_string(fact_index); }

std::string level_table_name(int dimension_index, int level_index) {
  return "DIM" + std::to_string(dimension_index) + "_" + std::to_string(level_index);
}

std::string primary_key_name(std::string_view table) { return std::string(table) + "_PK"; }

std::string descriptor_name(std::string_view table, int k) {
  return std::string(table) + "_DESCR" + std::to_string(k);
}

std::string measure_name(int fact_index, int k) {
  return fact_table_name(fact_index) + "_MEAS" + std::to_string(k);
}

}  // namespace whbench
