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
#include <string>
#include <vector>

#include "whbench/core_model.hpp"
#include "whbench/query.hpp"
#include "whbench/random.hpp"

namespace whbench {

struct Workload {
  std::vector<QueryAst> queries;  // drill-downs immediately follow their parent
  WorkloadParams params;
  std::uint64_t seed = 0;            // workload stream seed
  std::uint64_t warehouse_seed = 0;  // seed of data and referential
  std::string schema_fingerprint;

  std::size_t initial_query_count() const;
};

struct WorkloadSettings {
  double spread_ratio = 0.2;
  double having_max = 10000.0;  // HAVING thresholds are uniform in [0, having_max)
};

/// Generates initial queries until at least params.nb_q queries exist.
/// Every OLAP query is followed by up to gaussian_int(AVG_NB_DD) drill-downs,
/// each adding one attribute of the next finer level of the last picked
/// dimension. Restriction literals come from the data referential so they
/// can match stored descriptors.
Workload generate_workload(const SchemaModel& schema, const StringReferential& referential,
                           const WorkloadParams& params, RandomSource& source,
                           const WorkloadSettings& settings = {});

/// Initial query id "Q<i>"; drill-down ids "Q<i>.D<k>".
std::string query_id(std::size_t initial, std::size_t drill_down = 0);

}  // namespace whbench
