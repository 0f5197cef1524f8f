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

#include "whbench/presets.hpp"

namespace whbench {

LowLevelParams preset_dw1() {
  LowLevelParams p;
  p.nb_ft = 1;
  p.nb_dim = {2};
  p.tot_nb_dim = 2;
  p.nb_meas = {5};
  p.density = {0.6};
  p.nb_levels = {2, 3};
  p.nb_att = {{5, 5}, {4, 4, 4}};
  p.hhlevel_size = {18, 18};
  p.dim_sfactor = {18, 18};
  return p;
}

LowLevelParams preset_dw2() {
  LowLevelParams p;
  p.nb_ft = 1;
  p.nb_dim = {4};
  p.tot_nb_dim = 4;
  p.nb_meas = {3};
  p.density = {0.25};
  p.nb_levels = {1, 2, 3, 3};
  p.nb_att = {{4}, {2, 3}, {3, 3, 2}, {2, 2, 3}};
  p.hhlevel_size = {8, 8, 8, 8};
  p.dim_sfactor = {5, 5, 5, 5};
  return p;
}

LowLevelParams preset_dw3() {
  LowLevelParams p;
  p.nb_ft = 1;
  p.nb_dim = {3};
  p.tot_nb_dim = 3;
  p.nb_meas = {5};
  p.density = {0.8};
  p.nb_levels = {1, 1, 1};
  p.nb_att = {{5}, {5}, {5}};
  p.hhlevel_size = {100, 100, 70};
  p.dim_sfactor = {1, 1, 1};  // n/a: single-level dimensions
  return p;
}

std::optional<LowLevelParams> find_preset(std::string_view name) {
  if (name == "dw1") return preset_dw1();
  if (name == "dw2") return preset_dw2();
  if (name == "dw3") return preset_dw3();
  return std::nullopt;
}

std::vector<std::string> preset_names() { return {"dw1", "dw2", "dw3"}; }

WorkloadParams preset_workload() {
  WorkloadParams w;
  w.nb_q = 20;
  return w;
}

LowLevelParams scaled(LowLevelParams params, std::int64_t hhlevel_size, std::int64_t dim_sfactor) {
  for (auto& h : params.hhlevel_size) h = hhlevel_size;
  for (std::size_t d = 0; d < params.dim_sfactor.size(); ++d) {
    params.dim_sfactor[d] = params.nb_levels[d] > 1 ? dim_sfactor : 1;
  }
  return params;
}

}  // namespace whbench
