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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "whbench/core_model.hpp"

namespace whbench {

// Reference warehouses: two snowflakes and a star, each paired with a
// twenty-query workload.
LowLevelParams preset_dw1();
LowLevelParams preset_dw2();
LowLevelParams preset_dw3();

std::optional<LowLevelParams> find_preset(std::string_view name);
std::vector<std::string> preset_names();

/// Default workload parameters with NB_Q = 20.
WorkloadParams preset_workload();

/// Same shape with every HHLEVEL_SIZE and DIM_SFACTOR replaced (for fast
/// structural checks).
LowLevelParams scaled(LowLevelParams params, std::int64_t hhlevel_size, std::int64_t dim_sfactor);

}  // namespace whbench
