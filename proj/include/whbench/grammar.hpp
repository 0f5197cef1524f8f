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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "whbench/query.hpp"

namespace whbench {

struct ParseError : std::runtime_error {
  ParseError(const std::string& message, std::size_t position);
  std::size_t position;  // byte offset into the statement
};

/// Parses one statement of the workload query language (see
/// docs/query-grammar.md). Throws ParseError with the offending position.
/// The result's kind is olap when grouped, extraction otherwise.
QueryAst parse_query(std::string_view text);

struct GrammarCheck {
  std::optional<QueryAst> query;
  std::string message;
  std::size_t position = 0;

  bool ok() const { return query.has_value(); }
};

GrammarCheck check_grammar(std::string_view text);

}  // namespace whbench
