// Copyright 2026 The jetlie Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Expression grammar and the line-oriented algebra and equation files.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetlie/catalog.hpp"
#include "jetlie/integrals.hpp"

namespace jetlie {

/// Symbols visible to the expression parser.
struct ParseScope {
  int m = 1;
  /// Highest accepted jet order; larger orders raise Error(OrderOverflow).
  int max_order = 64;
  AtomTable atoms;
  std::vector<VarId> parameters;
};

/// Pratt parser: precedence ^ > unary - > * / > + -. Throws ParseError
/// (SyntaxError, UnknownVariable, OrderOverflow) carrying a SourceSpan.
RatExpr parse_expression(std::string_view text, const ParseScope& scope);

struct ParsedAlgebraFile {
  int m = 1;
  std::vector<VarId> parameters;
  AtomTable atoms;
  AlgebraSpec spec;
  std::optional<StructureReport> structure;
  std::vector<std::string> warnings;
};

/// Header lines (m, param, atom) followed by "VF xi | phi1 | ... | phim" lines;
/// '#' starts a comment. Closure is checked; failures become warnings.
ParsedAlgebraFile parse_algebra_file(std::string_view text, std::string name = "file");

/// Same header plus "order = r" and one "eq ui_r = <expr>" line per dependent.
NormalFormODE parse_ode_file(std::string_view text);

/// Canonical algebra file; parse_algebra_file(dump_algebra(s)) reproduces s.
std::string dump_algebra(const AlgebraSpec& spec);
std::string dump_ode(const NormalFormODE& ode, const std::vector<VarId>& parameters = {});

/// Parses one "name : d/dvar = expr [; relation = poly]" declaration into `scope`.
void parse_atom_declaration(std::string_view text, ParseScope& scope);

}  // namespace jetlie
