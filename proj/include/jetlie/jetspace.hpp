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

// Jets of m functions of one variable: total derivative, prolongation of
// point vector fields, brackets and closure of finite-dimensional algebras.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "jetlie/ratexpr.hpp"

namespace jetlie {

struct JetContext {
  int m = 1;
  int max_order = 0;
  AtomTable atoms;

  int dimension() const noexcept { return 1 + m * (max_order + 1); }
};

/// X = xi d/dx + sum_i phis[i-1] d/du^i with coefficients on J^0.
struct VectorField {
  RatExpr xi;
  std::vector<RatExpr> phis;

  int m() const noexcept { return static_cast<int>(phis.size()); }
  /// Throws Error(InvalidArgument) if a coefficient involves u^i_k with k >= 1.
  void validate() const;

  friend bool operator==(const VectorField&, const VectorField&) = default;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator*(const RatExpr& c, const VectorField& a);

struct ProlongedField {
  VectorField base;
  int order = 0;
  /// coeffs[i-1][k] = X^i_k.
  std::vector<std::vector<RatExpr>> coeffs;

  const RatExpr& coeff(int dep, int k) const { return coeffs.at(dep - 1).at(k); }
};

struct StructureReport {
  bool closed = false;
  /// constants[a][b][c] is c^c_{ab} in [X_a, X_b] = sum_c c^c_{ab} X_c.
  std::vector<std::vector<std::vector<RatExpr>>> constants;
  /// First bracket found outside the span, as (a, b, [X_a, X_b]).
  std::optional<std::pair<int, int>> witness_pair;
  std::optional<VectorField> witness;
};

/// D_x(e). Throws Error(OrderOverflow) if the result leaves J^{max_order}.
RatExpr total_derivative(const RatExpr& e, const JetContext& ctx);

/// Coefficients X^i_k for k <= r. Throws Error(OrderOverflow) if r > max_order.
ProlongedField prolong(const VectorField& X, int r, const JetContext& ctx);

/// X^(r)(e); e must live on J^r. Atoms follow the chain rule.
RatExpr apply_field(const ProlongedField& X, const RatExpr& e, const AtomTable& atoms = {});
RatExpr apply_field(const VectorField& X, const RatExpr& e, const AtomTable& atoms = {});

VectorField lie_bracket(const VectorField& X, const VectorField& Y, const AtomTable& atoms = {});

/// Decides closure by exact coefficient matching. Structure constants may depend
/// on symbolic parameters. Throws Error(DependentGenerators).
StructureReport closure_check(std::span<const VectorField> gens, const AtomTable& atoms = {});

/// Jacobi identity on the structure constants of a closed report.
bool jacobi_holds(const StructureReport& report);

/// Whether every field of `sub` lies in the span of `gens` over Q(parameters).
bool span_contains(std::span<const VectorField> gens, std::span<const VectorField> sub);

}  // namespace jetlie
