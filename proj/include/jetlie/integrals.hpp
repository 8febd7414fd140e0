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

// Normal-form ODE systems: point-symmetry tangency and first integrals built
// from symmetry determinants.

#pragma once

#include <string>
#include <vector>

#include "jetlie/jetspace.hpp"

namespace jetlie {

/// u^i_r = rhs[i-1], with every rhs of jet order < r.
struct NormalFormODE {
  int m = 1;
  int order = 1;
  std::vector<RatExpr> rhs;
  AtomTable atoms;

  /// Throws Error(NotNormalForm).
  void validate() const;
};

/// Components of X^(r)(u^i_r - f^i) restricted to the equation, one per i.
std::vector<RatExpr> symmetry_residuals(const NormalFormODE& ode, const VectorField& X);
bool check_point_symmetry(const NormalFormODE& ode, const VectorField& X);

/// Z = d/dx + sum u^i_{k+1} d/du^i_k + sum f^i d/du^i_{r-1} on J^{r-1}.
struct ZField {
  int m = 1;
  int n = 1;
  /// Coefficients in the order x, u^1_0..u^m_0, u^1_1.., ..., u^m_{n-1}.
  std::vector<RatExpr> components;
};

ZField z_field(const NormalFormODE& ode);

/// Ratio of the contraction determinants with rows Z, then the (n-1)-prolonged
/// fields. Throws Error(NotASymmetry), Error(DegenerateDenominator) or
/// Error(WrongArity) for systems. Warnings (e.g. too few distinct symmetries)
/// are appended to `warnings` when given.
RatExpr first_integral(const NormalFormODE& ode, const std::vector<VectorField>& num_rows,
                       const std::vector<VectorField>& den_rows, std::vector<std::string>* warnings = nullptr);

/// Z(I) == 0. Throws Error(OrderMismatch) if I involves jets of order >= r.
bool verify_first_integral(const NormalFormODE& ode, const RatExpr& I);

}  // namespace jetlie
