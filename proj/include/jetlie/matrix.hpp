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

// Fraction-free elimination on polynomial matrices.

#pragma once

#include <vector>

#include "jetlie/ratexpr.hpp"

namespace jetlie {

using PolyMatrix = std::vector<std::vector<Poly>>;
using RatMatrix = std::vector<std::vector<RatExpr>>;

/// Generic rank together with a nonzero maximal minor.
struct EliminationResult {
  int rank = 0;
  /// Row and column indices of the witness minor, ascending.
  std::vector<int> rows;
  std::vector<int> cols;
  /// Value of the witness minor (1 when rank = 0).
  Poly minor = Poly(1);
};

/// Bareiss elimination with full pivoting on the entry with fewest terms.
EliminationResult bareiss(PolyMatrix m);

/// Throws Error(NotSquare).
Poly determinant(const PolyMatrix& m);
/// Determinant of a rational matrix via row denominators.
RatExpr determinant(const RatMatrix& m);

/// Multiplies each row by the lcm of its denominators.
PolyMatrix clear_row_denominators(const RatMatrix& m);
/// Throws Error(NotPolynomial) if some entry has a nonconstant denominator.
PolyMatrix to_poly_matrix(const RatMatrix& m);

}  // namespace jetlie
