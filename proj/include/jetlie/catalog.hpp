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

// Built-in Lie algebras of point vector fields.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetlie/jetspace.hpp"

namespace jetlie {

struct AlgebraSpec {
  std::string name;
  int m = 1;
  /// Symbolic parameters appearing in the generators.
  std::vector<VarId> parameters;
  AtomTable atoms;
  std::vector<VectorField> generators;
  int expected_dim = 0;

  int dimension() const noexcept { return static_cast<int>(generators.size()); }
};

enum class PrimitiveId { I = 1, II, III, IV, V, VI, VII, VIII };

/// "I".."VIII" (case-insensitive); throws Error(UnknownAlgebraId).
PrimitiveId parse_primitive_id(std::string_view id);
std::string to_string(PrimitiveId id);

/// Primitive algebras of the plane. For algebra I, alpha defaults to the
/// symbolic parameter "alpha"; passing alpha for other ids is an error.
AlgebraSpec primitive_algebra(PrimitiveId id, std::optional<RatExpr> alpha = std::nullopt);

enum class SpaceKind { Isometry, Affine, Conformal, Projective };

/// Throws Error(UnknownAlgebraId).
SpaceKind parse_space_kind(std::string_view name);
std::string to_string(SpaceKind kind);

inline constexpr int kMaxSpaceDimension = 4;

/// Isometry, affine, conformal or projective algebra of R^{1+m}.
/// Throws Error(UnsupportedDimension) unless 1 <= m <= max_m.
AlgebraSpec space_algebra(SpaceKind kind, int m, int max_m = kMaxSpaceDimension);

/// Small named algebras: "realization1" {e^u d/du, -d/du}, "realization2"
/// {d/du, d/dx + u d/du}, "sl2" {d/du, d/dx + u d/du, u d/dx + u^2/2 d/du} and
/// "example" {d/dx, d/du, x d/du, x d/dx + 2u d/du}.
AlgebraSpec named_algebra(std::string_view name);

/// Any catalog id: a primitive id, a space kind (with m), or a named algebra.
AlgebraSpec catalog_algebra(std::string_view id, int m = 1, std::optional<RatExpr> alpha = std::nullopt);

/// Ids accepted by catalog_algebra, for help texts.
std::vector<std::string> catalog_ids();

}  // namespace jetlie
