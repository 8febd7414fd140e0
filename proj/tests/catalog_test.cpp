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

#include <gtest/gtest.h>

#include "jetlie/error.hpp"
#include "support.hpp"

namespace jetlie {
namespace {

TEST(CatalogTest, PrimitiveDimensions) {
  const std::pair<const char*, int> expected[] = {{"I", 3},  {"II", 3}, {"III", 3}, {"IV", 4},
                                                  {"V", 5},  {"VI", 6}, {"VII", 6}, {"VIII", 8}};
  for (const auto& [id, dim] : expected) {
    AlgebraSpec alg = catalog_algebra(id);
    EXPECT_EQ(alg.dimension(), dim) << id;
    EXPECT_EQ(alg.expected_dim, dim) << id;
    StructureReport rep = closure_check(alg.generators, alg.atoms);
    EXPECT_TRUE(rep.closed) << id;
    EXPECT_TRUE(jacobi_holds(rep)) << id;
  }
}

TEST(CatalogTest, AlphaOnlyForI) {
  AlgebraSpec sym = primitive_algebra(PrimitiveId::I);
  ASSERT_EQ(sym.parameters.size(), 1u);
  EXPECT_EQ(sym.parameters[0], VarId::parameter("alpha"));
  AlgebraSpec zero = primitive_algebra(PrimitiveId::I, RatExpr(0));
  EXPECT_TRUE(zero.parameters.empty());
  EXPECT_EQ(zero.generators[2], (VectorField{testing::parse("u1"), {testing::parse("-x")}}));
  EXPECT_THROW(primitive_algebra(PrimitiveId::IV, RatExpr(1)), Error);
}

TEST(CatalogTest, Ids) {
  EXPECT_EQ(parse_primitive_id("vii"), PrimitiveId::VII);
  EXPECT_EQ(to_string(PrimitiveId::VIII), "VIII");
  try {
    parse_primitive_id("IX");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnknownAlgebraId);
  }
  EXPECT_THROW(catalog_algebra("nonsense"), Error);
}

TEST(CatalogTest, SpaceAlgebraDimensions) {
  for (int m = 1; m <= kMaxSpaceDimension; ++m) {
    const int n = m + 1;
    const std::pair<SpaceKind, int> kinds[] = {{SpaceKind::Isometry, n * (n + 1) / 2},
                                               {SpaceKind::Affine, n * (n + 1)},
                                               {SpaceKind::Conformal, (n + 1) * (n + 2) / 2},
                                               {SpaceKind::Projective, n * (n + 2)}};
    for (const auto& [kind, dim] : kinds) {
      AlgebraSpec alg = space_algebra(kind, m);
      EXPECT_EQ(alg.dimension(), dim) << to_string(kind) << " m=" << m;
      StructureReport rep = closure_check(alg.generators);
      EXPECT_TRUE(rep.closed) << to_string(kind) << " m=" << m;
    }
  }
  EXPECT_THROW(space_algebra(SpaceKind::Affine, kMaxSpaceDimension + 1), Error);
  EXPECT_THROW(space_algebra(SpaceKind::Affine, 0), Error);
}

TEST(CatalogTest, SubalgebraChain) {
  AlgebraSpec iso = space_algebra(SpaceKind::Isometry, 2);
  AlgebraSpec conf = space_algebra(SpaceKind::Conformal, 2);
  AlgebraSpec aff = space_algebra(SpaceKind::Affine, 2);
  AlgebraSpec proj = space_algebra(SpaceKind::Projective, 2);
  EXPECT_TRUE(span_contains(conf.generators, iso.generators));
  EXPECT_TRUE(span_contains(aff.generators, iso.generators));
  EXPECT_TRUE(span_contains(proj.generators, aff.generators));
  EXPECT_FALSE(span_contains(aff.generators, conf.generators));
}

}  // namespace
}  // namespace jetlie
