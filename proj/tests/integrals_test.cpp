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

#include "jetlie/cli.hpp"
#include "jetlie/error.hpp"
#include "jetlie/integrals.hpp"
#include "support.hpp"

namespace jetlie {
namespace {

NormalFormODE family() { return parse_ode_file(*bundled_file("eq31.ode")); }

RatExpr in_family(const std::string& text) {
  ParseScope sc;
  sc.atoms = family().atoms;
  sc.parameters = {VarId::parameter("K")};
  return parse_expression(text, sc);
}

TEST(SymmetryTest, FamilySymmetries) {
  NormalFormODE ode = family();
  for (const auto& g : named_algebra("sl2").generators) EXPECT_TRUE(check_point_symmetry(ode, g));
  VectorField scale{testing::parse("x"), {testing::parse("0")}};
  EXPECT_FALSE(check_point_symmetry(ode, scale));
  EXPECT_FALSE(symmetry_residuals(ode, scale)[0].is_zero());
}

TEST(SymmetryTest, Validation) {
  NormalFormODE bad{1, 2, {testing::parse("u1_2")}, {}};
  EXPECT_THROW(bad.validate(), Error);
  NormalFormODE lines{2, 2, {RatExpr(0), RatExpr(0)}, {}};
  VectorField scalar{testing::parse("1"), {testing::parse("0")}};
  EXPECT_THROW(check_point_symmetry(lines, scalar), Error);
}

TEST(ZFieldTest, Components) {
  ZField z = z_field(family());
  ASSERT_EQ(z.components.size(), 3u);
  EXPECT_EQ(z.components[0], RatExpr(1));
  EXPECT_EQ(z.components[1], testing::parse("u1_1"));
  EXPECT_EQ(z.components[2], in_family("1/2*u1_1 + K*w*u1_1^3"));
}

TEST(FirstIntegralTest, DisplayedIntegrals) {
  NormalFormODE ode = family();
  const auto& g = named_algebra("sl2").generators;
  RatExpr i1 = first_integral(ode, {g[0], g[1]}, {g[0], g[2]});
  RatExpr i2 = first_integral(ode, {g[0], g[1]}, {g[1], g[2]});
  EXPECT_EQ(i1, in_family("(2*K*w*u1_1^2 - 1)/(u1*(2*K*w*u1_1^2 - 1) + 2*u1_1)"));
  EXPECT_EQ(i2, in_family("2*(2*K*w*u1_1^2 - 1)/(u1^2*(2*K*w*u1_1^2 - 1) + 4*u1_1*(u1 - u1_1))"));
  EXPECT_TRUE(verify_first_integral(ode, i1));
  EXPECT_TRUE(verify_first_integral(ode, i2));
  EXPECT_FALSE(verify_first_integral(ode, testing::parse("u1")));
  EXPECT_THROW(verify_first_integral(ode, testing::parse("u1_2")), Error);
}

TEST(FirstIntegralTest, Errors) {
  NormalFormODE ode = family();
  const auto& g = named_algebra("sl2").generators;
  VectorField scale{testing::parse("x"), {testing::parse("0")}};
  EXPECT_THROW(first_integral(ode, {g[0]}, {g[1], g[2]}), Error);
  EXPECT_THROW(first_integral(ode, {g[0], scale}, {g[1], g[2]}), Error);
  EXPECT_THROW(first_integral(ode, {g[0], g[1]}, {g[0], g[0]}), Error);
  NormalFormODE lines{2, 2, {RatExpr(0), RatExpr(0)}, {}};
  EXPECT_THROW(first_integral(lines, {}, {}), Error);
}

TEST(FirstIntegralTest, TrivialRatioIsWarned) {
  NormalFormODE ode = family();
  const auto& g = named_algebra("sl2").generators;
  std::vector<std::string> warnings;
  RatExpr one = first_integral(ode, {g[0], g[1]}, {g[1], g[0]}, &warnings);
  EXPECT_EQ(one, RatExpr(-1));
  EXPECT_FALSE(warnings.empty());
}

}  // namespace
}  // namespace jetlie
