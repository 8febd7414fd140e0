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
#include "jetlie/remarkable.hpp"
#include "support.hpp"

namespace jetlie {
namespace {

using testing::parse;
using testing::parse_poly;

TEST(MatrixTest, BareissMatchesCofactorExpansion) {
  RatMatrix m = {{parse("x"), parse("u1"), parse("1")},
                 {parse("u1_1"), parse("0"), parse("x^2")},
                 {parse("1"), parse("x*u1"), parse("u1_2")}};
  EXPECT_EQ(RatExpr(determinant(to_poly_matrix(m))), testing::cofactor_determinant(m));
  EXPECT_EQ(determinant(m), testing::cofactor_determinant(m));
}

TEST(MatrixTest, RationalEntries) {
  RatMatrix m = {{parse("1/x"), parse("1")}, {parse("u1"), parse("x/(1 + u1)")}};
  EXPECT_EQ(determinant(m), testing::cofactor_determinant(m));
  EXPECT_THROW(to_poly_matrix(m), Error);
}

TEST(MatrixTest, RankAndWitness) {
  PolyMatrix m = {{parse_poly("x"), parse_poly("u1")}, {parse_poly("2*x"), parse_poly("2*u1")}};
  EliminationResult r = bareiss(m);
  EXPECT_EQ(r.rank, 1);
  EXPECT_THROW(determinant(PolyMatrix{{parse_poly("1"), parse_poly("2")}}), Error);
}

TEST(ProlMatrixTest, ColumnOrder) {
  ProlMatrix mx = prolongation_matrix(space_algebra(SpaceKind::Isometry, 2), 1);
  EXPECT_EQ(mx.cols(), 5);
  EXPECT_EQ(mx.column_of(2, 0), 2);
  EXPECT_EQ(mx.column_of(1, 1), 3);
  EXPECT_THROW(prolongation_matrix(catalog_algebra("IV"), -1), Error);
}

TEST(ProlMatrixTest, WorkedExample) {
  ProlMatrix mx = prolongation_matrix(catalog_algebra("example"), 3);
  const char* rows[4][5] = {{"1", "0", "0", "0", "0"},
                            {"0", "1", "0", "0", "0"},
                            {"0", "x", "1", "0", "0"},
                            {"x", "2*u1", "u1_1", "0", "-u1_3"}};
  for (int i = 0; i < 4; ++i) {
    for (int c = 0; c < 5; ++c) EXPECT_EQ(mx.at(i, c), parse(rows[i][c])) << i << "," << c;
  }
}

TEST(LieDeterminantTest, AlgebraIV) {
  ProlMatrix mx = prolongation_matrix(catalog_algebra("IV"), 2);
  LieDeterminant d = lie_determinant(mx);
  EXPECT_EQ(d.value, parse_poly("-u1_2*(1 + u1_1^2)"));
  EXPECT_EQ(RatExpr(d.value), testing::cofactor_determinant(mx.entries));
  EXPECT_THROW(lie_determinant(prolongation_matrix(catalog_algebra("IV"), 1)), Error);
}

TEST(LieDeterminantTest, AlgebraVI) {
  LieDeterminant d = lie_determinant(prolongation_matrix(catalog_algebra("VI"), 4));
  EXPECT_EQ(d.value, parse_poly("-2*u1_2^2*(3*u1_2*u1_4 - 5*u1_3^2)"));
}

TEST(RankTest, AlgebraI) {
  RankReport r = generic_rank(prolongation_matrix(catalog_algebra("I"), 1));
  EXPECT_EQ(r.generic_rank, 3);
  EXPECT_EQ(r.pivot_witness.value, parse_poly("-(1 + u1_1^2)"));
}

TEST(RankTest, Isometry) {
  EXPECT_EQ(generic_rank(prolongation_matrix(space_algebra(SpaceKind::Isometry, 2), 2)).generic_rank, 6);
  EXPECT_EQ(generic_rank(prolongation_matrix(catalog_algebra("IV"), 1)).generic_rank, 3);
}

TEST(MinorsTest, LexicographicAndComplete) {
  ProlMatrix mx = prolongation_matrix(catalog_algebra("VII"), 3);
  auto minors = maximal_minors(mx, 5);
  ASSERT_EQ(minors.size(), 6u);
  for (std::size_t i = 1; i < minors.size(); ++i) {
    EXPECT_LT(std::tie(minors[i - 1].rows, minors[i - 1].cols), std::tie(minors[i].rows, minors[i].cols));
  }
  auto serial = maximal_minors(mx, 5, 1);
  auto parallel = maximal_minors(mx, 5, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) EXPECT_EQ(serial[i].value, parallel[i].value);
}

TEST(CertificateTest, IVandV) {
  Poly E = parse_poly("u1_2");
  for (const char* id : {"IV", "V"}) {
    Certificate c = certify_prop34_hypersurface(catalog_algebra(id), 2, E);
    EXPECT_EQ(c.verdict, Verdict::Certified) << id;
  }
}

TEST(CertificateTest, PrimitivesWithoutRemarkableEquations) {
  for (const char* id : {"I", "II", "III"}) {
    Certificate c = certify_prop34_hypersurface(catalog_algebra(id), 1, parse_poly("u1_1"));
    EXPECT_EQ(c.verdict, Verdict::Failed) << id;
    EXPECT_FALSE(c.failures.empty()) << id;
    Certificate p = certify_prop37(catalog_algebra(id), 2, parse("u1_1"));
    EXPECT_EQ(p.verdict, Verdict::Failed) << id;
  }
}

TEST(CertificateTest, WrongCandidateFails) {
  Certificate c = certify_prop34_hypersurface(catalog_algebra("VII"), 3, parse_poly("u1_3"));
  EXPECT_EQ(c.verdict, Verdict::Failed);
}

TEST(CertificateTest, ArityChecks) {
  EXPECT_THROW(certify_prop34_hypersurface(space_algebra(SpaceKind::Isometry, 2), 2, parse_poly("u1_2")), Error);
  EXPECT_THROW(certify_prop34_hypersurface(catalog_algebra("IV"), 1, parse_poly("u1_2")), Error);
}

TEST(CertificateTest, WorkedExample) {
  Certificate c = certify_prop37(catalog_algebra("example"), 3, parse("u1_2"));
  EXPECT_EQ(c.verdict, Verdict::Certified);
  ASSERT_TRUE(c.equation.has_value());
  EXPECT_EQ(canonical_string(*c.equation), "u1_3");
}

TEST(CertificateTest, SystemOfLines) {
  NormalFormODE lines{2, 2, {RatExpr(0), RatExpr(0)}, {}};
  Certificate c = certify_prop34_system(space_algebra(SpaceKind::Isometry, 2), lines);
  EXPECT_NE(c.verdict, Verdict::Failed);
  NormalFormODE bent{2, 2, {RatExpr(1), RatExpr(0)}, {}};
  EXPECT_EQ(certify_prop34_system(space_algebra(SpaceKind::Isometry, 2), bent).verdict, Verdict::Failed);
}

TEST(InvariantTest, AbsoluteAndRelative) {
  EXPECT_TRUE(check_invariant(catalog_algebra("IV"), 3, parse("((1 + u1_1^2)*u1_3 - 3*u1_1*u1_2^2)/u1_2^2")));
  EXPECT_FALSE(check_invariant(catalog_algebra("IV"), 3, parse("(1 + u1_1^2)*u1_3 - 3*u1_1*u1_2^2")));
  std::vector<PowerFactor> j = {{parse("u1_2"), BigRational(-8, 3)}, {parse("3*u1_2*u1_4 - 5*u1_3^2"), 1}};
  EXPECT_TRUE(check_relative_invariant(catalog_algebra("V"), 4, j, {}));
  j[0].exponent = BigRational(-2);
  EXPECT_FALSE(check_relative_invariant(catalog_algebra("V"), 4, j, {}));
  EXPECT_THROW(check_relative_invariant(catalog_algebra("V"), 4, {{RatExpr(0), 1}}, {}), Error);
}

TEST(InvariantTest, ArctanAtomWithSymbolicAlpha) {
  ParseScope sc;
  sc.parameters = {VarId::parameter("alpha")};
  parse_atom_declaration("t : d/du1_1 = 1/(1 + u1_1^2)", sc);
  std::vector<PowerFactor> f = {{parse_expression("u1_2", sc), 1}, {parse_expression("1 + u1_1^2", sc), BigRational(-3, 2)}};
  std::vector<LogTerm> logs = {{parse_expression("t", sc), parse_expression("-alpha", sc)}};
  EXPECT_TRUE(check_relative_invariant(catalog_algebra("I"), 2, f, logs, sc.atoms));
  logs[0].coefficient = parse_expression("alpha", sc);
  EXPECT_FALSE(check_relative_invariant(catalog_algebra("I"), 2, f, logs, sc.atoms));
}

}  // namespace
}  // namespace jetlie
