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
#include "jetlie/parse.hpp"
#include "support.hpp"

namespace jetlie {
namespace {

using testing::parse;
using testing::parse_poly;

ParseScope family_scope() {
  ParseScope sc;
  sc.parameters = {VarId::parameter("K")};
  VarId w = VarId::atom("w");
  sc.atoms.define(AtomDef{w, {{VarId::independent(), RatExpr(-2) * RatExpr(w)}}, std::nullopt});
  return sc;
}

TEST(VarIdTest, OrderAndNames) {
  EXPECT_LT(VarId::independent(), VarId::jet(1, 0));
  EXPECT_LT(VarId::jet(1, 0), VarId::jet(2, 0));
  EXPECT_LT(VarId::jet(1, 5), VarId::jet(2, 0));
  EXPECT_LT(VarId::jet(9, 40), VarId::atom("a"));
  EXPECT_LT(VarId::atom("zz"), VarId::parameter("a"));
  EXPECT_EQ(to_string(VarId::jet(1, 0)), "u1");
  EXPECT_EQ(to_string(VarId::jet(2, 3)), "u2_3");
  EXPECT_EQ(to_string(VarId::parameter("alpha")), "alpha");
}

TEST(PolyTest, CanonicalString) {
  EXPECT_EQ(canonical_string(parse_poly("x^2")), "x^2");
  EXPECT_EQ(canonical_string(parse_poly("0")), "0");
  EXPECT_EQ(canonical_string(parse_poly("-u1_2*(1 + u1_1^2)")), "-u1_2 - u1_1^2*u1_2");
  EXPECT_EQ(factored_string(parse_poly("-u1_2 - u1_1^2*u1_2")), "-u1_2*(1 + u1_1^2)");
  EXPECT_EQ(canonical_string(parse_poly("(1/2)*u1_1 + 3")), "3 + 1/2*u1_1");
}

TEST(PolyTest, ArithmeticIdentities) {
  Poly a = parse_poly("x + u1");
  Poly b = parse_poly("x - u1");
  EXPECT_EQ(a * b, parse_poly("x^2 - u1^2"));
  EXPECT_EQ(a.pow(3), a * a * a);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a.partial(VarId::independent()), Poly(1));
  EXPECT_EQ(jet_order(parse_poly("x*u1_3 + u1")), 3);
}

TEST(PolyTest, ExactDivision) {
  Poly E = parse_poly("3*u1_2*u1_4 - 5*u1_3^2");
  Poly q = parse_poly("-2*u1_2^2");
  EXPECT_EQ(exact_divide(E * q, E), q);
  EXPECT_FALSE(try_divide(E + 1, E).has_value());
  EXPECT_THROW(exact_divide(E + 1, E), Error);
  EXPECT_THROW(exact_divide(E, Poly()), Error);
}

TEST(PolyTest, Gcd) {
  Poly u2 = parse_poly("u1_2");
  EXPECT_EQ(gcd(parse_poly("u1_2*(1 + u1_1^2)"), parse_poly("u1_2*u1_1")), u2);
  Poly g = parse_poly("1 + x*u1 - u1_1^2");
  Poly a = g * parse_poly("x - u1 + 2");
  Poly b = g * parse_poly("x^2 + u1_1");
  EXPECT_EQ(primitive_part(gcd(a, b)), primitive_part(g));
  EXPECT_EQ(primitive_part(gcd_subresultant(a, b)), primitive_part(g));
  EXPECT_TRUE(gcd(parse_poly("x + 1"), parse_poly("x - 1")).is_constant());
  EXPECT_EQ(gcd(Poly(), g), g);
}

TEST(RatExprTest, Normalization) {
  RatExpr e = parse("(x^2 - 1)/(2*x - 2)");
  EXPECT_EQ(e, parse("1/2*x + 1/2"));
  RatExpr f = parse("u1/(-2*x)");
  EXPECT_EQ(canonical_string(f), "(-1/2*u1)/(x)");
  EXPECT_EQ(f * parse("x"), parse("-1/2*u1"));
  EXPECT_THROW(parse("1/(x - x)"), ParseError);
  EXPECT_THROW(RatExpr(0).inverse(), Error);
}

TEST(RatExprTest, EvaluateRejectsPoles) {
  RatExpr e = parse("1/(x - 1)");
  EXPECT_EQ(e.evaluate({{VarId::independent(), BigRational(3)}}), BigRational(1, 2));
  EXPECT_THROW(e.evaluate({{VarId::independent(), BigRational(1)}}), Error);
}

TEST(RatExprTest, AtomDerivatives) {
  ParseScope sc = family_scope();
  RatExpr e = parse_expression("K*w*u1_1^3", sc);
  EXPECT_EQ(differentiate(e, VarId::independent(), sc.atoms), parse_expression("-2*K*w*u1_1^3", sc));
  EXPECT_EQ(differentiate(e, VarId::jet(1, 1), sc.atoms), parse_expression("3*K*w*u1_1^2", sc));
}

TEST(RatExprTest, AtomRelationsAreReduced) {
  ParseScope sc;
  parse_atom_declaration("s : d/du1_1 = u1_1/s ; relation = s^2 - 1 - u1_1^2", sc);
  RatExpr e = parse_expression("s^3", sc);
  EXPECT_EQ(reduce(e, sc.atoms), parse_expression("s*(1 + u1_1^2)", sc));
  EXPECT_EQ(reduce(parse_expression("1/(1 + s)", sc), sc.atoms), parse_expression("(s - 1)/u1_1^2", sc));
}

TEST(RatExprTest, Substitute) {
  RatExpr e = parse("u1_2 + x*u1");
  RatExpr s = substitute(e, {{VarId::jet(1, 2), parse("1/x")}});
  EXPECT_EQ(s, parse("1/x + x*u1"));
}

TEST(ParseTest, FamilyResidual) {
  ParseScope sc = family_scope();
  RatExpr e = parse_expression("u1_2 - (1/2)*u1_1 - K*w*u1_1^3", sc);
  EXPECT_EQ(canonical_string(e), "u1_2 - 1/2*u1_1 - u1_1^3*w*K");
  EXPECT_TRUE(e.depends_on(VarId::atom("w")));
}

TEST(ParseTest, Precedence) {
  EXPECT_EQ(parse("-x^2"), -parse("x*x"));
  EXPECT_EQ(parse("2*x^2 + 1"), parse("1 + 2*(x*x)"));
  EXPECT_EQ(parse("x - u1 - 1"), parse("x - (u1 + 1)"));
  EXPECT_EQ(parse("x/u1/2"), parse("x/(2*u1)"));
  EXPECT_EQ(parse("u"), parse("u1"));
  EXPECT_EQ(parse("-(x)^0"), RatExpr(-1));
}

SourceSpan span_of(const std::string& text, Errc expected, int m = 1) {
  try {
    parse(text, m);
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), expected) << e.what();
    return e.span();
  }
  ADD_FAILURE() << "no error for " << text;
  return {};
}

TEST(ParseTest, ErrorSpans) {
  SourceSpan s = span_of("u1_1/", Errc::SyntaxError);
  EXPECT_EQ(s.start, 4u);
  EXPECT_EQ(s.column, 5);
  s = span_of("x + y", Errc::UnknownVariable);
  EXPECT_EQ(s.start, 4u);
  EXPECT_EQ(s.end, 5u);
  span_of("x^u1", Errc::SyntaxError);
  span_of("x^(2)", Errc::SyntaxError);
  span_of("(x + 1", Errc::SyntaxError);
  span_of("x $ 1", Errc::SyntaxError);
  span_of("u3", Errc::UnknownVariable, 2);
  span_of("u", Errc::UnknownVariable, 2);
  span_of("u1_65", Errc::OrderOverflow);
  span_of("x/0", Errc::DivisionByZero);
  span_of("", Errc::SyntaxError);
}

TEST(ParseTest, AlgebraFile) {
  ParsedAlgebraFile f = parse_algebra_file("# Family symmetries\nm = 1\nVF 0 | 1\nVF 1 | u1\nVF u1 | 1/2*u1^2\n");
  EXPECT_EQ(f.spec.dimension(), 3);
  ASSERT_TRUE(f.structure.has_value());
  EXPECT_TRUE(f.structure->closed);
  EXPECT_TRUE(f.warnings.empty());

  ParsedAlgebraFile g = parse_algebra_file("m = 1\nVF 1 | 0\nVF 0 | 1\nVF 0 | x\nVF x | 2*u1\n");
  EXPECT_EQ(g.spec.dimension(), 4);
  EXPECT_TRUE(g.structure->closed);
}

TEST(ParseTest, AlgebraFileWarnsWhenNotClosed) {
  ParsedAlgebraFile f = parse_algebra_file("m = 1\nVF 1 | 0\nVF 0 | x^2\n");
  EXPECT_FALSE(f.structure->closed);
  EXPECT_EQ(f.warnings.size(), 1u);
}

TEST(ParseTest, AlgebraFileErrors) {
  EXPECT_THROW(parse_algebra_file("m = 1\n# nothing\n"), ParseError);
  EXPECT_THROW(parse_algebra_file("m = 2\nVF 1 | 0\n"), ParseError);
  EXPECT_THROW(parse_algebra_file("VF 1 | 0\nm = 1\n"), ParseError);
  EXPECT_THROW(parse_algebra_file("m = 1\nVF u1_1 | 0\n"), ParseError);
  try {
    parse_algebra_file("m = 1\nVF 1 | x +\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().line, 2);
    EXPECT_EQ(e.span().column, 10);
  }
}

TEST(ParseTest, OdeFile) {
  NormalFormODE ode = parse_ode_file(
      "m = 1\nparam K\natom w : d/dx = -2*w\norder = 2\neq u1_2 = 1/2*u1_1 + K*w*u1_1^3\n");
  EXPECT_EQ(ode.order, 2);
  EXPECT_EQ(ode.m, 1);
  EXPECT_THROW(parse_ode_file("m = 1\norder = 2\neq u1_2 = u1_3\n"), Error);
  EXPECT_THROW(parse_ode_file("m = 1\norder = 2\neq u1_1 = 0\n"), ParseError);
  EXPECT_THROW(parse_ode_file("m = 2\norder = 2\neq u1_2 = 0\n"), ParseError);
}

TEST(ParseTest, DumpRoundTripsCatalog) {
  for (const auto& id : catalog_ids()) {
    for (int m : {1, 2}) {
      if (m == 2 && id != "isometry" && id != "affine" && id != "conformal" && id != "projective") continue;
      AlgebraSpec spec = catalog_algebra(id, m);
      std::string text = dump_algebra(spec);
      ParsedAlgebraFile back = parse_algebra_file(text, spec.name);
      EXPECT_EQ(back.spec.generators, spec.generators) << id;
      EXPECT_EQ(dump_algebra(back.spec), text) << id;
    }
  }
}

TEST(ParseTest, OdeDumpRoundTrip) {
  std::string text = "m = 1\nparam K\natom w : d/dx = -2*w\norder = 2\neq u1_2 = 1/2*u1_1 + u1_1^3*w*K\n";
  NormalFormODE ode = parse_ode_file(text);
  std::string dumped = dump_ode(ode, {VarId::parameter("K")});
  NormalFormODE back = parse_ode_file(dumped);
  EXPECT_EQ(back.rhs, ode.rhs);
  EXPECT_EQ(dump_ode(back, {VarId::parameter("K")}), dumped);
}

}  // namespace
}  // namespace jetlie
