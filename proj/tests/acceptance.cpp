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

// One pass/fail line per acceptance criterion, with the runtime budget of
// each criterion pinned below.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "jetlie/cli.hpp"
#include "jetlie/error.hpp"
#include "jetlie/remarkable.hpp"
#include "support.hpp"

namespace jetlie {
namespace {

using testing::parse;
using testing::parse_poly;

// Criteria that cannot hold as stated; they still run and print FAIL.
const std::set<std::string> kDocumentedFailures = {"11b"};

struct Criterion {
  std::string id;
  std::string title;
  double budget_seconds;
  std::function<bool(std::string&)> check;
};

bool has_failure(const Certificate& c, const std::string& prefix) {
  for (const auto& f : c.failures) {
    if (f.rfind(prefix, 0) == 0) return true;
  }
  return false;
}

bool divisible_all(const std::vector<Minor>& minors, const Poly& E, int order_below = -1) {
  for (const auto& mn : minors) {
    auto q = try_divide(mn.value, E);
    if (!q) return false;
    if (order_below >= 0 && jet_order(*q) >= order_below) return false;
  }
  return true;
}

NormalFormODE bundled(const char* name) { return parse_ode_file(*bundled_file(name)); }

int tangent_count(const AlgebraSpec& alg, const NormalFormODE& ode) {
  int n = 0;
  for (const auto& g : alg.generators) n += check_point_symmetry(ode, g) ? 1 : 0;
  return n;
}

bool criterion1(std::string& detail) {
  Poly E = parse_poly("u1_2");
  Certificate iv = certify_prop34_hypersurface(catalog_algebra("IV"), 2, E);
  Certificate v = certify_prop34_hypersurface(catalog_algebra("V"), 2, E);
  ProlMatrix mx = prolongation_matrix(catalog_algebra("IV"), 2);
  Poly det = lie_determinant(mx).value;
  detail = "IV " + to_string(iv.verdict) + ", V " + to_string(v.verdict) + ", det " + factored_string(det);
  return iv.verdict == Verdict::Certified && v.verdict == Verdict::Certified &&
         det == parse_poly("-u1_2*(1 + u1_1^2)") && RatExpr(det) == testing::cofactor_determinant(mx.entries);
}

bool criterion2(std::string& detail) {
  AlgebraSpec vi = catalog_algebra("VI");
  Poly det = lie_determinant(prolongation_matrix(vi, 4)).value;
  auto minors = maximal_minors(prolongation_matrix(vi, 2), 4);
  bool div = try_divide(det, parse_poly("3*u1_2*u1_4 - 5*u1_3^2")).has_value();
  bool low = divisible_all(minors, parse_poly("u1_2"));
  detail = "det " + factored_string(det) + "; " + std::to_string(minors.size()) + " minors of order 2";
  return div && low && minors.size() == 15;
}

bool criterion3(std::string& detail) {
  Poly E = parse_poly("(1 + u1_1^2)*u1_3 - 3*u1_1*u1_2^2");
  AlgebraSpec vii = catalog_algebra("VII");
  auto minors = maximal_minors(prolongation_matrix(vii, 3), 5);
  Certificate c = certify_prop34_hypersurface(vii, 3, E);
  detail = std::to_string(minors.size()) + " minors, " + to_string(c.verdict);
  return minors.size() == 6 && divisible_all(minors, E, 3) && c.verdict == Verdict::Certified;
}

bool criterion4(std::string& detail) {
  Poly E = parse_poly("9*u1_5*u1_2^2 + 40*u1_3^3 - 45*u1_2*u1_3*u1_4");
  AlgebraSpec viii = catalog_algebra("VIII");
  auto minors = maximal_minors(prolongation_matrix(viii, 5), 7);
  Certificate c = certify_prop34_hypersurface(viii, 5, E);
  detail = std::to_string(minors.size()) + " minors, " + to_string(c.verdict);
  return minors.size() == 8 && divisible_all(minors, E) && c.verdict == Verdict::Certified;
}

bool criterion5(std::string& detail) {
  bool ok = true;
  for (const char* id : {"I", "II", "III"}) {
    AlgebraSpec alg = catalog_algebra(id);
    Certificate h = certify_prop34_hypersurface(alg, 1, parse_poly("u1_1"));
    Certificate p = certify_prop37(alg, 2, parse("u1_1"));
    ok = ok && h.verdict == Verdict::Failed && has_failure(h, "rank never drops") && p.verdict == Verdict::Failed &&
         has_failure(p, "rank condition");
  }
  RankReport r = generic_rank(prolongation_matrix(catalog_algebra("I"), 1));
  detail = "rank M_I(1) = " + std::to_string(r.generic_rank) + ", witness " + factored_string(r.pivot_witness.value);
  return ok && r.generic_rank == 3 && r.pivot_witness.value == parse_poly("-(1 + u1_1^2)");
}

bool criterion6(std::string& detail) {
  AlgebraSpec ex = catalog_algebra("example");
  ProlMatrix mx = prolongation_matrix(ex, 3);
  const char* rows[4][5] = {{"1", "0", "0", "0", "0"},
                            {"0", "1", "0", "0", "0"},
                            {"0", "x", "1", "0", "0"},
                            {"x", "2*u1", "u1_1", "0", "-u1_3"}};
  bool match = mx.rows() == 4 && mx.cols() == 5;
  for (int i = 0; match && i < 4; ++i) {
    for (int c = 0; c < 5; ++c) match = match && mx.at(i, c) == parse(rows[i][c]);
  }
  Certificate c = certify_prop37(ex, 3, parse("u1_2"));
  bool eq = c.equation && canonical_string(*c.equation) == "u1_3";
  detail = std::string(match ? "matrix matches" : "matrix differs") + ", " + to_string(c.verdict) +
           (c.equation ? ", equation " + canonical_string(*c.equation) : "");
  return match && c.verdict == Verdict::Certified && eq;
}

bool criterion7(std::string& detail) {
  bool inv = check_invariant(catalog_algebra("IV"), 3, parse("((1 + u1_1^2)*u1_3 - 3*u1_1*u1_2^2)/u1_2^2"));
  bool rel_j = check_relative_invariant(catalog_algebra("V"), 4,
                                        {{parse("u1_2"), BigRational(-8, 3)}, {parse("3*u1_2*u1_4 - 5*u1_3^2"), 1}},
                                        {});
  ParseScope sc;
  sc.parameters = {VarId::parameter("alpha")};
  parse_atom_declaration("t : d/du1_1 = 1/(1 + u1_1^2)", sc);
  bool rel_f = check_relative_invariant(
      catalog_algebra("I"), 2,
      {{parse_expression("u1_2", sc), 1}, {parse_expression("1 + u1_1^2", sc), BigRational(-3, 2)}},
      {{parse_expression("t", sc), parse_expression("-alpha", sc)}}, sc.atoms);
  detail = std::string("I ") + (inv ? "yes" : "no") + ", J " + (rel_j ? "yes" : "no") + ", F " + (rel_f ? "yes" : "no");
  return inv && rel_j && rel_f;
}

bool criterion8(std::string& detail) {
  NormalFormODE ode = bundled("eq31.ode");
  AlgebraSpec sl2 = named_algebra("sl2");
  const auto& g = sl2.generators;
  ParseScope sc;
  sc.atoms = ode.atoms;
  sc.parameters = {VarId::parameter("K")};
  RatExpr i1 = first_integral(ode, {g[0], g[1]}, {g[0], g[2]});
  RatExpr i2 = first_integral(ode, {g[0], g[1]}, {g[1], g[2]});
  bool exact =
      i1 == parse_expression("(2*K*w*u1_1^2 - 1)/(u1*(2*K*w*u1_1^2 - 1) + 2*u1_1)", sc) &&
      i2 == parse_expression("2*(2*K*w*u1_1^2 - 1)/(u1^2*(2*K*w*u1_1^2 - 1) + 4*u1_1*(u1 - u1_1))", sc);
  bool verified = verify_first_integral(ode, i1) && verify_first_integral(ode, i2);
  int tangent = tangent_count(sl2, ode);
  detail = "I1 = " + canonical_string(i1) + ", symmetries " + std::to_string(tangent) + "/3";
  return exact && verified && tangent == 3;
}

bool criterion9(std::string& detail) {
  bool ok = true;
  for (int m = 1; m <= kMaxSpaceDimension; ++m) {
    AlgebraSpec iso = space_algebra(SpaceKind::Isometry, m);
    NormalFormODE lines{m, 2, std::vector<RatExpr>(m, RatExpr(0)), {}};
    ok = ok && tangent_count(iso, lines) == iso.dimension();
  }
  AlgebraSpec iso2 = space_algebra(SpaceKind::Isometry, 2);
  auto minors = maximal_minors(prolongation_matrix(iso2, 2), 6);
  bool vanish = !minors.empty();
  for (const auto& mn : minors) {
    Poly v = mn.value.substitute(VarId::jet(1, 2), Poly()).substitute(VarId::jet(2, 2), Poly());
    vanish = vanish && v.is_zero();
  }
  int bent = tangent_count(iso2, bundled("perturbed2.ode"));
  detail = std::to_string(minors.size()) + " minors vanish on the lines, perturbed system " + std::to_string(bent) +
           "/6 tangent";
  return ok && vanish && bent < iso2.dimension();
}

bool criterion10(std::string& detail) {
  bool ok = true;
  for (int m = 2; m <= kMaxSpaceDimension; ++m) {
    AlgebraSpec conf = space_algebra(SpaceKind::Conformal, m);
    std::string name = "circles" + std::to_string(m) + ".ode";
    int t = tangent_count(conf, bundled(name.c_str()));
    detail += (detail.empty() ? "" : ", ") + std::string("m=") + std::to_string(m) + " " + std::to_string(t) + "/" +
              std::to_string(conf.dimension());
    ok = ok && t == conf.dimension();
  }
  return ok;
}

bool criterion11a(std::string& detail) {
  AlgebraSpec aff = space_algebra(SpaceKind::Affine, 2);
  int t = tangent_count(aff, bundled("affine5.ode"));
  detail = std::to_string(t) + "/12 generators tangent";
  return aff.dimension() == 12 && t == 12;
}

bool criterion11b(std::string& detail) {
  AlgebraSpec aff = space_algebra(SpaceKind::Affine, 2);
  NormalFormODE ode = bundled("affine5.ode");
  bool ok = true;
  for (int k = 0; k < 2; ++k) {
    std::vector<std::string> failing;
    for (int g = 0; g < aff.dimension(); ++g) {
      AlgebraSpec one = aff;
      one.generators = {aff.generators[g]};
      if (!check_invariant(one, 5, ode.rhs[k])) failing.push_back("X" + std::to_string(g + 1));
    }
    ok = ok && failing.empty();
    std::string list;
    for (const auto& f : failing) list += (list.empty() ? "" : " ") + f;
    detail += (k ? "; " : "") + std::string("rhs ") + std::to_string(k + 1) + ": " +
              (failing.empty() ? "invariant" : "not annihilated by " + list);
  }
  return ok;
}

bool criterion12(std::string& detail) {
  AlgebraSpec proj = space_algebra(SpaceKind::Projective, 2);
  int t = tangent_count(proj, bundled("projective6.ode"));
  detail = std::to_string(t) + "/15 generators tangent";
  return proj.dimension() == 15 && t == 15;
}

}  // namespace
}  // namespace jetlie

int main(int argc, char** argv) {
  using namespace jetlie;
  bool extended = false;
  std::string property_binary;
#ifdef JETLIE_PROPERTY_TEST_BINARY
  property_binary = JETLIE_PROPERTY_TEST_BINARY;
#endif
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--extended") extended = true;
    if (a.rfind("--property-binary=", 0) == 0) property_binary = a.substr(18);
  }

  std::vector<Criterion> criteria = {
      {"1", "IV and V certify u1_2 = 0, Lie determinant of IV", 1, criterion1},
      {"2", "VI: determinant divisible by 3*u1_2*u1_4 - 5*u1_3^2, order-2 minors by u1_2", 5, criterion2},
      {"3", "VII: circles divide all six 5x5 minors", 10, criterion3},
      {"4", "VIII: conics divide all eight 7x7 minors", 120, criterion4},
      {"5", "I, II, III: no remarkable equations, rank M_I(1) = 3", 5, criterion5},
      {"6", "worked example: matrix and equation u1_3 = 0", 1, criterion6},
      {"7", "invariants of IV, V and I (symbolic alpha, arctan atom)", 5, criterion7},
      {"8", "first integrals I1, I2 and symmetries of the K family", 2, criterion8},
      {"9", "isometries and the system of lines, m = 1..4", 30, criterion9},
      {"10", "conformal algebra and the circles, m = 2..4", 120, criterion10},
      {"11a", "affine algebra of three-space and the order-5 system", 600, criterion11a},
      {"11b", "order-5 right-hand sides are affine differential invariants", 600, criterion11b},
      {"12", "projective algebra of three-space and the order-6 system", 3600, criterion12},
      {"13", "property suites, >= 100 seeded instances each", 60,
       [&](std::string& detail) {
         if (property_binary.empty()) {
           detail = "property test binary not configured";
           return false;
         }
         std::string cmd = "\"" + property_binary + "\" --gtest_brief=1 > /dev/null 2>&1";
         int rc = std::system(cmd.c_str());
         detail = rc == 0 ? "all suites green" : "property suites failed";
         return rc == 0;
       }},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    if (c.id == "12" && !extended) {
      std::cout << "[SKIP] " << std::left << std::setw(4) << c.id << c.title << " (run with --extended)\n";
      continue;
    }
    std::string detail;
    bool pass = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      pass = c.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_budget = secs <= c.budget_seconds;
    if (!in_budget) detail += "; over budget";
    bool ok = pass && in_budget;
    bool documented = kDocumentedFailures.count(c.id) > 0;
    if (ok == documented) ++unexpected;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << std::left << std::setw(4) << c.id << c.title << " ("
              << std::fixed << std::setprecision(3) << secs << " s, budget " << std::setprecision(0)
              << c.budget_seconds << " s)" << (documented ? " [documented as unattainable]" : "") << "\n"
              << "       " << detail << "\n";
    std::cout.unsetf(std::ios::fixed);
  }
  std::cout << (unexpected == 0 ? "acceptance: all outcomes as recorded\n"
                                : "acceptance: " + std::to_string(unexpected) + " unexpected outcome(s)\n");
  return unexpected == 0 ? 0 : 1;
}
