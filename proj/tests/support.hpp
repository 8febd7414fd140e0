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

// Independent oracles and random generators shared by the test suites.

#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "jetlie/catalog.hpp"
#include "jetlie/matrix.hpp"
#include "jetlie/parse.hpp"

namespace jetlie::testing {

inline constexpr unsigned kSeed = 20260518;

inline RatExpr parse(const std::string& text, int m = 1) {
  ParseScope sc;
  sc.m = m;
  return parse_expression(text, sc);
}

inline Poly parse_poly(const std::string& text, int m = 1) { return parse(text, m).num(); }

/// Laplace expansion along the first row.
inline RatExpr cofactor_determinant(const RatMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return RatExpr(1);
  if (n == 1) return a[0][0];
  RatExpr det;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    RatMatrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<RatExpr> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) row.push_back(a[i][k]);
      }
      minor.push_back(std::move(row));
    }
    RatExpr term = a[0][j] * cofactor_determinant(minor);
    det = j % 2 == 0 ? det + term : det - term;
  }
  return det;
}

inline BigRational random_rational(std::mt19937_64& rng, int bound = 9) {
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, 7);
  BigRational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline std::map<VarId, BigRational> random_point(const std::set<VarId>& vars, std::mt19937_64& rng) {
  std::map<VarId, BigRational> point;
  for (VarId v : vars) point[v] = random_rational(rng);
  return point;
}

inline void collect(const RatExpr& e, std::set<VarId>& vars) {
  for (VarId v : e.variables()) vars.insert(v);
}

/// Rank of a rational matrix by ordinary Gaussian elimination.
inline int numeric_rank(std::vector<std::vector<BigRational>> a) {
  int rank = 0;
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      BigRational f = a[r][c] / a[rank][c];
      for (int k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::vector<std::vector<BigRational>> evaluate(const RatMatrix& m, const std::map<VarId, BigRational>& point) {
  std::vector<std::vector<BigRational>> out;
  for (const auto& row : m) {
    std::vector<BigRational> r;
    for (const auto& e : row) r.push_back(e.evaluate(point));
    out.push_back(std::move(r));
  }
  return out;
}

/// Random sparse polynomial over the given variables.
inline Poly random_poly(std::mt19937_64& rng, const std::vector<VarId>& vars, int max_terms = 4, int max_exp = 3) {
  std::uniform_int_distribution<int> terms(1, max_terms);
  std::uniform_int_distribution<int> exp(0, max_exp);
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  Poly p;
  const int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    std::vector<Monomial::Factor> factors;
    std::map<VarId, std::uint32_t> e;
    for (int k = 0; k < 2; ++k) e[vars[pick(rng)]] += static_cast<std::uint32_t>(exp(rng));
    for (auto& [v, d] : e) {
      if (d) factors.emplace_back(v, d);
    }
    BigRational c = random_rational(rng, 6);
    if (c == 0) c = 1;
    p += Poly::term(Monomial::from_factors(std::move(factors)), c);
  }
  return p;
}

inline std::vector<VarId> jet_vars(int m, int order) {
  std::vector<VarId> out{VarId::independent()};
  for (int k = 0; k <= order; ++k) {
    for (int i = 1; i <= m; ++i) out.push_back(VarId::jet(i, k));
  }
  return out;
}

}  // namespace jetlie::testing
