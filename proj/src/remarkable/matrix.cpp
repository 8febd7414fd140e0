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

#include "jetlie/matrix.hpp"

#include <algorithm>
#include <numeric>

#include "jetlie/error.hpp"

namespace jetlie {

namespace {

int permutation_sign(const std::vector<int>& order) {
  int sign = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (order[i] > order[j]) sign = -sign;
    }
  }
  return sign;
}

}  // namespace

EliminationResult bareiss(PolyMatrix m) {
  EliminationResult out;
  const int nr = static_cast<int>(m.size());
  const int nc = nr == 0 ? 0 : static_cast<int>(m[0].size());
  std::vector<int> row_of(nr);
  std::vector<int> col_of(nc);
  std::iota(row_of.begin(), row_of.end(), 0);
  std::iota(col_of.begin(), col_of.end(), 0);
  Poly prev(1);
  int k = 0;
  for (; k < std::min(nr, nc); ++k) {
    int pi = -1;
    int pj = -1;
    std::size_t best = 0;
    for (int i = k; i < nr; ++i) {
      for (int j = k; j < nc; ++j) {
        const Poly& e = m[i][j];
        if (e.is_zero()) continue;
        if (pi < 0 || e.size() < best ||
            (e.size() == best && e.total_degree() < m[pi][pj].total_degree())) {
          pi = i;
          pj = j;
          best = e.size();
        }
      }
    }
    if (pi < 0) break;
    if (pi != k) {
      std::swap(m[pi], m[k]);
      std::swap(row_of[pi], row_of[k]);
    }
    if (pj != k) {
      for (auto& row : m) std::swap(row[pj], row[k]);
      std::swap(col_of[pj], col_of[k]);
    }
    const Poly& piv = m[k][k];
    for (int i = k + 1; i < nr; ++i) {
      const Poly lead = m[i][k];
      for (int j = k + 1; j < nc; ++j) {
        Poly v = m[i][j] * piv;
        if (!lead.is_zero() && !m[k][j].is_zero()) v -= lead * m[k][j];
        m[i][j] = prev.is_constant() ? v.scaled(1 / prev.constant_value()) : exact_divide(v, prev);
      }
      m[i][k] = Poly();
    }
    prev = m[k][k];
  }
  out.rank = k;
  std::vector<int> rows(row_of.begin(), row_of.begin() + k);
  std::vector<int> cols(col_of.begin(), col_of.begin() + k);
  int sign = permutation_sign(rows) * permutation_sign(cols);
  out.minor = k == 0 ? Poly(1) : prev.scaled(sign);
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());
  out.rows = std::move(rows);
  out.cols = std::move(cols);
  return out;
}

Poly determinant(const PolyMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw Error(Errc::NotSquare, "determinant of a non-square matrix");
  }
  if (n == 0) return Poly(1);
  auto r = bareiss(m);
  return r.rank == static_cast<int>(n) ? r.minor : Poly();
}

PolyMatrix clear_row_denominators(const RatMatrix& m) {
  PolyMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) {
    Poly common(1);
    for (const auto& e : row) {
      if (!e.is_polynomial()) common = lcm(common, e.den());
    }
    std::vector<Poly> prow;
    prow.reserve(row.size());
    for (const auto& e : row) {
      if (e.is_polynomial()) {
        prow.push_back((e.num() * common).scaled(1 / e.den().constant_value()));
      } else {
        prow.push_back(e.num() * exact_divide(common, e.den()));
      }
    }
    out.push_back(std::move(prow));
  }
  return out;
}

PolyMatrix to_poly_matrix(const RatMatrix& m) {
  PolyMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) {
    std::vector<Poly> prow;
    prow.reserve(row.size());
    for (const auto& e : row) {
      if (!e.is_polynomial()) {
        throw Error(Errc::NotPolynomial, "matrix entry " + canonical_string(e) + " is not a polynomial");
      }
      prow.push_back(e.num().scaled(1 / e.den().constant_value()));
    }
    out.push_back(std::move(prow));
  }
  return out;
}

RatExpr determinant(const RatMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw Error(Errc::NotSquare, "determinant of a non-square matrix");
  }
  std::vector<Poly> scales;
  for (const auto& row : m) {
    Poly common(1);
    for (const auto& e : row) {
      if (!e.is_polynomial()) common = lcm(common, e.den());
    }
    scales.push_back(common);
  }
  Poly d = determinant(clear_row_denominators(m));
  return RatExpr::fraction(std::move(d), scales);
}

}  // namespace jetlie
