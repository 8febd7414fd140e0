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

#include "jetlie/jetspace.hpp"

#include <map>

#include "jetlie/error.hpp"

namespace jetlie {

void VectorField::validate() const {
  auto check = [](const RatExpr& e) {
    for (VarId v : e.variables()) {
      if (v.is_jet() && v.order() > 0) {
        throw Error(Errc::InvalidArgument, "point vector field coefficient depends on " + to_string(v));
      }
    }
  };
  check(xi);
  for (const auto& p : phis) check(p);
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  if (a.m() != b.m()) throw Error(Errc::InvalidArgument, "vector fields on different spaces");
  VectorField out{a.xi + b.xi, a.phis};
  for (std::size_t i = 0; i < out.phis.size(); ++i) out.phis[i] += b.phis[i];
  return out;
}

VectorField operator*(const RatExpr& c, const VectorField& a) {
  VectorField out{c * a.xi, a.phis};
  for (auto& p : out.phis) p = c * p;
  return out;
}

namespace {

// Image of an atom under a derivation, given the images of its base variables.
template <typename BaseImage>
std::optional<RatExpr> atom_image(VarId atom, const AtomTable& atoms, const BaseImage& base) {
  const AtomDef* def = atoms.find(atom);
  if (!def) return std::nullopt;
  RatExpr sum;
  for (const auto& [v, rule] : def->rules) {
    auto img = base(v);
    if (img && !img->is_zero()) sum += rule * *img;
  }
  if (sum.is_zero()) return std::nullopt;
  return sum;
}

}  // namespace

RatExpr total_derivative(const RatExpr& e, const JetContext& ctx) {
  auto base = [&](VarId v) -> std::optional<RatExpr> {
    switch (v.kind()) {
      case VarKind::Independent:
        return RatExpr(1);
      case VarKind::Jet:
        if (v.order() + 1 > ctx.max_order) {
          throw Error(Errc::OrderOverflow, "D_x(" + to_string(v) + ") exceeds jet order " +
                                               std::to_string(ctx.max_order));
        }
        return RatExpr(VarId::jet(v.dep(), v.order() + 1));
      default:
        return std::nullopt;
    }
  };
  RatExpr out = apply_derivation(e, [&](VarId v) -> std::optional<RatExpr> {
    if (v.is_atom()) return atom_image(v, ctx.atoms, base);
    return base(v);
  });
  return ctx.atoms.has_relations() ? reduce(out, ctx.atoms) : out;
}

ProlongedField prolong(const VectorField& X, int r, const JetContext& ctx) {
  if (r < 0) throw Error(Errc::InvalidArgument, "negative prolongation order");
  if (r > ctx.max_order) {
    throw Error(Errc::OrderOverflow, "prolongation order " + std::to_string(r) + " exceeds context order " +
                                         std::to_string(ctx.max_order));
  }
  if (X.m() != ctx.m) throw Error(Errc::InvalidArgument, "vector field does not match the jet space");
  X.validate();
  ProlongedField out{X, r, {}};
  out.coeffs.resize(X.phis.size());
  RatExpr dxi = r > 0 ? total_derivative(X.xi, ctx) : RatExpr();
  for (std::size_t i = 0; i < X.phis.size(); ++i) {
    auto& row = out.coeffs[i];
    row.reserve(r + 1);
    row.push_back(X.phis[i]);
    for (int k = 0; k < r; ++k) {
      RatExpr next = total_derivative(row.back(), ctx);
      if (!dxi.is_zero()) next -= RatExpr(VarId::jet(static_cast<int>(i) + 1, k + 1)) * dxi;
      row.push_back(std::move(next));
    }
  }
  return out;
}

RatExpr apply_field(const ProlongedField& X, const RatExpr& e, const AtomTable& atoms) {
  auto base = [&](VarId v) -> std::optional<RatExpr> {
    switch (v.kind()) {
      case VarKind::Independent:
        return X.base.xi;
      case VarKind::Jet:
        if (v.dep() > X.base.m()) {
          throw Error(Errc::InvalidArgument, "expression involves " + to_string(v) + " outside the jet space");
        }
        if (v.order() > X.order) {
          throw Error(Errc::OrderOverflow, "expression involves " + to_string(v) + " beyond prolongation order " +
                                               std::to_string(X.order));
        }
        return X.coeff(v.dep(), v.order());
      default:
        return std::nullopt;
    }
  };
  RatExpr out = apply_derivation(e, [&](VarId v) -> std::optional<RatExpr> {
    if (v.is_atom()) return atom_image(v, atoms, base);
    return base(v);
  });
  return atoms.has_relations() ? reduce(out, atoms) : out;
}

RatExpr apply_field(const VectorField& X, const RatExpr& e, const AtomTable& atoms) {
  ProlongedField p{X, 0, {}};
  for (const auto& phi : X.phis) p.coeffs.push_back({phi});
  return apply_field(p, e, atoms);
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y, const AtomTable& atoms) {
  if (X.m() != Y.m()) throw Error(Errc::InvalidArgument, "vector fields on different spaces");
  VectorField out;
  out.xi = apply_field(X, Y.xi, atoms) - apply_field(Y, X.xi, atoms);
  for (std::size_t i = 0; i < X.phis.size(); ++i) {
    out.phis.push_back(apply_field(X, Y.phis[i], atoms) - apply_field(Y, X.phis[i], atoms));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Span computations by coefficient matching

namespace {

struct Key {
  int component;
  Monomial mono;
};

struct KeyLess {
  bool operator()(const Key& a, const Key& b) const noexcept {
    if (a.component != b.component) return a.component < b.component;
    return grlex_compare(a.mono, b.mono) > 0;
  }
};

using SparseVector = std::map<Key, RatExpr, KeyLess>;

// Coefficients over Q(parameters) of the field scaled by `common`.
SparseVector coefficient_vector(const VectorField& X, const Poly& common) {
  SparseVector out;
  auto add_component = [&](int c, const RatExpr& e) {
    if (e.is_zero()) return;
    Poly scaled = e.num() * exact_divide(common, e.den());
    std::map<Key, Poly, KeyLess> acc;
    for (const auto& t : scaled.terms()) {
      std::vector<Monomial::Factor> plain;
      std::vector<Monomial::Factor> params;
      for (const auto& f : t.mono.factors()) (f.first.is_parameter() ? params : plain).push_back(f);
      acc[Key{c, Monomial::from_factors(plain)}] += Poly::term(Monomial::from_factors(params), t.coef);
    }
    for (auto& [k, p] : acc) {
      if (!p.is_zero()) out.emplace(k, RatExpr(std::move(p)));
    }
  };
  add_component(0, X.xi);
  for (std::size_t i = 0; i < X.phis.size(); ++i) add_component(static_cast<int>(i) + 1, X.phis[i]);
  return out;
}

Poly common_denominator(std::span<const VectorField> fields) {
  Poly common(1);
  for (const auto& f : fields) {
    if (!f.xi.is_polynomial()) common = lcm(common, f.xi.den());
    for (const auto& p : f.phis) {
      if (!p.is_polynomial()) common = lcm(common, p.den());
    }
  }
  return common;
}

void axpy(SparseVector& v, const RatExpr& a, const SparseVector& row) {
  for (const auto& [k, x] : row) {
    auto [it, inserted] = v.try_emplace(k);
    it->second -= a * x;
    if (it->second.is_zero()) v.erase(it);
  }
}

class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t n) : n_(n) {}

  // Returns false if v is already in the span.
  bool insert(SparseVector v, std::size_t index) {
    std::vector<RatExpr> combo(n_);
    combo[index] = RatExpr(1);
    reduce(v, combo);
    if (v.empty()) return false;
    Key pivot = v.begin()->first;
    RatExpr inv = v.begin()->second.inverse();
    for (auto& [k, x] : v) x *= inv;
    for (auto& c : combo) {
      if (!c.is_zero()) c *= inv;
    }
    rows_.push_back(Row{pivot, std::move(v), std::move(combo)});
    return true;
  }

  // Coordinates of v in terms of the inserted vectors, or nullopt outside the span.
  std::optional<std::vector<RatExpr>> coordinates(SparseVector v) const {
    std::vector<RatExpr> combo(n_);
    reduce(v, combo);
    if (!v.empty()) return std::nullopt;
    for (auto& c : combo) c = -c;
    return combo;
  }

 private:
  struct Row {
    Key pivot;
    SparseVector vec;
    std::vector<RatExpr> combo;
  };

  void reduce(SparseVector& v, std::vector<RatExpr>& combo) const {
    for (const auto& row : rows_) {
      auto it = v.find(row.pivot);
      if (it == v.end()) continue;
      RatExpr a = it->second;
      axpy(v, a, row.vec);
      for (std::size_t j = 0; j < n_; ++j) {
        if (!row.combo[j].is_zero()) combo[j] -= a * row.combo[j];
      }
    }
  }

  std::size_t n_;
  std::vector<Row> rows_;
};

}  // namespace

StructureReport closure_check(std::span<const VectorField> gens, const AtomTable& atoms) {
  const std::size_t k = gens.size();
  std::vector<VectorField> brackets;
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      brackets.push_back(lie_bracket(gens[a], gens[b], atoms));
      pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  }
  std::vector<VectorField> all(gens.begin(), gens.end());
  all.insert(all.end(), brackets.begin(), brackets.end());
  Poly common = common_denominator(all);

  EchelonBasis basis(k);
  for (std::size_t a = 0; a < k; ++a) {
    if (!basis.insert(coefficient_vector(gens[a], common), a)) {
      throw Error(Errc::DependentGenerators, "generator " + std::to_string(a + 1) +
                                                  " is a linear combination of the previous ones");
    }
  }
  StructureReport report;
  report.closed = true;
  report.constants.assign(k, std::vector<std::vector<RatExpr>>(k, std::vector<RatExpr>(k)));
  for (std::size_t p = 0; p < brackets.size(); ++p) {
    auto coords = basis.coordinates(coefficient_vector(brackets[p], common));
    auto [a, b] = pairs[p];
    if (!coords) {
      report.closed = false;
      report.constants.clear();
      report.witness_pair = pairs[p];
      report.witness = brackets[p];
      return report;
    }
    for (std::size_t c = 0; c < k; ++c) {
      report.constants[a][b][c] = (*coords)[c];
      report.constants[b][a][c] = -(*coords)[c];
    }
  }
  return report;
}

bool jacobi_holds(const StructureReport& report) {
  if (!report.closed) return false;
  const auto& C = report.constants;
  const std::size_t k = C.size();
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      for (std::size_t c = b + 1; c < k; ++c) {
        for (std::size_t n = 0; n < k; ++n) {
          RatExpr s;
          for (std::size_t j = 0; j < k; ++j) {
            if (!C[a][b][j].is_zero() && !C[j][c][n].is_zero()) s += C[a][b][j] * C[j][c][n];
            if (!C[b][c][j].is_zero() && !C[j][a][n].is_zero()) s += C[b][c][j] * C[j][a][n];
            if (!C[c][a][j].is_zero() && !C[j][b][n].is_zero()) s += C[c][a][j] * C[j][b][n];
          }
          if (!s.is_zero()) return false;
        }
      }
    }
  }
  return true;
}

bool span_contains(std::span<const VectorField> gens, std::span<const VectorField> sub) {
  std::vector<VectorField> all(gens.begin(), gens.end());
  all.insert(all.end(), sub.begin(), sub.end());
  Poly common = common_denominator(all);
  EchelonBasis basis(gens.size());
  for (std::size_t a = 0; a < gens.size(); ++a) basis.insert(coefficient_vector(gens[a], common), a);
  for (const auto& f : sub) {
    if (!basis.coordinates(coefficient_vector(f, common))) return false;
  }
  return true;
}

}  // namespace jetlie
