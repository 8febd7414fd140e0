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

#include "jetlie/integrals.hpp"

#include <algorithm>

#include "jetlie/error.hpp"
#include "jetlie/matrix.hpp"

namespace jetlie {

void NormalFormODE::validate() const {
  if (m < 1 || order < 1) throw Error(Errc::NotNormalForm, "an ODE needs m >= 1 and order >= 1");
  if (static_cast<int>(rhs.size()) != m) {
    throw Error(Errc::NotNormalForm, "expected " + std::to_string(m) + " right-hand sides");
  }
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    for (VarId v : rhs[i].variables()) {
      if (v.is_jet() && (v.order() >= order || v.dep() > m)) {
        throw Error(Errc::NotNormalForm, "right-hand side " + std::to_string(i + 1) + " involves " + to_string(v));
      }
    }
  }
}

namespace {

JetContext context_of(const NormalFormODE& ode, int order) { return JetContext{ode.m, order, ode.atoms}; }

std::map<VarId, RatExpr> top_bindings(const NormalFormODE& ode) {
  std::map<VarId, RatExpr> out;
  for (int i = 1; i <= ode.m; ++i) out.emplace(VarId::jet(i, ode.order), ode.rhs[i - 1]);
  return out;
}

}  // namespace

std::vector<RatExpr> symmetry_residuals(const NormalFormODE& ode, const VectorField& X) {
  ode.validate();
  JetContext ctx = context_of(ode, ode.order);
  ProlongedField p = prolong(X, ode.order, ctx);
  ProlongedField lower = p;
  lower.order = ode.order - 1;
  for (auto& row : lower.coeffs) row.pop_back();
  auto bind = top_bindings(ode);
  std::vector<RatExpr> out;
  out.reserve(ode.m);
  for (int i = 1; i <= ode.m; ++i) {
    RatExpr top = substitute(p.coeff(i, ode.order), bind, ode.atoms);
    out.push_back(top - apply_field(lower, ode.rhs[i - 1], ode.atoms));
  }
  return out;
}

bool check_point_symmetry(const NormalFormODE& ode, const VectorField& X) {
  auto res = symmetry_residuals(ode, X);
  return std::all_of(res.begin(), res.end(), [](const RatExpr& r) { return r.is_zero(); });
}

ZField z_field(const NormalFormODE& ode) {
  ode.validate();
  ZField z{ode.m, ode.order, {}};
  z.components.emplace_back(1);
  for (int k = 0; k < ode.order; ++k) {
    for (int i = 1; i <= ode.m; ++i) {
      if (k + 1 < ode.order) {
        z.components.emplace_back(VarId::jet(i, k + 1));
      } else {
        z.components.push_back(ode.rhs[i - 1]);
      }
    }
  }
  return z;
}

namespace {

RatMatrix contraction_matrix(const ZField& z, const std::vector<VectorField>& rows, const NormalFormODE& ode) {
  RatMatrix mat;
  mat.push_back(z.components);
  JetContext ctx = context_of(ode, ode.order - 1);
  for (const auto& X : rows) {
    ProlongedField p = prolong(X, ode.order - 1, ctx);
    std::vector<RatExpr> row{X.xi};
    for (int k = 0; k < ode.order; ++k) row.push_back(p.coeff(1, k));
    mat.push_back(std::move(row));
  }
  return mat;
}

}  // namespace

RatExpr first_integral(const NormalFormODE& ode, const std::vector<VectorField>& num_rows,
                       const std::vector<VectorField>& den_rows, std::vector<std::string>* warnings) {
  ode.validate();
  if (ode.m != 1) throw Error(Errc::WrongArity, "first integrals are built for scalar equations only");
  const auto n = static_cast<std::size_t>(ode.order);
  if (num_rows.size() != n || den_rows.size() != n) {
    throw Error(Errc::InvalidArgument, "need exactly " + std::to_string(n) + " fields in each determinant");
  }
  std::vector<VectorField> distinct;
  for (const auto* rows : {&num_rows, &den_rows}) {
    for (const auto& X : *rows) {
      if (!check_point_symmetry(ode, X)) {
        throw Error(Errc::NotASymmetry, "field (" + canonical_string(X.xi) + ", " + canonical_string(X.phis.at(0)) +
                                            ") is not a point symmetry of the equation");
      }
      if (std::find(distinct.begin(), distinct.end(), X) == distinct.end()) distinct.push_back(X);
    }
  }
  if (warnings && distinct.size() < n + 1) {
    warnings->push_back("only " + std::to_string(distinct.size()) + " distinct symmetries given; at least " +
                        std::to_string(n + 1) + " are needed for a non-constant integral");
  }
  ZField z = z_field(ode);
  RatExpr den = determinant(contraction_matrix(z, den_rows, ode));
  if (den.is_zero()) throw Error(Errc::DegenerateDenominator, "denominator determinant vanishes identically");
  RatExpr num = determinant(contraction_matrix(z, num_rows, ode));
  RatExpr out = num / den;
  return ode.atoms.has_relations() ? reduce(out, ode.atoms) : out;
}

bool verify_first_integral(const NormalFormODE& ode, const RatExpr& I) {
  ode.validate();
  for (VarId v : I.variables()) {
    if (v.is_jet() && v.order() >= ode.order) {
      throw Error(Errc::OrderMismatch, "first integral candidate involves " + to_string(v));
    }
  }
  auto base = [&](VarId v) -> std::optional<RatExpr> {
    if (v.is_independent()) return RatExpr(1);
    if (v.is_jet()) {
      if (v.order() + 1 < ode.order) return RatExpr(VarId::jet(v.dep(), v.order() + 1));
      return ode.rhs.at(v.dep() - 1);
    }
    return std::nullopt;
  };
  RatExpr zi = apply_derivation(I, [&](VarId v) -> std::optional<RatExpr> {
    if (!v.is_atom()) return base(v);
    const AtomDef* def = ode.atoms.find(v);
    if (!def) return std::nullopt;
    RatExpr sum;
    for (const auto& [w, rule] : def->rules) {
      if (auto img = base(w)) sum += rule * *img;
    }
    return sum;
  });
  if (ode.atoms.has_relations()) zi = reduce(zi, ode.atoms);
  return zi.is_zero();
}

}  // namespace jetlie
