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

// Normalized rational functions and differential atoms.
//
// A RatExpr is num/den with gcd(num, den) = 1 and den a primitive integer
// polynomial with positive leading coefficient, so equal values have equal
// representations. Atom relations are not applied by arithmetic itself; the
// atom-aware operations (differentiate, substitute, reduce) apply them.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetlie/poly.hpp"

namespace jetlie {

class RatExpr {
 public:
  RatExpr() : den_(1) {}
  RatExpr(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatExpr(const BigRational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatExpr(Poly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit RatExpr(VarId v) : num_(v), den_(1) {}

  /// num/den reduced to lowest terms; throws Error(DivisionByZero) if den = 0.
  static RatExpr fraction(Poly num, Poly den);
  /// num / (f_1 * f_2 * ...), cancelling against each factor separately.
  static RatExpr fraction(Poly num, const std::vector<Poly>& den_factors);

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  BigRational constant_value() const { return num_.constant_value(); }

  bool depends_on(VarId v) const noexcept { return num_.depends_on(v) || den_.depends_on(v); }
  std::vector<VarId> variables() const;

  RatExpr operator-() const;
  RatExpr& operator+=(const RatExpr& o);
  RatExpr& operator-=(const RatExpr& o);
  RatExpr& operator*=(const RatExpr& o);
  RatExpr& operator/=(const RatExpr& o);
  friend RatExpr operator+(RatExpr a, const RatExpr& b) { return a += b; }
  friend RatExpr operator-(RatExpr a, const RatExpr& b) { return a -= b; }
  friend RatExpr operator*(RatExpr a, const RatExpr& b) { return a *= b; }
  friend RatExpr operator/(RatExpr a, const RatExpr& b) { return a /= b; }
  RatExpr pow(unsigned e) const;
  RatExpr inverse() const;

  /// Throws Error(DenominatorVanishes) when den evaluates to zero.
  BigRational evaluate(const std::map<VarId, BigRational>& point) const;

  friend bool operator==(const RatExpr& a, const RatExpr& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  struct Trusted {};
  RatExpr(Trusted, Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
  /// Moves the denominator's content and sign into the numerator.
  void fix_content();

  Poly num_;
  Poly den_;
};

int jet_order(const RatExpr& e);

/// "(num)/(den)" when den != 1, otherwise canonical_string(num).
std::string canonical_string(const RatExpr& e);

/// A formal transcendental symbol with prescribed first derivatives.
struct AtomDef {
  VarId id;
  /// d(atom)/dv for each base variable v it depends on.
  std::map<VarId, RatExpr> rules;
  /// Optional algebraic relation p(atom, ...) = 0, monic in the atom.
  std::optional<Poly> relation;
};

class AtomTable {
 public:
  AtomTable() = default;
  explicit AtomTable(std::vector<AtomDef> defs);

  /// Adds or replaces the definition; the relation is made monic in the atom.
  void define(AtomDef def);
  const AtomDef* find(VarId atom) const noexcept;
  const std::vector<AtomDef>& defs() const noexcept { return defs_; }
  bool empty() const noexcept { return defs_.empty(); }
  bool has_relations() const noexcept;

 private:
  std::vector<AtomDef> defs_;
};

/// Image of each variable under a derivation; std::nullopt stands for 0.
using DerivationImage = std::function<std::optional<RatExpr>(VarId)>;

/// Applies the derivation determined by `image` to e (Leibniz rule).
RatExpr apply_derivation(const RatExpr& e, const DerivationImage& image);

/// Partial derivative; atoms follow their rules by the chain rule.
RatExpr differentiate(const RatExpr& e, VarId v, const AtomTable& atoms = {});

/// Simultaneous substitution, normalized once at the end.
/// Throws Error(DenominatorVanishes) if the denominator becomes zero.
RatExpr substitute(const RatExpr& e, const std::map<VarId, RatExpr>& bindings,
                   const AtomTable& atoms = {});

/// Rewrites powers of related atoms below the relation degree. For quadratic
/// relations the denominator is also rationalized.
RatExpr reduce(const RatExpr& e, const AtomTable& atoms);
Poly reduce(const Poly& p, const AtomTable& atoms);

}  // namespace jetlie
