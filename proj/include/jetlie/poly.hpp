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

// Exact multivariate polynomials over the rationals.
//
// Variables are VarIds with a fixed total order: the independent variable,
// then jet coordinates u^i_k ordered by (i, k), then atoms, then parameters.
// Terms are kept sorted by graded lexicographic order, leading term first.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jetlie {

using BigRational = mpq_class;
using BigInteger = mpz_class;

enum class VarKind : std::uint8_t { Independent = 0, Jet = 1, Atom = 2, Parameter = 3 };

/// A variable. Atom and parameter names are stored inline (at most
/// kMaxNameLength bytes) so that ordering and hashing need no symbol table.
class VarId {
 public:
  static constexpr std::size_t kMaxNameLength = 11;

  constexpr VarId() = default;

  static constexpr VarId independent() noexcept { return VarId(); }
  static VarId jet(int dep, int order);
  static VarId atom(std::string_view name);
  static VarId parameter(std::string_view name);

  VarKind kind() const noexcept { return static_cast<VarKind>(hi_ >> 56); }
  bool is_independent() const noexcept { return kind() == VarKind::Independent; }
  bool is_jet() const noexcept { return kind() == VarKind::Jet; }
  bool is_atom() const noexcept { return kind() == VarKind::Atom; }
  bool is_parameter() const noexcept { return kind() == VarKind::Parameter; }

  /// Dependent-variable index i >= 1 (jets only).
  int dep() const noexcept { return static_cast<int>((hi_ >> 40) & 0xffff); }
  /// Derivative order k >= 0 (jets only).
  int order() const noexcept { return static_cast<int>((hi_ >> 24) & 0xffff); }
  std::string name() const;

  std::size_t hash() const noexcept { return static_cast<std::size_t>(hi_ * 0x9e3779b97f4a7c15ULL ^ lo_); }

  friend constexpr auto operator<=>(const VarId&, const VarId&) = default;

 private:
  static VarId named(VarKind kind, std::string_view name);

  std::uint64_t hi_ = 0;
  std::uint64_t lo_ = 0;
};

/// Surface name: "x", "u1" (= u^1_0), "u1_3", or the atom/parameter name.
std::string to_string(VarId v);

class Monomial {
 public:
  using Factor = std::pair<VarId, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(VarId v, std::uint32_t exponent = 1);
  static Monomial from_factors(std::vector<Factor> factors);

  std::span<const Factor> factors() const noexcept { return factors_; }
  std::uint32_t degree() const noexcept { return degree_; }
  std::uint32_t exponent(VarId v) const noexcept;
  bool is_one() const noexcept { return factors_.empty(); }

  Monomial operator*(const Monomial& other) const;
  std::optional<Monomial> divide(const Monomial& divisor) const;
  bool divides(const Monomial& other) const noexcept;
  /// Same monomial with variable v removed entirely.
  Monomial without(VarId v) const;
  Monomial with_exponent(VarId v, std::uint32_t e) const;

  static Monomial gcd(const Monomial& a, const Monomial& b);

  std::size_t hash() const noexcept;

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.degree_ == b.degree_ && a.factors_ == b.factors_;
  }

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic comparison: -1, 0 or 1.
int grlex_compare(const Monomial& a, const Monomial& b) noexcept;

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

struct Term {
  Monomial mono;
  BigRational coef;
};

class Poly {
 public:
  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  Poly(const BigRational& c);  // NOLINT(google-explicit-constructor)
  explicit Poly(VarId v);
  static Poly term(Monomial mono, BigRational coef);
  /// Sorts, merges equal monomials and drops zero coefficients.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Value of a constant polynomial (0 for the zero polynomial).
  BigRational constant_value() const;
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  const Term& leading() const { return terms_.front(); }
  const BigRational& leading_coefficient() const { return terms_.front().coef; }
  std::uint32_t total_degree() const noexcept;
  std::uint32_t degree_in(VarId v) const noexcept;
  bool depends_on(VarId v) const noexcept;
  /// Sorted, without duplicates.
  std::vector<VarId> variables() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const BigRational& c) const;
  Poly times_monomial(const Monomial& m, const BigRational& c) const;
  Poly pow(unsigned e) const;

  /// Explicit partial derivative; atoms are treated as independent symbols here.
  Poly partial(VarId v) const;
  /// Coefficients of powers of v: exponent -> coefficient (free of v).
  std::map<std::uint32_t, Poly> coefficients_in(VarId v) const;
  /// Monomial dividing every term (1 for zero).
  Monomial monomial_content() const;

  BigRational evaluate(const std::map<VarId, BigRational>& point) const;
  Poly substitute(VarId v, const Poly& value) const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  std::vector<Term> terms_;
};

/// Positive rational c such that p / c has coprime integer coefficients.
BigRational content(const Poly& p);
/// p divided by its content and sign-adjusted so the leading coefficient is positive.
Poly primitive_part(const Poly& p);

/// Quotient q with a = q*b; throws Error(NotDivisible) or Error(DivisionByZero).
Poly exact_divide(const Poly& a, const Poly& b);
std::optional<Poly> try_divide(const Poly& a, const Poly& b);

/// Greatest common divisor, primitive with positive leading coefficient; gcd(0,0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
/// Subresultant remainder-sequence gcd, without the heuristic fast path.
Poly gcd_subresultant(const Poly& a, const Poly& b);

/// Highest jet order k of any u^i_k occurring, or -1.
int jet_order(const Poly& p);

/// Terms in ascending graded-lex order, explicit "^" powers, e.g. "1 - u1_1^2".
std::string canonical_string(const Poly& p);
/// Sign, scalar and monomial content pulled out: "-u1_2*(1 + u1_1^2)".
std::string factored_string(const Poly& p);
std::string rational_string(const BigRational& q);

}  // namespace jetlie
