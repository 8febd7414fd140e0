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

#include "jetlie/poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <unordered_map>

#include "jetlie/error.hpp"

namespace jetlie {

// ---------------------------------------------------------------------------
// VarId

VarId VarId::jet(int dep, int order) {
  if (dep < 1 || dep > 0xffff || order < 0 || order > 0xffff) {
    throw Error(Errc::InvalidArgument, "jet index out of range");
  }
  VarId v;
  v.hi_ = (std::uint64_t{1} << 56) | (static_cast<std::uint64_t>(dep) << 40) |
          (static_cast<std::uint64_t>(order) << 24);
  return v;
}

VarId VarId::named(VarKind kind, std::string_view name) {
  if (name.empty() || name.size() > kMaxNameLength) {
    throw Error(Errc::InvalidArgument, "symbol name '" + std::string(name) +
                                           "' must have 1.." +
                                           std::to_string(kMaxNameLength) + " characters");
  }
  unsigned char buf[kMaxNameLength] = {};
  std::copy(name.begin(), name.end(), buf);
  VarId v;
  v.hi_ = static_cast<std::uint64_t>(kind) << 56;
  v.hi_ |= (std::uint64_t{buf[0]} << 16) | (std::uint64_t{buf[1]} << 8) | buf[2];
  for (std::size_t i = 3; i < kMaxNameLength; ++i) {
    v.lo_ = (v.lo_ << 8) | buf[i];
  }
  return v;
}

VarId VarId::atom(std::string_view name) { return named(VarKind::Atom, name); }
VarId VarId::parameter(std::string_view name) { return named(VarKind::Parameter, name); }

std::string VarId::name() const {
  std::string out;
  const unsigned char head[3] = {static_cast<unsigned char>((hi_ >> 16) & 0xff),
                                 static_cast<unsigned char>((hi_ >> 8) & 0xff),
                                 static_cast<unsigned char>(hi_ & 0xff)};
  for (unsigned char c : head) {
    if (c == 0) return out;
    out.push_back(static_cast<char>(c));
  }
  for (int shift = 56; shift >= 0; shift -= 8) {
    auto c = static_cast<unsigned char>((lo_ >> shift) & 0xff);
    if (c == 0) break;
    out.push_back(static_cast<char>(c));
  }
  return out;
}

std::string to_string(VarId v) {
  switch (v.kind()) {
    case VarKind::Independent:
      return "x";
    case VarKind::Jet:
      if (v.order() == 0) return "u" + std::to_string(v.dep());
      return "u" + std::to_string(v.dep()) + "_" + std::to_string(v.order());
    case VarKind::Atom:
    case VarKind::Parameter:
      return v.name();
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(VarId v, std::uint32_t exponent) {
  if (exponent > 0) {
    factors_.emplace_back(v, exponent);
    degree_ = exponent;
  }
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [v, e] : factors) {
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == v) {
      m.factors_.back().second += e;
    } else {
      m.factors_.emplace_back(v, e);
    }
    m.degree_ += e;
  }
  return m;
}

std::uint32_t Monomial::exponent(VarId v) const noexcept {
  for (const auto& [w, e] : factors_) {
    if (w == v) return e;
    if (v < w) break;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.is_one()) return *this;
  if (is_one()) return other;
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto i = factors_.begin();
  auto j = other.factors_.begin();
  while (i != factors_.end() && j != other.factors_.end()) {
    if (i->first == j->first) {
      out.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    } else if (i->first < j->first) {
      out.factors_.push_back(*i++);
    } else {
      out.factors_.push_back(*j++);
    }
  }
  out.factors_.insert(out.factors_.end(), i, factors_.end());
  out.factors_.insert(out.factors_.end(), j, other.factors_.end());
  out.degree_ = degree_ + other.degree_;
  return out;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  if (degree_ > other.degree_) return false;
  auto j = other.factors_.begin();
  for (const auto& [v, e] : factors_) {
    while (j != other.factors_.end() && j->first < v) ++j;
    if (j == other.factors_.end() || j->first != v || j->second < e) return false;
  }
  return true;
}

std::optional<Monomial> Monomial::divide(const Monomial& divisor) const {
  if (!divisor.divides(*this)) return std::nullopt;
  Monomial out;
  auto j = divisor.factors_.begin();
  for (const auto& [v, e] : factors_) {
    if (j != divisor.factors_.end() && j->first == v) {
      if (e > j->second) out.factors_.emplace_back(v, e - j->second);
      ++j;
    } else {
      out.factors_.emplace_back(v, e);
    }
  }
  out.degree_ = degree_ - divisor.degree_;
  return out;
}

Monomial Monomial::without(VarId v) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (f.first != v) {
      out.factors_.push_back(f);
      out.degree_ += f.second;
    }
  }
  return out;
}

Monomial Monomial::with_exponent(VarId v, std::uint32_t e) const {
  Monomial out = without(v);
  if (e == 0) return out;
  return out * Monomial(v, e);
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  auto j = b.factors_.begin();
  for (const auto& [v, e] : a.factors_) {
    while (j != b.factors_.end() && j->first < v) ++j;
    if (j != b.factors_.end() && j->first == v) {
      std::uint32_t m = std::min(e, j->second);
      out.factors_.emplace_back(v, m);
      out.degree_ += m;
    }
  }
  return out;
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = degree_;
  for (const auto& [v, e] : factors_) {
    h ^= v.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

int grlex_compare(const Monomial& a, const Monomial& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].first == fb[j].first) {
      if (fa[i].second != fb[j].second) return fa[i].second < fb[j].second ? -1 : 1;
      ++i;
      ++j;
    } else if (fa[i].first < fb[j].first) {
      return 1;
    } else {
      return -1;
    }
  }
  if (i < fa.size()) return 1;
  if (j < fb.size()) return -1;
  return 0;
}

namespace {

bool leads(const Term& a, const Term& b) { return grlex_compare(a.mono, b.mono) > 0; }

}  // namespace

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(long c) {
  if (c != 0) terms_.push_back({Monomial(), BigRational(c)});
}

Poly::Poly(const BigRational& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial(), c});
}

Poly::Poly(VarId v) { terms_.push_back({Monomial(v), BigRational(1)}); }

Poly Poly::term(Monomial mono, BigRational coef) {
  Poly p;
  if (sgn(coef) != 0) p.terms_.push_back({std::move(mono), std::move(coef)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), leads);
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().coef) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().coef) == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

BigRational Poly::constant_value() const {
  if (terms_.empty()) return 0;
  for (const auto& t : terms_) {
    if (t.mono.is_one()) return t.coef;
  }
  return 0;
}

std::uint32_t Poly::total_degree() const noexcept {
  return terms_.empty() ? 0 : terms_.front().mono.degree();
}

std::uint32_t Poly::degree_in(VarId v) const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

bool Poly::depends_on(VarId v) const noexcept {
  for (const auto& t : terms_) {
    if (t.mono.exponent(v) > 0) return true;
  }
  return false;
}

std::vector<VarId> Poly::variables() const {
  std::vector<VarId> out;
  for (const auto& t : terms_) {
    for (const auto& f : t.mono.factors()) out.push_back(f.first);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

namespace {

// Merge of two sorted term lists with sign on the second operand.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    int c = grlex_compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (negate_b) out.back().coef = -out.back().coef;
    } else {
      BigRational s = negate_b ? BigRational(a[i].coef - b[j].coef) : BigRational(a[i].coef + b[j].coef);
      if (sgn(s) != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (negate_b) out.back().coef = -out.back().coef;
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coef);
  if (b.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coef);
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& large = a.size() <= b.size() ? b : a;
  if (small.size() <= 4) {
    Poly acc;
    for (const auto& t : small.terms_) acc += large.times_monomial(t.mono, t.coef);
    return acc;
  }
  std::unordered_map<Monomial, BigRational, MonomialHash> acc;
  acc.reserve(a.size() * b.size());
  BigRational prod;
  for (const auto& s : small.terms_) {
    for (const auto& l : large.terms_) {
      prod = s.coef * l.coef;
      auto [it, inserted] = acc.try_emplace(s.mono * l.mono, prod);
      if (!inserted) it->second += prod;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (sgn(c) != 0) terms.push_back({m, std::move(c)});
  }
  std::sort(terms.begin(), terms.end(), leads);
  Poly p;
  p.terms_ = std::move(terms);
  return p;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly Poly::scaled(const BigRational& c) const {
  if (sgn(c) == 0) return Poly();
  Poly p = *this;
  for (auto& t : p.terms_) t.coef *= c;
  return p;
}

Poly Poly::times_monomial(const Monomial& m, const BigRational& c) const {
  if (sgn(c) == 0) return Poly();
  Poly p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coef * c});
  return p;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Poly Poly::partial(VarId v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    std::uint32_t e = t.mono.exponent(v);
    if (e == 0) continue;
    out.push_back({t.mono.with_exponent(v, e - 1), t.coef * e});
  }
  // Lowering one exponent can reorder terms only among themselves consistently
  // with grlex, but be safe and resort.
  return from_terms(std::move(out));
}

std::map<std::uint32_t, Poly> Poly::coefficients_in(VarId v) const {
  std::map<std::uint32_t, std::vector<Term>> buckets;
  for (const auto& t : terms_) {
    std::uint32_t e = t.mono.exponent(v);
    buckets[e].push_back({e == 0 ? t.mono : t.mono.without(v), t.coef});
  }
  std::map<std::uint32_t, Poly> out;
  for (auto& [e, ts] : buckets) out.emplace(e, from_terms(std::move(ts)));
  return out;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial m = terms_.front().mono;
  for (const auto& t : terms_) {
    if (m.is_one()) break;
    m = Monomial::gcd(m, t.mono);
  }
  return m;
}

BigRational Poly::evaluate(const std::map<VarId, BigRational>& point) const {
  BigRational sum = 0;
  for (const auto& t : terms_) {
    BigRational v = t.coef;
    for (const auto& [var, e] : t.mono.factors()) {
      auto it = point.find(var);
      if (it == point.end()) {
        throw Error(Errc::UnknownVariable, "no value for " + to_string(var));
      }
      BigRational p;
      mpz_pow_ui(p.get_num_mpz_t(), it->second.get_num_mpz_t(), e);
      mpz_pow_ui(p.get_den_mpz_t(), it->second.get_den_mpz_t(), e);
      v *= p;
    }
    sum += v;
  }
  return sum;
}

Poly Poly::substitute(VarId v, const Poly& value) const {
  if (!depends_on(v)) return *this;
  auto coeffs = coefficients_in(v);
  Poly out;
  Poly power(1);
  std::uint32_t current = 0;
  for (const auto& [e, c] : coeffs) {
    while (current < e) {
      power *= value;
      ++current;
    }
    out += c * power;
  }
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

BigRational content(const Poly& p) {
  if (p.is_zero()) return 1;
  BigInteger num = 0;
  BigInteger den = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coef.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  BigRational c(num, den);
  c.canonicalize();
  return c;
}

Poly primitive_part(const Poly& p) {
  if (p.is_zero()) return p;
  BigRational c = content(p);
  if (sgn(p.leading_coefficient()) < 0) c = -c;
  if (c == 1) return p;
  return p.scaled(1 / c);
}

int jet_order(const Poly& p) {
  int order = -1;
  for (const auto& t : p.terms()) {
    for (const auto& f : t.mono.factors()) {
      if (f.first.is_jet()) order = std::max(order, f.first.order());
    }
  }
  return order;
}

// ---------------------------------------------------------------------------
// Rendering

std::string rational_string(const BigRational& q) { return q.get_str(); }

namespace {

std::string monomial_string(const Monomial& m) {
  std::string out;
  for (const auto& [v, e] : m.factors()) {
    if (!out.empty()) out += '*';
    out += to_string(v);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string canonical_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& t = *it;
    bool negative = sgn(t.coef) < 0;
    BigRational mag = abs(t.coef);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      out += rational_string(mag);
    } else if (mag == 1) {
      out += monomial_string(t.mono);
    } else {
      out += rational_string(mag) + "*" + monomial_string(t.mono);
    }
  }
  return out;
}

std::string factored_string(const Poly& p) {
  if (p.is_zero()) return "0";
  Monomial mono = p.monomial_content();
  Poly rest = p;
  if (!mono.is_one()) rest = *try_divide(p, Poly::term(mono, 1));
  BigRational scalar = content(rest);
  if (sgn(rest.leading_coefficient()) < 0) scalar = -scalar;
  rest = rest.scaled(1 / scalar);

  std::string out;
  if (scalar == -1) {
    out += '-';
  } else if (scalar != 1) {
    out += rational_string(scalar);
  }
  auto append = [&](const std::string& piece) {
    if (!out.empty() && out != "-") out += '*';
    out += piece;
  };
  if (!mono.is_one()) append(monomial_string(mono));
  if (!(rest == Poly(1))) {
    append(rest.size() > 1 ? "(" + canonical_string(rest) + ")" : canonical_string(rest));
  }
  if (out.empty()) out = "1";
  if (out == "-") out = "-1";
  return out;
}

}  // namespace jetlie
