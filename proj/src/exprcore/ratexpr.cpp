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

#include "jetlie/ratexpr.hpp"

#include <algorithm>

#include "jetlie/error.hpp"

namespace jetlie {

void RatExpr::fix_content() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  BigRational c = content(den_);
  if (sgn(den_.leading_coefficient()) < 0) c = -c;
  if (c != 1) {
    den_ = den_.scaled(1 / c);
    num_ = num_.scaled(1 / c);
  }
}

RatExpr RatExpr::fraction(Poly num, Poly den) {
  if (den.is_zero()) throw Error(Errc::DivisionByZero, "rational function with zero denominator");
  if (num.is_zero()) return RatExpr();
  if (!den.is_constant()) {
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
      num = exact_divide(num, g);
      den = exact_divide(den, g);
    }
  }
  RatExpr out(Trusted{}, std::move(num), std::move(den));
  out.fix_content();
  return out;
}

RatExpr RatExpr::fraction(Poly num, const std::vector<Poly>& den_factors) {
  Poly den(1);
  for (const Poly& f0 : den_factors) {
    if (f0.is_zero()) {
      throw Error(Errc::DivisionByZero, "rational function with zero denominator");
    }
    if (num.is_zero()) continue;
    Poly f = f0;
    if (!f.is_constant()) {
      Poly g = gcd(num, f);
      if (!g.is_constant()) {
        num = exact_divide(num, g);
        f = exact_divide(f, g);
      }
    }
    den *= f;
  }
  if (num.is_zero()) return RatExpr();
  RatExpr out(Trusted{}, std::move(num), std::move(den));
  out.fix_content();
  return out;
}

std::vector<VarId> RatExpr::variables() const {
  auto a = num_.variables();
  auto b = den_.variables();
  std::vector<VarId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

RatExpr RatExpr::operator-() const { return RatExpr(Trusted{}, -num_, den_); }

RatExpr& RatExpr::operator+=(const RatExpr& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (is_polynomial() && o.is_polynomial()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    return *this = fraction(num_ + o.num_, den_);
  }
  if (o.is_polynomial()) {
    num_ += o.num_ * den_;
    return *this;
  }
  if (is_polynomial()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    return *this;
  }
  Poly g = gcd(den_, o.den_);
  if (g.is_constant()) {
    Poly n = num_ * o.den_ + o.num_ * den_;
    Poly d = den_ * o.den_;
    *this = RatExpr(Trusted{}, std::move(n), std::move(d));
    fix_content();
    return *this;
  }
  Poly b1 = exact_divide(den_, g);
  Poly d1 = exact_divide(o.den_, g);
  Poly n = num_ * d1 + o.num_ * b1;
  if (n.is_zero()) return *this = RatExpr();
  Poly h = gcd(n, g);
  if (!h.is_constant()) {
    n = exact_divide(n, h);
    g = exact_divide(g, h);
  }
  *this = RatExpr(Trusted{}, std::move(n), g * b1 * d1);
  fix_content();
  return *this;
}

RatExpr& RatExpr::operator-=(const RatExpr& o) { return *this += -o; }

RatExpr& RatExpr::operator*=(const RatExpr& o) {
  if (is_zero() || o.is_zero()) return *this = RatExpr();
  if (is_polynomial() && o.is_polynomial()) {
    num_ *= o.num_;
    return *this;
  }
  Poly a = num_;
  Poly b = den_;
  Poly c = o.num_;
  Poly d = o.den_;
  if (!d.is_constant()) {
    Poly g = gcd(a, d);
    if (!g.is_constant()) {
      a = exact_divide(a, g);
      d = exact_divide(d, g);
    }
  }
  if (!b.is_constant()) {
    Poly g = gcd(c, b);
    if (!g.is_constant()) {
      c = exact_divide(c, g);
      b = exact_divide(b, g);
    }
  }
  *this = RatExpr(Trusted{}, a * c, b * d);
  fix_content();
  return *this;
}

RatExpr RatExpr::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  RatExpr out(Trusted{}, den_, num_);
  out.fix_content();
  return out;
}

RatExpr& RatExpr::operator/=(const RatExpr& o) {
  if (o.is_zero()) throw Error(Errc::DivisionByZero, "division by zero");
  return *this *= o.inverse();
}

RatExpr RatExpr::pow(unsigned e) const {
  // Powers of coprime polynomials stay coprime.
  RatExpr out(Trusted{}, num_.pow(e), den_.pow(e));
  out.fix_content();
  return out;
}

BigRational RatExpr::evaluate(const std::map<VarId, BigRational>& point) const {
  BigRational d = den_.evaluate(point);
  if (sgn(d) == 0) throw Error(Errc::DenominatorVanishes, "denominator vanishes at the point");
  return num_.evaluate(point) / d;
}

int jet_order(const RatExpr& e) { return std::max(jet_order(e.num()), jet_order(e.den())); }

std::string canonical_string(const RatExpr& e) {
  if (e.is_polynomial()) return canonical_string(e.num());
  return "(" + canonical_string(e.num()) + ")/(" + canonical_string(e.den()) + ")";
}

// ---------------------------------------------------------------------------
// Atoms

AtomTable::AtomTable(std::vector<AtomDef> defs) {
  for (auto& d : defs) define(std::move(d));
}

void AtomTable::define(AtomDef def) {
  if (!def.id.is_atom()) throw Error(Errc::InvalidArgument, "atom definition for a non-atom symbol");
  if (def.relation) {
    Poly& rel = *def.relation;
    std::uint32_t d = rel.degree_in(def.id);
    if (d == 0) throw Error(Errc::InvalidArgument, "relation does not involve its atom");
    auto coeffs = rel.coefficients_in(def.id);
    const Poly& lead = coeffs.rbegin()->second;
    if (!lead.is_constant()) {
      throw Error(Errc::InvalidArgument, "relation must be monic in its atom");
    }
    rel = rel.scaled(1 / lead.constant_value());
  }
  for (auto& existing : defs_) {
    if (existing.id == def.id) {
      existing = std::move(def);
      return;
    }
  }
  defs_.push_back(std::move(def));
}

const AtomDef* AtomTable::find(VarId atom) const noexcept {
  for (const auto& d : defs_) {
    if (d.id == atom) return &d;
  }
  return nullptr;
}

bool AtomTable::has_relations() const noexcept {
  return std::any_of(defs_.begin(), defs_.end(), [](const AtomDef& d) { return d.relation.has_value(); });
}

// ---------------------------------------------------------------------------
// Derivations

namespace {

Poly derive_poly(const Poly& p, const std::vector<std::pair<VarId, Poly>>& images) {
  Poly out;
  for (const auto& [v, a] : images) {
    if (!p.depends_on(v)) continue;
    out += p.partial(v) * a;
  }
  return out;
}

}  // namespace

RatExpr apply_derivation(const RatExpr& e, const DerivationImage& image) {
  std::vector<std::pair<VarId, RatExpr>> raw;
  for (VarId v : e.variables()) {
    auto img = image(v);
    if (img && !img->is_zero()) raw.emplace_back(v, std::move(*img));
  }
  if (raw.empty()) return RatExpr();
  // Common denominator of the images.
  Poly common(1);
  for (const auto& [v, img] : raw) {
    if (!img.is_polynomial()) common = lcm(common, img.den());
  }
  std::vector<std::pair<VarId, Poly>> images;
  images.reserve(raw.size());
  for (auto& [v, img] : raw) {
    if (common.is_constant()) {
      images.emplace_back(v, img.num().scaled(1 / img.den().constant_value()));
    } else {
      images.emplace_back(v, img.num() * exact_divide(common, img.den()));
    }
  }
  const Poly& n = e.num();
  const Poly& d = e.den();
  if (e.is_polynomial()) {
    Poly top = derive_poly(n, images).scaled(1 / d.constant_value());
    return RatExpr::fraction(std::move(top), std::vector<Poly>{common});
  }
  Poly top = derive_poly(n, images) * d - n * derive_poly(d, images);
  return RatExpr::fraction(std::move(top), std::vector<Poly>{common, d, d});
}

RatExpr differentiate(const RatExpr& e, VarId v, const AtomTable& atoms) {
  RatExpr out = apply_derivation(e, [&](VarId w) -> std::optional<RatExpr> {
    if (w == v) return RatExpr(1);
    if (w.is_atom()) {
      if (const AtomDef* def = atoms.find(w)) {
        auto it = def->rules.find(v);
        if (it != def->rules.end()) return it->second;
      }
    }
    return std::nullopt;
  });
  return atoms.has_relations() ? reduce(out, atoms) : out;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

struct Binding {
  Poly num;
  Poly den;
  std::vector<Poly> num_powers;
  std::vector<Poly> den_powers;

  const Poly& num_pow(std::uint32_t e) {
    if (num_powers.empty()) num_powers.emplace_back(1);
    while (num_powers.size() <= e) num_powers.push_back(num_powers.back() * num);
    return num_powers[e];
  }
  const Poly& den_pow(std::uint32_t e) {
    if (den_powers.empty()) den_powers.emplace_back(1);
    while (den_powers.size() <= e) den_powers.push_back(den_powers.back() * den);
    return den_powers[e];
  }
};

// Substitutes into p and returns the numerator over prod den_v^{deg_v(p)}.
Poly homogenized_substitute(const Poly& p, std::map<VarId, Binding>& bind,
                            std::map<VarId, std::uint32_t>& degrees) {
  degrees.clear();
  for (auto& [v, b] : bind) {
    std::uint32_t d = p.degree_in(v);
    if (d > 0) degrees[v] = d;
  }
  if (degrees.empty()) return p;
  Poly out;
  for (const auto& t : p.terms()) {
    std::vector<Monomial::Factor> rest;
    Poly factor(1);
    for (const auto& [v, e] : t.mono.factors()) {
      auto it = bind.find(v);
      if (it == bind.end()) {
        rest.emplace_back(v, e);
      } else {
        factor *= it->second.num_pow(e);
      }
    }
    for (const auto& [v, d] : degrees) {
      std::uint32_t e = t.mono.exponent(v);
      if (d > e) {
        Binding& b = bind[v];
        if (!b.den.is_constant()) factor *= b.den_pow(d - e);
      }
    }
    out += factor.times_monomial(Monomial::from_factors(std::move(rest)), t.coef);
  }
  return out;
}

}  // namespace

RatExpr substitute(const RatExpr& e, const std::map<VarId, RatExpr>& bindings, const AtomTable& atoms) {
  std::map<VarId, Binding> bind;
  for (const auto& [v, r] : bindings) {
    if (!e.depends_on(v)) continue;
    // Scalar denominators are folded into the numerator.
    if (r.is_polynomial()) {
      bind[v] = Binding{r.num(), Poly(1), {}, {}};
    } else {
      bind[v] = Binding{r.num(), r.den(), {}, {}};
    }
  }
  if (bind.empty()) return e;
  std::map<VarId, std::uint32_t> deg_num;
  std::map<VarId, std::uint32_t> deg_den;
  Poly n = homogenized_substitute(e.num(), bind, deg_num);
  Poly d = homogenized_substitute(e.den(), bind, deg_den);
  if (d.is_zero()) throw Error(Errc::DenominatorVanishes, "substitution makes the denominator vanish");
  if (n.is_zero()) return RatExpr();
  // n / prod den^{deg_num}  divided by  d / prod den^{deg_den}
  std::vector<Poly> den_factors{d};
  for (auto& [v, b] : bind) {
    if (b.den.is_constant()) continue;
    long dn = deg_num.count(v) ? deg_num[v] : 0;
    long dd = deg_den.count(v) ? deg_den[v] : 0;
    if (dd > dn) {
      n *= b.den_pow(static_cast<std::uint32_t>(dd - dn));
    } else if (dn > dd) {
      den_factors.push_back(b.den_pow(static_cast<std::uint32_t>(dn - dd)));
    }
  }
  RatExpr out = RatExpr::fraction(std::move(n), den_factors);
  return atoms.has_relations() ? reduce(out, atoms) : out;
}

// ---------------------------------------------------------------------------
// Relations

Poly reduce(const Poly& p, const AtomTable& atoms) {
  Poly cur = p;
  for (const auto& def : atoms.defs()) {
    if (!def.relation) continue;
    std::uint32_t d = def.relation->degree_in(def.id);
    if (cur.degree_in(def.id) < d) continue;
    // atom^d = rest
    Poly rest = Poly::term(Monomial(def.id, d), 1) - *def.relation;
    auto coeffs = cur.coefficients_in(def.id);
    while (!coeffs.empty() && coeffs.rbegin()->first >= d) {
      auto top = std::prev(coeffs.end());
      std::uint32_t e = top->first;
      Poly c = std::move(top->second);
      coeffs.erase(top);
      Poly moved = c * rest;
      for (auto& [k, ck] : moved.coefficients_in(def.id)) {
        auto& slot = coeffs[k + e - d];
        slot += ck;
      }
      for (auto it = coeffs.begin(); it != coeffs.end();) {
        it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
      }
    }
    Poly next;
    for (const auto& [k, ck] : coeffs) next += ck.times_monomial(Monomial(def.id, k), 1);
    cur = std::move(next);
  }
  return cur;
}

RatExpr reduce(const RatExpr& e, const AtomTable& atoms) {
  if (!atoms.has_relations()) return e;
  Poly n = reduce(e.num(), atoms);
  Poly d = reduce(e.den(), atoms);
  for (const auto& def : atoms.defs()) {
    if (!def.relation || def.relation->degree_in(def.id) != 2 || !d.depends_on(def.id)) continue;
    // d = A + B*s with s^2 = R: multiply through by the conjugate A - B*s.
    auto coeffs = d.coefficients_in(def.id);
    Poly a = coeffs.count(0) ? coeffs[0] : Poly();
    Poly b = coeffs.count(1) ? coeffs[1] : Poly();
    Poly conj = a - b * Poly(def.id);
    n = reduce(n * conj, atoms);
    d = reduce(d * conj, atoms);
  }
  return RatExpr::fraction(std::move(n), std::move(d));
}

}  // namespace jetlie
