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

// Exact division and greatest common divisors of multivariate polynomials.
//
// gcd() first strips integer and monomial content, then removes variables that
// occur in only one argument (the gcd is then a gcd of coefficients), tries
// trial division, and finally runs the heuristic evaluation/interpolation gcd.
// Any heuristic result is verified by exact division; on failure the
// subresultant remainder sequence is used.

#include <algorithm>
#include <map>

#include "jetlie/error.hpp"
#include "jetlie/poly.hpp"

namespace jetlie {

namespace {

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    return grlex_compare(a, b) > 0;
  }
};

bool degree_bounds_allow(const Poly& a, const Poly& b) {
  // Every variable of b must occur in a to at least the same degree.
  std::map<VarId, std::uint32_t> need;
  for (const auto& t : b.terms()) {
    for (const auto& [v, e] : t.mono.factors()) {
      auto& slot = need[v];
      slot = std::max(slot, e);
    }
  }
  std::map<VarId, std::uint32_t> have;
  for (const auto& t : a.terms()) {
    for (const auto& [v, e] : t.mono.factors()) {
      if (!need.count(v)) continue;
      auto& slot = have[v];
      slot = std::max(slot, e);
    }
  }
  for (const auto& [v, e] : need) {
    auto it = have.find(v);
    if (it == have.end() || it->second < e) return false;
  }
  return true;
}

}  // namespace

std::optional<Poly> try_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  if (a.is_zero()) return Poly();
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  if (b.is_monomial()) {
    const Term& lb = b.leading();
    std::vector<Term> out;
    out.reserve(a.size());
    for (const auto& t : a.terms()) {
      auto q = t.mono.divide(lb.mono);
      if (!q) return std::nullopt;
      out.push_back({std::move(*q), t.coef / lb.coef});
    }
    return Poly::from_terms(std::move(out));
  }
  if (a.size() < b.size() && a.size() == 1) return std::nullopt;
  if (!b.leading().mono.divides(a.leading().mono)) return std::nullopt;
  if (!b.terms().back().mono.divides(a.terms().back().mono)) return std::nullopt;
  if (a.total_degree() < b.total_degree()) return std::nullopt;
  if (!degree_bounds_allow(a, b)) return std::nullopt;

  std::map<Monomial, BigRational, GrlexGreater> rem;
  for (const auto& t : a.terms()) rem.emplace_hint(rem.end(), t.mono, t.coef);
  const Term& lb = b.leading();
  const Monomial& tail = b.terms().back().mono;
  std::vector<Term> quotient;
  BigRational c;
  while (!rem.empty()) {
    auto it = rem.begin();
    auto qm = it->first.divide(lb.mono);
    if (!qm) return std::nullopt;
    BigRational qc = it->second / lb.coef;
    rem.erase(it);
    for (std::size_t k = 1; k < b.size(); ++k) {
      const Term& bt = b.terms()[k];
      c = qc * bt.coef;
      auto [jt, inserted] = rem.try_emplace(*qm * bt.mono);
      if (inserted) {
        jt->second = -c;
      } else {
        jt->second -= c;
        if (sgn(jt->second) == 0) rem.erase(jt);
      }
    }
    quotient.push_back({std::move(*qm), std::move(qc)});
    // The smallest remaining monomial must stay a multiple of b's smallest one.
    if (!rem.empty() && !tail.divides(std::prev(rem.end())->first)) return std::nullopt;
  }
  return Poly::from_terms(std::move(quotient));
}

Poly exact_divide(const Poly& a, const Poly& b) {
  auto q = try_divide(a, b);
  if (!q) throw Error(Errc::NotDivisible, "polynomial is not an exact multiple of the divisor");
  return std::move(*q);
}

namespace {

// --- integer polynomial helpers -------------------------------------------

BigInteger integer_content(const Poly& p) {
  BigInteger g = 0;
  for (const auto& t : p.terms()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.get_num_mpz_t());
    if (g == 1) break;
  }
  return g;
}

BigInteger max_norm(const Poly& p) {
  BigInteger m = 0;
  for (const auto& t : p.terms()) {
    if (mpz_cmpabs(t.coef.get_num_mpz_t(), m.get_mpz_t()) > 0) m = abs(t.coef.get_num());
  }
  return m;
}

Poly evaluate_at(const Poly& p, VarId v, const BigInteger& x) {
  std::vector<Term> out;
  out.reserve(p.size());
  BigInteger pw;
  for (const auto& t : p.terms()) {
    std::uint32_t e = t.mono.exponent(v);
    if (e == 0) {
      out.push_back(t);
      continue;
    }
    mpz_pow_ui(pw.get_mpz_t(), x.get_mpz_t(), e);
    out.push_back({t.mono.without(v), t.coef * BigRational(pw)});
  }
  return Poly::from_terms(std::move(out));
}

// Symmetric x-adic expansion: inverse of evaluate_at for small coefficients.
Poly interpolate(Poly h, VarId v, const BigInteger& x) {
  std::vector<Term> out;
  std::uint32_t power = 0;
  BigInteger half = x / 2;
  while (!h.is_zero()) {
    std::vector<Term> digit;
    std::vector<Term> next;
    for (const auto& t : h.terms()) {
      BigInteger c = t.coef.get_num();
      BigInteger r;
      mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
      if (r > half) r -= x;
      if (r != 0) digit.push_back({t.mono * Monomial(v, power), BigRational(r)});
      BigInteger rest = (c - r) / x;
      if (rest != 0) next.push_back({t.mono, BigRational(rest)});
    }
    for (auto& d : digit) out.push_back(std::move(d));
    h = Poly::from_terms(std::move(next));
    ++power;
  }
  return Poly::from_terms(std::move(out));
}

struct HeuGcd {
  Poly h;
  Poly cff;
  Poly cfg;
};

constexpr int kHeuAttempts = 6;
constexpr std::size_t kHeuMaxBits = 1 << 16;

std::optional<HeuGcd> heu_gcd(const Poly& f, const Poly& g, std::span<const VarId> vars) {
  if (vars.empty()) {
    BigInteger a = f.constant_value().get_num();
    BigInteger b = g.constant_value().get_num();
    BigInteger h;
    mpz_gcd(h.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (h == 0) return std::nullopt;
    return HeuGcd{Poly(BigRational(h)), Poly(BigRational(a / h)), Poly(BigRational(b / h))};
  }
  VarId v = vars.back();
  auto rest = vars.first(vars.size() - 1);

  BigInteger gc;
  {
    BigInteger cf = integer_content(f);
    BigInteger cg = integer_content(g);
    mpz_gcd(gc.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  }
  Poly fp = f.scaled(BigRational(1, 1) / BigRational(gc));
  Poly gp = g.scaled(BigRational(1, 1) / BigRational(gc));

  BigInteger fn = max_norm(fp);
  BigInteger gn = max_norm(gp);
  BigInteger bound = 2 * std::min(fn, gn) + 29;
  BigInteger sq = sqrt(bound);
  BigInteger x = std::min(bound, BigInteger(99 * sq));
  {
    BigInteger lf = abs(fp.leading_coefficient().get_num());
    BigInteger lg = abs(gp.leading_coefficient().get_num());
    BigInteger alt = 2 * std::min(BigInteger(fn / lf), BigInteger(gn / lg)) + 2;
    x = std::max(x, alt);
  }

  for (int attempt = 0; attempt < kHeuAttempts; ++attempt) {
    if (mpz_sizeinbase(x.get_mpz_t(), 2) > kHeuMaxBits) return std::nullopt;
    Poly ff = evaluate_at(fp, v, x);
    Poly gg = evaluate_at(gp, v, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      auto image = heu_gcd(ff, gg, rest);
      if (image) {
        Poly h = primitive_part(interpolate(image->h, v, x));
        if (auto cff = try_divide(fp, h)) {
          if (auto cfg = try_divide(gp, h)) {
            return HeuGcd{h.scaled(BigRational(gc)), std::move(*cff), std::move(*cfg)};
          }
        }
        Poly cff = interpolate(image->cff, v, x);
        if (!cff.is_zero()) {
          if (auto hh = try_divide(fp, cff)) {
            if (auto cfg = try_divide(gp, *hh)) {
              return HeuGcd{hh->scaled(BigRational(gc)), std::move(cff), std::move(*cfg)};
            }
          }
        }
        Poly cfg = interpolate(image->cfg, v, x);
        if (!cfg.is_zero()) {
          if (auto hh = try_divide(gp, cfg)) {
            if (auto cff2 = try_divide(fp, *hh)) {
              return HeuGcd{hh->scaled(BigRational(gc)), std::move(*cff2), std::move(cfg)};
            }
          }
        }
      }
    }
    BigInteger s = sqrt(sqrt(x));
    x = 73794 * x * s / 27011;
  }
  return std::nullopt;
}

// --- subresultant remainder sequence ----------------------------------------

using UPoly = std::vector<Poly>;  // coefficient of v^i at index i, trimmed

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly to_upoly(const Poly& p, VarId v) {
  auto coeffs = p.coefficients_in(v);
  UPoly out;
  if (coeffs.empty()) return out;
  out.resize(coeffs.rbegin()->first + 1);
  for (auto& [e, c] : coeffs) out[e] = std::move(c);
  return out;
}

Poly from_upoly(const UPoly& p, VarId v) {
  Poly out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i].is_zero()) out += p[i] * Poly::term(Monomial(v, static_cast<std::uint32_t>(i)), 1);
  }
  return out;
}

UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  const Poly& lb = b.back();
  int delta = static_cast<int>(a.size()) - static_cast<int>(b.size()) + 1;
  while (!a.empty() && a.size() >= b.size()) {
    Poly la = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
    a.pop_back();
    trim(a);
    --delta;
  }
  if (delta > 0) {
    Poly f = lb.pow(static_cast<unsigned>(delta));
    for (auto& c : a) c *= f;
  }
  return a;
}

Poly poly_gcd_impl(const Poly& a, const Poly& b);

Poly content_in(const UPoly& p) {
  Poly g;
  for (const auto& c : p) {
    if (c.is_zero()) continue;
    g = poly_gcd_impl(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

Poly subresultant_gcd(const Poly& a, const Poly& b) {
  // Most frequent variable common to both.
  std::map<VarId, std::size_t> freq;
  for (const Poly* p : {&a, &b}) {
    for (const auto& t : p->terms()) {
      for (const auto& f : t.mono.factors()) ++freq[f.first];
    }
  }
  VarId main{};
  std::size_t best = 0;
  for (const auto& [v, n] : freq) {
    if (a.depends_on(v) && b.depends_on(v) && n > best) {
      best = n;
      main = v;
    }
  }
  if (best == 0) {
    // No shared variable: the gcd lives in the coefficient ring of either.
    return poly_gcd_impl(a, b);
  }
  UPoly A = to_upoly(a, main);
  UPoly B = to_upoly(b, main);
  Poly ca = content_in(A);
  Poly cb = content_in(B);
  Poly c = poly_gcd_impl(ca, cb);
  for (auto& x : A) x = exact_divide(x, ca);
  for (auto& x : B) x = exact_divide(x, cb);
  if (A.size() < B.size()) std::swap(A, B);

  Poly g(1);
  Poly h(1);
  while (true) {
    int delta = static_cast<int>(A.size()) - static_cast<int>(B.size());
    UPoly R = pseudo_remainder(A, B);
    if (R.empty()) break;
    if (R.size() == 1) return primitive_part(c);
    A = std::move(B);
    Poly divisor = g * h.pow(static_cast<unsigned>(delta));
    for (auto& x : R) x = exact_divide(x, divisor);
    B = std::move(R);
    g = A.back();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = exact_divide(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  Poly cB = content_in(B);
  for (auto& x : B) x = exact_divide(x, cB);
  return primitive_part(c * from_upoly(B, main));
}

enum class Strategy { Heuristic, Subresultant };

Poly gcd_with(const Poly& a, const Poly& b, Strategy strategy);

// a, b primitive integer polynomials, nonconstant, without monomial content.
Poly gcd_core(const Poly& a, const Poly& b, Strategy strategy) {
  auto va = a.variables();
  auto vb = b.variables();
  for (int side = 0; side < 2; ++side) {
    const Poly& p = side == 0 ? a : b;
    const Poly& q = side == 0 ? b : a;
    const auto& vp = side == 0 ? va : vb;
    const auto& vq = side == 0 ? vb : va;
    for (VarId v : vp) {
      if (std::binary_search(vq.begin(), vq.end(), v)) continue;
      auto coeffs = p.coefficients_in(v);
      std::vector<const Poly*> order;
      for (const auto& [e, c] : coeffs) order.push_back(&c);
      std::sort(order.begin(), order.end(),
                [](const Poly* x, const Poly* y) { return x->size() < y->size(); });
      Poly g = q;
      for (const Poly* c : order) {
        g = gcd_with(*c, g, strategy);
        if (g.is_constant()) return Poly(1);
      }
      return g;
    }
  }
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& large = a.size() <= b.size() ? b : a;
  if (try_divide(large, small)) return primitive_part(small);
  if (strategy == Strategy::Heuristic) {
    std::vector<VarId> vars = va;
    if (auto r = heu_gcd(a, b, vars)) return primitive_part(r->h);
  }
  return subresultant_gcd(a, b);
}

Poly gcd_with(const Poly& a, const Poly& b, Strategy strategy) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  if (a.is_constant() || b.is_constant()) return Poly(1);
  Poly pa = primitive_part(a);
  Poly pb = primitive_part(b);
  if (pa == pb) return pa;
  Monomial ma = pa.monomial_content();
  Monomial mb = pb.monomial_content();
  Monomial m = Monomial::gcd(ma, mb);
  if (!ma.is_one()) pa = *try_divide(pa, Poly::term(ma, 1));
  if (!mb.is_one()) pb = *try_divide(pb, Poly::term(mb, 1));
  Poly core(1);
  if (!pa.is_constant() && !pb.is_constant()) {
    core = gcd_core(pa, pb, strategy);
  }
  if (m.is_one()) return core;
  return primitive_part(core.times_monomial(m, 1));
}

thread_local Strategy current_strategy = Strategy::Heuristic;

Poly poly_gcd_impl(const Poly& a, const Poly& b) { return gcd_with(a, b, current_strategy); }

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  Strategy saved = current_strategy;
  current_strategy = Strategy::Heuristic;
  Poly g = gcd_with(a, b, Strategy::Heuristic);
  current_strategy = saved;
  return g;
}

Poly gcd_subresultant(const Poly& a, const Poly& b) {
  Strategy saved = current_strategy;
  current_strategy = Strategy::Subresultant;
  Poly g = gcd_with(a, b, Strategy::Subresultant);
  current_strategy = saved;
  return g;
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  Poly g = gcd(a, b);
  return primitive_part(exact_divide(primitive_part(a), g) * primitive_part(b));
}

}  // namespace jetlie
