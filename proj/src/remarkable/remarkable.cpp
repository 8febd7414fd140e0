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

#include "jetlie/remarkable.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "jetlie/error.hpp"

namespace jetlie {

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::Prop34Hypersurface: return "Prop34Hypersurface";
    case CertificateKind::Prop34System: return "Prop34System";
    case CertificateKind::Prop37: return "Prop37";
  }
  return "?";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Certified: return "Certified";
    case Verdict::CertifiedWithResidualReport: return "CertifiedWithResidualReport";
    case Verdict::Failed: return "Failed";
  }
  return "?";
}

ProlMatrix prolongation_matrix(const AlgebraSpec& alg, int r) {
  if (r < 0) throw Error(Errc::OrderOverflow, "negative jet order");
  JetContext ctx{alg.m, r, alg.atoms};
  ProlMatrix mx{alg.m, r, {}};
  for (const auto& X : alg.generators) {
    ProlongedField p = prolong(X, r, ctx);
    std::vector<RatExpr> row{X.xi};
    for (int k = 0; k <= r; ++k) {
      for (int i = 1; i <= alg.m; ++i) row.push_back(p.coeff(i, k));
    }
    mx.entries.push_back(std::move(row));
  }
  return mx;
}

namespace {

bool has_parameter(const Poly& p) {
  auto vars = p.variables();
  return std::any_of(vars.begin(), vars.end(), [](VarId v) { return v.is_parameter(); });
}

}  // namespace

RankReport generic_rank(const ProlMatrix& mx) {
  auto res = bareiss(clear_row_denominators(mx.entries));
  RankReport out;
  out.generic_rank = res.rank;
  out.pivot_witness = Minor{res.rows, res.cols, res.minor};
  out.parameter_dependent = has_parameter(res.minor);
  return out;
}

LieDeterminant lie_determinant(const ProlMatrix& mx) {
  if (mx.rows() != mx.cols()) {
    throw Error(Errc::NotSquare, "prolongation matrix is " + std::to_string(mx.rows()) + "x" +
                                     std::to_string(mx.cols()));
  }
  Poly d = determinant(to_poly_matrix(mx.entries));
  LieDeterminant out;
  out.value = d;
  if (d.is_zero()) {
    out.content = 0;
    out.primitive = Poly();
  } else {
    out.content = content(d);
    if (sgn(d.leading_coefficient()) < 0) out.content = -out.content;
    out.primitive = d.scaled(1 / out.content);
  }
  return out;
}

int default_minor_parallelism() {
  if (const char* env = std::getenv("JETLIE_MINOR_PARALLELISM")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

void combinations(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Minor> maximal_minors(const ProlMatrix& mx, int size, int parallelism) {
  if (size < 0 || size > std::min(mx.rows(), mx.cols())) {
    throw Error(Errc::InvalidArgument, "minor size " + std::to_string(size) + " exceeds the matrix shape");
  }
  if (size == 0 || mx.rows() == 0) return {};
  PolyMatrix full = to_poly_matrix(mx.entries);
  std::vector<std::vector<int>> row_sets;
  std::vector<std::vector<int>> col_sets;
  combinations(mx.rows(), size, row_sets);
  combinations(mx.cols(), size, col_sets);
  std::vector<Minor> out;
  out.reserve(row_sets.size() * col_sets.size());
  for (const auto& rs : row_sets) {
    for (const auto& cs : col_sets) out.push_back(Minor{rs, cs, Poly()});
  }
  auto compute = [&](Minor& minor) {
    PolyMatrix sub;
    sub.reserve(size);
    for (int r : minor.rows) {
      std::vector<Poly> row;
      row.reserve(size);
      for (int c : minor.cols) row.push_back(full[r][c]);
      sub.push_back(std::move(row));
    }
    minor.value = determinant(sub);
  };
  int workers = parallelism > 0 ? parallelism : default_minor_parallelism();
  workers = std::max(1, std::min<int>(workers, static_cast<int>(out.size())));
  if (workers == 1) {
    for (auto& minor : out) compute(minor);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < out.size(); i = next++) compute(out[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

namespace {

// Sufficient test for a polynomial without real zeros: every exponent even,
// every coefficient positive, nonzero constant term.
bool obviously_positive(const Poly& p) {
  if (p.is_zero()) return false;
  bool has_constant = false;
  for (const auto& t : p.terms()) {
    if (sgn(t.coef) <= 0) return false;
    if (t.mono.is_one()) has_constant = true;
    for (const auto& [v, e] : t.mono.factors()) {
      if (e % 2 != 0) return false;
    }
  }
  return has_constant;
}

Poly content_in(const Poly& p, VarId v) {
  Poly g;
  for (const auto& [e, c] : p.coefficients_in(v)) {
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

std::string index_list(const std::vector<int>& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i] + 1);
  return s + "}";
}

}  // namespace

Certificate certify_prop34_hypersurface(const AlgebraSpec& alg, int r, const Poly& E) {
  if (alg.m != 1) throw Error(Errc::WrongArity, "hypersurface certificate needs m = 1");
  const VarId top = VarId::jet(1, r);
  if (r < 0 || !E.depends_on(top) || jet_order(E) != r) {
    throw Error(Errc::OrderMismatch, "candidate must be of exact order " + std::to_string(r));
  }
  Certificate cert;
  cert.kind = CertificateKind::Prop34Hypersurface;
  Poly e = primitive_part(E);
  cert.candidate = {RatExpr(e)};
  ProlMatrix mx = prolongation_matrix(alg, r);
  RankReport rank = generic_rank(mx);
  cert.generic_rank = rank.generic_rank;
  if (rank.parameter_dependent) cert.notes.push_back("rank witness depends on symbolic parameters");
  const int cols = mx.cols();
  if (rank.generic_rank < cols) {
    cert.failures.push_back("generic rank " + std::to_string(rank.generic_rank) + " is below dim J^" +
                            std::to_string(r) + " = " + std::to_string(cols));
    return cert;
  }
  cert.minors = maximal_minors(mx, cols);
  Poly g;
  for (const auto& minor : cert.minors) g = gcd(g, minor.value);
  cert.minor_gcd = g;

  Poly lower = content_in(g, top);
  Poly upper = exact_divide(g, lower);
  if (upper.is_constant() || obviously_positive(upper)) {
    cert.failures.push_back("rank never drops on a hypersurface of order " + std::to_string(r));
  }
  bool divisible = true;
  for (const auto& minor : cert.minors) {
    if (!try_divide(minor.value, e)) {
      divisible = false;
      cert.failures.push_back("minor rows " + index_list(minor.rows) + " cols " + index_list(minor.cols) +
                              " is not divisible by the candidate");
    }
  }
  bool residual_ok = true;
  if (divisible) {
    Poly rest = primitive_part(exact_divide(g, e));
    if (!rest.is_constant()) {
      cert.residuals.push_back(Residual{rest, jet_order(rest)});
      if (rest.depends_on(top)) {
        residual_ok = false;
        cert.notes.push_back("residual factor of the minor gcd has top order " + std::to_string(r));
      }
    }
  }
  if (!cert.failures.empty()) {
    cert.verdict = Verdict::Failed;
  } else {
    cert.verdict = residual_ok ? Verdict::Certified : Verdict::CertifiedWithResidualReport;
  }
  return cert;
}

Certificate certify_prop34_system(const AlgebraSpec& alg, const NormalFormODE& ode) {
  ode.validate();
  if (ode.m != alg.m) throw Error(Errc::WrongArity, "system and algebra have different numbers of dependents");
  Certificate cert;
  cert.kind = CertificateKind::Prop34System;
  for (int i = 1; i <= ode.m; ++i) {
    cert.candidate.push_back(RatExpr(VarId::jet(i, ode.order)) - ode.rhs[i - 1]);
  }
  for (std::size_t a = 0; a < alg.generators.size(); ++a) {
    if (!check_point_symmetry(ode, alg.generators[a])) {
      cert.failures.push_back("generator " + std::to_string(a + 1) + " is not tangent to the system");
    }
  }
  const int r = ode.order;
  ProlMatrix mx = prolongation_matrix(alg, r);
  RankReport rank = generic_rank(mx);
  cert.generic_rank = rank.generic_rank;
  const int dim_e = mx.cols() - ode.m;
  if (rank.generic_rank < dim_e + 1) {
    cert.failures.push_back("generic rank " + std::to_string(rank.generic_rank) + " is below dim E + 1 = " +
                            std::to_string(dim_e + 1));
  }
  // All (dim E + 1)-minors vanish on E exactly when the restricted matrix has rank <= dim E.
  std::map<VarId, RatExpr> bind;
  for (int i = 1; i <= ode.m; ++i) bind.emplace(VarId::jet(i, r), ode.rhs[i - 1]);
  RatMatrix restricted = mx.entries;
  for (auto& row : restricted) {
    for (auto& e : row) e = substitute(e, bind, ode.atoms);
  }
  auto res = bareiss(clear_row_denominators(restricted));
  cert.notes.push_back("rank on the system: " + std::to_string(res.rank));
  if (res.rank > dim_e) {
    cert.failures.push_back("a minor of size " + std::to_string(dim_e + 1) + " does not vanish on the system");
  }
  cert.residuals.push_back(Residual{rank.pivot_witness.value, jet_order(rank.pivot_witness.value)});
  cert.minors.push_back(rank.pivot_witness);
  cert.verdict = cert.failures.empty() ? Verdict::CertifiedWithResidualReport : Verdict::Failed;
  return cert;
}

Certificate certify_prop37(const AlgebraSpec& alg, int r, const RatExpr& F) {
  if (alg.m != 1) throw Error(Errc::WrongArity, "pseudo-stabilization certificate needs m = 1");
  if (r < 1 || jet_order(F) != r - 1) {
    throw Error(Errc::OrderMismatch, "F must have exact order " + std::to_string(r - 1));
  }
  Certificate cert;
  cert.kind = CertificateKind::Prop37;
  cert.candidate = {F};
  RankReport lower = generic_rank(prolongation_matrix(alg, r - 1));
  RankReport upper = generic_rank(prolongation_matrix(alg, r));
  cert.generic_rank = upper.generic_rank;
  if (lower.generic_rank != r || upper.generic_rank != r + 1) {
    cert.failures.push_back("rank condition: rank M^(" + std::to_string(r - 1) + ") = " +
                            std::to_string(lower.generic_rank) + " (need " + std::to_string(r) + "), rank M^(" +
                            std::to_string(r) + ") = " + std::to_string(upper.generic_rank) + " (need " +
                            std::to_string(r + 1) + ")");
  }
  JetContext ctx{1, r, alg.atoms};
  for (std::size_t a = 0; a < alg.generators.size(); ++a) {
    ProlongedField p = prolong(alg.generators[a], r - 1, ctx);
    if (!apply_field(p, F, alg.atoms).is_zero()) {
      cert.failures.push_back("annihilation: generator " + std::to_string(a + 1) + " does not annihilate F");
    }
  }
  if (upper.generic_rank != (r + 2) - 1) {
    cert.failures.push_back("uniqueness: invariant space of order " + std::to_string(r) + " is not one-dimensional");
  }
  cert.equation = total_derivative(F, ctx);
  cert.verdict = cert.failures.empty() ? Verdict::Certified : Verdict::Failed;
  return cert;
}

namespace {

AtomTable merged_atoms(const AlgebraSpec& alg, const AtomTable& extra) {
  AtomTable out = alg.atoms;
  for (const auto& d : extra.defs()) out.define(d);
  return out;
}

}  // namespace

bool check_invariant(const AlgebraSpec& alg, int r, const RatExpr& F, const AtomTable& extra_atoms) {
  AtomTable atoms = merged_atoms(alg, extra_atoms);
  JetContext ctx{alg.m, r, atoms};
  for (const auto& X : alg.generators) {
    if (!apply_field(prolong(X, r, ctx), F, atoms).is_zero()) return false;
  }
  return true;
}

bool check_relative_invariant(const AlgebraSpec& alg, int r, const std::vector<PowerFactor>& factors,
                              const std::vector<LogTerm>& log_linear, const AtomTable& extra_atoms) {
  for (const auto& f : factors) {
    if (f.base.is_zero()) throw Error(Errc::ZeroBase, "relative invariant factor with zero base");
  }
  AtomTable atoms = merged_atoms(alg, extra_atoms);
  JetContext ctx{alg.m, r, atoms};
  for (const auto& X : alg.generators) {
    ProlongedField p = prolong(X, r, ctx);
    RatExpr sum;
    for (const auto& f : factors) {
      if (sgn(f.exponent) == 0) continue;
      sum += RatExpr(f.exponent) * apply_field(p, f.base, atoms) / f.base;
    }
    for (const auto& t : log_linear) sum += t.coefficient * apply_field(p, t.term, atoms);
    if (atoms.has_relations()) sum = reduce(sum, atoms);
    if (!sum.is_zero()) return false;
  }
  return true;
}

}  // namespace jetlie
