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

// Prolongation matrices, Lie determinants, minors, and the certificates that
// single out Lie remarkable equations.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetlie/catalog.hpp"
#include "jetlie/integrals.hpp"
#include "jetlie/matrix.hpp"

namespace jetlie {

/// Rows: prolonged generators. Columns: x, then u^1_k..u^m_k for k = 0..r.
struct ProlMatrix {
  int m = 1;
  int order = 0;
  RatMatrix entries;

  int rows() const noexcept { return static_cast<int>(entries.size()); }
  int cols() const noexcept { return 1 + m * (order + 1); }
  const RatExpr& at(int row, int col) const { return entries.at(row).at(col); }
  /// Column index of u^i_k.
  int column_of(int dep, int k) const noexcept { return 1 + k * m + (dep - 1); }
};

struct Minor {
  std::vector<int> rows;
  std::vector<int> cols;
  Poly value;
};

struct RankReport {
  int generic_rank = 0;
  Minor pivot_witness;
  /// Some pivot of the elimination involves a symbolic parameter.
  bool parameter_dependent = false;
};

struct LieDeterminant {
  Poly value;
  BigRational content;
  Poly primitive;
};

enum class CertificateKind { Prop34Hypersurface, Prop34System, Prop37 };
enum class Verdict { Certified, CertifiedWithResidualReport, Failed };

std::string to_string(CertificateKind kind);
std::string to_string(Verdict verdict);

struct Residual {
  Poly factor;
  int top_order = -1;
};

struct Certificate {
  CertificateKind kind = CertificateKind::Prop34Hypersurface;
  std::vector<RatExpr> candidate;
  int generic_rank = 0;
  std::optional<Poly> minor_gcd;
  std::vector<Minor> minors;
  std::vector<Residual> residuals;
  Verdict verdict = Verdict::Failed;
  /// One entry per violated condition.
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  /// The certified equation D_x(F) for the pseudo-stabilization certificate.
  std::optional<RatExpr> equation;
};

/// Throws Error(OrderOverflow) for negative r.
ProlMatrix prolongation_matrix(const AlgebraSpec& alg, int r);

/// Rank over the field of rational functions, with a witness maximal minor.
RankReport generic_rank(const ProlMatrix& mx);

/// Throws Error(NotSquare) or Error(NotPolynomial).
LieDeterminant lie_determinant(const ProlMatrix& mx);

/// All size x size minors, ordered lexicographically by (rows, cols).
/// `parallelism` 0 means JETLIE_MINOR_PARALLELISM or the hardware default.
std::vector<Minor> maximal_minors(const ProlMatrix& mx, int size, int parallelism = 0);

/// Scalar hypersurface E = 0 of J^r. Throws Error(WrongArity) or Error(OrderMismatch).
Certificate certify_prop34_hypersurface(const AlgebraSpec& alg, int r, const Poly& E);

/// Normal-form system. Throws Error(NotNormalForm) or Error(WrongArity).
Certificate certify_prop34_system(const AlgebraSpec& alg, const NormalFormODE& ode);

/// F of exact order r-1 with D_x(F) = 0 as candidate. Throws Error(WrongArity)
/// or Error(OrderMismatch).
Certificate certify_prop37(const AlgebraSpec& alg, int r, const RatExpr& F);

/// Every r-prolonged generator annihilates F.
bool check_invariant(const AlgebraSpec& alg, int r, const RatExpr& F, const AtomTable& extra_atoms = {});

struct PowerFactor {
  RatExpr base;
  BigRational exponent;
};

struct LogTerm {
  RatExpr term;
  RatExpr coefficient;
};

/// prod base^exponent * exp(sum coefficient * term) is invariant, tested through
/// its logarithmic derivative. Throws Error(ZeroBase).
bool check_relative_invariant(const AlgebraSpec& alg, int r, const std::vector<PowerFactor>& factors,
                              const std::vector<LogTerm>& log_linear, const AtomTable& extra_atoms = {});

/// Concurrency used by maximal_minors when not given explicitly.
int default_minor_parallelism();

}  // namespace jetlie
