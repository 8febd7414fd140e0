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

#include "jetlie/catalog.hpp"

#include <algorithm>
#include <cctype>

#include "jetlie/error.hpp"

namespace jetlie {

namespace {

const RatExpr kX{VarId::independent()};
const RatExpr kU{VarId::jet(1, 0)};

VectorField plane(RatExpr xi, RatExpr phi) { return VectorField{std::move(xi), {std::move(phi)}}; }

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

constexpr const char* kPrimitiveNames[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII"};

}  // namespace

PrimitiveId parse_primitive_id(std::string_view id) {
  std::string u = upper(id);
  for (int i = 0; i < 8; ++i) {
    if (u == kPrimitiveNames[i]) return static_cast<PrimitiveId>(i + 1);
  }
  throw Error(Errc::UnknownAlgebraId, "unknown primitive algebra '" + std::string(id) + "'");
}

std::string to_string(PrimitiveId id) { return kPrimitiveNames[static_cast<int>(id) - 1]; }

AlgebraSpec primitive_algebra(PrimitiveId id, std::optional<RatExpr> alpha) {
  if (alpha && id != PrimitiveId::I) {
    throw Error(Errc::InvalidArgument, "alpha applies to algebra I only");
  }
  const RatExpr& x = kX;
  const RatExpr& u = kU;
  AlgebraSpec spec;
  spec.name = to_string(id);
  spec.m = 1;
  auto& g = spec.generators;
  switch (id) {
    case PrimitiveId::I: {
      RatExpr a;
      if (alpha) {
        a = *alpha;
      } else {
        VarId p = VarId::parameter("alpha");
        spec.parameters.push_back(p);
        a = RatExpr(p);
      }
      for (VarId v : a.variables()) {
        if (v.is_parameter() && std::find(spec.parameters.begin(), spec.parameters.end(), v) == spec.parameters.end()) {
          spec.parameters.push_back(v);
        }
      }
      g = {plane(1, 0), plane(0, 1), plane(u + a * x, -x + a * u)};
      break;
    }
    case PrimitiveId::II:
      g = {plane(1, 0), plane(x, u), plane(x * x - u * u, 2 * x * u)};
      break;
    case PrimitiveId::III:
      g = {plane(u, -x), plane(1 + x * x - u * u, 2 * x * u), plane(2 * x * u, 1 - x * x + u * u)};
      break;
    case PrimitiveId::IV:
      g = {plane(1, 0), plane(0, 1), plane(x, u), plane(u, -x)};
      break;
    case PrimitiveId::V:
      g = {plane(1, 0), plane(0, 1), plane(x, -u), plane(u, 0), plane(0, x)};
      break;
    case PrimitiveId::VI:
      g = {plane(1, 0), plane(0, 1), plane(x, 0), plane(0, u), plane(u, 0), plane(0, x)};
      break;
    case PrimitiveId::VII:
      g = {plane(1, 0),         plane(0, 1), plane(u, -x), plane(x, u), plane(x * x - u * u, 2 * x * u),
           plane(2 * x * u, u * u - x * x)};
      break;
    case PrimitiveId::VIII:
      g = {plane(1, 0), plane(0, 1), plane(x, 0),         plane(0, u),
           plane(u, 0), plane(0, x), plane(x * x, x * u), plane(x * u, u * u)};
      break;
  }
  spec.expected_dim = static_cast<int>(g.size());
  return spec;
}

SpaceKind parse_space_kind(std::string_view name) {
  std::string s = lower(name);
  if (s == "isometry") return SpaceKind::Isometry;
  if (s == "affine") return SpaceKind::Affine;
  if (s == "conformal") return SpaceKind::Conformal;
  if (s == "projective") return SpaceKind::Projective;
  throw Error(Errc::UnknownAlgebraId, "unknown space algebra '" + std::string(name) + "'");
}

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Isometry: return "isometry";
    case SpaceKind::Affine: return "affine";
    case SpaceKind::Conformal: return "conformal";
    case SpaceKind::Projective: return "projective";
  }
  return "?";
}

AlgebraSpec space_algebra(SpaceKind kind, int m, int max_m) {
  if (m < 1 || m > max_m) {
    throw Error(Errc::UnsupportedDimension,
                "m = " + std::to_string(m) + " outside the supported range 1.." + std::to_string(max_m));
  }
  const int n = m + 1;
  // y^0 = x, y^i = u^i
  std::vector<RatExpr> y;
  y.push_back(kX);
  for (int i = 1; i <= m; ++i) y.emplace_back(VarId::jet(i, 0));
  auto field = [&](std::vector<RatExpr> comps) {
    VectorField f;
    f.xi = comps[0];
    f.phis.assign(comps.begin() + 1, comps.end());
    return f;
  };
  auto basis = [&](int a, RatExpr c) {
    std::vector<RatExpr> comps(n);
    comps[a] = std::move(c);
    return comps;
  };
  AlgebraSpec spec;
  spec.name = to_string(kind);
  spec.m = m;
  auto& g = spec.generators;

  auto add_translations = [&] {
    for (int a = 0; a < n; ++a) g.push_back(field(basis(a, 1)));
  };
  auto add_rotations = [&] {
    for (int i = 1; i <= m; ++i) {
      auto comps = basis(i, y[0]);
      comps[0] = -y[i];
      g.push_back(field(comps));
    }
    for (int i = 1; i <= m; ++i) {
      for (int j = i + 1; j <= m; ++j) {
        auto comps = basis(j, y[i]);
        comps[i] = -y[j];
        g.push_back(field(comps));
      }
    }
  };
  auto add_linear = [&] {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) g.push_back(field(basis(b, y[a])));
    }
  };

  switch (kind) {
    case SpaceKind::Isometry:
      add_translations();
      add_rotations();
      spec.expected_dim = (m + 1) * (m + 2) / 2;
      break;
    case SpaceKind::Affine:
      add_translations();
      add_linear();
      spec.expected_dim = (m + 1) * (m + 2);
      break;
    case SpaceKind::Conformal: {
      add_translations();
      add_rotations();
      g.push_back(field(y));
      RatExpr norm;
      for (const auto& c : y) norm += c * c;
      for (int j = 0; j < n; ++j) {
        std::vector<RatExpr> comps(n);
        for (int i = 0; i < n; ++i) {
          comps[i] = i == j ? 2 * y[j] * y[j] - norm : 2 * y[j] * y[i];
        }
        g.push_back(field(comps));
      }
      spec.expected_dim = (m + 2) * (m + 3) / 2;
      break;
    }
    case SpaceKind::Projective:
      add_translations();
      add_linear();
      for (int a = 0; a < n; ++a) {
        std::vector<RatExpr> comps(n);
        for (int i = 0; i < n; ++i) comps[i] = y[a] * y[i];
        g.push_back(field(comps));
      }
      spec.expected_dim = (m + 1) * (m + 3);
      break;
  }
  return spec;
}

AlgebraSpec named_algebra(std::string_view name) {
  std::string s = lower(name);
  const RatExpr& x = kX;
  const RatExpr& u = kU;
  AlgebraSpec spec;
  spec.name = s;
  spec.m = 1;
  if (s == "realization1") {
    VarId e = VarId::atom("E");
    spec.atoms.define(AtomDef{e, {{VarId::jet(1, 0), RatExpr(e)}}, std::nullopt});
    spec.generators = {plane(0, RatExpr(e)), plane(0, -1)};
  } else if (s == "realization2") {
    spec.generators = {plane(0, 1), plane(1, u)};
  } else if (s == "sl2") {
    spec.generators = {plane(0, 1), plane(1, u), plane(u, u * u / 2)};
  } else if (s == "example") {
    spec.generators = {plane(1, 0), plane(0, 1), plane(0, x), plane(x, 2 * u)};
  } else {
    throw Error(Errc::UnknownAlgebraId, "unknown algebra '" + std::string(name) + "'");
  }
  spec.expected_dim = spec.dimension();
  return spec;
}

AlgebraSpec catalog_algebra(std::string_view id, int m, std::optional<RatExpr> alpha) {
  std::string s = lower(id);
  if (s == "isometry" || s == "affine" || s == "conformal" || s == "projective") {
    if (alpha) throw Error(Errc::InvalidArgument, "alpha applies to algebra I only");
    return space_algebra(parse_space_kind(s), m);
  }
  if (s == "realization1" || s == "realization2" || s == "sl2" || s == "example") {
    if (alpha) throw Error(Errc::InvalidArgument, "alpha applies to algebra I only");
    return named_algebra(s);
  }
  return primitive_algebra(parse_primitive_id(id), std::move(alpha));
}

std::vector<std::string> catalog_ids() {
  std::vector<std::string> out(std::begin(kPrimitiveNames), std::end(kPrimitiveNames));
  for (const char* s : {"isometry", "affine", "conformal", "projective", "realization1", "realization2", "sl2", "example"}) {
    out.emplace_back(s);
  }
  return out;
}

}  // namespace jetlie
