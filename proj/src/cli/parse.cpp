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

#include "jetlie/parse.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "jetlie/error.hpp"

namespace jetlie {

namespace {

// Where a piece of text sits inside the original input.
struct Origin {
  std::size_t offset = 0;
  int line = 1;
  int column = 1;
};

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End, Bad };

struct Token {
  Tok kind;
  std::size_t start;
  std::size_t end;
};

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const ParseScope& scope, Origin origin)
      : text_(text), scope_(scope), origin_(origin) {
    tokenize();
  }

  RatExpr parse() {
    RatExpr e = expr(0);
    if (peek().kind != Tok::End) fail(Errc::SyntaxError, "unexpected '" + lexeme(peek()) + "'", peek());
    return e;
  }

 private:
  void tokenize() {
    std::size_t i = 0;
    while (i < text_.size()) {
      unsigned char c = static_cast<unsigned char>(text_[i]);
      if (std::isspace(c)) {
        ++i;
        continue;
      }
      std::size_t start = i;
      if (std::isdigit(c)) {
        while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
        tokens_.push_back({Tok::Number, start, i});
        continue;
      }
      if (std::isalpha(c) || c == '_') {
        while (i < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[i])) || text_[i] == '_')) {
          ++i;
        }
        tokens_.push_back({Tok::Ident, start, i});
        continue;
      }
      Tok kind = Tok::Bad;
      switch (c) {
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '/': kind = Tok::Slash; break;
        case '^': kind = Tok::Caret; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        default: break;
      }
      ++i;
      Token t{kind, start, i};
      if (kind == Tok::Bad) fail(Errc::SyntaxError, "unexpected character '" + lexeme(t) + "'", t);
      tokens_.push_back(t);
    }
    tokens_.push_back({Tok::End, text_.size(), text_.size()});
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  std::string lexeme(const Token& t) const {
    if (t.kind == Tok::End) return "end of input";
    return std::string(text_.substr(t.start, t.end - t.start));
  }

  [[noreturn]] void fail(Errc code, const std::string& what, const Token& t) const {
    SourceSpan span;
    span.start = origin_.offset + t.start;
    span.end = origin_.offset + t.end;
    int line = 0;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < t.start && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        line_start = i + 1;
      }
    }
    span.line = origin_.line + line;
    span.column = static_cast<int>(t.start - line_start) + (line == 0 ? origin_.column : 1);
    throw ParseError(code, what, span);
  }

  static int infix_power(Tok t) {
    switch (t) {
      case Tok::Plus:
      case Tok::Minus: return 10;
      case Tok::Star:
      case Tok::Slash: return 20;
      case Tok::Caret: return 40;
      default: return -1;
    }
  }

  RatExpr expr(int min_power) {
    RatExpr lhs = prefix();
    while (true) {
      const Token op = peek();
      int power = infix_power(op.kind);
      if (power < 0 || power < min_power) break;
      advance();
      if (op.kind == Tok::Caret) {
        const Token& n = advance();
        if (n.kind != Tok::Number) {
          fail(Errc::SyntaxError, "exponent must be a nonnegative integer literal", n.kind == Tok::End ? op : n);
        }
        std::string digits = lexeme(n);
        if (digits.size() > 4) fail(Errc::SyntaxError, "exponent too large", n);
        lhs = lhs.pow(static_cast<unsigned>(std::stoul(digits)));
        continue;
      }
      if (peek().kind == Tok::End) fail(Errc::SyntaxError, "missing operand after '" + lexeme(op) + "'", op);
      RatExpr rhs = expr(power + 1);
      switch (op.kind) {
        case Tok::Plus: lhs += rhs; break;
        case Tok::Minus: lhs -= rhs; break;
        case Tok::Star: lhs *= rhs; break;
        case Tok::Slash:
          if (rhs.is_zero()) fail(Errc::DivisionByZero, "division by zero", op);
          lhs /= rhs;
          break;
        default: break;
      }
    }
    return lhs;
  }

  RatExpr prefix() {
    const Token t = advance();
    switch (t.kind) {
      case Tok::Number:
        return RatExpr(BigRational(BigInteger(lexeme(t))));
      case Tok::Ident:
        return RatExpr(resolve(t));
      case Tok::LParen: {
        RatExpr inner = expr(0);
        const Token& close = advance();
        if (close.kind != Tok::RParen) {
          fail(Errc::SyntaxError, "expected ')'", close.kind == Tok::End ? t : close);
        }
        return inner;
      }
      case Tok::Minus:
        if (peek().kind == Tok::End) fail(Errc::SyntaxError, "missing operand after '-'", t);
        return -expr(30);
      case Tok::End:
        fail(Errc::SyntaxError, "expected an expression", pos_ >= 2 ? tokens_[pos_ - 2] : t);
      default:
        fail(Errc::SyntaxError, "expected an operand, found '" + lexeme(t) + "'", t);
    }
  }

  VarId resolve(const Token& t) const {
    std::string name = lexeme(t);
    if (name == "x") return VarId::independent();
    if (name == "u") {
      if (scope_.m == 1) return VarId::jet(1, 0);
      fail(Errc::UnknownVariable, "'u' is ambiguous with " + std::to_string(scope_.m) + " dependent variables", t);
    }
    if (name.size() >= 2 && name[0] == 'u' && name[1] >= '1' && name[1] <= '9') {
      int dep = name[1] - '0';
      int order = 0;
      bool ok = name.size() == 2;
      if (name.size() > 3 && name[2] == '_' &&
          std::all_of(name.begin() + 3, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        ok = name.size() - 3 <= 4;
        if (ok) order = std::stoi(name.substr(3));
      }
      if (ok) {
        if (dep > scope_.m) {
          fail(Errc::UnknownVariable, "'" + name + "' exceeds m = " + std::to_string(scope_.m), t);
        }
        if (order > scope_.max_order) {
          fail(Errc::OrderOverflow, "'" + name + "' exceeds jet order " + std::to_string(scope_.max_order), t);
        }
        return VarId::jet(dep, order);
      }
    }
    if (name.size() <= VarId::kMaxNameLength) {
      VarId a = VarId::atom(name);
      if (scope_.atoms.find(a)) return a;
      VarId p = VarId::parameter(name);
      if (std::find(scope_.parameters.begin(), scope_.parameters.end(), p) != scope_.parameters.end()) return p;
    }
    fail(Errc::UnknownVariable, "unknown variable '" + name + "'", t);
  }

  std::string_view text_;
  const ParseScope& scope_;
  Origin origin_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

RatExpr parse_at(std::string_view text, const ParseScope& scope, Origin origin) {
  return ExpressionParser(text, scope, origin).parse();
}

std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

bool valid_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool reserved_name(std::string_view s) {
  if (s == "x" || s == "u" || s == "m" || s == "param" || s == "atom" || s == "VF" || s == "eq" || s == "order") {
    return true;
  }
  return s.size() >= 2 && s[0] == 'u' && s[1] >= '1' && s[1] <= '9';
}

[[noreturn]] void syntax_error(const std::string& what, Origin at, std::size_t length = 1) {
  SourceSpan span{at.offset, at.offset + length, at.line, at.column};
  throw ParseError(Errc::SyntaxError, what, span);
}

Origin shifted(Origin o, std::size_t by) {
  return Origin{o.offset + by, o.line, o.column + static_cast<int>(by)};
}

// "name : d/dvar = expr [; relation = poly]" located at `at`.
void declare_atom(std::string_view text, ParseScope& scope, Origin at) {
  std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) syntax_error("expected 'name : d/dvar = expr'", at, text.size());
  std::size_t lead = 0;
  std::string_view name = trim(text.substr(0, colon), &lead);
  if (!valid_identifier(name) || reserved_name(name) || name.size() > VarId::kMaxNameLength) {
    syntax_error("invalid atom name '" + std::string(name) + "'", shifted(at, lead), std::max<std::size_t>(name.size(), 1));
  }
  VarId id = VarId::atom(name);
  std::string_view rest = text.substr(colon + 1);
  std::size_t rest_off = colon + 1;
  std::string_view relation_part;
  std::size_t relation_off = 0;
  if (std::size_t semi = rest.find(';'); semi != std::string_view::npos) {
    relation_part = rest.substr(semi + 1);
    relation_off = rest_off + semi + 1;
    rest = rest.substr(0, semi);
  }
  std::size_t eq = rest.find('=');
  if (eq == std::string_view::npos) syntax_error("expected '=' in atom rule", shifted(at, rest_off), rest.size());
  std::size_t dlead = 0;
  std::string_view deriv = trim(rest.substr(0, eq), &dlead);
  if (deriv.substr(0, 3) != "d/d") {
    syntax_error("expected 'd/d<var>'", shifted(at, rest_off + dlead), std::max<std::size_t>(deriv.size(), 1));
  }
  // Register before parsing so rules may mention the atom itself.
  const AtomDef* existing = scope.atoms.find(id);
  AtomDef def = existing ? *existing : AtomDef{id, {}, std::nullopt};
  if (!existing) scope.atoms.define(def);
  Origin var_at = shifted(at, rest_off + dlead + 3);
  RatExpr var = parse_at(deriv.substr(3), scope, var_at);
  auto vars = var.variables();
  if (vars.size() != 1 || var != RatExpr(vars[0]) || vars[0].is_atom()) {
    syntax_error("derivative variable must be x, a jet variable or a parameter", var_at, deriv.size() - 3);
  }
  RatExpr rule = parse_at(rest.substr(eq + 1), scope, shifted(at, rest_off + eq + 1));
  if (!rule.is_zero()) def.rules[vars[0]] = rule;
  if (!relation_part.empty()) {
    std::size_t req = relation_part.find('=');
    std::size_t klead = 0;
    std::string_view key = trim(relation_part.substr(0, req == std::string_view::npos ? 0 : req), &klead);
    if (req == std::string_view::npos || key != "relation") {
      syntax_error("expected 'relation = <poly>'", shifted(at, relation_off + klead), relation_part.size());
    }
    Origin rel_at = shifted(at, relation_off + req + 1);
    RatExpr rel = parse_at(relation_part.substr(req + 1), scope, rel_at);
    if (!rel.is_polynomial()) syntax_error("relation must be a polynomial", rel_at, relation_part.size() - req - 1);
    def.relation = rel.num();
  }
  try {
    scope.atoms.define(std::move(def));
  } catch (const Error& e) {
    syntax_error(e.what(), at, text.size());
  }
}

struct Line {
  std::string_view text;  // comment stripped, trimmed
  Origin origin;          // of text
};

std::vector<Line> split_lines(std::string_view input) {
  std::vector<Line> out;
  std::size_t pos = 0;
  int number = 1;
  while (pos <= input.size()) {
    std::size_t nl = input.find('\n', pos);
    if (nl == std::string_view::npos) nl = input.size();
    std::string_view raw = input.substr(pos, nl - pos);
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t lead = 0;
    std::string_view t = trim(raw, &lead);
    if (!t.empty()) out.push_back(Line{t, Origin{pos + lead, number, static_cast<int>(lead) + 1}});
    if (nl == input.size()) break;
    pos = nl + 1;
    ++number;
  }
  return out;
}

std::string_view keyword(std::string_view line) {
  std::size_t end = 0;
  while (end < line.size() && (std::isalnum(static_cast<unsigned char>(line[end])) || line[end] == '_')) ++end;
  return line.substr(0, end);
}

int parse_int_value(const Line& line, std::string_view key) {
  std::string_view rest = line.text.substr(key.size());
  std::size_t lead = 0;
  rest = trim(rest, &lead);
  if (rest.empty() || rest[0] != '=') syntax_error("expected '" + std::string(key) + " = <int>'", line.origin, line.text.size());
  std::size_t vlead = 0;
  std::string_view value = trim(rest.substr(1), &vlead);
  Origin vat = shifted(line.origin, key.size() + lead + 1 + vlead);
  if (value.empty() || value.size() > 4 ||
      !std::all_of(value.begin(), value.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    syntax_error("expected a positive integer", vat, std::max<std::size_t>(value.size(), 1));
  }
  return std::stoi(std::string(value));
}

// Handles m/param/atom lines shared by both file kinds. Returns false for other keywords.
bool header_line(const Line& line, ParseScope& scope, bool& seen_m) {
  std::string_view key = keyword(line.text);
  if (key == "m") {
    if (seen_m) syntax_error("duplicate 'm' line", line.origin, 1);
    int m = parse_int_value(line, key);
    if (m < 1 || m > 9) syntax_error("m must be between 1 and 9", line.origin, line.text.size());
    scope.m = m;
    seen_m = true;
    return true;
  }
  if (key == "param") {
    std::size_t lead = 0;
    std::string_view name = trim(line.text.substr(key.size()), &lead);
    Origin at = shifted(line.origin, key.size() + lead);
    if (!valid_identifier(name) || reserved_name(name) || name.size() > VarId::kMaxNameLength) {
      syntax_error("invalid parameter name '" + std::string(name) + "'", at, std::max<std::size_t>(name.size(), 1));
    }
    VarId p = VarId::parameter(name);
    if (std::find(scope.parameters.begin(), scope.parameters.end(), p) == scope.parameters.end()) {
      scope.parameters.push_back(p);
    }
    return true;
  }
  if (key == "atom") {
    declare_atom(line.text.substr(key.size()), scope, shifted(line.origin, key.size()));
    return true;
  }
  return false;
}

}  // namespace

RatExpr parse_expression(std::string_view text, const ParseScope& scope) { return parse_at(text, scope, Origin{}); }

void parse_atom_declaration(std::string_view text, ParseScope& scope) { declare_atom(text, scope, Origin{}); }

ParsedAlgebraFile parse_algebra_file(std::string_view text, std::string name) {
  ParseScope scope;
  bool seen_m = false;
  std::vector<VectorField> gens;
  for (const Line& line : split_lines(text)) {
    std::string_view key = keyword(line.text);
    if (key == "VF") {
      std::string_view body = line.text.substr(2);
      std::size_t off = 2;
      std::vector<RatExpr> parts;
      while (true) {
        std::size_t bar = body.find('|');
        std::string_view piece = body.substr(0, bar);
        if (trim(piece).empty()) syntax_error("empty vector field component", shifted(line.origin, off), 1);
        parts.push_back(parse_at(piece, scope, shifted(line.origin, off)));
        if (bar == std::string_view::npos) break;
        body = body.substr(bar + 1);
        off += bar + 1;
      }
      if (static_cast<int>(parts.size()) != scope.m + 1) {
        syntax_error("expected " + std::to_string(scope.m + 1) + " components separated by '|'", line.origin,
                     line.text.size());
      }
      VectorField f{parts[0], std::vector<RatExpr>(parts.begin() + 1, parts.end())};
      try {
        f.validate();
      } catch (const Error& e) {
        syntax_error(e.what(), line.origin, line.text.size());
      }
      gens.push_back(std::move(f));
      continue;
    }
    if (!gens.empty()) syntax_error("header lines must precede the generators", line.origin, key.size());
    if (!header_line(line, scope, seen_m)) {
      syntax_error("unknown directive '" + std::string(key.empty() ? line.text.substr(0, 1) : key) + "'", line.origin,
                   std::max<std::size_t>(key.size(), 1));
    }
  }
  if (gens.empty()) {
    Origin end{text.size(), static_cast<int>(std::count(text.begin(), text.end(), '\n')) + 1, 1};
    syntax_error("no generators ('VF' lines) given", end, 0);
  }
  ParsedAlgebraFile out;
  out.m = scope.m;
  out.parameters = scope.parameters;
  out.atoms = scope.atoms;
  out.spec.name = std::move(name);
  out.spec.m = scope.m;
  out.spec.parameters = scope.parameters;
  out.spec.atoms = scope.atoms;
  out.spec.generators = std::move(gens);
  out.spec.expected_dim = out.spec.dimension();
  try {
    out.structure = closure_check(out.spec.generators, out.spec.atoms);
    if (!out.structure->closed) {
      auto [a, b] = *out.structure->witness_pair;
      out.warnings.push_back("generators do not close: [X" + std::to_string(a + 1) + ", X" + std::to_string(b + 1) +
                             "] is outside their span");
    }
  } catch (const Error& e) {
    if (e.code() != Errc::DependentGenerators) throw;
    out.warnings.push_back(e.what());
  }
  return out;
}

NormalFormODE parse_ode_file(std::string_view text) {
  ParseScope scope;
  bool seen_m = false;
  int order = 0;
  std::map<int, RatExpr> eqs;
  for (const Line& line : split_lines(text)) {
    std::string_view key = keyword(line.text);
    if (key == "order") {
      if (order) syntax_error("duplicate 'order' line", line.origin, key.size());
      order = parse_int_value(line, key);
      if (order < 1) syntax_error("order must be positive", line.origin, line.text.size());
      continue;
    }
    if (key == "eq") {
      if (!order) syntax_error("'order' must precede the equations", line.origin, key.size());
      std::string_view body = line.text.substr(2);
      std::size_t eq = body.find('=');
      if (eq == std::string_view::npos) syntax_error("expected 'eq ui_r = <expr>'", line.origin, line.text.size());
      std::size_t lead = 0;
      std::string_view lhs = trim(body.substr(0, eq), &lead);
      Origin lhs_at = shifted(line.origin, 2 + lead);
      RatExpr target = parse_at(lhs, scope, lhs_at);
      auto vars = target.variables();
      if (vars.size() != 1 || target != RatExpr(vars[0]) || !vars[0].is_jet() || vars[0].order() != order) {
        syntax_error("left-hand side must be a dependent variable's derivative of order " + std::to_string(order),
                     lhs_at, std::max<std::size_t>(lhs.size(), 1));
      }
      if (eqs.count(vars[0].dep())) syntax_error("duplicate equation for " + to_string(vars[0]), lhs_at, lhs.size());
      eqs[vars[0].dep()] = parse_at(body.substr(eq + 1), scope, shifted(line.origin, 2 + eq + 1));
      continue;
    }
    if (!eqs.empty()) syntax_error("header lines must precede the equations", line.origin, key.size());
    if (!header_line(line, scope, seen_m)) {
      syntax_error("unknown directive '" + std::string(key.empty() ? line.text.substr(0, 1) : key) + "'", line.origin,
                   std::max<std::size_t>(key.size(), 1));
    }
  }
  if (!order) syntax_error("missing 'order' line", Origin{text.size(), 1, 1}, 0);
  if (static_cast<int>(eqs.size()) != scope.m) {
    syntax_error("expected one equation per dependent variable (" + std::to_string(scope.m) + ")",
                 Origin{text.size(), 1, 1}, 0);
  }
  NormalFormODE ode;
  ode.m = scope.m;
  ode.order = order;
  ode.atoms = scope.atoms;
  for (auto& [i, e] : eqs) ode.rhs.push_back(std::move(e));
  ode.validate();
  return ode;
}

namespace {

void dump_header(std::ostringstream& out, int m, const std::vector<VarId>& declared, const AtomTable& atoms,
                 const std::vector<RatExpr>& exprs) {
  out << "m = " << m << "\n";
  std::set<VarId> params(declared.begin(), declared.end());
  for (const auto& e : exprs) {
    for (VarId v : e.variables()) {
      if (v.is_parameter()) params.insert(v);
    }
  }
  for (const auto& d : atoms.defs()) {
    for (const auto& [v, rule] : d.rules) {
      if (v.is_parameter()) params.insert(v);
      for (VarId w : rule.variables()) {
        if (w.is_parameter()) params.insert(w);
      }
    }
  }
  for (VarId p : params) out << "param " << p.name() << "\n";
  for (const auto& d : atoms.defs()) {
    bool first = true;
    auto relation = [&] {
      if (first && d.relation) out << " ; relation = " << canonical_string(*d.relation);
      first = false;
    };
    if (d.rules.empty()) {
      out << "atom " << d.id.name() << " : d/dx = 0";
      relation();
      out << "\n";
    }
    for (const auto& [v, rule] : d.rules) {
      out << "atom " << d.id.name() << " : d/d" << to_string(v) << " = " << canonical_string(rule);
      relation();
      out << "\n";
    }
  }
}

}  // namespace

std::string dump_algebra(const AlgebraSpec& spec) {
  std::ostringstream out;
  std::vector<RatExpr> exprs;
  for (const auto& g : spec.generators) {
    exprs.push_back(g.xi);
    exprs.insert(exprs.end(), g.phis.begin(), g.phis.end());
  }
  dump_header(out, spec.m, spec.parameters, spec.atoms, exprs);
  for (const auto& g : spec.generators) {
    out << "VF " << canonical_string(g.xi);
    for (const auto& p : g.phis) out << " | " << canonical_string(p);
    out << "\n";
  }
  return out.str();
}

std::string dump_ode(const NormalFormODE& ode, const std::vector<VarId>& parameters) {
  std::ostringstream out;
  dump_header(out, ode.m, parameters, ode.atoms, ode.rhs);
  out << "order = " << ode.order << "\n";
  for (int i = 1; i <= ode.m; ++i) {
    out << "eq " << to_string(VarId::jet(i, ode.order)) << " = " << canonical_string(ode.rhs[i - 1]) << "\n";
  }
  return out.str();
}

}  // namespace jetlie
