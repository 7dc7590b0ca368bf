#include "germforge/io.hpp"

#include <cctype>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

#include "germforge/error.hpp"
#include "germforge/weierstrass.hpp"

namespace germforge {

namespace {

struct Token {
  enum Kind { integer, decimal, ident, symbol, end } kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t c = 0; c < count; ++c, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l0 = line;
    int c0 = col;
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      bool dec = false;
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        dec = true;
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          dec = true;
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      advance(j - i);
      out.push_back({dec ? Token::decimal : Token::integer, src.substr(start, j - start), l0, c0});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      // `2i`-style suffixes are split by the parser; identifiers are plain words.
      advance(j - i);
      out.push_back({Token::ident, src.substr(start, j - start), l0, c0});
      continue;
    }
    if (std::string("+-*/^();=,").find(c) == std::string::npos) {
      throw ParseError(l0, c0, std::string("unexpected character '") + c + "'");
    }
    advance(1);
    out.push_back({Token::symbol, std::string(1, c), l0, c0});
  }
  out.push_back({Token::end, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& take() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::end; }
  bool is_symbol(const char* s) const { return peek().kind == Token::symbol && peek().text == s; }
  bool is_ident(const char* s) const { return peek().kind == Token::ident && peek().text == s; }

  [[noreturn]] void error(const std::string& msg) const { throw ParseError(peek().line, peek().col, msg); }
  [[noreturn]] static void error_at(const Token& t, const std::string& msg) { throw ParseError(t.line, t.col, msg); }

  void expect_symbol(const char* s) {
    if (!is_symbol(s)) error(std::string("expected '") + s + "'" + found());
    take();
  }
  void expect_ident(const char* s) {
    if (!is_ident(s)) error(std::string("expected '") + s + "'" + found());
    take();
  }
  std::string found() const {
    if (at_end()) return " but reached the end of input";
    return " but found '" + peek().text + "'";
  }

  long integer() {
    if (peek().kind == Token::decimal) error("decimal literal '" + peek().text + "' is not exact; use a fraction");
    if (peek().kind != Token::integer) error("expected an integer" + found());
    const Token& t = take();
    try {
      return std::stol(t.text);
    } catch (...) {
      error_at(t, "integer '" + t.text + "' out of range");
    }
  }

  Rational rational() {
    if (peek().kind == Token::decimal) error("decimal literal '" + peek().text + "' is not exact; use a fraction");
    if (peek().kind != Token::integer) error("expected a number" + found());
    mpz_class num(take().text);
    mpz_class den(1);
    if (is_symbol("/")) {
      take();
      if (peek().kind != Token::integer) error("expected a denominator" + found());
      const Token& t = take();
      den = mpz_class(t.text);
      if (den == 0) error_at(t, "zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  double floating() {
    int sign = 1;
    if (is_symbol("-")) {
      take();
      sign = -1;
    } else if (is_symbol("+")) {
      take();
    }
    if (peek().kind != Token::integer && peek().kind != Token::decimal) error("expected a number" + found());
    return sign * std::stod(take().text);
  }

  /// Gaussian-rational literal: `3/4`, `2i`, `i`, `(3/4+1/2i)`, `(-i)`.
  Coef coefficient() {
    if (is_symbol("(")) {
      take();
      Coef sum;
      bool first = true;
      while (!is_symbol(")")) {
        int sign = 1;
        if (is_symbol("+") || is_symbol("-")) {
          sign = take().text == "-" ? -1 : 1;
        } else if (!first) {
          error("expected '+', '-' or ')' in complex literal" + found());
        }
        Coef part = imaginary_or_real();
        sum += sign < 0 ? -part : part;
        first = false;
      }
      take();
      if (first) error("empty complex literal");
      return sum;
    }
    return imaginary_or_real();
  }

  bool starts_coefficient() const {
    return peek().kind == Token::integer || peek().kind == Token::decimal || is_symbol("(") || is_ident("i");
  }

 private:
  Coef imaginary_or_real() {
    if (is_ident("i")) {
      take();
      return Coef::imag_unit();
    }
    Rational q = rational();
    if (is_ident("i")) {
      take();
      return Coef(Rational(0), q);
    }
    return Coef(q);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

struct Header {
  std::string kind;
  std::size_t nvars = 0;
  int precision = 0;
  std::optional<std::vector<Coef>> base;
};

Header parse_header(Parser& p, const std::vector<std::string>& kinds, bool need_vars = true) {
  Header h;
  for (const auto& k : kinds) {
    if (p.is_ident(k.c_str())) {
      h.kind = p.take().text;
      break;
    }
  }
  if (need_vars) {
    p.expect_ident("vars");
    long n = p.integer();
    if (n < 1) p.error("need at least one variable");
    h.nvars = static_cast<std::size_t>(n);
    p.expect_symbol(";");
  }
  p.expect_ident("N");
  p.expect_symbol("=");
  long prec = p.integer();
  if (prec < 1) p.error("precision must be at least 1");
  h.precision = static_cast<int>(prec);
  p.expect_symbol(";");
  if (p.is_ident("base")) {
    p.take();
    p.expect_symbol("(");
    std::vector<Coef> pt;
    while (true) {
      int sign = 1;
      if (p.is_symbol("-")) {
        p.take();
        sign = -1;
      }
      Coef c = p.coefficient();
      pt.push_back(sign < 0 ? -c : c);
      if (p.is_symbol(",")) {
        p.take();
        continue;
      }
      break;
    }
    p.expect_symbol(")");
    p.expect_symbol(";");
    h.base = std::move(pt);
  }
  return h;
}

/// Variable naming for term parsing.
struct Names {
  std::size_t n = 0;
  bool hermitian = false;
  bool curve = false;  // single variable t

  std::size_t width() const { return curve ? 1 : (hermitian ? 2 * n : n); }

  std::optional<std::size_t> index(const std::string& id) const {
    if (curve) {
      if (id == "t") return 0;
      return std::nullopt;
    }
    std::string digits;
    std::size_t offset = 0;
    if (id.rfind("zbar", 0) == 0) {
      if (!hermitian) return std::nullopt;
      digits = id.substr(4);
      offset = n;
    } else if (id.rfind("z", 0) == 0) {
      digits = id.substr(1);
    } else {
      return std::nullopt;
    }
    if (digits.empty() || digits.size() > 6) return std::nullopt;
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    }
    std::size_t k = std::stoul(digits);
    if (k < 1 || k > n) return std::nullopt;
    return offset + k - 1;
  }
};

bool starts_factor(const Parser& p, const Names& names) {
  return p.peek().kind == Token::ident && names.index(p.peek().text).has_value();
}

/// Sum of terms until ';' or the end of input.
TruncSeries parse_terms(Parser& p, const Names& names, int precision) {
  TruncSeries s(names.width(), precision);
  bool first = true;
  while (!p.at_end() && !p.is_symbol(";")) {
    int sign = 1;
    if (p.is_symbol("+") || p.is_symbol("-")) {
      sign = p.take().text == "-" ? -1 : 1;
    } else if (!first) {
      p.error("expected '+' or '-' between terms" + p.found());
    }
    first = false;
    Coef c(1);
    bool have = false;
    if (p.starts_coefficient()) {
      c = p.coefficient();
      have = true;
    }
    Multidegree m(names.width());
    while (true) {
      if (p.is_symbol("*")) {
        p.take();
        if (!starts_factor(p, names)) p.error("expected a variable after '*'" + p.found());
      }
      if (!starts_factor(p, names)) break;
      const Token& var = p.take();
      std::size_t idx = *names.index(var.text);
      long e = 1;
      if (p.is_symbol("^")) {
        p.take();
        if (p.peek().kind != Token::integer) p.error("malformed exponent" + p.found());
        e = p.integer();
        if (e < 0) Parser::error_at(var, "negative exponent");
      }
      m.set(idx, m[idx] + static_cast<int>(e));
      have = true;
    }
    if (!have) {
      if (p.peek().kind == Token::ident) p.error("unknown variable '" + p.peek().text + "'");
      p.error("expected a term" + p.found());
    }
    s.add_term(m, sign < 0 ? -c : c);
  }
  if (first) p.error("expected at least one term");
  return s;
}

TruncSeries translate(const TruncSeries& s, const std::vector<Coef>& shift) {
  // z_i -> z_i + shift_i, expanded exactly.
  const std::size_t n = s.nvars();
  TruncSeries out(n, s.precision());
  for (const auto& [j, c] : s.terms()) {
    TruncSeries term = TruncSeries::constant(n, s.precision(), c);
    for (std::size_t i = 0; i < n; ++i) {
      if (j[i] == 0) continue;
      TruncSeries lin = TruncSeries::variable(n, s.precision(), i) +
                        TruncSeries::constant(n, s.precision(), shift[i]);
      term = term * lin.pow(j[i]);
    }
    out += term;
  }
  return out;
}

std::string term_string(const Coef& c, const Multidegree& m, const std::vector<std::string>& names, bool first) {
  std::string out;
  Coef v = c;
  if (v.is_real()) {
    bool neg = sgn(v.re()) < 0;
    out += neg ? "- " : (first ? "+ " : "+ ");
    if (neg) v = -v;
  } else {
    out += "+ ";
  }
  bool unit = v == Coef(1) && m.total() > 0;
  if (!unit) out += to_string(v);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!unit) out += "*";
    unit = false;
    out += names[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

std::vector<std::string> z_names(std::size_t n, bool hermitian) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("z" + std::to_string(i));
  if (hermitian) {
    for (std::size_t i = 1; i <= n; ++i) v.push_back("zbar" + std::to_string(i));
  }
  return v;
}

void finish(Parser& p) {
  if (p.is_symbol(";")) p.take();
  if (!p.at_end()) p.error("unexpected trailing input" + p.found());
}

}  // namespace

std::string print_terms(const TruncSeries& s, const std::vector<std::string>& names) {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : s.terms()) {
    if (!first) out += " ";
    out += term_string(c, m, names, first);
    first = false;
  }
  return out;
}

TruncSeries parse_series(const std::string& text) {
  Parser p(text);
  Header h = parse_header(p, {"series"});
  TruncSeries s(h.nvars, h.precision);
  if (!p.at_end()) s = parse_terms(p, Names{h.nvars, false, false}, h.precision);
  finish(p);
  if (h.base) {
    if (h.base->size() != h.nvars) p.error("base point has the wrong number of coordinates");
    s = translate(s, *h.base);
  }
  return s;
}

std::string print_series(const TruncSeries& s) {
  return "series vars " + std::to_string(s.nvars()) + "; N=" + std::to_string(s.precision()) + ";\n" +
         print_terms(s, z_names(s.nvars(), false)) + "\n";
}

HermitianForm parse_hermitian(const std::string& text) {
  Parser p(text);
  Header h = parse_header(p, {"hermitian"});
  TruncSeries s(2 * h.nvars, h.precision);
  if (!p.at_end()) s = parse_terms(p, Names{h.nvars, true, false}, h.precision);
  finish(p);
  if (h.base) {
    if (h.base->size() != h.nvars) p.error("base point has the wrong number of coordinates");
    std::vector<Coef> shift = *h.base;
    for (const auto& c : *h.base) shift.push_back(c.conj());
    s = translate(s, shift);
  }
  return HermitianForm::from_series(h.nvars, std::move(s));
}

std::string print_hermitian(const HermitianForm& r) {
  return "hermitian vars " + std::to_string(r.nvars()) + "; N=" + std::to_string(r.precision()) + ";\n" +
         print_terms(r.series(), z_names(r.nvars(), true)) + "\n";
}

FormalCurve parse_curve(const std::string& text) {
  Parser p(text);
  Header h = parse_header(p, {"curve"});
  std::vector<std::optional<UniSeries>> comps(h.nvars);
  Names zn{h.nvars, false, false};
  while (!p.at_end()) {
    if (p.peek().kind != Token::ident || !zn.index(p.peek().text)) p.error("expected a coordinate name" + p.found());
    const Token& var = p.take();
    std::size_t idx = *zn.index(var.text);
    if (comps[idx]) Parser::error_at(var, "coordinate " + var.text + " given twice");
    p.expect_symbol("=");
    TruncSeries s = parse_terms(p, Names{1, false, true}, h.precision);
    p.expect_symbol(";");
    if (!s.constant_term().is_zero()) Parser::error_at(var, "curve component " + var.text + " does not vanish at t = 0");
    comps[idx] = UniSeries::from_trunc(s);
  }
  std::vector<UniSeries> out;
  for (auto& c : comps) out.push_back(c ? std::move(*c) : UniSeries(h.precision));
  return FormalCurve(std::move(out));
}

std::string print_curve(const FormalCurve& c) {
  std::string out = "curve vars " + std::to_string(c.dim()) + "; N=" + std::to_string(c.precision()) + ";\n";
  for (std::size_t i = 0; i < c.dim(); ++i) {
    out += "z" + std::to_string(i + 1) + " = " + print_terms(c[i].truncated(c.precision()).to_trunc(), {"t"}) + ";\n";
  }
  return out;
}

IdealPresentation parse_ideal(const std::string& text) {
  Parser p(text);
  Header h = parse_header(p, {"ideal"});
  Names zn{h.nvars, false, false};
  std::vector<TruncSeries> gens;
  std::optional<long> nfk;
  std::optional<TruncSeries> pk;
  std::vector<std::pair<std::size_t, TruncSeries>> qs;
  auto restrict_to = [&](const TruncSeries& s, std::size_t k, const Token& at) {
    TruncSeries out(k, s.precision());
    for (const auto& [m, c] : s.terms()) {
      for (std::size_t i = k; i < m.size(); ++i) {
        if (m[i] != 0) Parser::error_at(at, "term uses z" + std::to_string(i + 1) + " outside z1..z" + std::to_string(k));
      }
      out.add_term(Multidegree(std::vector<int>(m.exponents().begin(), m.exponents().begin() + static_cast<long>(k))), c);
    }
    return out;
  };
  while (!p.at_end()) {
    const Token& kw = p.peek();
    if (p.is_ident("gen")) {
      p.take();
      gens.push_back(parse_terms(p, zn, h.precision));
      p.expect_symbol(";");
    } else if (p.is_ident("normal_form")) {
      p.take();
      p.expect_ident("k");
      p.expect_symbol("=");
      long k = p.integer();
      if (k < 0 || static_cast<std::size_t>(k) + 1 > h.nvars) Parser::error_at(kw, "normal form needs 0 <= k < n");
      nfk = k;
      p.expect_symbol(";");
    } else if (p.is_ident("p")) {
      if (!nfk) p.error("'p' before 'normal_form'");
      p.take();
      pk = restrict_to(parse_terms(p, zn, h.precision), static_cast<std::size_t>(*nfk) + 1, kw);
      p.expect_symbol(";");
    } else if (p.is_ident("Q")) {
      if (!nfk) p.error("'Q' before 'normal_form'");
      p.take();
      long j = p.integer();
      if (j <= *nfk + 1 || static_cast<std::size_t>(j) > h.nvars) Parser::error_at(kw, "relation index out of range");
      p.expect_symbol("=");
      qs.emplace_back(static_cast<std::size_t>(j - 1),
                      restrict_to(parse_terms(p, zn, h.precision), static_cast<std::size_t>(*nfk) + 1, kw));
      p.expect_symbol(";");
    } else {
      p.error("expected 'gen', 'normal_form', 'p' or 'Q'" + p.found());
    }
  }
  std::optional<NormalForm> nf;
  if (nfk) {
    if (!pk) p.error("normal form without 'p'");
    // Every series in the file is known through N, including the w-coefficients of p.
    WeierstrassPoly split = WeierstrassPoly::from_series(*pk);
    std::vector<TruncSeries> lower;
    for (const auto& b : split.lower()) {
      TruncSeries full(b.nvars(), h.precision);
      for (const auto& [m, c] : b.terms()) full.add_term(m, c);
      lower.push_back(std::move(full));
    }
    nf = make_normal_form(h.nvars, WeierstrassPoly(split.base_vars(), std::move(lower)), qs);
    if (gens.empty()) gens = nf->associated_generators();
  }
  return IdealPresentation(h.nvars, std::move(gens), std::move(nf), h.precision);
}

std::string print_ideal(const IdealPresentation& ideal) {
  auto names = z_names(ideal.nvars(), false);
  std::string out = "ideal vars " + std::to_string(ideal.nvars()) + "; N=" + std::to_string(ideal.precision()) + ";\n";
  for (const auto& g : ideal.generators()) out += "gen " + print_terms(g, names) + ";\n";
  if (const auto& nf = ideal.normal_form()) {
    std::vector<std::string> head(names.begin(), names.begin() + static_cast<long>(nf->k) + 1);
    out += "normal_form k=" + std::to_string(nf->k) + ";\n";
    out += "p " + print_terms(nf->p.to_series(), head) + ";\n";
    for (const auto& rel : nf->relations) {
      out += "Q " + std::to_string(rel.j + 1) + " = " + print_terms(rel.Q, head) + ";\n";
    }
    std::vector<std::string> base(names.begin(), names.begin() + static_cast<long>(nf->k));
    out += "# D = " + (nf->k == 0 ? to_string(nf->discriminant.constant_term()) : print_terms(nf->discriminant, base)) + "\n";
  }
  return out;
}

UnitaryBlock parse_unitary(const std::string& text) {
  Parser p(text);
  if (p.is_ident("unitary")) p.take();
  p.expect_ident("k");
  p.expect_symbol("=");
  long k = p.integer();
  if (k < 0) p.error("block size must be non-negative");
  p.expect_symbol(";");
  std::size_t kk = static_cast<std::size_t>(k);
  std::vector<Coef> exact;
  std::vector<std::complex<double>> flt;
  std::optional<double> tol;
  std::optional<bool> is_exact;
  while (!p.at_end()) {
    const Token& kw = p.peek();
    if (p.is_ident("tolerance")) {
      p.take();
      tol = p.floating();
      p.expect_symbol(";");
      continue;
    }
    bool row = p.is_ident("row");
    bool rowf = p.is_ident("rowf");
    if (!row && !rowf) p.error("expected 'row' or 'rowf'" + p.found());
    if (is_exact && *is_exact != row) Parser::error_at(kw, "mixed exact and floating rows");
    is_exact = row;
    p.take();
    for (std::size_t j = 0; j < kk; ++j) {
      if (row) {
        int sign = 1;
        if (p.is_symbol("-")) {
          p.take();
          sign = -1;
        }
        Coef c = p.coefficient();
        exact.push_back(sign < 0 ? -c : c);
      } else {
        double re = p.floating();
        double im = p.floating();
        flt.emplace_back(re, im);
      }
    }
    p.expect_symbol(";");
  }
  UnitaryBlock u;
  u.k = kk;
  if (is_exact.value_or(true)) {
    if (exact.size() != kk * kk) p.error("expected " + std::to_string(kk) + " rows");
    u = UnitaryBlock::from_exact(kk, std::move(exact));
    if (!u.is_exact_unitary()) fail(ErrorKind::invalid_input, "block is not unitary");
  } else {
    if (flt.size() != kk * kk) p.error("expected " + std::to_string(kk) + " rows");
    u.exact = false;
    u.entries_f = std::move(flt);
    u.tolerance = tol.value_or(1e-10);
    if (u.unitarity_defect() > std::max(u.tolerance, 1e-10)) {
      fail(ErrorKind::invalid_input, "floating block is not unitary within tolerance");
    }
  }
  return u;
}

std::string print_unitary(const UnitaryBlock& u) {
  std::string out = "unitary k=" + std::to_string(u.k) + ";\n";
  char buf[64];
  if (!u.exact) {
    std::snprintf(buf, sizeof buf, "%.17g", u.tolerance);
    out += std::string("tolerance ") + buf + ";\n";
  }
  for (std::size_t i = 0; i < u.k; ++i) {
    out += u.exact ? "row" : "rowf";
    for (std::size_t j = 0; j < u.k; ++j) {
      if (u.exact) {
        out += " " + to_string(u.at(i, j));
      } else {
        auto c = u.at_f(i, j);
        std::snprintf(buf, sizeof buf, " %.17g %.17g", c.real(), c.imag());
        out += buf;
      }
    }
    out += ";\n";
  }
  return out;
}

const std::string* Certificate::field(const std::string& key) const {
  for (const auto& [k, v] : fields) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::string* Certificate::section(const std::string& name) const {
  for (const auto& [k, v] : sections) {
    if (k == name) return &v;
  }
  return nullptr;
}

void Certificate::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : fields) {
    if (k == key) {
      v = value;
      return;
    }
  }
  fields.emplace_back(key, value);
}

void Certificate::add_section(const std::string& name, const std::string& body) { sections.emplace_back(name, body); }

static constexpr const char* kCertHeader = "germforge-certificate v1";

Certificate parse_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  Certificate c;
  bool header = false;
  std::optional<std::string> open;
  std::string body;
  while (std::getline(in, line)) {
    ++lineno;
    if (open) {
      if (line == "end") {
        c.sections.emplace_back(*open, body);
        open.reset();
        body.clear();
      } else {
        body += line + "\n";
      }
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kCertHeader) throw ParseError(lineno, 1, "missing certificate header '" + std::string(kCertHeader) + "'");
      header = true;
      continue;
    }
    auto sp = line.find(' ');
    std::string key = line.substr(0, sp);
    std::string value = sp == std::string::npos ? "" : line.substr(sp + 1);
    if (key == "begin") {
      if (value.empty()) throw ParseError(lineno, 1, "section without a name");
      open = value;
    } else if (key == "kind") {
      c.kind = value;
    } else {
      c.fields.emplace_back(key, value);
    }
  }
  if (!header) throw ParseError(lineno + 1, 1, "empty certificate");
  if (open) throw ParseError(lineno + 1, 1, "section '" + *open + "' not closed");
  return c;
}

std::string print_certificate(const Certificate& c) {
  std::string out = std::string(kCertHeader) + "\n";
  out += "kind " + c.kind + "\n";
  for (const auto& [k, v] : c.fields) out += k + " " + v + "\n";
  for (const auto& [name, body] : c.sections) {
    out += "begin " + name + "\n" + body;
    if (!body.empty() && body.back() != '\n') out += "\n";
    out += "end\n";
  }
  return out;
}

}  // namespace germforge

namespace germforge {

std::string print_decomposition(const Decomposition& d) {
  auto names = z_names(d.nvars, false);
  std::string out = "h " + print_terms(d.h, names) + "\n";
  out += "families " + std::to_string(d.families.size()) + "\n";
  for (const auto& fam : d.families) {
    out += "J " + to_string(fam.index) + "\n";
    out += "  f " + print_terms(fam.f, names) + "\n";
    out += "  g " + print_terms(fam.g, names) + "\n";
  }
  return out;
}

std::string print_codim(const CodimReport& report, std::size_t nvars) {
  std::string out = "dims";
  for (long v : report.dims) out += " " + std::to_string(v);
  out += "\n";
  if (report.finite) {
    out += "verdict finite\nvalue " + std::to_string(report.value) + "\nlevel " + std::to_string(report.level) + "\n";
    auto names = z_names(nvars, false);
    for (const auto& c : report.certificates) {
      out += "power " + names[c.variable] + "^" + std::to_string(c.exponent) + " jet " + std::to_string(c.jet_level) +
             " terms " + std::to_string(c.combination.size()) + "\n";
      for (const auto& t : c.combination) {
        out += "  g" + std::to_string(t.generator + 1) + " * " + to_string(t.coefficient);
        for (std::size_t i = 0; i < t.monomial.size(); ++i) {
          if (t.monomial[i] == 0) continue;
          out += "*" + names[i];
          if (t.monomial[i] > 1) out += "^" + std::to_string(t.monomial[i]);
        }
        out += "\n";
      }
    }
  } else {
    out += "verdict unresolved\nlower_bound " + std::to_string(report.value) + "\n";
  }
  if (!report.note.empty()) out += "note " + report.note + "\n";
  return out;
}

std::string print_branch(const PuiseuxBranch& b) {
  std::string out = "ramification " + std::to_string(b.ramification) + " multiplicity " +
                    std::to_string(b.multiplicity) + (b.exact ? " exact" : " floating") + " precision " +
                    std::to_string(b.precision) + "\n";
  if (b.exact) {
    out += "t = " + print_terms(TruncSeries::monomial(1, b.ramification, Multidegree({b.ramification}), b.scale), {"tau"}) + "\n";
    out += "w = " + print_terms(b.w.to_trunc(), {"tau"}) + "\n";
    out += "residual_order " + std::string(b.residual.lower_bound ? ">= " : "") + std::to_string(b.residual.value) + "\n";
  } else {
    char buf[96];
    std::snprintf(buf, sizeof buf, "t = (%.17g %.17g)*tau^%d\n", b.scale_f.real(), b.scale_f.imag(), b.ramification);
    out += buf;
    out += "w =";
    for (std::size_t m = 0; m < b.w_f.size(); ++m) {
      if (std::abs(b.w_f[m]) <= b.tolerance) continue;
      std::snprintf(buf, sizeof buf, " + (%.17g %.17g)*tau^%zu", b.w_f[m].real(), b.w_f[m].imag(), m);
      out += buf;
    }
    out += "\n";
    std::snprintf(buf, sizeof buf, "tolerance %.17g\nresidual_max %.17g\n", b.tolerance, b.residual_max);
    out += buf;
  }
  return out;
}

}  // namespace germforge
