#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germforge/error.hpp"
#include "germforge/io.hpp"
#include "germforge/weierstrass.hpp"
#include "support.hpp"

using namespace germforge;

namespace {

bool same_ideal(const IdealPresentation& a, const IdealPresentation& b) {
  if (a.nvars() != b.nvars() || a.precision() != b.precision() || a.generators() != b.generators()) return false;
  if (a.normal_form().has_value() != b.normal_form().has_value()) return false;
  if (!a.normal_form()) return true;
  const NormalForm& x = *a.normal_form();
  const NormalForm& y = *b.normal_form();
  if (x.k != y.k || !(x.p == y.p) || !(x.discriminant == y.discriminant) || x.relations.size() != y.relations.size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.relations.size(); ++i) {
    if (x.relations[i].j != y.relations[i].j || !(x.relations[i].Q == y.relations[i].Q) ||
        !(x.relations[i].q == y.relations[i].q)) {
      return false;
    }
  }
  return true;
}

template <class F>
ParseError parse_error(F f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("reading a defining function") {
  HermitianForm r = parse_hermitian("vars 2; N=8; + 1 z2 + 1 zbar2 + 1 z1 zbar1");
  HermitianForm want = two_re(TruncSeries::variable(2, 8, 1)) + abs_squared(TruncSeries::variable(2, 8, 0));
  CHECK(r == want);
  CHECK(r.precision() == 8);

  HermitianForm c = parse_hermitian(
      "# comment line\n"
      "hermitian vars 1; N=6;\n"
      "+ (1/2+i) z1^2 zbar1 + (1/2-i)*z1*zbar1^2   # conjugate pair\n"
      "- 3/4 z1 zbar1\n");
  CHECK(c.coeff(Multidegree({2}), Multidegree({1})) == Coef(Rational(1, 2), Rational(1)));
  CHECK(c.coeff(Multidegree({1}), Multidegree({1})) == Coef(Rational(-3, 4)));
}

TEST_CASE("parse errors carry positions") {
  ParseError e = parse_error([] { parse_hermitian("vars 2; N=8;\n+ 1 z1^ zbar1"); });
  CHECK(e.line() == 2);
  CHECK(e.column() == 9);
  ParseError d = parse_error([] { parse_series("vars 1; N=4; + 0.5 z1"); });
  CHECK(d.line() == 1);
  CHECK(d.column() == 16);
  CHECK(std::string(d.what()).find("decimal") != std::string::npos);
  ParseError u = parse_error([] { parse_series("vars 1; N=4; + z3"); });
  CHECK(std::string(u.what()).find("z3") != std::string::npos);
  CHECK_THROWS_AS(parse_series("vars 1; N=0;"), ParseError);
  CHECK_THROWS_AS(parse_series("vars 1 N=3;"), ParseError);
}

TEST_CASE("reality violations name the term") {
  try {
    parse_hermitian("vars 2; N=8; + 1 z1 zbar2");
    FAIL("expected a reality error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::reality);
    CHECK(std::string(e.what()).find("(1,0)") != std::string::npos);
  }
}

TEST_CASE("base points move the germ to the origin") {
  TruncSeries s = parse_series("vars 1; N=4; base (1); + z1^2");
  TruncSeries want(1, 4);
  want.add_term(Multidegree({0}), Coef(1));
  want.add_term(Multidegree({1}), Coef(2));
  want.add_term(Multidegree({2}), Coef(1));
  CHECK(s == want);
  HermitianForm r = parse_hermitian("vars 1; N=4; base (i); + z1 zbar1");
  // |z + i|^2 = |z|^2 - i z + i zbar + 1
  CHECK(r.coeff(Multidegree({1}), Multidegree({0})) == -Coef::imag_unit());
  CHECK(r.coeff(Multidegree({0}), Multidegree({0})) == Coef(1));
}

TEST_CASE("round trips on random values") {
  oracle::Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    TruncSeries s(n, rng.uniform(1, 9));
    for (int k = 0; k < 6; ++k) s.add_term(Multidegree(rng.exponents(n, s.precision())), rng.gaussian(9, 7));
    CHECK(parse_series(print_series(s)) == s);

    HermitianForm r = oracle::random_real_form(rng, n, 6, 4, 8);
    CHECK(parse_hermitian(print_hermitian(r)) == r);

    FormalCurve z = oracle::random_curve(rng, n, 5, 9);
    CHECK(parse_curve(print_curve(z)) == z);

    std::vector<TruncSeries> gens;
    for (int g = 0; g < 2; ++g) {
      TruncSeries x(n, 10);
      auto e = rng.exponents(n, 4);
      if (oracle::degree_of(e) == 0) e[0] = 1;
      x.add_term(Multidegree(e), rng.nonzero_gaussian());
      gens.push_back(x);
    }
    IdealPresentation I(n, gens, std::nullopt, 10);
    CHECK(same_ideal(parse_ideal(print_ideal(I)), I));

    std::size_t k = static_cast<std::size_t>(rng.uniform(1, 3));
    auto m = oracle::cayley_unitary(rng, k);
    std::vector<Coef> flat;
    for (const auto& row : m) flat.insert(flat.end(), row.begin(), row.end());
    UnitaryBlock u = UnitaryBlock::from_exact(k, flat);
    UnitaryBlock back = parse_unitary(print_unitary(u));
    CHECK(back.exact);
    CHECK(back.entries == u.entries);
  }
}

TEST_CASE("normal forms round trip and derive D") {
  std::string text =
      "ideal vars 3; N=20;\n"
      "normal_form k=1;\n"
      "p + z2^2 - z1^2;\n"
      "Q 3 = + 4*z1^2*z2;\n";
  IdealPresentation I = parse_ideal(text);
  REQUIRE(I.normal_form());
  CHECK(I.normal_form()->discriminant == TruncSeries::monomial(1, 20, Multidegree({2}), Coef(4)));
  CHECK(I.generators().size() == 2);
  CHECK(same_ideal(parse_ideal(print_ideal(I)), I));
  CHECK_THROWS_AS(parse_ideal("ideal vars 3; N=20; normal_form k=1; p + z2^2 - z3^2;"), ParseError);
}

TEST_CASE("floating unitary blocks keep full precision") {
  UnitaryBlock u;
  u.k = 2;
  u.exact = false;
  double s = std::sqrt(0.5);
  u.entries_f = {{s, 0}, {s, 0}, {s, 0}, {-s, 0}};
  u.tolerance = 1e-12;
  UnitaryBlock back = parse_unitary(print_unitary(u));
  CHECK(!back.exact);
  CHECK(back.entries_f == u.entries_f);
  CHECK(back.tolerance == u.tolerance);
  CHECK_THROWS_AS(parse_unitary("unitary k=2; row 1 1; row 0 1;"), Error);
}

TEST_CASE("certificates round trip") {
  Certificate c;
  c.kind = "witness";
  c.set("order", "40");
  c.set("status", "certified");
  c.add_section("input", "hermitian vars 1; N=4;\n+ z1 + zbar1\n");
  c.add_section("curve", "curve vars 1; N=4;\nz1 = + t;\n");
  Certificate back = parse_certificate(print_certificate(c));
  CHECK(back.kind == c.kind);
  CHECK(back.fields == c.fields);
  CHECK(back.sections == c.sections);
  CHECK(print_certificate(back) == print_certificate(c));
  CHECK_THROWS_AS(parse_certificate("kind x\n"), ParseError);
  CHECK_THROWS_AS(parse_certificate("germforge-certificate v1\nbegin input\nfoo\n"), ParseError);
}
