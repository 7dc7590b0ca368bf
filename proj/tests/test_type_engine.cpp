#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "germforge/error.hpp"
#include "germforge/type_engine.hpp"
#include "germforge/unitary.hpp"
#include "support.hpp"

using namespace germforge;

namespace {

Multidegree md(std::vector<int> e) { return Multidegree(std::move(e)); }

UniSeries mono(int prec, int e, Coef c = Coef(1)) { return UniSeries::monomial(prec, e, c); }

/// 2 Re z_n + |z1|^{2m}.
HermitianForm model(std::size_t n, int m, int prec) {
  HermitianForm r(n, prec);
  std::vector<int> last(n, 0);
  last[n - 1] = 1;
  r.add_real_term(md(last), md(std::vector<int>(n, 0)), Coef(1));
  std::vector<int> p(n, 0);
  p[0] = m;
  r.add_real_term(md(p), md(p), Coef(1));
  return r;
}

HermitianForm worked(int prec) {
  HermitianForm r(3, prec);
  r.add_real_term(md({0, 0, 1}), md({0, 0, 0}), Coef(1));
  TruncSeries z1 = TruncSeries::variable(3, prec, 0);
  TruncSeries z2 = TruncSeries::variable(3, prec, 1);
  return r + abs_squared(z1 * z1 - z2 * z2 * z2);
}

FormalCurve cusp_curve(int prec, std::optional<int> bump = std::nullopt) {
  UniSeries z3(prec);
  if (bump) z3 = mono(prec, *bump);
  return FormalCurve({mono(prec, 3), mono(prec, 2), z3});
}

/// Lowest-degree (t, tbar) coefficient of zeta^* r from the oracle.
int oracle_order(const HermitianForm& r, const FormalCurve& z, int maxdeg) {
  std::vector<oracle::Uni> comps;
  for (std::size_t i = 0; i < z.dim(); ++i) comps.push_back(z[i].coeffs());
  oracle::Poly p = oracle::hermitian_pullback(oracle::from_series(r.series()), r.nvars(), comps, maxdeg);
  int best = maxdeg + 1;
  for (const auto& [e, c] : p) best = std::min(best, oracle::degree_of(e));
  return best;
}

}  // namespace

TEST_CASE("ratios from direct expansion") {
  HermitianForm r4 = model(2, 2, 20);
  FormalCurve line({mono(20, 1), UniSeries(20)});
  TypeRatio t = dangelo_ratio(r4, line);
  CHECK(t.value == 4);
  CHECK(!t.lower_bound());
  CHECK(t.numerator.value == oracle_order(r4, line, 20));
  CHECK(t.denominator == 1);

  HermitianForm r2 = model(2, 1, 20);
  CHECK(dangelo_ratio(r2, line).value == 2);

  TypeRatio w = dangelo_ratio(worked(20), cusp_curve(40));
  CHECK(w.lower_bound());
  CHECK(w.denominator == 2);
  CHECK(oracle_order(worked(20), cusp_curve(40), 40) == 41);
}

TEST_CASE("witness checks") {
  HermitianForm r = worked(50);
  WitnessResult ok = witness_check(r, cusp_curve(60), 50);
  CHECK(ok.certified);
  CHECK(ok.order_verified == 50);

  WitnessResult bad = witness_check(r, cusp_curve(120, 99), 100);
  CHECK(!bad.certified);
  CHECK(bad.first_degree == 99);
  CHECK(bad.coefficient == Coef(1));

  HermitianForm lin(1, 10);
  lin.add_real_term(md({1}), md({0}), Coef(1));
  WitnessResult five = witness_check(lin, FormalCurve({mono(10, 5)}), 8);
  CHECK(!five.certified);
  CHECK(five.first_degree == 5);

  CHECK_THROWS_AS(witness_check(r, cusp_curve(30), 50), Error);
}

TEST_CASE("monomial curve search") {
  SUBCASE("|z1|^6") {
    auto hits = monomial_curve_search(model(2, 3, 20), 3, 2);
    REQUIRE(!hits.empty());
    CHECK(hits.front().ratio.value == 6);
    CHECK(hits.front().exponents == std::vector<int>{1, 0});
    // A hand enumeration over the exponent tuples: (a, b) with b >= 1 gives
    // order b from 2 Re z2, (a, 0) gives 6a / a = 6.
    for (const auto& h : hits) CHECK(h.ratio.value <= 6);
  }
  SUBCASE("worked example") {
    auto hits = monomial_curve_search(worked(30), 3, 2);
    REQUIRE(!hits.empty());
    CHECK(hits.front().ratio.lower_bound());
    CHECK(hits.front().exponents == std::vector<int>{3, 2, 0});
    CHECK(witness_check(worked(30), hits.front().curve, 30).certified);
  }
  SUBCASE("difference of squares") {
    HermitianForm r(2, 12);
    r.add_real_term(md({1, 0}), md({1, 0}), Coef(1));
    r.add_real_term(md({0, 1}), md({0, 1}), Coef(-1));
    auto hits = monomial_curve_search(r, 3, 2);
    REQUIRE(!hits.empty());
    CHECK(hits.front().ratio.lower_bound());
    CHECK(hits.front().exponents == std::vector<int>{1, 1});
    CHECK(pullback(r, hits.front().curve).is_zero());
  }
}

TEST_CASE("search never overstates a ratio") {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, 3));
    HermitianForm r = model(n, rng.uniform(1, 3), 16) + oracle::random_real_form(rng, n, 5, 2, 16);
    for (const auto& h : monomial_curve_search(r, 2, 1)) {
      TypeRatio again = dangelo_ratio(r, h.curve);
      CHECK(again.value == h.ratio.value);
    }
  }
}

TEST_CASE("unitary matching") {
  SUBCASE("identity") {
    MatchResult m = match_unitary({{Coef(1), Coef(0)}}, {{Coef(1), Coef(0)}});
    REQUIRE(m.unitary);
    CHECK(m.unitary->exact);
    CHECK(m.unitary->apply({Coef(1), Coef(0)}) == std::vector<Coef>{Coef(1), Coef(0)});
    CHECK(m.unitary->is_exact_unitary());
  }
  SUBCASE("spanning jets force an exact block") {
    // U = [[3/5, -4/5], [4/5, 3/5]] applied to two independent vectors.
    JetVectors g{{Coef(1), Coef(0)}, {Coef(1), Coef(2)}};
    JetVectors f{{Coef(Rational(3, 5)), Coef(Rational(4, 5))}, {Coef(-1), Coef(2)}};
    MatchResult m = match_unitary(f, g);
    REQUIRE(m.unitary);
    CHECK(m.unitary->exact);
    CHECK(m.unitary->is_exact_unitary());
    CHECK(m.unitary->at(0, 1) == Coef(Rational(-4, 5)));
  }
  SUBCASE("phase") {
    MatchResult m = match_unitary({{Coef::imag_unit()}}, {{Coef(1)}});
    REQUIRE(m.unitary);
    CHECK(m.unitary->exact);
    CHECK(m.unitary->at(0, 0) == Coef::imag_unit());
  }
  SUBCASE("rank one with irrational completion") {
    JetVectors f{{Coef(1), Coef(1)}};
    JetVectors g{{Coef(1), Coef(-1)}};
    MatchResult m = match_unitary(f, g);
    REQUIRE(m.unitary);
    double resid = 0;
    for (std::size_t i = 0; i < 2; ++i) {
      std::complex<double> s = 0;
      for (std::size_t j = 0; j < 2; ++j) {
        std::complex<double> u = m.unitary->exact ? m.unitary->at(i, j).to_complex() : m.unitary->at_f(i, j);
        s += u * g[0][j].to_complex();
      }
      resid = std::max(resid, std::abs(s - f[0][i].to_complex()));
    }
    CHECK(resid <= 1e-10);
    CHECK(m.unitary->unitarity_defect() <= 1e-10);
  }
  SUBCASE("gram mismatch") {
    MatchResult m = match_unitary({{Coef(1), Coef(1)}}, {{Coef(1), Coef(0)}});
    CHECK(!m.unitary);
    REQUIRE(m.mismatch);
    CHECK(m.mismatch->gram_f == Coef(2));
    CHECK(m.mismatch->gram_g == Coef(1));
  }
}

TEST_CASE("ideal of a decomposition") {
  HermitianForm plain(2, 6);
  plain.add_real_term(md({0, 1}), md({0, 0}), Coef(1));
  Decomposition dp = decompose(plain, 6);
  IdealPresentation ip = build_ideal(dp, UnitaryBlock::identity(0));
  REQUIRE(ip.generators().size() == 1);
  CHECK(ip.generators()[0] == TruncSeries::variable(2, 6, 1));

  HermitianForm diff(2, 6);
  diff.add_real_term(md({1, 0}), md({1, 0}), Coef(1));
  diff.add_real_term(md({0, 1}), md({0, 1}), Coef(-1));
  Decomposition dd = decompose(diff, 6);
  REQUIRE(dd.families.size() == 2);
  UnitaryBlock swap = UnitaryBlock::from_exact(2, {Coef(0), Coef(1), Coef(1), Coef(0)});
  IdealPresentation is = build_ideal(dd, swap);
  TruncSeries line = TruncSeries::variable(2, 6, 0) - TruncSeries::variable(2, 6, 1);
  for (const auto& g : is.generators()) {
    // Every generator is a multiple of z1 - z2 (direct substitution z1 = z2 kills it).
    TruncSeries on_line = compose(g, {TruncSeries::variable(1, 6, 0), TruncSeries::variable(1, 6, 0)});
    CHECK(on_line.is_zero());
  }
  CHECK(membership_jet(line, is, 4).member);

  Decomposition dw = decompose(worked(12), 12);
  IdealPresentation iw = build_ideal(dw, UnitaryBlock::identity(dw.families.size()));
  TruncSeries z1 = TruncSeries::variable(3, 12, 0);
  TruncSeries z2 = TruncSeries::variable(3, 12, 1);
  CHECK(membership_jet(TruncSeries::variable(3, 12, 2), iw, 8).member);
  CHECK(membership_jet(z1 * z1 - z2 * z2 * z2, iw, 8).member);

  UnitaryBlock f = UnitaryBlock::identity(2);
  f.exact = false;
  f.entries_f.assign(4, {0.0, 0.0});
  CHECK_THROWS_AS(build_ideal(dw, f), Error);
  CHECK_THROWS_AS(build_ideal(dw, UnitaryBlock::identity(1)), Error);
}

TEST_CASE("norm chain") {
  HermitianForm r = worked(40);
  Decomposition d = decompose(r, 40);
  UnitaryBlock id = UnitaryBlock::identity(d.families.size());
  EquivalenceReport ok = equivalence_check(d, id, cusp_curve(40), 40);
  CHECK(ok.holds);
  CHECK(witness_check(r, cusp_curve(40), 40).certified);
  EquivalenceReport bad = equivalence_check(d, id, cusp_curve(40, 7), 40);
  CHECK(!bad.holds);
  CHECK(!witness_check(r, cusp_curve(40, 7), 40).certified);

  Decomposition zero = decompose(HermitianForm(2, 10), 10);
  FormalCurve any({mono(10, 1), mono(10, 3)});
  CHECK(equivalence_check(zero, UnitaryBlock::identity(0), any, 10).holds);
  CHECK(equivalence_check(zero, UnitaryBlock::from_exact(2, {Coef(0), Coef(1), Coef(1), Coef(0)}), any, 10).holds);
}

TEST_CASE("matching on the jets of a witness") {
  HermitianForm r = worked(30);
  Decomposition d = decompose(r, 30);
  FormalCurve z = cusp_curve(30);
  for (int m : {6, 12, 20}) {
    auto [fv, gv] = jet_vectors(d, z, m);
    MatchResult mr = match_unitary(fv, gv);
    REQUIRE(mr.unitary);
    for (std::size_t k = 0; k < fv.size(); ++k) {
      if (mr.unitary->exact) CHECK(mr.unitary->apply(gv[k]) == fv[k]);
    }
  }
}

TEST_CASE("reparametrization invariance of finite ratios") {
  oracle::Rng rng(33);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    HermitianForm r = model(n, rng.uniform(1, 3), 12) + oracle::random_real_form(rng, n, 4, 2, 12);
    FormalCurve z = oracle::random_curve(rng, n, 3, 12);
    TypeRatio base = dangelo_ratio(r, z);
    if (base.lower_bound()) continue;
    ++checked;
    for (int m = 2; m <= 5; ++m) {
      TypeRatio t = dangelo_ratio(r, reparametrize(z, m));
      CHECK(!t.lower_bound());
      CHECK(t.value == base.value);
      CHECK(t.numerator.value == m * base.numerator.value);
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("worker count honours the environment") {
  setenv("GERMFORGE_THREADS", "2", 1);
  CHECK(worker_count() == 2);
  CHECK(worker_count(1) == 1);
  unsetenv("GERMFORGE_THREADS");
  CHECK(worker_count() >= 1);
}
