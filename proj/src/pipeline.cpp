#include "germforge/pipeline.hpp"

#include <algorithm>
#include <map>

#include "germforge/error.hpp"
#include "germforge/puiseux.hpp"
#include "germforge/weierstrass.hpp"

namespace germforge {

std::optional<Command> command_from_string(const std::string& name) {
  static const std::map<std::string, Command> table = {
      {"decompose", Command::decompose}, {"ratio", Command::ratio},     {"witness", Command::witness},
      {"search", Command::search},       {"codim", Command::codim},     {"puiseux", Command::puiseux},
      {"lift", Command::lift},           {"pipeline", Command::pipeline}};
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

void JobSpec::validate() const {
  if (precision < 1) fail(ErrorKind::invalid_input, "precision N must be at least 1");
  if (max_exponent < 0 || coeff_degree < 0 || maxnu < 0 || bound < 0) {
    fail(ErrorKind::invalid_input, "bounds must be non-negative");
  }
}

namespace {

struct StageFailure {
  std::string stage;
  std::string message;
};

std::string rational_string(const Rational& q) { return to_string(Coef(q)); }

std::string ratio_string(const TypeRatio& r) {
  return rational_string(r.value) + (r.lower_bound() ? " lower_bound" : "");
}

TruncSeries restrict_vars(const TruncSeries& s, const std::vector<std::size_t>& keep) {
  TruncSeries out(keep.size(), s.precision());
  for (const auto& [m, c] : s.terms()) {
    std::vector<int> e(keep.size());
    int used = 0;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      e[i] = m[keep[i]];
      used += e[i];
    }
    if (used != m.total()) fail(ErrorKind::invalid_input, "series involves an eliminated variable");
    out.add_term(Multidegree(e), c);
  }
  return out;
}

struct Elimination {
  std::size_t var;
  TruncSeries phi;  // z_var = phi(other variables)
};

/// Repeatedly solves generators of the form c z_j + (terms free of z_j).
std::vector<Elimination> eliminate_linear(std::vector<TruncSeries>& gens, std::vector<bool>& is_free) {
  std::vector<Elimination> out;
  bool found = true;
  while (found) {
    found = false;
    for (std::size_t gi = 0; gi < gens.size() && !found; ++gi) {
      const TruncSeries& g = gens[gi];
      const std::size_t n = g.nvars();
      for (std::size_t j = 0; j < n && !found; ++j) {
        if (!is_free[j]) continue;
        Coef c = g.coeff(Multidegree::unit(n, j));
        if (c.is_zero()) continue;
        TruncSeries rest = g - TruncSeries::variable(n, g.precision(), j) * c;
        bool clean = true;
        for (const auto& [m, v] : rest.terms()) {
          if (m[j] != 0) {
            clean = false;
            break;
          }
        }
        if (!clean) continue;
        TruncSeries phi = rest * (-c.inverse());
        std::vector<TruncSeries> subs;
        for (std::size_t i = 0; i < n; ++i) {
          subs.push_back(i == j ? phi : TruncSeries::variable(n, g.precision(), i));
        }
        std::vector<TruncSeries> next;
        for (std::size_t k = 0; k < gens.size(); ++k) {
          if (k == gi) continue;
          TruncSeries s = compose(gens[k], subs);
          if (!s.is_zero()) next.push_back(std::move(s));
        }
        gens = std::move(next);
        is_free[j] = false;
        out.push_back({j, std::move(phi)});
        found = true;
      }
    }
  }
  return out;
}

/// Fills the eliminated coordinates of a curve given on the free ones.
FormalCurve back_substitute(std::vector<UniSeries> comps, const std::vector<Elimination>& elim) {
  for (auto it = elim.rbegin(); it != elim.rend(); ++it) {
    comps[it->var] = pullback(it->phi, FormalCurve(comps));
  }
  return FormalCurve(std::move(comps));
}

struct CurveAttempt {
  std::optional<FormalCurve> curve;
  std::string note;
};

/// Curves on the zero set of a principal ideal (g) in m variables, via
/// preparation in the variable of least regular order.
std::vector<FormalCurve> principal_curves(const TruncSeries& g, int n, bool exact_only, std::string& note) {
  const std::size_t m = g.nvars();
  std::optional<int> best;
  std::size_t pick = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> map(m);
    for (std::size_t a = 0, pos = 0; a < m; ++a) map[a] = a == i ? m - 1 : pos++;
    auto l = regular_order(embed(g, m, map));
    if (l && (!best || *l < *best)) {
      best = l;
      pick = i;
    }
  }
  if (!best) {
    note = "generator is not regular in any coordinate";
    return {};
  }
  std::vector<std::size_t> map(m);
  for (std::size_t a = 0, pos = 0; a < m; ++a) map[a] = a == pick ? m - 1 : pos++;
  Preparation prep = weierstrass_prepare(embed(g, m, map), -1);
  Restriction res = generic_restrict(prep.poly);
  PuiseuxResult pr = newton_puiseux(res.poly, n, exact_only);
  std::vector<FormalCurve> out;
  for (const auto& b : pr.branches) {
    if (!b.exact) continue;
    FormalCurve local = branch_curve(b, res.direction);
    std::vector<UniSeries> comps(m);
    for (std::size_t a = 0; a < m; ++a) comps[a] = local[map[a]];
    out.emplace_back(std::move(comps));
  }
  note = "distinguished z" + std::to_string(pick + 1) + " of order " + std::to_string(*best) + ", " +
         std::to_string(out.size()) + " exact branches";
  if (pr.skipped_roots > 0) note += ", " + std::to_string(pr.skipped_roots) + " skipped roots";
  return out;
}

std::string join_notes(const std::vector<std::string>& notes) {
  std::string out;
  for (const auto& s : notes) out += s + "\n";
  return out;
}

bool same_block(const UnitaryBlock& a, const UnitaryBlock& b) {
  return a.exact && b.exact && a.k == b.k && a.entries == b.entries;
}

}  // namespace

LiftResult lift_normal_form(const NormalForm& nf, int n, bool exact_only) {
  Restriction res = generic_restrict(nf.p);
  std::optional<Error> last;
  for (int want : {n, 2 * n, 4 * n}) {
    PuiseuxResult pr = newton_puiseux(res.poly, want, exact_only);
    for (const auto& b : pr.branches) {
      if (!b.exact) continue;
      FormalCurve base = branch_curve(b, res.direction);
      try {
        LiftResult lr = prime_curve_lift(nf, base, n);
        if (lr.curve.precision() >= n) return lr;
        last = Error(ErrorKind::precision, "lifted curve known only to order " + std::to_string(lr.curve.precision()));
      } catch (const Error& e) {
        last = e;
      }
    }
  }
  if (last) throw *last;
  fail(ErrorKind::degenerate, "no exact Puiseux branch for the normal form");
}

WitnessResult recheck_certificate(const Certificate& c) {
  const std::string* input = c.section("input");
  const std::string* curve = c.section("curve");
  const std::string* order = c.field("order");
  if (!input || !curve || !order) fail(ErrorKind::invalid_input, "certificate lacks input, curve or order");
  int n = 0;
  try {
    n = std::stoi(*order);
  } catch (...) {
    fail(ErrorKind::invalid_input, "certificate order is not an integer");
  }
  return witness_check(parse_hermitian(*input), parse_curve(*curve), n);
}

PipelineResult run_pipeline(const HermitianForm& r, const PipelineOptions& opt) {
  PipelineResult out;
  Certificate& cert = out.bundle;
  cert.kind = "pipeline";
  cert.set("order", std::to_string(opt.precision));
  std::string stage = "input";
  std::vector<std::string> notes;
  std::optional<StageFailure> candidate_error;
  int negatives = 0;  // candidates ruled out without an error
  try {
    if (r.is_zero()) fail(ErrorKind::invalid_input, "defining function is empty");
    if (opt.precision < 1) fail(ErrorKind::invalid_input, "precision N must be at least 1");
    cert.add_section("input", print_hermitian(r));

    stage = "decompose";
    Decomposition d = decompose(r, r.precision());
    cert.add_section("decomposition", print_decomposition(d));

    stage = "search";
    SearchOptions so = opt.search;
    std::vector<SearchHit> hits = monomial_curve_search(r, opt.max_exponent, opt.coeff_degree, so);
    std::string search_text;
    for (std::size_t i = 0; i < hits.size() && i < 5; ++i) {
      search_text += "exponents";
      for (int a : hits[i].exponents) search_text += " " + std::to_string(a);
      search_text += " ratio " + ratio_string(hits[i].ratio) + "\n";
    }
    cert.add_section("search", search_text);
    if (!hits.empty()) out.best_ratio = hits.front().ratio;

    stage = "unitary";
    const std::size_t k = d.families.size();
    std::vector<std::pair<std::string, UnitaryBlock>> blocks;
    auto add_block = [&](const std::string& origin, const UnitaryBlock& u) {
      for (const auto& [o, b] : blocks) {
        if (same_block(b, u)) return;
      }
      blocks.emplace_back(origin, u);
    };
    if (opt.unitary) add_block("supplied", *opt.unitary);
    add_block("identity", UnitaryBlock::identity(k));
    int seeded = 0;
    for (const auto& hit : hits) {
      if (!hit.ratio.lower_bound() || seeded >= 6) continue;
      ++seeded;
      try {
        int m = hit.ratio.numerator.value / 2;
        auto [fv, gv] = jet_vectors(d, hit.curve, m);
        MatchResult mr = match_unitary(fv, gv);
        if (mr.unitary && mr.unitary->exact) {
          add_block("matched on jets through t^" + std::to_string(m), *mr.unitary);
        } else if (mr.unitary) {
          notes.push_back("matched block for a search curve is floating; not usable for an exact ideal");
        }
      } catch (const Error& e) {
        notes.push_back(std::string("jet matching failed: ") + e.what());
      }
    }

    struct IdealCandidate {
      std::string origin;
      std::optional<UnitaryBlock> block;
      IdealPresentation ideal;
    };
    std::vector<IdealCandidate> ideals;
    if (opt.ideal) ideals.push_back({"supplied ideal", std::nullopt, *opt.ideal});
    stage = "ideal";
    for (const auto& [origin, u] : blocks) {
      try {
        ideals.push_back({origin + " block", u, build_ideal(d, u)});
      } catch (const Error& e) {
        notes.push_back(origin + " block: " + e.what());
        candidate_error = StageFailure{"ideal", e.what()};
      }
    }

    for (const auto& cand : ideals) {
      std::string where = "codim";
      try {
        CodimReport rep = codimension(cand.ideal, opt.bound);
        if (rep.finite) {
          notes.push_back(cand.origin + ": ideal has finite codimension " + std::to_string(rep.value) +
                          "; no curve lies in it");
          ++negatives;
          continue;
        }
        std::vector<FormalCurve> curves;
        const std::size_t n = cand.ideal.nvars();
        if (cand.ideal.normal_form()) {
          where = "lift";
          curves.push_back(lift_normal_form(*cand.ideal.normal_form(), opt.precision, opt.exact_only).curve);
        } else {
          where = "normal-form";
          std::vector<TruncSeries> gens = cand.ideal.generators();
          std::vector<bool> is_free(n, true);
          std::vector<Elimination> elim = eliminate_linear(gens, is_free);
          std::vector<std::size_t> keep;
          for (std::size_t i = 0; i < n; ++i) {
            if (is_free[i]) keep.push_back(i);
          }
          std::vector<TruncSeries> local;
          for (const auto& g : gens) local.push_back(restrict_vars(g, keep));
          const int prec = cand.ideal.precision();
          auto lift_back = [&](const FormalCurve& c) {
            std::vector<UniSeries> comps(n, UniSeries(c.precision()));
            for (std::size_t a = 0; a < keep.size(); ++a) comps[keep[a]] = c[a];
            return back_substitute(std::move(comps), elim);
          };
          if (keep.empty()) {
            notes.push_back(cand.origin + ": every coordinate is eliminated");
            ++negatives;
            continue;
          }
          if (local.empty()) {
            std::vector<UniSeries> comps(keep.size(), UniSeries(prec));
            comps[0] = UniSeries::monomial(prec, 1);
            curves.push_back(lift_back(FormalCurve(comps)));
          } else {
            std::size_t g0 = 0;
            for (std::size_t i = 1; i < local.size(); ++i) {
              if (local[i].order().value_or(prec + 1) < local[g0].order().value_or(prec + 1)) g0 = i;
            }
            IdealPresentation principal(keep.size(), {local[g0]}, std::nullopt, prec);
            bool is_principal = true;
            for (std::size_t i = 0; i < local.size() && is_principal; ++i) {
              if (i != g0 && !membership_jet(local[i], principal, std::min(prec, 12)).member) is_principal = false;
            }
            if (!is_principal) {
              notes.push_back(cand.origin + ": not principal after eliminating linear generators");
              ++negatives;
              continue;
            }
            if (keep.size() == 1) {
              notes.push_back(cand.origin + ": principal in one variable; zero set is the origin");
              ++negatives;
              continue;
            }
            where = "puiseux";
            std::string pnote;
            for (const auto& c : principal_curves(local[g0], opt.precision, opt.exact_only, pnote)) {
              curves.push_back(lift_back(c));
            }
            notes.push_back(cand.origin + ": " + pnote);
          }
        }
        where = "witness";
        for (const auto& zeta : curves) {
          if (zeta.precision() < opt.precision) {
            notes.push_back(cand.origin + ": curve known only to order " + std::to_string(zeta.precision()));
            continue;
          }
          WitnessResult w = witness_check(r, zeta, opt.precision);
          if (!w.certified) {
            notes.push_back(cand.origin + ": curve fails at degree " + std::to_string(w.first_degree));
            ++negatives;
            continue;
          }
          out.curve = zeta;
          out.exit_code = 0;
          cert.set("status", "certified");
          cert.set("ideal_origin", cand.origin);
          if (cand.block) cert.add_section("unitary", print_unitary(*cand.block));
          cert.add_section("ideal", print_ideal(cand.ideal));
          cert.add_section("codim", print_codim(rep, n));
          cert.add_section("curve", print_curve(zeta));
          cert.add_section("witness", "order " + std::to_string(opt.precision) + "\ncertified yes\n");
          if (cand.block) {
            try {
              EquivalenceReport eq = equivalence_check(d, *cand.block, zeta, opt.precision);
              cert.add_section("equivalence", std::string("holds ") + (eq.holds ? "yes" : "no") +
                                                   (eq.holds ? "" : "\nfailed " + eq.failed) + "\n");
            } catch (const Error& e) {
              cert.add_section("equivalence", std::string("skipped ") + e.what() + "\n");
            }
          }
          if (out.best_ratio) cert.set("best_ratio", ratio_string(*out.best_ratio));
          cert.add_section("notes", join_notes(notes));
          return out;
        }
      } catch (const Error& e) {
        notes.push_back(cand.origin + " [" + where + "]: " + e.what());
        candidate_error = StageFailure{where, e.what()};
      }
    }
  } catch (const Error& e) {
    out.exit_code = 1;
    out.stage = stage;
    out.message = e.what();
    cert.set("status", "error");
    cert.set("stage", stage);
    cert.set("message", e.what());
    cert.add_section("notes", join_notes(notes));
    return out;
  }
  if (candidate_error && negatives == 0) {
    // Every route ended in an error rather than a negative answer.
    out.exit_code = 1;
    out.stage = candidate_error->stage;
    out.message = candidate_error->message;
    cert.set("status", "error");
    cert.set("stage", out.stage);
    cert.set("message", out.message);
    cert.add_section("notes", join_notes(notes));
    return out;
  }
  out.exit_code = 2;
  cert.set("status", "no-witness");
  if (out.best_ratio) cert.set("best_ratio", ratio_string(*out.best_ratio));
  cert.add_section("notes", join_notes(notes));
  return out;
}

}  // namespace germforge
