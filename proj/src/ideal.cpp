#include "germforge/ideal.hpp"

#include <algorithm>
#include <map>

#include "germforge/error.hpp"

namespace germforge {

std::vector<TruncSeries> NormalForm::associated_generators() const {
  std::vector<std::size_t> map(k + 1);
  for (std::size_t i = 0; i <= k; ++i) map[i] = i;
  std::vector<TruncSeries> out;
  out.push_back(embed(p.to_series(), nvars, map));
  for (const auto& rel : relations) out.push_back(rel.q);
  return out;
}

IdealPresentation::IdealPresentation(std::size_t nvars, std::vector<TruncSeries> generators,
                                     std::optional<NormalForm> normal_form,
                                     std::optional<int> precision)
    : n_(nvars), gens_(), nf_(std::move(normal_form)) {
  int prec = INT_MAX / 4;
  for (auto& g : generators) {
    if (g.nvars() != nvars) fail(ErrorKind::dimension, "generator lives in the wrong ring");
    if (!g.constant_term().is_zero()) {
      fail(ErrorKind::improper_ideal, "generator with nonzero constant term makes the ideal improper");
    }
    prec = std::min(prec, g.precision());
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
  if (precision) prec = std::min(prec, *precision);
  if (prec == INT_MAX / 4) fail(ErrorKind::precision, "ideal without generators needs an explicit precision");
  precision_ = prec;
}

IdealPresentation IdealPresentation::max_ideal_power(std::size_t nvars, int e, int precision) {
  std::vector<TruncSeries> gens;
  for (const auto& m : monomials_of_degree(nvars, e)) {
    gens.push_back(TruncSeries::monomial(nvars, precision, m));
  }
  return IdealPresentation(nvars, std::move(gens), std::nullopt, precision);
}

namespace {

using SparseRow = std::map<int, Coef>;

struct MonomialIndex {
  std::vector<Multidegree> monomials;
  std::map<Multidegree, int> index;

  MonomialIndex(std::size_t n, int k) : monomials(monomials_up_to(n, k)) {
    for (std::size_t i = 0; i < monomials.size(); ++i) index.emplace(monomials[i], static_cast<int>(i));
  }

  SparseRow row(const TruncSeries& s) const {
    SparseRow r;
    for (const auto& [j, c] : s.terms()) {
      auto it = index.find(j);
      if (it != index.end()) r.emplace(it->second, c);
    }
    return r;
  }
};

void axpy(SparseRow& target, const Coef& factor, const SparseRow& src) {
  for (const auto& [col, c] : src) {
    auto [it, inserted] = target.try_emplace(col, Coef());
    it->second -= factor * c;
    if (it->second.is_zero()) target.erase(it);
  }
}

/// Row echelon form whose pivots are the lowest (local leading) columns.
class Echelon {
 public:
  explicit Echelon(bool track) : track_(track) {}

  void insert(SparseRow row, int origin) {
    SparseRow combo;
    if (track_) combo.emplace(origin, Coef(1));
    reduce(row, combo);
    if (row.empty()) return;
    auto lead = row.begin();
    Coef inv = lead->second.inverse();
    for (auto& [c, v] : row) v *= inv;
    for (auto& [c, v] : combo) v *= inv;
    int col = lead->first;
    pivots_.emplace(col, Pivot{std::move(row), std::move(combo)});
  }

  /// Reduces in place; combo accumulates the combination subtracted so far as
  /// negative multiples (row_final = row_initial - sum factor * pivot).
  void reduce(SparseRow& row, SparseRow& combo) const {
    auto it = row.begin();
    while (it != row.end()) {
      auto p = pivots_.find(it->first);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      int col = it->first;
      Coef factor = it->second;
      axpy(row, factor, p->second.row);
      if (track_) axpy(combo, factor, p->second.combo);
      it = row.upper_bound(col);
    }
  }

  std::size_t rank() const { return pivots_.size(); }
  const auto& pivots() const { return pivots_; }

 private:
  struct Pivot {
    SparseRow row;
    SparseRow combo;
  };
  bool track_;
  std::map<int, Pivot> pivots_;
};

struct Generated {
  MonomialIndex index;
  Echelon echelon;
  std::vector<std::pair<std::size_t, Multidegree>> origins;
};

Generated build_span(const IdealPresentation& ideal, int k, bool track) {
  if (k > ideal.precision()) {
    fail(ErrorKind::precision, "jet level " + std::to_string(k) + " exceeds ideal precision " +
                                   std::to_string(ideal.precision()));
  }
  Generated g{MonomialIndex(ideal.nvars(), k), Echelon(track), {}};
  for (std::size_t i = 0; i < ideal.generators().size(); ++i) {
    const TruncSeries gen = ideal.generators()[i].truncated(k);
    auto ord = gen.order();
    if (!ord) continue;
    for (const auto& m : monomials_up_to(ideal.nvars(), k - *ord)) {
      TruncSeries shifted(ideal.nvars(), k);
      for (const auto& [j, c] : gen.terms()) shifted.add_term(j + m, c);
      int origin = static_cast<int>(g.origins.size());
      g.origins.emplace_back(i, m);
      g.echelon.insert(g.index.row(shifted), origin);
    }
  }
  return g;
}

void check_ring(const TruncSeries& f, const IdealPresentation& ideal) {
  if (f.nvars() != ideal.nvars()) fail(ErrorKind::dimension, "series and ideal live in different rings");
}

MembershipResult reduce_in(const Generated& span, const TruncSeries& f, std::size_t n, int k) {
  SparseRow row = span.index.row(f.jet(k));
  SparseRow combo;
  span.echelon.reduce(row, combo);
  MembershipResult out;
  out.member = row.empty();
  out.residue = TruncSeries(n, k);
  for (const auto& [col, c] : row) out.residue.add_term(span.index.monomials[static_cast<std::size_t>(col)], c);
  if (out.member) {
    for (const auto& [origin, c] : combo) {
      // combo holds -(coefficients); f = sum (-combo) * origin rows.
      const auto& [gen, mono] = span.origins[static_cast<std::size_t>(origin)];
      out.combination.push_back(Cofactor{gen, mono, -c});
    }
  }
  return out;
}

}  // namespace

MembershipResult membership_jet(const TruncSeries& f, const IdealPresentation& ideal, int k) {
  check_ring(f, ideal);
  if (k > f.precision()) fail(ErrorKind::precision, "series known only to order " + std::to_string(f.precision()));
  Generated span = build_span(ideal, k, true);
  return reduce_in(span, f, ideal.nvars(), k);
}

TruncSeries expand_combination(const std::vector<Cofactor>& combination,
                               const IdealPresentation& ideal, int k) {
  TruncSeries out(ideal.nvars(), k);
  for (const auto& term : combination) {
    const TruncSeries& g = ideal.generators().at(term.generator);
    for (const auto& [j, c] : g.terms()) out.add_term(j + term.monomial, c * term.coefficient);
  }
  return out;
}

CodimReport codimension(const IdealPresentation& ideal, int bound) {
  if (bound < 1) fail(ErrorKind::invalid_input, "codimension bound must be positive");
  if (bound > ideal.precision()) {
    fail(ErrorKind::precision, "bound " + std::to_string(bound) + " exceeds ideal precision " +
                                   std::to_string(ideal.precision()));
  }
  const std::size_t n = ideal.nvars();
  // One echelon at level bound - 1 yields every lower level: truncation to
  // degree < k keeps exactly the pivots of degree < k.
  Generated span = build_span(ideal, bound - 1, false);
  std::vector<long> pivots_at(static_cast<std::size_t>(bound), 0);
  for (const auto& [col, pivot] : span.echelon.pivots()) {
    ++pivots_at[static_cast<std::size_t>(span.index.monomials[static_cast<std::size_t>(col)].total())];
  }
  CodimReport report;
  long monomials = 0;
  long pivots = 0;
  for (int k = 1; k <= bound; ++k) {
    monomials += static_cast<long>(monomials_of_degree(n, k - 1).size());
    pivots += pivots_at[static_cast<std::size_t>(k - 1)];
    report.dims.push_back(monomials - pivots);
  }
  report.value = report.dims.back();

  int level = 0;
  for (int l = 1; l < bound; ++l) {
    if (report.dims[static_cast<std::size_t>(l)] == report.dims[static_cast<std::size_t>(l - 1)]) {
      level = l;
      break;
    }
  }
  if (level == 0) {
    report.note = "dimensions still growing at bound " + std::to_string(bound);
    return report;
  }
  long d = report.dims[static_cast<std::size_t>(level - 1)];
  // M_0^level lies in I, so z_j^level must reduce to zero for every j.
  int e = level;
  Generated cert_span = build_span(ideal, e, true);
  for (std::size_t j = 0; j < n; ++j) {
    TruncSeries zj = TruncSeries::monomial(n, e, Multidegree::unit(n, j, e));
    MembershipResult m = reduce_in(cert_span, zj, n, e);
    if (!m.member) {
      report.note = "z" + std::to_string(j + 1) + "^" + std::to_string(e) + " not certified";
      report.certificates.clear();
      return report;
    }
    report.certificates.push_back(PowerCertificate{j, e, e, std::move(m.combination)});
  }
  report.finite = true;
  report.value = d;
  report.level = level;
  return report;
}

bool max_power_subset(const IdealPresentation& ideal, int l, int k) {
  if (l >= k) fail(ErrorKind::invalid_input, "max_power_subset needs l < k");
  Generated span = build_span(ideal, k, false);
  const std::size_t n = ideal.nvars();
  for (const auto& m : monomials_of_degree(n, l)) {
    if (!reduce_in(span, TruncSeries::monomial(n, k, m), n, k).member) return false;
  }
  return true;
}

std::optional<int> radical_membership(const TruncSeries& f, const IdealPresentation& ideal,
                                      int maxpow, int k) {
  check_ring(f, ideal);
  if (maxpow < 1) fail(ErrorKind::invalid_input, "maxpow must be positive");
  if (k > f.precision()) fail(ErrorKind::precision, "series known only to order " + std::to_string(f.precision()));
  auto ord = f.truncated(k).order();
  if (ord && *ord == 0) return std::nullopt;  // a unit is never in a proper ideal
  if (ord && mul_precision(maxpow, *ord) > k) {
    fail(ErrorKind::precision, "jet level " + std::to_string(k) + " cannot separate powers up to " +
                                   std::to_string(maxpow) + " of a series of order " +
                                   std::to_string(*ord));
  }
  Generated span = build_span(ideal, k, false);
  TruncSeries fk = f.jet(k);
  TruncSeries power = fk;
  for (int p = 1; p <= maxpow; ++p) {
    if (p > 1) power = power * fk;
    if (reduce_in(span, power, ideal.nvars(), k).member) return p;
  }
  return std::nullopt;
}

IdealPresentation product_ideal(const IdealPresentation& a, const IdealPresentation& b) {
  if (a.nvars() != b.nvars()) fail(ErrorKind::dimension, "ideals live in different rings");
  std::vector<TruncSeries> gens;
  for (const auto& x : a.generators()) {
    for (const auto& y : b.generators()) gens.push_back(x * y);
  }
  return IdealPresentation(a.nvars(), std::move(gens), std::nullopt,
                           std::min(a.precision(), b.precision()));
}

IntersectionReport intersection_diagnostic(const IdealPresentation& a, const IdealPresentation& b,
                                           int bound) {
  IntersectionReport r;
  r.first = codimension(a, bound);
  r.second = codimension(b, bound);
  IdealPresentation prod = product_ideal(a, b);
  r.product = codimension(prod, std::min(bound, prod.precision()));
  r.both_finite = r.first.finite && r.second.finite;
  if (r.both_finite) {
    r.inclusion_level = std::max(r.first.level, r.second.level);
    int k = r.inclusion_level + 1;
    if (k <= std::min(a.precision(), b.precision())) {
      r.inclusion_verified = max_power_subset(a, r.inclusion_level, k) &&
                             max_power_subset(b, r.inclusion_level, k);
    }
    r.consistent = r.inclusion_verified;
  }
  return r;
}

}  // namespace germforge
