#include "germforge/weierstrass_poly.hpp"

#include <algorithm>

#include "germforge/error.hpp"

namespace germforge {

WeierstrassPoly::WeierstrassPoly(std::size_t base_vars, std::vector<TruncSeries> lower)
    : k_(base_vars), b_(std::move(lower)) {
  for (const auto& b : b_) {
    if (b.nvars() != k_) fail(ErrorKind::dimension, "Weierstrass coefficient in the wrong ring");
    if (!b.constant_term().is_zero()) {
      fail(ErrorKind::invalid_input, "Weierstrass coefficient does not vanish at the origin");
    }
  }
}

std::vector<TruncSeries> split_by_last(const TruncSeries& f) {
  const std::size_t n = f.nvars();
  if (n == 0) fail(ErrorKind::dimension, "cannot split a series without variables");
  const std::size_t k = n - 1;
  int top = 0;
  for (const auto& [j, c] : f.terms()) top = std::max(top, j[k]);
  std::vector<TruncSeries> out;
  for (int e = 0; e <= std::min(top, f.precision()); ++e) out.emplace_back(k, f.precision() - e);
  for (const auto& [j, c] : f.terms()) {
    std::vector<int> base(j.exponents().begin(), j.exponents().end() - 1);
    out[static_cast<std::size_t>(j[k])].add_term(Multidegree(std::move(base)), c);
  }
  return out;
}

WeierstrassPoly WeierstrassPoly::from_series(const TruncSeries& p) {
  if (p.nvars() == 0) fail(ErrorKind::dimension, "Weierstrass polynomial needs a distinguished variable");
  const std::size_t k = p.nvars() - 1;
  std::vector<TruncSeries> parts = split_by_last(p);
  int l = static_cast<int>(parts.size()) - 1;
  while (l >= 0 && parts[static_cast<std::size_t>(l)].is_zero()) --l;
  if (l < 1) fail(ErrorKind::invalid_input, "series has no positive power of the distinguished variable");
  if (l > p.precision()) fail(ErrorKind::precision, "degree exceeds precision");
  const TruncSeries& lead = parts[static_cast<std::size_t>(l)];
  if (lead.terms().size() != 1 || lead.constant_term() != Coef(1)) {
    fail(ErrorKind::invalid_input, "polynomial is not monic in the distinguished variable");
  }
  parts.resize(static_cast<std::size_t>(l));
  return WeierstrassPoly(k, std::move(parts));
}

int WeierstrassPoly::precision() const {
  int p = INT_MAX / 4;
  for (std::size_t j = 0; j < b_.size(); ++j) {
    p = std::min(p, b_[j].precision() + static_cast<int>(j));
  }
  return p;
}

TruncSeries WeierstrassPoly::to_series() const {
  const std::size_t n = k_ + 1;
  int prec = precision();
  TruncSeries out(n, prec);
  Multidegree lead = Multidegree::unit(n, k_, degree());
  out.add_term(lead, Coef(1));
  for (std::size_t j = 0; j < b_.size(); ++j) {
    for (const auto& [m, c] : b_[j].terms()) {
      std::vector<int> e = m.exponents();
      e.push_back(static_cast<int>(j));
      out.add_term(Multidegree(std::move(e)), c);
    }
  }
  return out;
}

}  // namespace germforge
