#include "germforge/multidegree.hpp"

#include <numeric>

#include "germforge/error.hpp"

namespace germforge {

Multidegree::Multidegree(std::vector<int> exponents) : e_(std::move(exponents)) {
  for (int v : e_) {
    if (v < 0) fail(ErrorKind::invalid_input, "negative exponent in multidegree");
  }
  total_ = std::accumulate(e_.begin(), e_.end(), 0);
}

Multidegree::Multidegree(std::initializer_list<int> exponents)
    : Multidegree(std::vector<int>(exponents)) {}

Multidegree Multidegree::unit(std::size_t n, std::size_t i, int power) {
  Multidegree j(n);
  j.set(i, power);
  return j;
}

void Multidegree::set(std::size_t i, int v) {
  if (v < 0) fail(ErrorKind::invalid_input, "negative exponent in multidegree");
  total_ += v - e_[i];
  e_[i] = v;
}

Multidegree operator+(const Multidegree& a, const Multidegree& b) {
  if (a.size() != b.size()) fail(ErrorKind::dimension, "multidegree length mismatch");
  Multidegree r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r.e_[i] += b.e_[i];
  r.total_ = a.total_ + b.total_;
  return r;
}

Multidegree operator-(const Multidegree& a, const Multidegree& b) {
  if (!divides(b, a)) fail(ErrorKind::invalid_input, "monomial quotient is not a monomial");
  Multidegree r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r.e_[i] -= b.e_[i];
  r.total_ = a.total_ - b.total_;
  return r;
}

bool divides(const Multidegree& b, const Multidegree& a) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b.e_[i] > a.e_[i]) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Multidegree& a, const Multidegree& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  if (a.total_ != b.total_) return a.total_ <=> b.total_;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.e_[i] != b.e_[i]) return a.e_[i] <=> b.e_[i];
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare(const Multidegree& a, const Multidegree& b) {
  if (a.size() != b.size()) {
    fail(ErrorKind::dimension, "cannot compare multidegrees of length " +
                                   std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  return a <=> b;
}

namespace {

void fill(std::size_t n, std::size_t i, int left, std::vector<int>& cur,
          std::vector<Multidegree>& out) {
  if (i + 1 == n) {
    cur[i] = left;
    out.emplace_back(cur);
    return;
  }
  // Ascending order within a degree means smaller leading entries first.
  for (int v = 0; v <= left; ++v) {
    cur[i] = v;
    fill(n, i + 1, left - v, cur, out);
  }
}

}  // namespace

std::vector<Multidegree> monomials_of_degree(std::size_t n, int d) {
  std::vector<Multidegree> out;
  if (n == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  std::vector<int> cur(n, 0);
  fill(n, 0, d, cur, out);
  return out;
}

std::vector<Multidegree> monomials_up_to(std::size_t n, int d) {
  std::vector<Multidegree> out;
  for (int k = 0; k <= d; ++k) {
    auto level = monomials_of_degree(n, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::string to_string(const Multidegree& j) {
  std::string s = "(";
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(j[i]);
  }
  return s + ")";
}

}  // namespace germforge
