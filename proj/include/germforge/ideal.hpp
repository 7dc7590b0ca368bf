#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "germforge/series.hpp"
#include "germforge/weierstrass_poly.hpp"

namespace germforge {

/// q_j = D z_j - Q_j(z_1..z_{k+1}); j is a 0-based variable index > k.
struct Relation {
  std::size_t j = 0;
  TruncSeries Q;
  TruncSeries q;
};

/// Strictly regular presentation data of a prime ideal: the Weierstrass
/// polynomial p_{k+1} in z_{k+1}, its discriminant D in z_1..z_k and the
/// linear relations q_j for the remaining coordinates.
struct NormalForm {
  std::size_t nvars = 0;
  std::size_t k = 0;
  WeierstrassPoly p;
  TruncSeries discriminant;
  std::vector<Relation> relations;

  /// p_{k+1} and every q_j as series in all n variables.
  std::vector<TruncSeries> associated_generators() const;
};

class IdealPresentation {
 public:
  IdealPresentation() = default;
  /// Throws an improper-ideal error when a generator does not vanish at 0.
  IdealPresentation(std::size_t nvars, std::vector<TruncSeries> generators,
                    std::optional<NormalForm> normal_form = std::nullopt,
                    std::optional<int> precision = std::nullopt);

  /// M_0^e = (all monomials of degree e).
  static IdealPresentation max_ideal_power(std::size_t nvars, int e, int precision);

  std::size_t nvars() const { return n_; }
  const std::vector<TruncSeries>& generators() const { return gens_; }
  int precision() const { return precision_; }
  const std::optional<NormalForm>& normal_form() const { return nf_; }

 private:
  std::size_t n_ = 0;
  std::vector<TruncSeries> gens_;
  int precision_ = 0;
  std::optional<NormalForm> nf_;
};

/// One term c * z^m * g_i of a membership combination.
struct Cofactor {
  std::size_t generator = 0;
  Multidegree monomial;
  Coef coefficient;
};

struct MembershipResult {
  bool member = false;
  std::vector<Cofactor> combination;
  TruncSeries residue;  // reduced remainder; zero iff member
};

/// Decides f in I + M_0^{k+1} by exact row reduction over the monomials of
/// degree <= k.
MembershipResult membership_jet(const TruncSeries& f, const IdealPresentation& ideal, int k);

/// Expands sum c * z^m * g_i at jet level k.
TruncSeries expand_combination(const std::vector<Cofactor>& combination,
                               const IdealPresentation& ideal, int k);

/// z_j^e in I + M_0^{k+1}, with the exhibited combination.
struct PowerCertificate {
  std::size_t variable = 0;
  int exponent = 0;
  int jet_level = 0;
  std::vector<Cofactor> combination;
};

struct CodimReport {
  std::vector<long> dims;  // dims[k-1] = dim O/(I + M_0^k), k = 1..bound
  bool finite = false;
  long value = 0;          // D(I) when finite, otherwise the lower bound dims.back()
  int level = 0;           // l with M_0^l in I, when finite
  std::vector<PowerCertificate> certificates;
  std::string note;
};

CodimReport codimension(const IdealPresentation& ideal, int bound);

/// Every monomial of degree l lies in I + M_0^{k+1}.
bool max_power_subset(const IdealPresentation& ideal, int l, int k);

/// Smallest p <= maxpow with f^p in I + M_0^{k+1}.
std::optional<int> radical_membership(const TruncSeries& f, const IdealPresentation& ideal,
                                      int maxpow, int k);

struct IntersectionReport {
  CodimReport first;
  CodimReport second;
  CodimReport product;
  bool both_finite = false;
  int inclusion_level = 0;
  bool inclusion_verified = false;  // M_0^{max(l1,l2)} in I1 and in I2
  bool consistent = true;
};

IdealPresentation product_ideal(const IdealPresentation& a, const IdealPresentation& b);
IntersectionReport intersection_diagnostic(const IdealPresentation& a, const IdealPresentation& b,
                                           int bound);

}  // namespace germforge
