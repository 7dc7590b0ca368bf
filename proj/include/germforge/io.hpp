#pragma once

#include <string>
#include <utility>
#include <vector>

#include "germforge/curve.hpp"
#include "germforge/hermitian.hpp"
#include "germforge/puiseux.hpp"
#include "germforge/ideal.hpp"
#include "germforge/series.hpp"
#include "germforge/unitary.hpp"

namespace germforge {

// Text formats. Every file starts with a header
//
//   [kind] vars <n>; N=<k>; [base (p1, ..., pn);]
//
// followed by terms such as `- (3/4+1/2i)*z1^2*zbar2` or `+ 1 z1 zbar1`.
// `#` starts a comment. A base point moves the germ to the origin; the body
// is then read as an exact polynomial.

TruncSeries parse_series(const std::string& text);
std::string print_series(const TruncSeries& s);

HermitianForm parse_hermitian(const std::string& text);
std::string print_hermitian(const HermitianForm& r);

/// curve vars <n>; N=<k>; z1 = <terms in t>; ...
FormalCurve parse_curve(const std::string& text);
std::string print_curve(const FormalCurve& c);

/// ideal vars <n>; N=<k>; gen <terms>; ... [normal_form k=<k>; p <terms>; Q <j> = <terms>; ...]
IdealPresentation parse_ideal(const std::string& text);
std::string print_ideal(const IdealPresentation& ideal);

/// unitary k=<k>; row <c> ... ; (exact) or rowf <re> <im> ... ; (floating)
UnitaryBlock parse_unitary(const std::string& text);
std::string print_unitary(const UnitaryBlock& u);

/// Line-oriented certificate: a versioned header, `key value` lines and
/// embedded inputs between `begin <name>` and `end`.
struct Certificate {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::pair<std::string, std::string>> sections;

  const std::string* field(const std::string& key) const;
  const std::string* section(const std::string& name) const;
  void set(const std::string& key, const std::string& value);
  void add_section(const std::string& name, const std::string& body);
};

Certificate parse_certificate(const std::string& text);
std::string print_certificate(const Certificate& c);

/// Terms of a series in one variable named `var` (used for curve components).
std::string print_terms(const TruncSeries& s, const std::vector<std::string>& names);

/// Human-readable reports; not meant to be parsed back.
std::string print_decomposition(const Decomposition& d);
std::string print_codim(const CodimReport& report, std::size_t nvars);
std::string print_branch(const PuiseuxBranch& b);

}  // namespace germforge
