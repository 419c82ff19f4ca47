#pragma once

#include <utility>
#include <vector>

#include "kc/abgroup.hpp"

namespace kc {

// Nonsingular symmetric Q/Z-valued pairing on a finite abelian group. The
// gram matrix holds beta(e_i, e_j) as reduced rationals in [0,1) whose
// denominators divide gcd(d_i, d_j), which makes the pairing well defined on
// coordinates.
class LinkingForm {
 public:
  LinkingForm(FiniteAbelianGroup group, RatMatrix gram);

  const FiniteAbelianGroup& group() const { return group_; }
  const RatMatrix& gram() const { return gram_; }
  Rat eval(const GroupElement& x, const GroupElement& y) const;

  // Radical {x : beta(x, .) = 0}; trivial iff the form is nonsingular.
  Subgroup radical() const;
  bool nonsingular() const;
  LinkingForm negated() const;

 private:
  FiniteAbelianGroup group_;
  RatMatrix gram_;
};

// Branched double cover data of a Seifert matrix v: the group coker(v + v^T)
// together with beta(x, y) = -x^T (v + v^T)^{-1} y mod 1 transported through
// the Smith coordinate change. The paper leaves the sign open; a global flip
// sends metabolizers to metabolizers and negates every constraint system's
// right-hand side, so verdicts do not depend on it.
std::pair<FiniteAbelianGroup, LinkingForm> from_seifert(const IntMatrix& v);

LinkingForm direct_sum(const LinkingForm& a, const LinkingForm& b);
LinkingForm power(const LinkingForm& f, unsigned n);

// Restriction to the p-primary subgroup (carries its own coordinate system).
LinkingForm restrict_primary(const LinkingForm& f, const Int& p);

// M^perp = {x : beta(x, m) = 0 for all m in s}.
Subgroup orthogonal_complement(const LinkingForm& f, const Subgroup& s);

bool is_metabolizer(const LinkingForm& f, const Subgroup& s);

// Diagonal basis of a form on Z_3 + Z_{3^{2i}}: v of order 3 with
// beta(v,v) = eps3/3, w of order 3^{2i} with beta(w,w) = eps9/3^{2i}, and
// beta(v,w) = 0.
struct DiagonalBasis {
  GroupElement v;
  GroupElement w;
  int eps3;  // +1 or -1
  int eps9;
};

DiagonalBasis diagonalize_3part(const LinkingForm& f);

}  // namespace kc
