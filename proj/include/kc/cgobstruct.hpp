#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kc/metab.hpp"

namespace kc {

// Characters of H identified with elements via c -> beta(c, .), with chi and
// -chi sharing one class (they carry the same invariant). The representative
// is the lexicographically smaller of {c, -c}.
struct CharacterClass {
  GroupElement representative;
};

// One class per {c, -c} pair, c != 0, in representative order.
std::vector<CharacterClass> character_classes(const FiniteAbelianGroup& h);

// Integer linear system in the formal variables z_c, one per nonzero
// character class of the base group H_p. Each element (c_1,...,c_n) of the
// metabolizer contributes the row
//
//   sum_i z_{[c_i]} = -sum_i beta(c_i, c_i)
//
// which is the vanishing constraint sum_i sigma(K, chi_{c_i}) = 0 with
// sigma_c = beta(c,c) + z_c substituted: vanishing on the metabolizer,
// additivity over connected sums, sigma = 0 for the trivial character, and
// the mod-Z congruence with the linking form, all in one shape. The
// right-hand side is an integer exactly because metabolizer elements have
// zero self-linking; a fractional value means a non-metabolizer leaked in.
struct ConstraintSystem {
  std::vector<CharacterClass> variables;
  IntMatrix amat;  // one row per distinct constraint
  IntVector bvec;
};

ConstraintSystem constraint_system(const LinkingForm& f_p, const Subgroup& m, unsigned n);
ConstraintSystem constraint_system(const LinkingForm& f_p, const Metabolizer& m, unsigned n);

// Integer feasibility of the system, with a witness or an (divisor, residue)
// infeasibility certificate from the Smith-form consistency check.
IntSolveResult is_feasible(const ConstraintSystem& cs);

enum class Outcome { Obstructed, NotObstructed, Inapplicable };

struct MetabolizerCertificate {
  IntMatrix generator_matrix;  // canonical generator matrix of M
  std::size_t rank = 0;
  Eigen::Index rows = 0;  // constraint system dimensions
  Eigen::Index vars = 0;
  bool infeasible = false;
  Int divisor;  // infeasibility certificate: divisor ∤ residue
  Int residue;
  std::optional<IntVector> witness;  // feasible integer solution z
};

// Outcome of the n-fold obstruction run. Obstructed means every metabolizer
// of the n-fold form produced an infeasible system (vacuously so when there
// is no metabolizer at all); it never claims more than "nK is not slice,
// conditional on the Casson-Gordon axioms". NotObstructed reports a witness
// and means exactly that no obstruction was found here, not that the knot is
// slice. Inapplicable covers budget exhaustion.
struct Verdict {
  Outcome outcome = Outcome::Inapplicable;
  std::string reason;
  std::size_t metabolizer_count = 0;
  std::vector<MetabolizerCertificate> certificates;   // canonical order
  std::optional<std::size_t> witness_index;           // NotObstructed only
};

Verdict obstruct_nfold(const LinkingForm& f_p, unsigned n, const SearchBudget& budget = {});

// First prime p = 3 mod 4 whose primary part of h is cyclic of odd p-power
// order; such a knot has infinite concordance order.
std::optional<std::pair<Int, unsigned>> theorem11_check(const FiniteAbelianGroup& h);

// i >= 1 when the 3-primary part of h is Z_3 + Z_{3^{2i}}; such a knot is
// not of order 4 in concordance.
std::optional<unsigned> theorem12_check(const FiniteAbelianGroup& h);

}  // namespace kc
