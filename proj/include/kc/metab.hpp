#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "kc/linkform.hpp"

namespace kc {

// Wall-clock and worker-count limits for the exhaustive searches. Zero
// seconds means unlimited; zero threads means use THREADS from the
// environment, falling back to the hardware count.
struct SearchBudget {
  double seconds = 0;
  unsigned threads = 0;
};

// A subgroup M with M = M^perp, revalidated on construction: the complement
// is recomputed from the form and compared, and |M|^2 = |H| is checked. The
// enumeration below never hands out anything it has not re-verified this way.
class Metabolizer {
 public:
  Metabolizer(LinkingForm form, Subgroup subgroup);
  const LinkingForm& form() const { return form_; }
  const Subgroup& subgroup() const { return subgroup_; }

  friend bool operator<(const Metabolizer& a, const Metabolizer& b) {
    return a.subgroup_ < b.subgroup_;
  }

 private:
  LinkingForm form_;
  Subgroup subgroup_;
};

struct EnumerationResult {
  std::vector<Metabolizer> found;  // canonical order
  bool complete = true;
  unsigned long long nodes = 0;  // search-tree statistics
};

// Every metabolizer of a form on a finite abelian p-group, each exactly
// once, in canonical order. The search grows isotropic subgroups S by
// elements of S^perp with zero self-linking, restricted to increasing
// canonical generator chains so that each subgroup is expanded from exactly
// one parent; emitted results are deduplicated and re-verified post hoc.
// Groups whose order is not a perfect square have no metabolizers and yield
// an empty list. Exceeding the budget returns complete = false.
EnumerationResult enumerate_metabolizers_partial(const LinkingForm& f,
                                                 const SearchBudget& budget = {});

// Same, but throws BudgetError (carrying the partial count) when incomplete.
std::vector<Metabolizer> enumerate_metabolizers(const LinkingForm& f,
                                                const SearchBudget& budget = {});

std::size_t rank_of(const Metabolizer& m);

// Canonical generator matrix shape for rank-4 metabolizers of a form on
// (Z_3 + Z_{3^{2i}})^4 in diagonalized coordinates: rows (v_j | w_j) with
//
//   W = [ 1 0 w13 w14 ]      k = (0, 0, 2i-1, 2i-1)
//       [ 0 1 w23 w24 ]
//       [ 0 0 3^{2i-1} 0 ]
//       [ 0 0 0 3^{2i-1} ]
//
// reached by row operations and simultaneous column swaps in V and W; the
// applied column permutation is recorded.
struct VWForm {
  IntMatrix vmat;  // 4x4, entries mod 3
  IntMatrix wmat;  // 4x4, entries mod 3^{2i}
  std::array<int, 4> column_permutation;  // column j shows summand perm[j]
  std::array<unsigned, 4> k;
  unsigned i;
};

// Empty when rank(m) != 4; throws InputError when the ambient group is not
// (Z_3 + Z_{3^{2i}})^4 in interleaved (3, 3^{2i}) coordinate order.
std::optional<VWForm> canonical_vw_form(const Metabolizer& m);

struct Lemma35Flags {
  bool w_entries_unit_mod3 = false;
  bool rows_independent_mod3 = false;
};

// Structural facts about a metabolizer of ((Z_3 + Z_{3^{2i}})^4, beta):
// rank, the VW form when rank is 4, unit/independence flags for the w block,
// and witnesses of the two element-existence statements: an element
// (1,1,*,* | 0,0,3^{2i-1}m,3^{2i-1}n), and for each pair (a,b) in {0,±1}^2 an
// element (1,1,*,* | 3^{2i-1}a,3^{2i-1}b,3^{2i-1}m,3^{2i-1}n) with exactly
// one * nonzero. Patterns are matched up to the recorded column permutation
// and global sign.
struct StructureReport {
  std::size_t rank = 0;
  std::optional<VWForm> vw;
  std::optional<Lemma35Flags> lemma35;
  std::optional<GroupElement> lemma36_witness;
  std::map<std::pair<int, int>, GroupElement> lemma37_witnesses;
};

StructureReport structure_report(const Metabolizer& m);

}  // namespace kc
