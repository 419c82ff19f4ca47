#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kc/intlinalg.hpp"

namespace kc {

// Factorization with a trial-division front end (primes up to 10^6) and a
// Miller-Rabin / Pollard rho back end for cofactors that fit in 64 bits.
// Anything larger is rejected with a BudgetError; the orders showing up here
// are knot determinants, which are small.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);
bool is_prime(const Int& n);
// p-adic valuation of n.
unsigned valuation(Int n, const Int& p);

// Finite abelian group presented by component orders (d_0, ..., d_{n-1}),
// each >= 2, kept exactly as given; the invariant-factor chain is derived on
// demand. Keeping the presentation fixed keeps subgroup generator matrices
// aligned with whatever coordinate system the caller set up.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;  // trivial group
  explicit FiniteAbelianGroup(std::vector<Int> orders);
  static FiniteAbelianGroup cyclic(const Int& n);

  std::size_t components() const { return orders_.size(); }
  const std::vector<Int>& orders() const { return orders_; }
  Int total_order() const;
  bool is_trivial() const { return orders_.empty(); }
  std::vector<Int> invariant_factors() const;
  bool isomorphic_to(const FiniteAbelianGroup& other) const;
  // True when every component order is a power of the same prime p (set on
  // return). Trivial groups are p-groups for no particular p.
  bool is_p_group(Int& p) const;

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.orders_ == b.orders_;
  }

 private:
  std::vector<Int> orders_;
};

class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(FiniteAbelianGroup group, std::vector<Int> coords);

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<Int>& coords() const { return coords_; }
  bool is_zero() const;
  Int order() const;

  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b);
  GroupElement operator-() const;
  friend GroupElement operator*(const Int& c, const GroupElement& x);

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.group_ == b.group_ && a.coords_ == b.coords_;
  }
  // Lexicographic on coordinates; the fixed total order used everywhere.
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return a.coords_ < b.coords_;
  }

 private:
  FiniteAbelianGroup group_;
  std::vector<Int> coords_;
};

GroupElement zero_element(const FiniteAbelianGroup& g);

// All |g| elements in lexicographic coordinate order; guarded.
std::vector<GroupElement> all_elements(const FiniteAbelianGroup& g,
                                       std::size_t guard = 1000000);

// Subgroup in canonical form. The canonical datum is the Hermite normal form
// of the lattice in Z^n spanned by coordinate lifts of the generators
// together with the rows d_i * e_i, so equal subgroups have identical
// matrices and subgroup equality is a plain data comparison.
class Subgroup {
 public:
  static Subgroup from_generators(const FiniteAbelianGroup& g,
                                  const std::vector<GroupElement>& gens);
  static Subgroup trivial(const FiniteAbelianGroup& g);
  static Subgroup whole(const FiniteAbelianGroup& g);

  const FiniteAbelianGroup& group() const { return group_; }
  // n x n upper-triangular canonical lattice basis.
  const IntMatrix& lattice() const { return lattice_; }
  // Nonzero rows of the lattice basis reduced modulo the component orders.
  IntMatrix generator_matrix() const;
  const Int& order() const { return order_; }
  // Minimal number of generators.
  std::size_t rank() const;
  // Invariant factors of the subgroup itself (ascending chain, each > 1).
  std::vector<Int> invariant_factors() const;
  // Generators realizing the invariant-factor decomposition; generator k has
  // order invariant_factors()[k] and the subgroup is their direct sum.
  std::vector<GroupElement> minimal_generators() const;

  bool contains(const GroupElement& x) const;
  bool contains(const Subgroup& other) const;
  Subgroup extended_by(const GroupElement& x) const;
  // All elements, via the invariant-factor decomposition; guarded.
  std::vector<GroupElement> elements(std::size_t guard = 1000000) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.group_ == b.group_ && mat_equal(a.lattice_, b.lattice_);
  }
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    return mat_compare(a.lattice_, b.lattice_) < 0;
  }

 private:
  Subgroup() = default;
  void decompose() const;

  FiniteAbelianGroup group_;
  IntMatrix lattice_;
  Int order_;
  mutable std::optional<std::vector<Int>> invariants_;
  mutable std::optional<IntMatrix> min_gen_rows_;
};

// Cokernel of an integer relation matrix: the quotient of Z^n by the subgroup
// generated by the rows of rel. Branched covers of knots have finite first
// homology, so a zero diagonal in the Smith form (a free summand) is rejected.
struct CokernelPresentation {
  FiniteAbelianGroup group;
  // Projection Z^n -> group coordinates.
  GroupElement project(const IntVector& x) const;
  // Ambient representative of the k-th group generator.
  IntVector lift(std::size_t k) const;

  IntMatrix proj_rows;  // components x n
  IntMatrix lift_rows;  // components x n
  std::vector<Int> ambient_orders;
};

CokernelPresentation group_from_relations(const IntMatrix& rel);

// p-primary subgroup with coordinate maps in both directions.
struct PrimaryPart {
  FiniteAbelianGroup part;
  GroupElement include(const GroupElement& x) const;  // part -> ambient
  GroupElement project(const GroupElement& x) const;  // ambient -> part

  FiniteAbelianGroup ambient;
  std::vector<std::size_t> kept;  // ambient component indices with p | d_i
  std::vector<Int> cofactor;      // m_i = d_i / p^{v_i}
  std::vector<Int> cofactor_inv;  // m_i^{-1} mod p^{v_i}
};

PrimaryPart primary_part(const FiniteAbelianGroup& g, const Int& p);

// Invariant factors of g / s.
std::vector<Int> quotient_invariants(const FiniteAbelianGroup& g, const Subgroup& s);

// Every subgroup of order m, canonical and sorted. An oracle for the
// metabolizer search, so it carries a hard size guard.
std::vector<Subgroup> all_subgroups_of_order(const FiniteAbelianGroup& g, const Int& m,
                                             std::size_t subgroup_guard = 2000000);

// Isomorphism-pattern matches used by the concordance checkers.
// g ≅ Z_{p^k}: returns k >= 1.
std::optional<unsigned> iso_match_cyclic_p_power(const FiniteAbelianGroup& g, const Int& p);
// g ≅ Z_3 ⊕ Z_{3^{2i}}: returns i >= 1.
std::optional<unsigned> iso_match_z3_plus_z3_even_power(const FiniteAbelianGroup& g);

}  // namespace kc
