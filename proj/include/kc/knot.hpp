#pragma once

#include <map>
#include <optional>
#include <string>

#include "kc/cgobstruct.hpp"

namespace kc {

// Integer Seifert matrix of a knot: square of even size with unimodular
// antisymmetrization. The sole knot-level input; everything computed from it
// is an S-equivalence invariant.
class SeifertMatrix {
 public:
  static SeifertMatrix validate(IntMatrix v, std::string name = "");

  const IntMatrix& matrix() const { return v_; }
  const std::string& name() const { return name_; }
  Eigen::Index size() const { return v_.rows(); }

 private:
  SeifertMatrix(IntMatrix v, std::string name) : v_(std::move(v)), name_(std::move(name)) {}
  IntMatrix v_;
  std::string name_;
};

// Canonical form of det(V - t V^T).
IntPolynomial alexander(const SeifertMatrix& k);
// |Delta(-1)| = |det(V + V^T)| = |H_1(M_K)|.
Int determinant(const SeifertMatrix& k);
FiniteAbelianGroup homology(const SeifertMatrix& k);
LinkingForm branched_form(const SeifertMatrix& k);

// k-twisted double of the unknot, V = [[-1, 1], [0, k]]:
// Delta = k t^2 - (2k+1) t + k and |H_1| = 4k+1.
SeifertMatrix twisted_double(const Int& k);
SeifertMatrix connected_sum(const SeifertMatrix& k1, const SeifertMatrix& k2);

enum class AlgebraicOrder { Slice, Order2, Order4 };
std::string to_string(AlgebraicOrder o);

// Levine's order for the quadratic family Delta = k t^2 - (2k+1) t + k:
// algebraically slice iff 4k+1 is a perfect square, order 4 iff some prime
// = 3 mod 4 has odd exponent in 4k+1, order 2 otherwise. Polynomials outside
// the family are rejected (InputError): the general classification is out of
// scope here.
AlgebraicOrder algebraic_order_quadratic(const IntPolynomial& p);

// The quadratic-family parameter k of a canonical polynomial, when it has
// the shape k t^2 - (2k+1) t + k (k = 0 canonicalizes to the constant 1).
std::optional<Int> quadratic_family_parameter(const IntPolynomial& p);

// Quadratic Delta with |Delta(-1)| = 27m, 3 ∤ m: order 4 algebraically but
// not order 4 in concordance. Returns m.
std::optional<Int> corollary13_check(const IntPolynomial& p);

// Family polynomial with 4k+1 = 3^{2n+1} m, n in {0,1}, 3 ∤ m: not of
// order 4. Returns (n, m).
std::optional<std::pair<unsigned, Int>> corollary41_check(const IntPolynomial& p);

struct FamilyKnot {
  SeifertMatrix knot;
  bool applicable = false;  // r != 0 mod 3 and s != 1 mod 3
};

// D_{3r+2} # D_{9(s^2+s)+2}; when applicable its 3-primary homology is
// Z_3 + Z_9 (checked).
FamilyKnot corollary42_family(const Int& r, const Int& s);

struct AnalyzeOptions {
  bool run_engine = false;
  Int engine_prime = Int(0);  // 0: smallest prime dividing the determinant
  std::vector<unsigned> engine_ns = {1, 2, 4};
  SearchBudget budget;
};

struct KnotReport {
  std::string name;
  IntPolynomial alexander;
  Int determinant;
  std::vector<Int> homology;  // invariant factors
  std::map<Int, std::vector<Int>> primary_parts;  // prime -> component orders
  std::optional<std::pair<Int, unsigned>> thm11;  // (p, k): infinite order
  std::optional<unsigned> thm12;                  // i: not of order 4
  std::optional<Int> cor13;                       // m
  std::optional<std::pair<unsigned, Int>> cor41;  // (n, m)
  std::optional<AlgebraicOrder> algebraic_order;  // quadratic family only
  Int engine_prime;                               // 0 when the engine did not run
  std::map<unsigned, Verdict> engine;             // n -> verdict
};

KnotReport analyze(const SeifertMatrix& k, const AnalyzeOptions& options = {});

}  // namespace kc
