#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "kc/error.hpp"
#include "kc/scalars.hpp"

namespace kc {

// Dense exact matrices. Everything downstream (Seifert matrices, relation
// matrices, constraint systems) lives in these types.
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

IntMatrix int_mat(std::initializer_list<std::initializer_list<long long>> rows);
IntVector int_vec(std::initializer_list<long long> entries);
bool mat_equal(const IntMatrix& a, const IntMatrix& b);
bool mat_equal(const RatMatrix& a, const RatMatrix& b);
// Lexicographic row-major comparison; the total order used for canonical forms.
int mat_compare(const IntMatrix& a, const IntMatrix& b);

// Smith normal form u*a*w = diag(d). u and w are unimodular, the d are
// non-negative and form a divisibility chain d[0] | d[1] | ...
struct SnfResult {
  std::vector<Int> d;  // length min(rows, cols)
  IntMatrix u;         // rows x rows
  IntMatrix w;         // cols x cols
};

// Pivots are chosen by smallest nonzero absolute value (first in row-major
// scan on ties), which keeps entry growth down and makes the output a
// deterministic function of the input.
SnfResult smith_normal_form(const IntMatrix& a);

// Exact determinant by fraction-free (Bareiss) elimination.
Int det_exact(const IntMatrix& a);

// Exact inverse over the rationals; throws SingularMatrixError.
RatMatrix inverse_rational(const IntMatrix& a);

// Outcome of an integer linear solve. When the system a*z = b has no integer
// solution, (divisor, residue) certify it: some row of the diagonalized
// system reads divisor * y = residue with divisor ∤ residue (divisor 0 means
// the row is identically zero but the right-hand side is not).
struct IntSolveResult {
  std::optional<IntVector> solution;
  Int divisor;
  Int residue;
  bool feasible() const { return solution.has_value(); }
};

IntSolveResult solve_integer_detailed(const IntMatrix& a, const IntVector& b);
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

// Rows span {x : a*x = 0} over Z.
IntMatrix integer_kernel(const IntMatrix& a);

// Integer polynomial, constant term first. Canonical form strips factors of
// t and normalizes the leading coefficient to be positive; Alexander
// polynomials are only defined up to ±t^k, and this picks the representative
// the degree-2 family is usually displayed in.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs);
  IntPolynomial(std::initializer_list<long long> coeffs);

  const std::vector<Int>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is -1 by convention.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Int coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Int(0); }
  Int leading() const;
  Int eval(const Int& t) const;
  Rat eval(const Rat& t) const;

  IntPolynomial canonical() const;
  // Display form, e.g. "3t^2 - 7t + 3".
  std::string str() const;

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.c_ == b.c_;
  }

 private:
  std::vector<Int> c_;  // c_[k] multiplies t^k; no trailing zeros
};

// det(a + t*b), computed exactly by evaluation at n+1 integer points and
// interpolation.
IntPolynomial poly_det_pencil(const IntMatrix& a, const IntMatrix& b);

}  // namespace kc
