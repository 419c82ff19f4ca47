#include "kc/intlinalg.hpp"

#include <algorithm>
#include <sstream>

namespace kc {

IntMatrix int_mat(std::initializer_list<std::initializer_list<long long>> rows) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto n = m == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
  IntMatrix a(m, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw DimensionError("ragged initializer for matrix");
    Eigen::Index j = 0;
    for (long long v : row) a(i, j++) = Int(v);
    ++i;
  }
  return a;
}

IntVector int_vec(std::initializer_list<long long> entries) {
  IntVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (long long e : entries) v(i++) = Int(e);
  return v;
}

bool mat_equal(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

bool mat_equal(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

int mat_compare(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows() ? -1 : 1;
  if (a.cols() != b.cols()) return a.cols() < b.cols() ? -1 : 1;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) < b(i, j)) return -1;
      if (b(i, j) < a(i, j)) return 1;
    }
  return 0;
}

namespace {

struct SnfWork {
  IntMatrix a, u, w;

  void swap_rows(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    a.row(i).swap(a.row(j));
    u.row(i).swap(u.row(j));
  }
  void swap_cols(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    a.col(i).swap(a.col(j));
    w.col(i).swap(w.col(j));
  }
  // row i -= q * row j
  void row_sub(Eigen::Index i, Eigen::Index j, const Int& q) {
    if (q.is_zero()) return;
    for (Eigen::Index k = 0; k < a.cols(); ++k) a(i, k) -= q * a(j, k);
    for (Eigen::Index k = 0; k < u.cols(); ++k) u(i, k) -= q * u(j, k);
  }
  void col_sub(Eigen::Index i, Eigen::Index j, const Int& q) {
    if (q.is_zero()) return;
    for (Eigen::Index k = 0; k < a.rows(); ++k) a(k, i) -= q * a(k, j);
    for (Eigen::Index k = 0; k < w.rows(); ++k) w(k, i) -= q * w(k, j);
  }
  void negate_row(Eigen::Index i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) a(i, k) = -a(i, k);
    for (Eigen::Index k = 0; k < u.cols(); ++k) u(i, k) = -u(i, k);
  }

  // Smallest nonzero |entry| in the submatrix with corner (k,k); row-major
  // scan breaks ties.
  bool find_pivot(Eigen::Index k, Eigen::Index& pi, Eigen::Index& pj) const {
    bool found = false;
    Int best;
    for (Eigen::Index i = k; i < a.rows(); ++i)
      for (Eigen::Index j = k; j < a.cols(); ++j) {
        if (a(i, j).is_zero()) continue;
        Int v = kc::abs(a(i, j));
        if (!found || v < best) {
          found = true;
          best = v;
          pi = i;
          pj = j;
        }
      }
    return found;
  }
};

// Nearest-integer quotient (ties toward zero) keeps remainders small.
Int quot_nearest(const Int& a, const Int& b) {
  Int q = div_floor(a, b);
  Int r = a - q * b;
  Int babs = kc::abs(b);
  if (r + r > babs) q += 1;
  return q;
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  SnfWork s{a, IntMatrix::Identity(m, m), IntMatrix::Identity(n, n)};

  const Eigen::Index steps = std::min(m, n);
  for (Eigen::Index k = 0; k < steps; ++k) {
    Eigen::Index pi, pj;
    if (!s.find_pivot(k, pi, pj)) break;  // remaining block is zero
    s.swap_rows(k, pi);
    s.swap_cols(k, pj);

    for (;;) {
      // Reduce column k below the pivot.
      bool dirty = false;
      for (Eigen::Index i = k + 1; i < m; ++i) {
        if (s.a(i, k).is_zero()) continue;
        Int q = quot_nearest(s.a(i, k), s.a(k, k));
        s.row_sub(i, k, q);
        if (!s.a(i, k).is_zero()) dirty = true;
      }
      // And row k to the right of it.
      for (Eigen::Index j = k + 1; j < n; ++j) {
        if (s.a(k, j).is_zero()) continue;
        Int q = quot_nearest(s.a(k, j), s.a(k, k));
        s.col_sub(j, k, q);
        if (!s.a(k, j).is_zero()) dirty = true;
      }
      if (dirty) {
        // A nonzero remainder is strictly smaller than the pivot; re-pivot.
        Eigen::Index qi, qj;
        s.find_pivot(k, qi, qj);
        s.swap_rows(k, qi);
        s.swap_cols(k, qj);
        continue;
      }
      // Pivot divides the rest of its row and column; check the interior.
      bool divides_all = true;
      for (Eigen::Index i = k + 1; i < m && divides_all; ++i)
        for (Eigen::Index j = k + 1; j < n && divides_all; ++j)
          if (!(s.a(i, j) % s.a(k, k)).is_zero()) {
            s.row_sub(k, i, Int(-1));  // pull the offending row up
            divides_all = false;
          }
      if (divides_all) break;
    }

    if (s.a(k, k) < Int(0)) s.negate_row(k);
  }

  SnfResult out;
  out.d.reserve(static_cast<std::size_t>(steps));
  for (Eigen::Index k = 0; k < steps; ++k) out.d.push_back(s.a(k, k));
  out.u = std::move(s.u);
  out.w = std::move(s.w);
  return out;
}

Int det_exact(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant of non-square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return Int(1);
  IntMatrix m = a;
  Int prev(1);
  int sign = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (m(k, k).is_zero()) {
      Eigen::Index piv = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (!m(i, k).is_zero()) { piv = i; break; }
      if (piv < 0) return Int(0);
      m.row(k).swap(m.row(piv));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = Int(0);
    }
    prev = m(k, k);
  }
  Int det = m(n - 1, n - 1);
  return sign < 0 ? -det : det;
}

RatMatrix inverse_rational(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("inverse of non-square matrix");
  const Eigen::Index n = a.rows();
  RatMatrix m(n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = Rat(a(i, j));
      m(i, n + j) = Rat(i == j ? 1 : 0);
    }
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = k; i < n; ++i)
      if (!m(i, k).is_zero()) { piv = i; break; }
    if (piv < 0) throw SingularMatrixError("matrix is singular");
    if (piv != k) m.row(k).swap(m.row(piv));
    Rat lead = m(k, k);
    for (Eigen::Index j = k; j < 2 * n; ++j) m(k, j) /= lead;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || m(i, k).is_zero()) continue;
      Rat f = m(i, k);
      for (Eigen::Index j = k; j < 2 * n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return m.block(0, n, n, n);
}

IntSolveResult solve_integer_detailed(const IntMatrix& a, const IntVector& b) {
  if (a.rows() != b.rows()) throw DimensionError("solve: rhs size mismatch");
  const Eigen::Index m = a.rows(), n = a.cols();
  IntSolveResult res;
  res.divisor = Int(0);
  res.residue = Int(0);

  SnfResult snf = smith_normal_form(a);
  IntVector c = snf.u * b;
  IntVector y = IntVector::Constant(n, Int(0));
  const Eigen::Index k = std::min(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    Int di = i < k ? snf.d[static_cast<std::size_t>(i)] : Int(0);
    if (di.is_zero()) {
      if (!c(i).is_zero()) {
        res.divisor = Int(0);
        res.residue = c(i);
        return res;
      }
      continue;
    }
    Int r = mod_floor(c(i), di);
    if (!r.is_zero()) {
      res.divisor = di;
      res.residue = r;
      return res;
    }
    y(i) = c(i) / di;
  }
  IntVector z = snf.w * y;
  // The verification a*z = b is part of the contract, not a debug aid.
  IntVector check = a * z;
  for (Eigen::Index i = 0; i < m; ++i)
    if (!(check(i) == b(i))) throw Error("integer solver produced a bad solution");
  res.solution = std::move(z);
  return res;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  return solve_integer_detailed(a, b).solution;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  SnfResult snf = smith_normal_form(a);
  const Eigen::Index k = std::min(m, n);
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index j = 0; j < n; ++j) {
    Int dj = j < k ? snf.d[static_cast<std::size_t>(j)] : Int(0);
    if (dj.is_zero()) free_cols.push_back(j);
  }
  IntMatrix ker(static_cast<Eigen::Index>(free_cols.size()), n);
  for (std::size_t r = 0; r < free_cols.size(); ++r)
    for (Eigen::Index i = 0; i < n; ++i) ker(static_cast<Eigen::Index>(r), i) = snf.w(i, free_cols[r]);
  return ker;
}

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

IntPolynomial::IntPolynomial(std::initializer_list<long long> coeffs) {
  for (long long v : coeffs) c_.push_back(Int(v));
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Int IntPolynomial::leading() const { return c_.empty() ? Int(0) : c_.back(); }

Int IntPolynomial::eval(const Int& t) const {
  Int acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Rat IntPolynomial::eval(const Rat& t) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + Rat(*it);
  return acc;
}

IntPolynomial IntPolynomial::canonical() const {
  if (c_.empty()) return IntPolynomial();
  std::size_t lo = 0;
  while (lo < c_.size() && c_[lo].is_zero()) ++lo;
  std::vector<Int> out(c_.begin() + static_cast<std::ptrdiff_t>(lo), c_.end());
  if (!out.empty() && out.back() < Int(0))
    for (auto& v : out) v = -v;
  return IntPolynomial(std::move(out));
}

std::string IntPolynomial::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const Int& v = c_[k];
    if (v.is_zero()) continue;
    Int av = kc::abs(v);
    if (first) {
      if (v < Int(0)) os << "-";
      first = false;
    } else {
      os << (v < Int(0) ? " - " : " + ");
    }
    if (!(av == Int(1)) || k == 0) os << av;
    if (k >= 1) os << "t";
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

IntPolynomial poly_det_pencil(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionError("pencil determinant needs equal square matrices");
  const Eigen::Index n = a.rows();
  // deg det(a + t b) <= n, so n+1 samples pin it down.
  std::vector<Int> samples;
  samples.reserve(static_cast<std::size_t>(n) + 1);
  for (Eigen::Index t0 = 0; t0 <= n; ++t0) {
    IntMatrix m = a;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) += Int(t0) * b(i, j);
    samples.push_back(det_exact(m));
  }
  // Newton forward differences on the nodes 0..n:
  //   P(t) = sum_k diff[k] * C(t, k).
  std::vector<Int> diff(samples);
  for (std::size_t k = 1; k < diff.size(); ++k)
    for (std::size_t i = diff.size() - 1; i >= k; --i) diff[i] = diff[i] - diff[i - 1];

  std::vector<Rat> acc(diff.size(), Rat(0));
  std::vector<Rat> basis{Rat(1)};  // C(t, 0)
  Int kfact(1);
  for (std::size_t k = 0; k < diff.size(); ++k) {
    if (k > 0) {
      // basis *= (t - (k-1)); then divide the contribution by k!.
      basis.push_back(Rat(0));
      for (std::size_t j = basis.size() - 1; j > 0; --j)
        basis[j] = basis[j - 1] - Rat(Int(static_cast<long long>(k - 1))) * basis[j];
      basis[0] = -Rat(Int(static_cast<long long>(k - 1))) * basis[0];
      kfact *= Int(static_cast<long long>(k));
    }
    Rat scale = Rat(diff[k], kfact);
    for (std::size_t j = 0; j < basis.size(); ++j) acc[j] += scale * basis[j];
  }
  std::vector<Int> coeffs;
  coeffs.reserve(acc.size());
  for (const Rat& r : acc) {
    if (!r.is_integer()) throw Error("pencil interpolation produced a non-integer");
    coeffs.push_back(r.num());
  }
  return IntPolynomial(std::move(coeffs));
}

}  // namespace kc
