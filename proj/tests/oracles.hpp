// Test-only oracles, kept independent of the implementation paths they check.
#pragma once

#include <optional>
#include <random>
#include <vector>

#include "kc/intlinalg.hpp"

namespace kc::testing {

// Determinant by cofactor expansion along the first row.
inline Int det_cofactor(const IntMatrix& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return Int(1);
  if (n == 1) return a(0, 0);
  Int acc(0);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (a(0, j).is_zero()) continue;
    IntMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    Int term = a(0, j) * det_cofactor(minor);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

// Adjugate-based exact inverse, independent of Gauss-Jordan.
inline RatMatrix inverse_adjugate(const IntMatrix& a) {
  const Eigen::Index n = a.rows();
  Int det = det_cofactor(a);
  RatMatrix inv(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (Eigen::Index r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (Eigen::Index c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = a(r, c);
        }
        ++rr;
      }
      Int cof = det_cofactor(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv(i, j) = Rat(cof, det);
    }
  return inv;
}

// Brute-force search for an integer solution with entries in [-bound, bound].
inline std::optional<IntVector> solve_brute(const IntMatrix& a, const IntVector& b,
                                            long long bound) {
  const Eigen::Index n = a.cols();
  std::vector<long long> z(static_cast<std::size_t>(n), -bound);
  if (n == 0) {
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      if (!b(i).is_zero()) return std::nullopt;
    return IntVector(0);
  }
  for (;;) {
    bool ok = true;
    for (Eigen::Index i = 0; i < a.rows() && ok; ++i) {
      Int acc(0);
      for (Eigen::Index j = 0; j < n; ++j) acc += a(i, j) * Int(z[static_cast<std::size_t>(j)]);
      ok = acc == b(i);
    }
    if (ok) {
      IntVector out(n);
      for (Eigen::Index j = 0; j < n; ++j) out(j) = Int(z[static_cast<std::size_t>(j)]);
      return out;
    }
    Eigen::Index k = 0;
    while (k < n) {
      if (++z[static_cast<std::size_t>(k)] <= bound) break;
      z[static_cast<std::size_t>(k)] = -bound;
      ++k;
    }
    if (k == n) return std::nullopt;
  }
}

inline IntMatrix random_matrix(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols,
                               int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = Int(dist(rng));
  return a;
}

}  // namespace kc::testing
