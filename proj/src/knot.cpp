#include "kc/knot.hpp"

#include <algorithm>

namespace kc {

SeifertMatrix SeifertMatrix::validate(IntMatrix v, std::string name) {
  if (v.rows() != v.cols()) throw InputError("Seifert matrix must be square");
  if (v.rows() % 2 != 0) throw InputError("Seifert matrix must have even size 2g");
  const Eigen::Index n = v.rows();
  IntMatrix anti(n, n), sym(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      anti(i, j) = v(i, j) - v(j, i);
      sym(i, j) = v(i, j) + v(j, i);
    }
  if (!(abs(det_exact(anti)) == Int(1)))
    throw InputError("not a Seifert matrix: det(V - V^T) is not ±1");
  Int d = det_exact(sym);
  if (d.is_zero()) throw InputError("det(V + V^T) = 0: not a knot Seifert matrix");
  if ((d % Int(2)).is_zero())
    throw InputError("det(V + V^T) is even: not a knot Seifert matrix");
  return SeifertMatrix(std::move(v), std::move(name));
}

IntPolynomial alexander(const SeifertMatrix& k) {
  IntMatrix neg_vt = (-k.matrix().transpose()).eval();
  return poly_det_pencil(k.matrix(), neg_vt).canonical();
}

Int determinant(const SeifertMatrix& k) { return abs(alexander(k).eval(Int(-1))); }

LinkingForm branched_form(const SeifertMatrix& k) { return from_seifert(k.matrix()).second; }

FiniteAbelianGroup homology(const SeifertMatrix& k) { return from_seifert(k.matrix()).first; }

SeifertMatrix twisted_double(const Int& k) {
  if (k < Int(0)) throw InputError("twisted double needs k >= 0");
  IntMatrix v(2, 2);
  v << Int(-1), Int(1), Int(0), k;
  return SeifertMatrix::validate(std::move(v), "D_" + k.str());
}

SeifertMatrix connected_sum(const SeifertMatrix& k1, const SeifertMatrix& k2) {
  const Eigen::Index n1 = k1.size(), n2 = k2.size();
  IntMatrix v = IntMatrix::Constant(n1 + n2, n1 + n2, Int(0));
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index j = 0; j < n1; ++j) v(i, j) = k1.matrix()(i, j);
  for (Eigen::Index i = 0; i < n2; ++i)
    for (Eigen::Index j = 0; j < n2; ++j) v(n1 + i, n1 + j) = k2.matrix()(i, j);
  std::string name;
  if (!k1.name().empty() || !k2.name().empty()) name = k1.name() + " # " + k2.name();
  return SeifertMatrix::validate(std::move(v), std::move(name));
}

std::string to_string(AlgebraicOrder o) {
  switch (o) {
    case AlgebraicOrder::Slice: return "slice";
    case AlgebraicOrder::Order2: return "order2";
    case AlgebraicOrder::Order4: return "order4";
  }
  return "?";
}

std::optional<Int> quadratic_family_parameter(const IntPolynomial& p) {
  IntPolynomial c = p.canonical();
  if (c == IntPolynomial({1})) return Int(0);
  if (c.degree() != 2) return std::nullopt;
  Int k = c.coeff(0);
  if (!(c.coeff(2) == k) || !(c.coeff(1) == -(Int(2) * k + Int(1))) || k < Int(1))
    return std::nullopt;
  return k;
}

AlgebraicOrder algebraic_order_quadratic(const IntPolynomial& p) {
  auto k = quadratic_family_parameter(p);
  if (!k) throw InputError("unsupported family: expected k t^2 - (2k+1) t + k");
  Int m = Int(4) * *k + Int(1);
  Int root = Int(mp::sqrt(m.raw()));
  if (root * root == m) return AlgebraicOrder::Slice;
  for (const auto& [prime, exp] : factorize(m))
    if (mod_floor(prime, Int(4)) == Int(3) && exp % 2 == 1) return AlgebraicOrder::Order4;
  return AlgebraicOrder::Order2;
}

std::optional<Int> corollary13_check(const IntPolynomial& p) {
  if (p.canonical().degree() != 2) return std::nullopt;
  Int d = abs(p.eval(Int(-1)));
  if (d.is_zero()) return std::nullopt;
  if (valuation(d, Int(3)) != 3) return std::nullopt;
  return d / Int(27);
}

std::optional<std::pair<unsigned, Int>> corollary41_check(const IntPolynomial& p) {
  auto k = quadratic_family_parameter(p);
  if (!k) throw InputError("unsupported family: expected k t^2 - (2k+1) t + k");
  Int m = Int(4) * *k + Int(1);
  unsigned v = valuation(m, Int(3));
  if (v != 1 && v != 3) return std::nullopt;
  return std::make_pair((v - 1) / 2, m / pow(Int(3), v));
}

FamilyKnot corollary42_family(const Int& r, const Int& s) {
  if (r < Int(1) || s < Int(1)) throw InputError("family needs positive r and s");
  SeifertMatrix d1 = twisted_double(Int(3) * r + Int(2));
  SeifertMatrix d2 = twisted_double(Int(9) * (s * s + s) + Int(2));
  FamilyKnot out{connected_sum(d1, d2), false};
  out.applicable = !mod_floor(r, Int(3)).is_zero() && !(mod_floor(s, Int(3)) == Int(1));
  if (out.applicable) {
    PrimaryPart pp = primary_part(homology(out.knot), Int(3));
    std::vector<Int> expect{Int(3), Int(9)};
    if (!(pp.part.invariant_factors() == expect))
      throw Error("family 3-part is not Z_3 + Z_9 despite applicability");
  }
  return out;
}

KnotReport analyze(const SeifertMatrix& k, const AnalyzeOptions& options) {
  KnotReport rep;
  rep.name = k.name();
  rep.alexander = alexander(k);
  rep.determinant = abs(rep.alexander.eval(Int(-1)));
  auto [group, form] = from_seifert(k.matrix());
  rep.homology = group.invariant_factors();
  if (!(group.total_order() == rep.determinant))
    throw Error("homology order disagrees with |Delta(-1)|");
  if (!(rep.determinant == Int(1)))
    for (const auto& [prime, exp] : factorize(rep.determinant)) {
      (void)exp;
      rep.primary_parts[prime] = primary_part(group, prime).part.orders();
    }
  rep.thm11 = theorem11_check(group);
  rep.thm12 = theorem12_check(group);
  rep.cor13 = corollary13_check(rep.alexander);
  if (auto fam = quadratic_family_parameter(rep.alexander)) {
    (void)fam;
    rep.algebraic_order = algebraic_order_quadratic(rep.alexander);
    rep.cor41 = corollary41_check(rep.alexander);
  }
  rep.engine_prime = Int(0);
  if (options.run_engine && !(rep.determinant == Int(1))) {
    Int p = options.engine_prime;
    if (p.is_zero()) p = factorize(rep.determinant)[0].first;
    rep.engine_prime = p;
    LinkingForm fp = restrict_primary(form, p);
    for (unsigned n : options.engine_ns) {
      try {
        rep.engine[n] = obstruct_nfold(fp, n, options.budget);
      } catch (const BudgetError& e) {
        Verdict v;
        v.outcome = Outcome::Inapplicable;
        v.reason = std::string("budget: ") + e.what();
        rep.engine[n] = std::move(v);
      }
    }
  }
  return rep;
}

}  // namespace kc
