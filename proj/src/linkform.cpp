#include "kc/linkform.hpp"

#include <algorithm>

namespace kc {

LinkingForm::LinkingForm(FiniteAbelianGroup group, RatMatrix gram)
    : group_(std::move(group)), gram_(std::move(gram)) {
  const auto n = static_cast<Eigen::Index>(group_.components());
  if (gram_.rows() != n || gram_.cols() != n)
    throw DimensionError("gram matrix size does not match the group");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      gram_(i, j) = mod1(gram_(i, j));
      if (!(gram_(i, j) == gram_(j, i))) throw InputError("gram matrix not symmetric");
      Int g = gcd(group_.orders()[static_cast<std::size_t>(i)],
                  group_.orders()[static_cast<std::size_t>(j)]);
      if (!((g % gram_(i, j).den()).is_zero()))
        throw InputError("gram denominator incompatible with component orders");
    }
}

Rat LinkingForm::eval(const GroupElement& x, const GroupElement& y) const {
  if (!(x.group() == group_) || !(y.group() == group_))
    throw InputError("evaluation on elements of another group");
  Rat acc(0);
  const auto n = static_cast<Eigen::Index>(group_.components());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (x.coords()[static_cast<std::size_t>(i)].is_zero()) continue;
    Rat row(0);
    for (Eigen::Index j = 0; j < n; ++j)
      row += Rat(y.coords()[static_cast<std::size_t>(j)]) * gram_(i, j);
    acc += Rat(x.coords()[static_cast<std::size_t>(i)]) * row;
  }
  return mod1(acc);
}

Subgroup LinkingForm::radical() const { return orthogonal_complement(*this, Subgroup::whole(group_)); }

bool LinkingForm::nonsingular() const { return radical().order() == Int(1); }

LinkingForm LinkingForm::negated() const {
  RatMatrix g = gram_;
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = mod1(-g(i, j));
  return LinkingForm(group_, std::move(g));
}

std::pair<FiniteAbelianGroup, LinkingForm> from_seifert(const IntMatrix& v) {
  if (v.rows() != v.cols()) throw InputError("Seifert matrix must be square");
  const Eigen::Index n = v.rows();
  IntMatrix anti(n, n), sym(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      anti(i, j) = v(i, j) - v(j, i);
      sym(i, j) = v(i, j) + v(j, i);
    }
  if (!(abs(det_exact(anti)) == Int(1)))
    throw InputError("not a Seifert matrix: v - v^T is not unimodular");
  if (det_exact(sym).is_zero())
    throw InputError("v + v^T is singular; branched covers of knots have finite homology");

  CokernelPresentation pres = group_from_relations(sym);
  const auto k = static_cast<Eigen::Index>(pres.group.components());
  RatMatrix gram(k, k);
  if (k > 0) {
    RatMatrix inv = inverse_rational(sym);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b) {
        IntVector xa = pres.lift(static_cast<std::size_t>(a));
        IntVector xb = pres.lift(static_cast<std::size_t>(b));
        Rat acc(0);
        for (Eigen::Index i = 0; i < n; ++i)
          for (Eigen::Index j = 0; j < n; ++j) acc += Rat(xa(i)) * inv(i, j) * Rat(xb(j));
        gram(a, b) = mod1(-acc);
      }
  }
  LinkingForm f(pres.group, std::move(gram));
  return {pres.group, std::move(f)};
}

LinkingForm direct_sum(const LinkingForm& a, const LinkingForm& b) {
  std::vector<Int> orders = a.group().orders();
  orders.insert(orders.end(), b.group().orders().begin(), b.group().orders().end());
  FiniteAbelianGroup g = orders.empty() ? FiniteAbelianGroup() : FiniteAbelianGroup(orders);
  const auto na = static_cast<Eigen::Index>(a.group().components());
  const auto nb = static_cast<Eigen::Index>(b.group().components());
  RatMatrix gram = RatMatrix::Constant(na + nb, na + nb, Rat(0));
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j) gram(i, j) = a.gram()(i, j);
  for (Eigen::Index i = 0; i < nb; ++i)
    for (Eigen::Index j = 0; j < nb; ++j) gram(na + i, na + j) = b.gram()(i, j);
  return LinkingForm(std::move(g), std::move(gram));
}

LinkingForm power(const LinkingForm& f, unsigned n) {
  if (n == 0) return LinkingForm(FiniteAbelianGroup(), RatMatrix(0, 0));
  LinkingForm acc = f;
  for (unsigned k = 1; k < n; ++k) acc = direct_sum(acc, f);
  return acc;
}

LinkingForm restrict_primary(const LinkingForm& f, const Int& p) {
  PrimaryPart pp = primary_part(f.group(), p);
  const auto k = static_cast<Eigen::Index>(pp.part.components());
  RatMatrix gram(k, k);
  std::vector<GroupElement> incl;
  for (std::size_t i = 0; i < pp.part.components(); ++i) {
    std::vector<Int> c(pp.part.components(), Int(0));
    c[i] = Int(1);
    incl.push_back(pp.include(GroupElement(pp.part, std::move(c))));
  }
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      gram(i, j) = f.eval(incl[static_cast<std::size_t>(i)], incl[static_cast<std::size_t>(j)]);
  return LinkingForm(pp.part, std::move(gram));
}

Subgroup orthogonal_complement(const LinkingForm& f, const Subgroup& s) {
  if (!(s.group() == f.group())) throw InputError("complement of a subgroup of another group");
  const auto n = static_cast<Eigen::Index>(f.group().components());
  std::vector<GroupElement> gens = s.minimal_generators();
  if (gens.empty()) return Subgroup::whole(f.group());

  // One congruence per generator g: sum_i x_i * (L_g * beta(e_i, g)) = 0
  // mod L_g. Solutions are the x-part of the integer kernel of [B | -M].
  const auto r = static_cast<Eigen::Index>(gens.size());
  IntMatrix sys = IntMatrix::Constant(r, n + r, Int(0));
  for (Eigen::Index a = 0; a < r; ++a) {
    const GroupElement& g = gens[static_cast<std::size_t>(a)];
    std::vector<Rat> row(static_cast<std::size_t>(n));
    Int lg(1);
    for (Eigen::Index i = 0; i < n; ++i) {
      Rat acc(0);
      for (Eigen::Index j = 0; j < n; ++j)
        acc += Rat(g.coords()[static_cast<std::size_t>(j)]) * f.gram()(i, j);
      row[static_cast<std::size_t>(i)] = mod1(acc);
      lg = lcm(lg, row[static_cast<std::size_t>(i)].den());
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      Rat scaled = row[static_cast<std::size_t>(i)] * Rat(lg);
      sys(a, i) = scaled.num();
    }
    sys(a, n + a) = -lg;
  }
  IntMatrix ker = integer_kernel(sys);
  std::vector<GroupElement> sol_gens;
  for (Eigen::Index i = 0; i < ker.rows(); ++i) {
    std::vector<Int> c(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] = ker(i, j);
    sol_gens.emplace_back(f.group(), std::move(c));
  }
  return Subgroup::from_generators(f.group(), sol_gens);
}

bool is_metabolizer(const LinkingForm& f, const Subgroup& s) {
  return orthogonal_complement(f, s) == s;
}

DiagonalBasis diagonalize_3part(const LinkingForm& f) {
  const auto& orders = f.group().orders();
  if (orders.size() != 2)
    throw InputError("diagonalization needs a group of shape Z_3 + Z_{3^{2i}}");
  std::size_t i3, iq;
  if (orders[0] == Int(3) && orders[1] > Int(3)) {
    i3 = 0; iq = 1;
  } else if (orders[1] == Int(3) && orders[0] > Int(3)) {
    i3 = 1; iq = 0;
  } else if (orders[0] == Int(3) && orders[1] == Int(3)) {
    throw InputError("group is Z_3 + Z_3, not Z_3 + Z_{3^{2i}}");
  } else {
    throw InputError("group is not Z_3 + Z_{3^{2i}}");
  }
  const Int q = orders[iq];
  unsigned e = valuation(q, Int(3));
  if (!(pow(Int(3), e) == q) || e % 2 != 0)
    throw InputError("second component is not an even power of 3");

  std::vector<Int> ca(2, Int(0)), cb(2, Int(0));
  ca[i3] = Int(1);
  cb[iq] = Int(1);
  GroupElement a(f.group(), ca), b(f.group(), cb);

  // t/q = beta(b,b) with t a unit mod 3 whenever the form is nonsingular.
  Rat bb = f.eval(b, b);
  Int t = mod_floor(bb.num() * (q / bb.den()), q);
  if ((t % Int(3)).is_zero())
    throw InputError("singular form: beta(b,b) has no unit numerator");
  Int u = mod_inverse(t, q);

  // v = a - (q * beta(a,b)) * u * b kills the cross term and has order 3.
  Rat ab = f.eval(a, b);
  Int qab = ab.num() * (q / ab.den());
  GroupElement v = a - (mod_floor(qab * u, q) * b);
  if (!f.eval(v, b).is_zero()) throw Error("diagonalization failed to clear beta(v,b)");
  if (!(v.order() == Int(3))) throw Error("diagonalization produced v of wrong order");

  Rat vv = f.eval(v, v);
  int eps3;
  if (vv == Rat(Int(1), Int(3))) eps3 = 1;
  else if (vv == Rat(Int(2), Int(3))) eps3 = -1;
  else throw InputError("singular form: beta(v,v) is not ±1/3");

  // Rescale b by a square root q0 of ±t^{-1}; exactly one sign admits one
  // because -1 is not a square modulo 3.
  Int s = u;
  Int q0(0);
  int eps9 = 0;
  for (Int c(1); c < q; c += 1) {
    Int c2 = mod_floor(c * c, q);
    if (c2 == s) { q0 = c; eps9 = 1; break; }
    if (c2 == mod_floor(-s, q)) { q0 = c; eps9 = -1; break; }
  }
  if (eps9 == 0) throw Error("no square root found while rescaling");
  GroupElement w = q0 * b;

  DiagonalBasis out{v, w, eps3, eps9};
  if (!(w.order() == q)) throw Error("diagonalization produced w of wrong order");
  Rat ww = f.eval(w, w);
  Rat expect = eps9 == 1 ? Rat(Int(1), q) : Rat(q - Int(1), q);
  if (!(ww == expect)) throw Error("diagonalization produced wrong self-linking for w");
  if (!(Subgroup::from_generators(f.group(), {v, w}).order() == f.group().total_order()))
    throw Error("diagonal basis does not generate");
  return out;
}

}  // namespace kc
