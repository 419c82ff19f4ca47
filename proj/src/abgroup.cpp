#include "kc/abgroup.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kc {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // Deterministic witness set for the full 64-bit range.
  for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    uint64_t x = powmod_u64(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t pollard_rho_u64(uint64_t n) {
  if ((n & 1) == 0) return 2;
  for (uint64_t c = 1;; ++c) {
    uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (mulmod_u64(x, x, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      uint64_t diff = x > y ? x - y : y - x;
      d = std::gcd(diff == 0 ? n : diff, n);
    }
    if (d != n) return d;
  }
}

void factor_u64(uint64_t n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (miller_rabin_u64(n)) {
    out[Int(static_cast<unsigned long long>(n))] += 1;
    return;
  }
  uint64_t d = pollard_rho_u64(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
  if (n <= Int(0)) throw InputError("factorize expects a positive integer");
  std::map<Int, unsigned> acc;
  Int rest = n;
  for (long long p = 2; p <= 1000000 && Int(p) * Int(p) <= rest; p == 2 ? p = 3 : p += 2) {
    while ((rest % Int(p)).is_zero()) {
      acc[Int(p)] += 1;
      rest /= Int(p);
    }
  }
  if (!(rest == Int(1))) {
    if (!rest.fits_int64())
      throw BudgetError("factorization beyond 2^64 cofactor guard: " + rest.str());
    factor_u64(static_cast<uint64_t>(rest.to_int64()), acc);
  }
  return {acc.begin(), acc.end()};
}

bool is_prime(const Int& n) {
  if (n < Int(2)) return false;
  auto f = factorize(n);
  return f.size() == 1 && f[0].second == 1;
}

unsigned valuation(Int n, const Int& p) {
  unsigned v = 0;
  if (n.is_zero()) throw InputError("valuation of zero");
  n = abs(n);
  while ((n % p).is_zero()) {
    n /= p;
    ++v;
  }
  return v;
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> orders) : orders_(std::move(orders)) {
  for (const Int& d : orders_)
    if (d < Int(2)) throw InputError("component orders must be >= 2");
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(const Int& n) {
  if (n == Int(1)) return FiniteAbelianGroup();
  return FiniteAbelianGroup(std::vector<Int>{n});
}

Int FiniteAbelianGroup::total_order() const {
  Int t(1);
  for (const Int& d : orders_) t *= d;
  return t;
}

std::vector<Int> FiniteAbelianGroup::invariant_factors() const {
  // Collect prime powers per prime, then rebuild the divisibility chain by
  // taking the largest remaining power of every prime for the last factor,
  // the next largest for the one before, and so on.
  std::map<Int, std::vector<unsigned>> powers;
  for (const Int& d : orders_)
    for (const auto& [p, e] : factorize(d)) powers[p].push_back(e);
  std::size_t chain_len = 0;
  for (auto& [p, es] : powers) {
    std::sort(es.begin(), es.end(), std::greater<unsigned>());
    chain_len = std::max(chain_len, es.size());
  }
  std::vector<Int> chain(chain_len, Int(1));
  for (const auto& [p, es] : powers)
    for (std::size_t k = 0; k < es.size(); ++k)
      chain[chain_len - 1 - k] *= pow(p, es[k]);
  return chain;
}

bool FiniteAbelianGroup::isomorphic_to(const FiniteAbelianGroup& other) const {
  return invariant_factors() == other.invariant_factors();
}

bool FiniteAbelianGroup::is_p_group(Int& p) const {
  if (orders_.empty()) return false;
  auto f = factorize(orders_[0]);
  if (f.size() != 1) return false;
  p = f[0].first;
  for (const Int& d : orders_) {
    Int m = d;
    while ((m % p).is_zero()) m /= p;
    if (!(m == Int(1))) return false;
  }
  return true;
}

GroupElement::GroupElement(FiniteAbelianGroup group, std::vector<Int> coords)
    : group_(std::move(group)), coords_(std::move(coords)) {
  if (coords_.size() != group_.components())
    throw DimensionError("element coordinate count mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i)
    coords_[i] = mod_floor(coords_[i], group_.orders()[i]);
}

bool GroupElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Int& c) { return c.is_zero(); });
}

Int GroupElement::order() const {
  Int ord(1);
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const Int& d = group_.orders()[i];
    ord = lcm(ord, d / gcd(d, coords_[i]));
  }
  return ord;
}

namespace {
void require_same_parent(const GroupElement& a, const GroupElement& b) {
  if (!(a.group() == b.group())) throw InputError("elements of different groups");
}
}  // namespace

GroupElement operator+(const GroupElement& a, const GroupElement& b) {
  require_same_parent(a, b);
  std::vector<Int> c(a.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords()[i] + b.coords()[i];
  return GroupElement(a.group(), std::move(c));
}

GroupElement operator-(const GroupElement& a, const GroupElement& b) {
  require_same_parent(a, b);
  std::vector<Int> c(a.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords()[i] - b.coords()[i];
  return GroupElement(a.group(), std::move(c));
}

GroupElement GroupElement::operator-() const {
  std::vector<Int> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return GroupElement(group_, std::move(c));
}

GroupElement operator*(const Int& c, const GroupElement& x) {
  std::vector<Int> r(x.coords().size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = c * x.coords()[i];
  return GroupElement(x.group(), std::move(r));
}

GroupElement zero_element(const FiniteAbelianGroup& g) {
  return GroupElement(g, std::vector<Int>(g.components(), Int(0)));
}

std::vector<GroupElement> all_elements(const FiniteAbelianGroup& g, std::size_t guard) {
  Int total = g.total_order();
  if (total > Int(static_cast<long long>(guard)))
    throw BudgetError("group too large to enumerate: " + total.str());
  std::size_t n = total.to_int64() < 0 ? 0 : static_cast<std::size_t>(total.to_int64());
  std::vector<GroupElement> out;
  out.reserve(n);
  std::vector<Int> coords(g.components(), Int(0));
  for (;;) {
    out.emplace_back(g, coords);
    std::size_t i = g.components();
    while (i > 0) {
      --i;
      coords[i] += 1;
      if (coords[i] < g.orders()[i]) break;
      coords[i] = Int(0);
      if (i == 0) return out;
    }
    if (g.components() == 0) return out;
  }
}

namespace {

// Hermite normal form of the lattice spanned by the rows; the lattice must
// have full column rank (ours always contain the moduli rows d_i e_i).
// Result: n x n upper triangular, positive diagonal, entries above each pivot
// reduced into [0, pivot).
IntMatrix hnf_full_rank(IntMatrix rows) {
  const Eigen::Index m = rows.rows(), n = rows.cols();
  Eigen::Index r = 0;  // current pivot row
  for (Eigen::Index j = 0; j < n; ++j) {
    // Clear column j below r using euclidean row reduction.
    for (;;) {
      Eigen::Index piv = -1;
      Int best;
      for (Eigen::Index i = r; i < m; ++i) {
        if (rows(i, j).is_zero()) continue;
        Int v = abs(rows(i, j));
        if (piv < 0 || v < best) { piv = i; best = v; }
      }
      if (piv < 0) throw Error("lattice not of full rank in hnf");
      if (piv != r) rows.row(r).swap(rows.row(piv));
      bool clean = true;
      for (Eigen::Index i = r + 1; i < m; ++i) {
        if (rows(i, j).is_zero()) continue;
        Int q = div_floor(rows(i, j), rows(r, j));
        for (Eigen::Index k = j; k < n; ++k) rows(i, k) -= q * rows(r, k);
        if (!rows(i, j).is_zero()) clean = false;
      }
      if (clean) break;
    }
    if (rows(r, j) < Int(0))
      for (Eigen::Index k = j; k < n; ++k) rows(r, k) = -rows(r, k);
    // Reduce entries above the pivot to the canonical range.
    for (Eigen::Index i = 0; i < r; ++i) {
      Int q = div_floor(rows(i, j), rows(r, j));
      if (q.is_zero()) continue;
      for (Eigen::Index k = j; k < n; ++k) rows(i, k) -= q * rows(r, k);
    }
    ++r;
  }
  IntMatrix h(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) h(i, j) = rows(i, j);
  return h;
}

IntMatrix moduli_rows(const FiniteAbelianGroup& g) {
  const auto n = static_cast<Eigen::Index>(g.components());
  IntMatrix d = IntMatrix::Constant(n, n, Int(0));
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = g.orders()[static_cast<std::size_t>(i)];
  return d;
}

}  // namespace

Subgroup Subgroup::from_generators(const FiniteAbelianGroup& g,
                                   const std::vector<GroupElement>& gens) {
  const auto n = static_cast<Eigen::Index>(g.components());
  IntMatrix rows(static_cast<Eigen::Index>(gens.size()) + n, n);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (!(gens[k].group() == g)) throw InputError("generator from a different group");
    for (Eigen::Index j = 0; j < n; ++j)
      rows(static_cast<Eigen::Index>(k), j) = gens[k].coords()[static_cast<std::size_t>(j)];
  }
  rows.bottomRows(n) = moduli_rows(g);

  Subgroup s;
  s.group_ = g;
  s.lattice_ = hnf_full_rank(std::move(rows));
  Int covol(1);
  for (Eigen::Index i = 0; i < n; ++i) covol *= s.lattice_(i, i);
  s.order_ = g.total_order() / covol;
  return s;
}

Subgroup Subgroup::trivial(const FiniteAbelianGroup& g) { return from_generators(g, {}); }

Subgroup Subgroup::whole(const FiniteAbelianGroup& g) {
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < g.components(); ++i) {
    std::vector<Int> c(g.components(), Int(0));
    c[i] = Int(1);
    gens.emplace_back(g, std::move(c));
  }
  return from_generators(g, gens);
}

IntMatrix Subgroup::generator_matrix() const {
  const Eigen::Index n = lattice_.rows();
  std::vector<std::vector<Int>> keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<Int> row(static_cast<std::size_t>(n));
    bool nonzero = false;
    for (Eigen::Index j = 0; j < n; ++j) {
      row[static_cast<std::size_t>(j)] =
          mod_floor(lattice_(i, j), group_.orders()[static_cast<std::size_t>(j)]);
      nonzero = nonzero || !row[static_cast<std::size_t>(j)].is_zero();
    }
    if (nonzero) keep.push_back(std::move(row));
  }
  IntMatrix out(static_cast<Eigen::Index>(keep.size()), n);
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(static_cast<Eigen::Index>(i), j) = keep[i][static_cast<std::size_t>(j)];
  return out;
}

void Subgroup::decompose() const {
  if (invariants_) return;
  const Eigen::Index n = lattice_.rows();
  // Relations among the lattice-basis generators: X = D * H^{-1}.
  RatMatrix hinv = inverse_rational(lattice_);
  IntMatrix x(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Rat v = Rat(group_.orders()[static_cast<std::size_t>(i)]) * hinv(i, j);
      if (!v.is_integer()) throw Error("subgroup relation matrix not integral");
      x(i, j) = v.num();
    }
  SnfResult snf = smith_normal_form(x);
  RatMatrix winv_r = inverse_rational(snf.w);
  IntMatrix gens(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Rat v(0);
      for (Eigen::Index k = 0; k < n; ++k) v += winv_r(i, k) * Rat(lattice_(k, j));
      if (!v.is_integer()) throw Error("generator change of basis not integral");
      gens(i, j) = v.num();
    }
  std::vector<Int> inv;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (snf.d[static_cast<std::size_t>(i)] > Int(1)) {
      inv.push_back(snf.d[static_cast<std::size_t>(i)]);
      keep.push_back(i);
    }
  }
  IntMatrix rows(static_cast<Eigen::Index>(keep.size()), n);
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (Eigen::Index j = 0; j < n; ++j) rows(static_cast<Eigen::Index>(r), j) = gens(keep[r], j);
  invariants_ = std::move(inv);
  min_gen_rows_ = std::move(rows);
}

std::size_t Subgroup::rank() const {
  decompose();
  return invariants_->size();
}

std::vector<Int> Subgroup::invariant_factors() const {
  decompose();
  return *invariants_;
}

std::vector<GroupElement> Subgroup::minimal_generators() const {
  decompose();
  std::vector<GroupElement> gens;
  for (Eigen::Index i = 0; i < min_gen_rows_->rows(); ++i) {
    std::vector<Int> c(static_cast<std::size_t>(min_gen_rows_->cols()));
    for (Eigen::Index j = 0; j < min_gen_rows_->cols(); ++j)
      c[static_cast<std::size_t>(j)] = (*min_gen_rows_)(i, j);
    gens.emplace_back(group_, std::move(c));
  }
  return gens;
}

bool Subgroup::contains(const GroupElement& x) const {
  if (!(x.group() == group_)) throw InputError("membership test across groups");
  const Eigen::Index n = lattice_.rows();
  std::vector<Int> rem(x.coords());
  for (Eigen::Index j = 0; j < n; ++j) {
    Int& v = rem[static_cast<std::size_t>(j)];
    if ((v % lattice_(j, j)).is_zero()) {
      Int c = v / lattice_(j, j);
      for (Eigen::Index k = j; k < n; ++k)
        rem[static_cast<std::size_t>(k)] -= c * lattice_(j, k);
    } else {
      return false;
    }
  }
  return true;
}

bool Subgroup::contains(const Subgroup& other) const {
  if (!(other.group_ == group_)) throw InputError("subgroup comparison across groups");
  const Eigen::Index n = lattice_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<Int> c(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] = other.lattice_(i, j);
    if (!contains(GroupElement(group_, std::move(c)))) return false;
  }
  return true;
}

Subgroup Subgroup::extended_by(const GroupElement& x) const {
  if (!(x.group() == group_)) throw InputError("extension by element of another group");
  const Eigen::Index n = lattice_.rows();
  IntMatrix rows(n + 1, n);
  for (Eigen::Index j = 0; j < n; ++j) rows(0, j) = x.coords()[static_cast<std::size_t>(j)];
  rows.bottomRows(n) = lattice_;

  Subgroup s;
  s.group_ = group_;
  s.lattice_ = hnf_full_rank(std::move(rows));
  Int covol(1);
  for (Eigen::Index i = 0; i < n; ++i) covol *= s.lattice_(i, i);
  s.order_ = group_.total_order() / covol;
  return s;
}

std::vector<GroupElement> Subgroup::elements(std::size_t guard) const {
  if (order_ > Int(static_cast<long long>(guard)))
    throw BudgetError("subgroup too large to enumerate: " + order_.str());
  decompose();
  std::vector<GroupElement> gens = minimal_generators();
  std::vector<Int> inv = *invariants_;
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(order_.to_int64()));
  std::vector<Int> idx(gens.size(), Int(0));
  for (;;) {
    GroupElement e = zero_element(group_);
    for (std::size_t i = 0; i < gens.size(); ++i) e = e + idx[i] * gens[i];
    out.push_back(e);
    std::size_t i = gens.size();
    while (i > 0) {
      --i;
      idx[i] += 1;
      if (idx[i] < inv[i]) break;
      idx[i] = Int(0);
      if (i == 0) return out;
    }
    if (gens.empty()) return out;
  }
}

GroupElement CokernelPresentation::project(const IntVector& x) const {
  if (x.rows() != proj_rows.cols()) throw DimensionError("projection input size mismatch");
  std::vector<Int> c(static_cast<std::size_t>(proj_rows.rows()));
  for (Eigen::Index i = 0; i < proj_rows.rows(); ++i) {
    Int acc(0);
    for (Eigen::Index j = 0; j < proj_rows.cols(); ++j) acc += proj_rows(i, j) * x(j);
    c[static_cast<std::size_t>(i)] = acc;
  }
  return GroupElement(group, std::move(c));
}

IntVector CokernelPresentation::lift(std::size_t k) const {
  IntVector v(lift_rows.cols());
  for (Eigen::Index j = 0; j < lift_rows.cols(); ++j)
    v(j) = lift_rows(static_cast<Eigen::Index>(k), j);
  return v;
}

CokernelPresentation group_from_relations(const IntMatrix& rel) {
  const Eigen::Index n = rel.cols();
  SnfResult snf = smith_normal_form(rel);
  const Eigen::Index k = std::min(rel.rows(), n);
  std::vector<Int> diag(static_cast<std::size_t>(n), Int(0));
  for (Eigen::Index i = 0; i < k; ++i) diag[static_cast<std::size_t>(i)] = snf.d[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i < n; ++i)
    if (diag[static_cast<std::size_t>(i)].is_zero())
      throw InputError("relation matrix presents an infinite group (free summand)");

  std::vector<std::size_t> kept;
  std::vector<Int> orders;
  for (Eigen::Index i = 0; i < n; ++i)
    if (diag[static_cast<std::size_t>(i)] > Int(1)) {
      kept.push_back(static_cast<std::size_t>(i));
      orders.push_back(diag[static_cast<std::size_t>(i)]);
    }

  // Coordinates of x in the quotient are (w^T x)_i mod d_i at the kept
  // indices; the lift of generator i is row i of w^{-1}.
  RatMatrix winv_r = inverse_rational(snf.w);
  CokernelPresentation pres;
  pres.group = orders.empty() ? FiniteAbelianGroup() : FiniteAbelianGroup(orders);
  pres.proj_rows = IntMatrix(static_cast<Eigen::Index>(kept.size()), n);
  pres.lift_rows = IntMatrix(static_cast<Eigen::Index>(kept.size()), n);
  for (std::size_t r = 0; r < kept.size(); ++r) {
    for (Eigen::Index j = 0; j < n; ++j) {
      pres.proj_rows(static_cast<Eigen::Index>(r), j) = snf.w(j, static_cast<Eigen::Index>(kept[r]));
      Rat lv = winv_r(static_cast<Eigen::Index>(kept[r]), j);
      if (!lv.is_integer()) throw Error("unimodular inverse not integral");
      pres.lift_rows(static_cast<Eigen::Index>(r), j) = lv.num();
    }
  }
  pres.ambient_orders = std::move(diag);
  return pres;
}

PrimaryPart primary_part(const FiniteAbelianGroup& g, const Int& p) {
  if (!is_prime(p)) throw InputError("primary part needs a prime");
  PrimaryPart pp;
  pp.ambient = g;
  std::vector<Int> orders;
  for (std::size_t i = 0; i < g.components(); ++i) {
    unsigned v = valuation(g.orders()[i], p);
    if (v == 0) continue;
    Int q = pow(p, v);
    Int m = g.orders()[i] / q;
    pp.kept.push_back(i);
    pp.cofactor.push_back(m);
    pp.cofactor_inv.push_back(mod_inverse(m, q));
    orders.push_back(q);
  }
  pp.part = orders.empty() ? FiniteAbelianGroup() : FiniteAbelianGroup(orders);
  return pp;
}

GroupElement PrimaryPart::include(const GroupElement& x) const {
  if (!(x.group() == part)) throw InputError("include expects a primary-part element");
  std::vector<Int> c(ambient.components(), Int(0));
  for (std::size_t i = 0; i < kept.size(); ++i) c[kept[i]] = x.coords()[i] * cofactor[i];
  return GroupElement(ambient, std::move(c));
}

GroupElement PrimaryPart::project(const GroupElement& x) const {
  if (!(x.group() == ambient)) throw InputError("project expects an ambient element");
  std::vector<Int> c(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) c[i] = x.coords()[kept[i]] * cofactor_inv[i];
  return GroupElement(part, std::move(c));
}

std::vector<Int> quotient_invariants(const FiniteAbelianGroup& g, const Subgroup& s) {
  if (!(s.group() == g)) throw InputError("quotient by subgroup of another group");
  SnfResult snf = smith_normal_form(s.lattice());
  std::vector<Int> inv;
  for (const Int& d : snf.d)
    if (d > Int(1)) inv.push_back(d);
  return inv;
}

std::vector<Subgroup> all_subgroups_of_order(const FiniteAbelianGroup& g, const Int& m,
                                             std::size_t subgroup_guard) {
  if (g.total_order() > Int(10000))
    throw BudgetError("subgroup enumeration guard: group order " + g.total_order().str());
  std::vector<GroupElement> elems = all_elements(g);
  std::set<Subgroup> seen;
  std::vector<Subgroup> queue{Subgroup::trivial(g)};
  seen.insert(queue[0]);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Subgroup s = queue[head];
    for (const GroupElement& x : elems) {
      if (x.is_zero() || s.contains(x)) continue;
      Subgroup ext = s.extended_by(x);
      if (seen.insert(ext).second) {
        if (seen.size() > subgroup_guard)
          throw BudgetError("subgroup enumeration guard: too many subgroups", seen.size());
        queue.push_back(std::move(ext));
      }
    }
  }
  std::vector<Subgroup> out;
  for (const Subgroup& s : seen)
    if (s.order() == m) out.push_back(s);
  return out;  // set iteration is already canonical order
}

std::optional<unsigned> iso_match_cyclic_p_power(const FiniteAbelianGroup& g, const Int& p) {
  if (!is_prime(p)) throw InputError("pattern needs a prime");
  std::vector<Int> inv = g.invariant_factors();
  if (inv.size() != 1) return std::nullopt;
  unsigned k = valuation(inv[0], p);
  if (k == 0 || !(pow(p, k) == inv[0])) return std::nullopt;
  return k;
}

std::optional<unsigned> iso_match_z3_plus_z3_even_power(const FiniteAbelianGroup& g) {
  std::vector<Int> inv = g.invariant_factors();
  if (inv.size() != 2 || !(inv[0] == Int(3))) return std::nullopt;
  unsigned e = valuation(inv[1], Int(3));
  if (e < 2 || e % 2 != 0 || !(pow(Int(3), e) == inv[1])) return std::nullopt;
  return e / 2;
}

}  // namespace kc
