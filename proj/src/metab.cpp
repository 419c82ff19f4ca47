#include "kc/metab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace kc {

Metabolizer::Metabolizer(LinkingForm form, Subgroup subgroup)
    : form_(std::move(form)), subgroup_(std::move(subgroup)) {
  if (!(subgroup_.group() == form_.group()))
    throw InputError("metabolizer subgroup lives in another group");
  if (!(subgroup_.order() * subgroup_.order() == form_.group().total_order()))
    throw InputError("|M|^2 != |H|: not a metabolizer");
  if (!is_metabolizer(form_, subgroup_))
    throw InputError("M != M^perp: not a metabolizer");
}

std::size_t rank_of(const Metabolizer& m) { return m.subgroup().rank(); }

namespace {

constexpr int kMaxComps = 16;
constexpr int64_t kMaxExponent = 250;    // component orders must fit a byte
constexpr uint32_t kMaxTotal = 1u << 24; // element-indexable group sizes only

struct Packed {
  int n = 0;
  std::array<int64_t, kMaxComps> mod{};
  std::array<uint32_t, kMaxComps> stride{};
  int64_t L = 1;
  int64_t p = 0;
  int emax = 0;  // L = p^emax
  uint32_t total = 1;
  uint32_t target = 1;
  int logp_target = 0;
  std::array<int64_t, kMaxComps * kMaxComps> gram{};
  // Components of order p^2, for the admissible-type prune (emax == 2 only).
  std::vector<int> sq_comps;
  // (alpha, rho) pairs: p^2-rank and rank of subgroup types a metabolizer
  // can have, from |M| = sqrt(|H|), M <= H, and rank(M) >= rank(H)/2
  // (H/M iso M forces the last bound).
  std::vector<std::pair<int, int>> allowed;
  bool prune_types = false;

  void decode(uint32_t code, uint8_t* c) const {
    for (int i = 0; i < n; ++i)
      c[i] = static_cast<uint8_t>((code / stride[i]) % static_cast<uint32_t>(mod[i]));
  }
  uint32_t encode(const uint8_t* c) const {
    uint32_t code = 0;
    for (int i = 0; i < n; ++i) code += static_cast<uint32_t>(c[i]) * stride[i];
    return code;
  }
  uint32_t add_coords(const uint8_t* a, const uint8_t* b) const {
    uint32_t code = 0;
    for (int i = 0; i < n; ++i) {
      int64_t v = a[i] + b[i];
      if (v >= mod[i]) v -= mod[i];
      code += static_cast<uint32_t>(v) * stride[i];
    }
    return code;
  }
  void add_coords_into(uint8_t* a, const uint8_t* b) const {
    for (int i = 0; i < n; ++i) {
      int64_t v = a[i] + b[i];
      if (v >= mod[i]) v -= mod[i];
      a[i] = static_cast<uint8_t>(v);
    }
  }
  void scale_coords(uint8_t* a, int64_t c) const {
    for (int i = 0; i < n; ++i) a[i] = static_cast<uint8_t>((a[i] * c) % mod[i]);
  }
  // Numerators of L * beta(x, e_j).
  void pairing_row(const uint8_t* x, int64_t* t) const {
    for (int j = 0; j < n; ++j) {
      int64_t acc = 0;
      for (int i = 0; i < n; ++i) acc += x[i] * gram[i * kMaxComps + j];
      t[j] = acc % L;
    }
  }
  int64_t dot(const int64_t* t, const uint8_t* y) const {
    int64_t acc = 0;
    for (int j = 0; j < n; ++j) acc += t[j] * y[j];
    return acc % L;
  }
};

Packed pack_form(const LinkingForm& f, Int& p_out) {
  Packed P;
  Int p;
  if (!f.group().is_p_group(p)) throw InputError("metabolizer search needs a p-group");
  p_out = p;
  const auto n = f.group().components();
  if (n > static_cast<std::size_t>(kMaxComps))
    throw BudgetError("metabolizer search guard: too many components");
  P.n = static_cast<int>(n);
  P.p = p.to_int64();
  int64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Int& d = f.group().orders()[i];
    if (d > Int(kMaxExponent)) throw BudgetError("metabolizer search guard: component order too large");
    P.mod[i] = d.to_int64();
    P.L = std::max(P.L, P.mod[i]);
    total *= P.mod[i];
    if (total > kMaxTotal) throw BudgetError("metabolizer search guard: group order beyond " +
                                             std::to_string(kMaxTotal));
  }
  P.total = static_cast<uint32_t>(total);
  P.stride[n - 1] = 1;
  for (int i = P.n - 2; i >= 0; --i)
    P.stride[i] = P.stride[i + 1] * static_cast<uint32_t>(P.mod[i + 1]);
  P.emax = 0;
  for (int64_t v = P.L; v > 1; v /= P.p) ++P.emax;

  for (int i = 0; i < P.n; ++i)
    for (int j = 0; j < P.n; ++j) {
      const Rat& g = f.gram()(i, j);
      Int num = g.num() * (Int(P.L) / g.den());
      P.gram[i * kMaxComps + j] = mod_floor(num, Int(P.L)).to_int64();
    }

  // Perfect-square total and the metabolizer size.
  int logp_total = 0;
  for (int64_t v = total; v > 1; v /= P.p) ++logp_total;
  if (logp_total % 2 != 0) {
    P.target = 0;  // no metabolizers
    return P;
  }
  P.logp_target = logp_total / 2;
  int64_t target = 1;
  for (int k = 0; k < P.logp_target; ++k) target *= P.p;
  P.target = static_cast<uint32_t>(target);

  if (P.emax == 2) {
    int a_comps = 0, b_comps = 0;
    for (int i = 0; i < P.n; ++i) {
      if (P.mod[i] == P.p * P.p) { P.sq_comps.push_back(i); ++a_comps; }
      else ++b_comps;
    }
    int rank_h = a_comps + b_comps;
    for (int alpha = 0; 2 * alpha <= P.logp_target; ++alpha) {
      int beta = P.logp_target - 2 * alpha;
      int rho = alpha + beta;
      if (alpha <= a_comps && rho <= rank_h && 2 * rho >= rank_h)
        P.allowed.emplace_back(alpha, rho);
    }
    P.prune_types = true;
  }
  return P;
}

// F_p echelon over the p^2-components, tracking the rank of p*S.
struct SqEchelon {
  int dim = 0;
  int rank = 0;
  int64_t p = 0;
  std::array<std::array<uint8_t, kMaxComps>, kMaxComps> rows{};

  // Reduce the vector of x_i mod p over sq components and insert.
  int rank_after(const Packed& P, const uint8_t* x, bool commit,
                 SqEchelon* out) const {
    std::array<uint8_t, kMaxComps> v{};
    for (int k = 0; k < dim; ++k)
      v[k] = static_cast<uint8_t>(x[P.sq_comps[static_cast<std::size_t>(k)]] % p);
    SqEchelon tmp = *this;
    // Gaussian elimination against existing rows (rows kept with leading 1).
    for (int r = 0; r < tmp.rank; ++r) {
      int lead = -1;
      for (int k = 0; k < dim; ++k)
        if (tmp.rows[r][k]) { lead = k; break; }
      if (lead >= 0 && v[lead]) {
        int64_t f = v[lead];
        for (int k = 0; k < dim; ++k)
          v[k] = static_cast<uint8_t>((v[k] + (p - f) * tmp.rows[r][k]) % p);
      }
    }
    int lead = -1;
    for (int k = 0; k < dim; ++k)
      if (v[k]) { lead = k; break; }
    if (lead < 0) {
      if (commit && out) *out = tmp;
      return tmp.rank;
    }
    int64_t inv = 1;
    for (int64_t c = 1; c < p; ++c)
      if ((c * v[lead]) % p == 1) { inv = c; break; }
    for (int k = 0; k < dim; ++k) v[k] = static_cast<uint8_t>((v[k] * inv) % p);
    tmp.rows[tmp.rank] = v;
    tmp.rank += 1;
    if (commit && out) *out = tmp;
    return tmp.rank;
  }
};

struct Level {
  std::vector<uint32_t> s_codes;   // sorted
  std::vector<uint8_t> s_coords;   // parallel to s_codes, n per entry
  std::vector<uint32_t> cand_codes;
  std::vector<uint8_t> cand_coords;
  SqEchelon ech;
  int logS = 0;
};

struct SharedSearch {
  const Packed* P;
  std::vector<uint32_t> root_codes;
  std::vector<uint8_t> root_coords;
  std::atomic<uint32_t> next_root{0};
  std::atomic<bool> stop{false};
  std::atomic<unsigned long long> emitted{0};
  std::atomic<unsigned long long> nodes{0};
  bool limited = false;
  std::chrono::steady_clock::time_point deadline;
};

struct Worker {
  SharedSearch* sh;
  const Packed* P;
  std::vector<Level> levels;
  std::vector<uint32_t> chain;
  std::vector<std::vector<uint32_t>> results;  // chains of emitted metabolizers
  unsigned long long budget_tick = 0;
  unsigned long long nodes = 0;

  bool out_of_time() {
    if (!sh->limited) return sh->stop.load(std::memory_order_relaxed);
    if ((++budget_tick & 1023) == 0) {
      if (sh->stop.load(std::memory_order_relaxed)) return true;
      if (std::chrono::steady_clock::now() > sh->deadline) {
        sh->stop.store(true, std::memory_order_relaxed);
        return true;
      }
    }
    return sh->stop.load(std::memory_order_relaxed);
  }

  // Try to extend the subgroup at `depth` by candidate index `idx` of that
  // level's list; on success the child state is written into levels[depth+1]
  // and explored recursively.
  void visit(std::size_t depth, std::size_t idx);
  void explore(std::size_t depth);
  void run();
};

void Worker::explore(std::size_t depth) {
  Level& lv = levels[depth];
  ++nodes;
  if (lv.s_codes.size() + lv.cand_codes.size() < P->target) return;  // cannot reach |M|
  for (std::size_t idx = 0; idx < lv.cand_codes.size(); ++idx) {
    if (out_of_time()) return;
    visit(depth, idx);
  }
}

void Worker::visit(std::size_t depth, std::size_t idx) {
  Level& lv = levels[depth];
  if (levels.size() <= depth + 1) levels.emplace_back();
  Level& child = levels[depth + 1];
  const int n = P->n;
  const uint32_t x_code = lv.cand_codes[idx];
  const uint8_t* x = &lv.cand_coords[idx * static_cast<std::size_t>(n)];

  // x must be the smallest element of its coset x + S.
  const std::size_t s_sz = lv.s_codes.size();
  for (std::size_t k = 1; k < s_sz; ++k) {
    if (P->add_coords(x, &lv.s_coords[k * static_cast<std::size_t>(n)]) < x_code) return;
  }

  // Order of x modulo S is p^j.
  std::array<uint8_t, kMaxComps> y{};
  std::copy(x, x + n, y.begin());
  int j = 0;
  for (;;) {
    uint32_t yc = P->encode(y.data());
    if (std::binary_search(lv.s_codes.begin(), lv.s_codes.end(), yc)) break;
    P->scale_coords(y.data(), P->p);
    ++j;
  }
  if (j == 0) return;  // x in S (should have been filtered)
  uint64_t m = 1;
  for (int k = 0; k < j; ++k) m *= static_cast<uint64_t>(P->p);
  const uint64_t new_size = m * s_sz;
  if (new_size > P->target) return;

  int logS2 = lv.logS + j;
  if (P->prune_types) {
    int a2 = lv.ech.rank_after(*P, x, false, nullptr);
    int rank2 = logS2 - a2;
    bool ok = false;
    for (auto [alpha, rho] : P->allowed)
      if (a2 <= alpha && rank2 <= rho) { ok = true; break; }
    if (!ok) return;
  }

  // Build S' = union of c*x + S and check x = min(S' \ S); that makes the
  // extended chain the greedy minimal generator chain of S', so every
  // subgroup is reached along exactly one path.
  child.s_codes.clear();
  child.s_coords.clear();
  child.s_codes.reserve(new_size);
  child.s_coords.reserve(new_size * static_cast<std::size_t>(n));
  child.s_codes.insert(child.s_codes.end(), lv.s_codes.begin(), lv.s_codes.end());
  child.s_coords.insert(child.s_coords.end(), lv.s_coords.begin(), lv.s_coords.end());
  std::array<uint8_t, kMaxComps> cx{};
  std::array<uint8_t, kMaxComps> tmp{};
  for (uint64_t c = 1; c < m; ++c) {
    P->add_coords_into(cx.data(), x);  // cx = c * x
    for (std::size_t k = 0; k < s_sz; ++k) {
      std::copy(cx.begin(), cx.begin() + n, tmp.begin());
      P->add_coords_into(tmp.data(), &lv.s_coords[k * static_cast<std::size_t>(n)]);
      uint32_t code = P->encode(tmp.data());
      if (code < x_code) return;  // some new element undercuts x: not canonical
      child.s_codes.push_back(code);
      child.s_coords.insert(child.s_coords.end(), tmp.begin(), tmp.begin() + n);
    }
  }
  // Sort the element table by code, coords in tow.
  {
    const std::size_t sz = child.s_codes.size();
    std::vector<uint32_t> perm(sz);
    for (std::size_t k = 0; k < sz; ++k) perm[k] = static_cast<uint32_t>(k);
    std::sort(perm.begin(), perm.end(), [&](uint32_t a, uint32_t b) {
      return child.s_codes[a] < child.s_codes[b];
    });
    std::vector<uint32_t> codes(sz);
    std::vector<uint8_t> coords(sz * static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < sz; ++k) {
      codes[k] = child.s_codes[perm[k]];
      std::copy(&child.s_coords[perm[k] * static_cast<std::size_t>(n)],
                &child.s_coords[perm[k] * static_cast<std::size_t>(n)] + n,
                &coords[k * static_cast<std::size_t>(n)]);
    }
    child.s_codes = std::move(codes);
    child.s_coords = std::move(coords);
  }

  chain.push_back(x_code);
  if (child.s_codes.size() == P->target) {
    results.push_back(chain);
    sh->emitted.fetch_add(1, std::memory_order_relaxed);
    chain.pop_back();
    return;
  }

  // Child candidates: the tail of this level's list, orthogonal to x and
  // outside S'.
  child.cand_codes.clear();
  child.cand_coords.clear();
  std::array<int64_t, kMaxComps> t{};
  P->pairing_row(x, t.data());
  for (std::size_t k = idx + 1; k < lv.cand_codes.size(); ++k) {
    const uint8_t* yc = &lv.cand_coords[k * static_cast<std::size_t>(n)];
    if (P->dot(t.data(), yc) != 0) continue;
    uint32_t code = lv.cand_codes[k];
    if (std::binary_search(child.s_codes.begin(), child.s_codes.end(), code)) continue;
    child.cand_codes.push_back(code);
    child.cand_coords.insert(child.cand_coords.end(), yc, yc + n);
  }
  if (P->prune_types) lv.ech.rank_after(*P, x, true, &child.ech);
  child.logS = logS2;

  explore(depth + 1);
  chain.pop_back();
}

void Worker::run() {
  const int n = P->n;
  levels.resize(1);
  Level& root = levels[0];
  root.s_codes = {0};
  root.s_coords.assign(static_cast<std::size_t>(n), 0);
  root.ech.dim = static_cast<int>(P->sq_comps.size());
  root.ech.p = P->p;
  root.cand_codes = sh->root_codes;
  root.cand_coords = sh->root_coords;
  root.logS = 0;

  for (;;) {
    uint32_t idx = sh->next_root.fetch_add(1, std::memory_order_relaxed);
    if (idx >= sh->root_codes.size()) break;
    if (out_of_time()) break;
    visit(0, idx);
  }
  sh->nodes.fetch_add(nodes, std::memory_order_relaxed);
}

unsigned worker_count(const SearchBudget& budget, std::size_t roots) {
  unsigned t = budget.threads;
  if (t == 0) {
    if (const char* env = std::getenv("THREADS")) {
      long v = std::strtol(env, nullptr, 10);
      if (v > 0) t = static_cast<unsigned>(v);
    }
  }
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  if (roots > 0) t = static_cast<unsigned>(std::min<std::size_t>(t, roots));
  return std::max(1u, t);
}

}  // namespace

EnumerationResult enumerate_metabolizers_partial(const LinkingForm& f,
                                                 const SearchBudget& budget) {
  EnumerationResult out;
  if (f.group().is_trivial()) {
    out.found.emplace_back(f, Subgroup::trivial(f.group()));
    return out;
  }
  Int p;
  Packed P = pack_form(f, p);
  if (P.target == 0) return out;  // group order is not a perfect square
  if (!f.nonsingular()) throw InputError("metabolizer search needs a nonsingular form");

  SharedSearch sh;
  sh.P = &P;
  sh.limited = budget.seconds > 0;
  if (sh.limited)
    sh.deadline = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(static_cast<long long>(budget.seconds * 1000.0));

  // Root candidates: nonzero isotropic elements in increasing code order.
  std::array<uint8_t, kMaxComps> c{};
  std::array<int64_t, kMaxComps> t{};
  for (uint32_t code = 1; code < P.total; ++code) {
    P.decode(code, c.data());
    P.pairing_row(c.data(), t.data());
    if (P.dot(t.data(), c.data()) != 0) continue;
    sh.root_codes.push_back(code);
    sh.root_coords.insert(sh.root_coords.end(), c.begin(), c.begin() + P.n);
  }

  unsigned nthreads = worker_count(budget, sh.root_codes.size());
  std::vector<Worker> workers(nthreads);
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < nthreads; ++k) {
    workers[k].sh = &sh;
    workers[k].P = &P;
  }
  if (nthreads == 1) {
    workers[0].run();
  } else {
    for (unsigned k = 0; k < nthreads; ++k)
      pool.emplace_back([&workers, k] { workers[k].run(); });
    for (auto& th : pool) th.join();
  }
  out.nodes = sh.nodes.load();
  out.complete = !sh.stop.load();

  // Rebuild subgroups from the found chains; construction re-verifies
  // M = M^perp and the order condition independently of the search.
  std::vector<Metabolizer> found;
  for (const Worker& w : workers) {
    for (const auto& ch : w.results) {
      std::vector<GroupElement> gens;
      for (uint32_t code : ch) {
        std::array<uint8_t, kMaxComps> cc{};
        P.decode(code, cc.data());
        std::vector<Int> coords(static_cast<std::size_t>(P.n));
        for (int i = 0; i < P.n; ++i) coords[static_cast<std::size_t>(i)] = Int(cc[i]);
        gens.emplace_back(f.group(), std::move(coords));
      }
      found.emplace_back(f, Subgroup::from_generators(f.group(), gens));
    }
  }
  std::sort(found.begin(), found.end());
  for (std::size_t k = 1; k < found.size(); ++k)
    if (!(found[k - 1] < found[k]))
      throw Error("metabolizer enumeration produced a duplicate subgroup");
  out.found = std::move(found);
  return out;
}

std::vector<Metabolizer> enumerate_metabolizers(const LinkingForm& f,
                                                const SearchBudget& budget) {
  EnumerationResult r = enumerate_metabolizers_partial(f, budget);
  if (!r.complete)
    throw BudgetError("metabolizer enumeration exceeded its budget", r.found.size());
  return std::move(r.found);
}

namespace {

// Ambient layout for the VW reduction: (3, q, 3, q, 3, q, 3, q), q = 3^{2i}.
unsigned vw_ambient_power(const FiniteAbelianGroup& g) {
  if (g.components() != 8) throw InputError("VW form needs (Z_3 + Z_{3^{2i}})^4");
  Int q = g.orders()[1];
  unsigned e = q == Int(1) ? 0 : valuation(q, Int(3));
  if (e < 2 || e % 2 != 0 || !(pow(Int(3), e) == q))
    throw InputError("VW form needs summands Z_3 + Z_{3^{2i}}");
  for (std::size_t s = 0; s < 4; ++s) {
    if (!(g.orders()[2 * s] == Int(3)) || !(g.orders()[2 * s + 1] == q))
      throw InputError("VW form needs interleaved (3, 3^{2i}) coordinates");
  }
  return e / 2;
}

unsigned val3_or(const Int& v, unsigned zero_val) {
  return v.is_zero() ? zero_val : valuation(v, Int(3));
}

}  // namespace

std::optional<VWForm> canonical_vw_form(const Metabolizer& m) {
  const FiniteAbelianGroup& g = m.form().group();
  unsigned i = vw_ambient_power(g);
  if (m.subgroup().rank() != 4) return std::nullopt;
  const Int q = pow(Int(3), 2 * i);
  const Int h = pow(Int(3), 2 * i - 1);

  std::vector<GroupElement> gens = m.subgroup().minimal_generators();
  IntMatrix v(4, 4), w(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) {
      v(r, s) = gens[static_cast<std::size_t>(r)].coords()[static_cast<std::size_t>(2 * s)];
      w(r, s) = gens[static_cast<std::size_t>(r)].coords()[static_cast<std::size_t>(2 * s + 1)];
    }
  std::array<int, 4> perm{0, 1, 2, 3};
  std::array<unsigned, 4> kexp{};

  for (int d = 0; d < 4; ++d) {
    // Pivot: minimal 3-valuation in the remaining block, smallest column
    // then smallest row on ties.
    int pi = -1, pj = -1;
    unsigned best = 2 * i + 1;
    for (int c = d; c < 4; ++c)
      for (int r = d; r < 4; ++r) {
        unsigned val = val3_or(w(r, c), 2 * i);
        if (val < best) { best = val; pi = r; pj = c; }
      }
    kexp[static_cast<std::size_t>(d)] = best;
    if (best >= 2 * i) continue;  // remaining block is zero mod q
    if (pj != d) {
      w.col(d).swap(w.col(pj));
      v.col(d).swap(v.col(pj));
      std::swap(perm[static_cast<std::size_t>(d)], perm[static_cast<std::size_t>(pj)]);
    }
    if (pi != d) {
      w.row(d).swap(w.row(pi));
      v.row(d).swap(v.row(pi));
    }
    Int pivot = pow(Int(3), best);
    Int unit = mod_floor(w(d, d), q) / pivot;
    Int unit_inv = mod_inverse(unit, q);
    for (int s = 0; s < 4; ++s) {
      w(d, s) = mod_floor(w(d, s) * unit_inv, q);
      v(d, s) = mod_floor(v(d, s) * unit_inv, Int(3));
    }
    for (int r = d + 1; r < 4; ++r) {
      if (w(r, d).is_zero()) continue;
      Int f = w(r, d) / pivot;  // exact: valuation >= best
      for (int s = 0; s < 4; ++s) {
        w(r, s) = mod_floor(w(r, s) - f * w(d, s), q);
        v(r, s) = mod_floor(v(r, s) - f * v(d, s), Int(3));
      }
    }
  }

  // Lemma 3.4 pins the exponents for a rank-4 metabolizer.
  if (!(kexp == std::array<unsigned, 4>{0, 0, 2 * i - 1, 2 * i - 1}))
    throw Error("VW reduction reached unexpected diagonal exponents");

  auto row_sub = [&](int r, int src, const Int& f) {
    if (f.is_zero()) return;
    for (int s = 0; s < 4; ++s) {
      w(r, s) = mod_floor(w(r, s) - f * w(src, s), q);
      v(r, s) = mod_floor(v(r, s) - f * v(src, s), Int(3));
    }
  };
  // Clean-up: zero above the second pivot, zero w(2,3), then reduce the
  // upper-right block to least non-negative residues mod 3^{2i-1}.
  row_sub(0, 1, w(0, 1));
  row_sub(2, 3, w(2, 3) / h);
  for (int r = 0; r < 2; ++r)
    for (int c = 2; c < 4; ++c) row_sub(r, c, w(r, c) / h);

  IntMatrix expect = IntMatrix::Constant(2, 4, Int(0));
  if (!(w(0, 0) == Int(1)) || !w(0, 1).is_zero() || !w(1, 0).is_zero() || !(w(1, 1) == Int(1)) ||
      !w(2, 0).is_zero() || !w(2, 1).is_zero() || !(w(2, 2) == h) || !w(2, 3).is_zero() ||
      !w(3, 0).is_zero() || !w(3, 1).is_zero() || !w(3, 2).is_zero() || !(w(3, 3) == h))
    throw Error("VW reduction did not reach the canonical shape");

  // The reduced rows, pushed back through the permutation, must generate the
  // same subgroup.
  std::vector<GroupElement> check;
  for (int r = 0; r < 4; ++r) {
    std::vector<Int> coords(8, Int(0));
    for (int s = 0; s < 4; ++s) {
      coords[static_cast<std::size_t>(2 * perm[static_cast<std::size_t>(s)])] = v(r, s);
      coords[static_cast<std::size_t>(2 * perm[static_cast<std::size_t>(s)] + 1)] = w(r, s);
    }
    check.emplace_back(g, std::move(coords));
  }
  if (!(Subgroup::from_generators(g, check) == m.subgroup()))
    throw Error("VW reduction changed the subgroup");

  VWForm out;
  out.vmat = std::move(v);
  out.wmat = std::move(w);
  out.column_permutation = perm;
  out.k = kexp;
  out.i = i;
  return out;
}

namespace {

struct PatternPositions {
  int p1, p2, p3, p4;
};

bool match_lemma36(const GroupElement& x, const PatternPositions& pos, const Int& q, const Int& h) {
  const auto& c = x.coords();
  auto vc = [&](int s) { return c[static_cast<std::size_t>(2 * s)]; };
  auto wc = [&](int s) { return c[static_cast<std::size_t>(2 * s + 1)]; };
  (void)q;
  return vc(pos.p1) == Int(1) && vc(pos.p2) == Int(1) && wc(pos.p1).is_zero() &&
         wc(pos.p2).is_zero() && (wc(pos.p3) % h).is_zero() && (wc(pos.p4) % h).is_zero();
}

bool match_lemma37(const GroupElement& x, const PatternPositions& pos, const Int& q, const Int& h,
                   int a, int b) {
  const auto& c = x.coords();
  auto vc = [&](int s) { return c[static_cast<std::size_t>(2 * s)]; };
  auto wc = [&](int s) { return c[static_cast<std::size_t>(2 * s + 1)]; };
  if (!(vc(pos.p1) == Int(1)) || !(vc(pos.p2) == Int(1))) return false;
  if (!(wc(pos.p1) == mod_floor(Int(a) * h, q))) return false;
  if (!(wc(pos.p2) == mod_floor(Int(b) * h, q))) return false;
  if (!(wc(pos.p3) % h).is_zero() || !(wc(pos.p4) % h).is_zero()) return false;
  bool s3 = !vc(pos.p3).is_zero(), s4 = !vc(pos.p4).is_zero();
  return s3 != s4;
}

}  // namespace

StructureReport structure_report(const Metabolizer& m) {
  const FiniteAbelianGroup& g = m.form().group();
  unsigned i = vw_ambient_power(g);
  const Int q = pow(Int(3), 2 * i);
  const Int h = pow(Int(3), 2 * i - 1);

  StructureReport rep;
  rep.rank = m.subgroup().rank();
  rep.vw = canonical_vw_form(m);

  if (rep.vw) {
    Lemma35Flags flags;
    const IntMatrix& w = rep.vw->wmat;
    flags.w_entries_unit_mod3 = true;
    for (int r = 0; r < 2; ++r)
      for (int c = 2; c < 4; ++c)
        if ((w(r, c) % Int(3)).is_zero()) flags.w_entries_unit_mod3 = false;
    Int det = w(0, 2) * w(1, 3) - w(0, 3) * w(1, 2);
    flags.rows_independent_mod3 = !(det % Int(3)).is_zero();
    rep.lemma35 = flags;
  }

  // Position frames to try: the recorded VW columns for rank 4, every
  // ordered pair otherwise.
  std::vector<PatternPositions> frames;
  if (rep.vw) {
    const auto& perm = rep.vw->column_permutation;
    frames.push_back({perm[0], perm[1], perm[2], perm[3]});
  } else {
    for (int p1 = 0; p1 < 4; ++p1)
      for (int p2 = 0; p2 < 4; ++p2) {
        if (p1 == p2) continue;
        int rest[2], k = 0;
        for (int s = 0; s < 4; ++s)
          if (s != p1 && s != p2) rest[k++] = s;
        frames.push_back({p1, p2, rest[0], rest[1]});
      }
  }

  std::vector<GroupElement> elems = m.subgroup().elements();
  for (const GroupElement& e : elems) {
    if (rep.lemma36_witness) break;
    for (const GroupElement& x : {e, -e}) {
      for (const auto& pos : frames)
        if (match_lemma36(x, pos, q, h)) {
          rep.lemma36_witness = x;
          break;
        }
      if (rep.lemma36_witness) break;
    }
  }
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      for (const GroupElement& e : elems) {
        bool found = false;
        for (const GroupElement& x : {e, -e}) {
          for (const auto& pos : frames)
            if (match_lemma37(x, pos, q, h, a, b)) {
              rep.lemma37_witnesses.emplace(std::make_pair(a, b), x);
              found = true;
              break;
            }
          if (found) break;
        }
        if (found) break;
      }
    }
  return rep;
}

}  // namespace kc
