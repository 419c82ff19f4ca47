#include "kc/cgobstruct.hpp"

#include <algorithm>
#include <map>

namespace kc {

std::vector<CharacterClass> character_classes(const FiniteAbelianGroup& h) {
  std::vector<CharacterClass> classes;
  if (h.is_trivial()) return classes;
  for (const GroupElement& c : all_elements(h)) {
    if (c.is_zero()) continue;
    GroupElement neg = -c;
    if (neg < c) continue;  // the representative is the smaller of the pair
    classes.push_back(CharacterClass{c});
  }
  return classes;
}

ConstraintSystem constraint_system(const LinkingForm& f_p, const Subgroup& m, unsigned n) {
  const FiniteAbelianGroup& base = f_p.group();
  const std::size_t base_comps = base.components();
  if (m.group().components() != base_comps * n)
    throw DimensionError("metabolizer does not live in the n-fold power group");

  ConstraintSystem cs;
  cs.variables = character_classes(base);
  std::map<std::vector<Int>, std::size_t> var_index;
  for (std::size_t k = 0; k < cs.variables.size(); ++k)
    var_index[cs.variables[k].representative.coords()] = k;

  std::map<std::vector<Int>, Int> rows;  // coefficient vector -> rhs
  for (const GroupElement& u : m.elements()) {
    std::vector<Int> coeff(cs.variables.size(), Int(0));
    Rat self(0);
    bool nonzero = false;
    for (unsigned block = 0; block < n; ++block) {
      std::vector<Int> c(base_comps);
      for (std::size_t t = 0; t < base_comps; ++t)
        c[t] = u.coords()[block * base_comps + t];
      GroupElement cb(base, std::move(c));
      if (cb.is_zero()) continue;
      nonzero = true;
      self += f_p.eval(cb, cb);
      GroupElement neg = -cb;
      const std::vector<Int>& rep = neg < cb ? neg.coords() : cb.coords();
      coeff[var_index.at(rep)] += 1;
    }
    if (!nonzero) continue;
    if (!self.is_integer())
      throw Error("constraint rhs is not an integer: a non-metabolizer leaked in");
    auto [it, fresh] = rows.emplace(std::move(coeff), -self.num());
    if (!fresh && !(it->second == -self.num()))
      throw Error("identical coefficient rows with different rhs");
  }

  cs.amat = IntMatrix(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(cs.variables.size()));
  cs.bvec = IntVector(static_cast<Eigen::Index>(rows.size()));
  Eigen::Index r = 0;
  for (const auto& [coeff, rhs] : rows) {
    for (std::size_t k = 0; k < coeff.size(); ++k)
      cs.amat(r, static_cast<Eigen::Index>(k)) = coeff[k];
    cs.bvec(r) = rhs;
    ++r;
  }
  return cs;
}

ConstraintSystem constraint_system(const LinkingForm& f_p, const Metabolizer& m, unsigned n) {
  return constraint_system(f_p, m.subgroup(), n);
}

IntSolveResult is_feasible(const ConstraintSystem& cs) {
  return solve_integer_detailed(cs.amat, cs.bvec);
}

Verdict obstruct_nfold(const LinkingForm& f_p, unsigned n, const SearchBudget& budget) {
  Int p;
  if (!f_p.group().is_trivial()) {
    if (!f_p.group().is_p_group(p)) throw InputError("engine expects a form on a p-group");
    if (p == Int(2)) throw InputError("engine expects an odd prime");
    if (!f_p.nonsingular()) throw InputError("engine expects a nonsingular form");
  }
  if (n == 0) throw InputError("engine expects n >= 1");

  LinkingForm fn = power(f_p, n);
  EnumerationResult en;
  try {
    en = enumerate_metabolizers_partial(fn, budget);
  } catch (const BudgetError& e) {
    Verdict v;
    v.outcome = Outcome::Inapplicable;
    v.reason = std::string("budget: ") + e.what();
    return v;
  }
  if (!en.complete) {
    Verdict v;
    v.outcome = Outcome::Inapplicable;
    v.reason = "budget";
    v.metabolizer_count = en.found.size();
    return v;
  }

  Verdict v;
  v.metabolizer_count = en.found.size();
  if (en.found.empty()) {
    // Vacuously obstructed: sliceness would require a metabolizer to exist.
    v.outcome = Outcome::Obstructed;
    v.reason = "no metabolizer";
    return v;
  }
  bool all_infeasible = true;
  for (std::size_t idx = 0; idx < en.found.size(); ++idx) {
    const Metabolizer& m = en.found[idx];
    ConstraintSystem cs = constraint_system(f_p, m, n);
    IntSolveResult sol = is_feasible(cs);
    MetabolizerCertificate cert;
    cert.generator_matrix = m.subgroup().generator_matrix();
    cert.rank = m.subgroup().rank();
    cert.rows = cs.amat.rows();
    cert.vars = cs.amat.cols();
    cert.infeasible = !sol.feasible();
    if (cert.infeasible) {
      cert.divisor = sol.divisor;
      cert.residue = sol.residue;
    } else {
      cert.witness = sol.solution;
      if (all_infeasible) {
        all_infeasible = false;
        v.witness_index = idx;
      }
    }
    v.certificates.push_back(std::move(cert));
  }
  v.outcome = all_infeasible ? Outcome::Obstructed : Outcome::NotObstructed;
  if (v.outcome == Outcome::NotObstructed) v.reason = "no obstruction found";
  return v;
}

std::optional<std::pair<Int, unsigned>> theorem11_check(const FiniteAbelianGroup& h) {
  if (h.is_trivial()) return std::nullopt;
  for (const auto& [prime, exp] : factorize(h.total_order())) {
    (void)exp;
    if (!(mod_floor(prime, Int(4)) == Int(3))) continue;
    PrimaryPart pp = primary_part(h, prime);
    auto k = iso_match_cyclic_p_power(pp.part, prime);
    if (k && *k % 2 == 1) return std::make_pair(prime, *k);
  }
  return std::nullopt;
}

std::optional<unsigned> theorem12_check(const FiniteAbelianGroup& h) {
  if (h.is_trivial()) return std::nullopt;
  if (!(mod_floor(h.total_order(), Int(3)).is_zero())) return std::nullopt;
  PrimaryPart pp = primary_part(h, Int(3));
  return iso_match_z3_plus_z3_even_power(pp.part);
}

}  // namespace kc
