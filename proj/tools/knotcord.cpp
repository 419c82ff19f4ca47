// Command-line front end: knot analysis reports, family constructors,
// metabolizer listings, and the order-4 obstruction certificate run.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "kc/serial.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitBudget = 2;

struct SignPair {
  int eps3;
  int eps9;
};

std::vector<SignPair> parse_signs(const std::string& s) {
  if (s == "all") return {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  if (s.size() == 2 && (s[0] == '+' || s[0] == '-') && (s[1] == '+' || s[1] == '-'))
    return {{s[0] == '+' ? 1 : -1, s[1] == '+' ? 1 : -1}};
  throw kc::InputError("bad --signs value \"" + s + "\" (use all, ++, +-, -+ or --)");
}

std::string sign_str(const SignPair& sp) {
  return std::string(1, sp.eps3 > 0 ? '+' : '-') + (sp.eps9 > 0 ? '+' : '-');
}

void print_human_report(const kc::KnotReport& r, std::ostream& os) {
  os << "knot:          " << (r.name.empty() ? "(unnamed)" : r.name) << "\n";
  os << "alexander:     " << r.alexander.str() << "\n";
  os << "determinant:   " << r.determinant << " (= |Delta(-1)|)\n";
  os << "homology:      ";
  if (r.homology.empty()) {
    os << "trivial\n";
  } else {
    for (std::size_t k = 0; k < r.homology.size(); ++k)
      os << (k ? " + " : "") << "Z" << r.homology[k].str();
    os << "\n";
  }
  for (const auto& [p, orders] : r.primary_parts) {
    os << "  " << p << "-part:      ";
    for (std::size_t k = 0; k < orders.size(); ++k)
      os << (k ? " + " : "") << "Z" << orders[k].str();
    os << "\n";
  }
  if (r.thm11)
    os << "H_1(M_K)_" << r.thm11->first << " = Z_" << r.thm11->first << "^" << r.thm11->second
       << " with " << r.thm11->first << " = 3 mod 4, odd exponent: "
       << "infinite order in the concordance group\n";
  if (r.thm12)
    os << "H_1(M_K)_3 = Z3 + Z3^" << 2 * *r.thm12 << " (i=" << *r.thm12
       << "): not of order 4 in the concordance group\n";
  if (r.cor13)
    os << "Delta(-1) = 27*" << r.cor13->str()
       << ": order 4 algebraically, not order 4 in concordance\n";
  if (r.cor41)
    os << "4k+1 = 3^" << 2 * r.cor41->first + 1 << "*" << r.cor41->second.str()
       << ": not of order 4 in concordance\n";
  if (r.algebraic_order)
    os << "algebraic concordance order (quadratic family): " << to_string(*r.algebraic_order)
       << "\n";
  for (const auto& [n, v] : r.engine) {
    os << "engine n=" << n << " (p=" << r.engine_prime << "): ";
    switch (v.outcome) {
      case kc::Outcome::Obstructed:
        os << "Obstructed";
        if (!v.reason.empty()) os << " (" << v.reason << ")";
        os << " over " << v.metabolizer_count << " metabolizer(s): " << n
           << "K is not slice\n";
        break;
      case kc::Outcome::NotObstructed:
        os << "NotObstructed (no obstruction found; " << v.metabolizer_count
           << " metabolizer(s))\n";
        break;
      case kc::Outcome::Inapplicable:
        os << "Inapplicable (" << v.reason << ")\n";
        break;
    }
  }
}

int run_analyze(const std::string& path, bool engine, long long engine_prime,
                std::vector<unsigned> engine_ns, double budget_seconds, unsigned threads,
                bool as_json) {
  kc::SeifertMatrix k = kc::read_knot_file(path);
  kc::AnalyzeOptions opts;
  opts.run_engine = engine || engine_prime > 0;
  if (engine_prime > 0) opts.engine_prime = kc::Int(engine_prime);
  if (!engine_ns.empty()) opts.engine_ns = std::move(engine_ns);
  opts.budget.seconds = budget_seconds;
  opts.budget.threads = threads;
  kc::KnotReport rep = kc::analyze(k, opts);
  if (as_json)
    std::cout << kc::report_to_json(rep).dump(2) << "\n";
  else
    print_human_report(rep, std::cout);
  for (const auto& [n, v] : rep.engine)
    if (v.outcome == kc::Outcome::Inapplicable && v.reason.rfind("budget", 0) == 0)
      return kExitBudget;
  return kExitOk;
}

int run_metabolizers(const std::string& group_spec, const std::string& gram_spec,
                     bool count_only, double budget_seconds, unsigned threads) {
  kc::FiniteAbelianGroup g = kc::parse_group(group_spec);
  kc::RatMatrix gram = kc::parse_gram(gram_spec, g.components());
  kc::LinkingForm f(g, gram);
  kc::SearchBudget budget{budget_seconds, threads};
  kc::EnumerationResult res = kc::enumerate_metabolizers_partial(f, budget);
  if (!res.complete) {
    std::cerr << "budget exhausted after " << res.found.size() << " metabolizer(s)\n";
    return kExitBudget;
  }
  if (count_only) {
    std::cout << res.found.size() << "\n";
  } else {
    for (const kc::Metabolizer& m : res.found) {
      kc::Json j;
      j["generators"] = kc::mat_to_json(m.subgroup().generator_matrix());
      j["rank"] = m.subgroup().rank();
      j["order"] = kc::int_to_json(m.subgroup().order());
      std::cout << j.dump() << "\n";
    }
  }
  return kExitOk;
}

int run_verify_theorem12(unsigned i, const std::string& signs, const std::string& out_path,
                         double budget_seconds, bool budget_given, unsigned threads) {
  if (i >= 2 && !budget_given) {
    std::cerr << "i >= 2 needs an explicit --budget-seconds: the i=1 case is the\n"
                 "supported default; larger i grows the group to 3^(8i+4) elements and\n"
                 "will exhaust any realistic budget.\n";
    return kExitBudget;
  }
  std::vector<SignPair> pairs = parse_signs(signs);
  std::ofstream out_file;
  std::ostream* certs = nullptr;
  if (!out_path.empty()) {
    out_file.open(out_path);
    if (!out_file) throw kc::InputError("cannot open " + out_path + " for writing");
    certs = &out_file;
  }

  bool all_infeasible = true;
  bool budget_hit = false;
  std::size_t total = 0;
  for (const SignPair& sp : pairs) {
    auto t0 = std::chrono::steady_clock::now();
    kc::LinkingForm base = kc::sign_pair_form(i, sp.eps3, sp.eps9);
    kc::LinkingForm form = kc::power(base, 4);
    kc::SearchBudget budget{budget_seconds, threads};
    kc::EnumerationResult res;
    try {
      res = kc::enumerate_metabolizers_partial(form, budget);
    } catch (const kc::BudgetError& e) {
      std::cerr << "signs " << sign_str(sp) << ": " << e.what() << "\n";
      return kExitBudget;
    }
    std::size_t infeasible = 0;
    for (const kc::Metabolizer& m : res.found) {
      kc::ConstraintSystem cs = kc::constraint_system(base, m, 4);
      kc::IntSolveResult sol = kc::is_feasible(cs);
      kc::Theorem12Certificate cert;
      cert.i = i;
      cert.eps3 = sp.eps3;
      cert.eps9 = sp.eps9;
      cert.generators = m.subgroup().generator_matrix();
      cert.rank = m.subgroup().rank();
      cert.rows = cs.amat.rows();
      cert.vars = cs.amat.cols();
      cert.infeasible = !sol.feasible();
      if (cert.infeasible) {
        cert.divisor = sol.divisor;
        cert.residue = sol.residue;
        ++infeasible;
      } else {
        cert.witness = sol.solution;
        all_infeasible = false;
      }
      if (certs) *certs << kc::certificate_to_json(cert).dump() << "\n";
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "signs " << sign_str(sp) << ": metabolizers=" << res.found.size()
              << " infeasible=" << infeasible
              << " all-infeasible=" << (infeasible == res.found.size() ? "true" : "false")
              << " complete=" << (res.complete ? "true" : "false") << " wall=" << wall << "s\n";
    total += res.found.size();
    if (!res.complete) {
      budget_hit = true;
      break;
    }
  }
  if (certs) out_file.flush();
  if (budget_hit) {
    std::cerr << "budget exhausted; partial certificates were flushed\n";
    return kExitBudget;
  }
  std::cout << "total metabolizers=" << total
            << " all-infeasible=" << (all_infeasible ? "true" : "false") << "\n";
  return all_infeasible ? kExitOk : kExitBadInput;
}

int run_check_certs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw kc::InputError("cannot open " + path);
  std::string line;
  std::size_t lineno = 0, checked = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    kc::Json j;
    try {
      j = kc::Json::parse(line);
    } catch (const std::exception& e) {
      std::cerr << "line " << lineno << ": bad JSON: " << e.what() << "\n";
      return kExitBadInput;
    }
    kc::Theorem12Certificate cert = kc::certificate_from_json(j);
    if (auto reason = kc::verify_certificate(cert)) {
      std::cerr << "line " << lineno << ": certificate rejected: " << *reason << "\n";
      return kExitBadInput;
    }
    ++checked;
  }
  std::cout << checked << " certificate(s) verified\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knot concordance order obstructions from Seifert matrices"};
  app.require_subcommand(1);

  // analyze
  std::string analyze_path;
  bool engine = false;
  long long engine_prime = 0;
  std::vector<unsigned> engine_ns;
  double budget_seconds = 0;
  unsigned threads = 0;
  bool as_json = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Full report for a knot file");
  analyze_cmd->add_option("path", analyze_path, "KnotFile JSON path")->required();
  analyze_cmd->add_flag("--engine", engine, "run the obstruction engine");
  analyze_cmd->add_option("--engine-prime", engine_prime, "primary part to feed the engine");
  analyze_cmd->add_option("--engine-n", engine_ns, "engine multiplicities (default 1 2 4)");
  analyze_cmd->add_option("--budget-seconds", budget_seconds, "engine time budget");
  analyze_cmd->add_option("--threads", threads, "worker threads (default: THREADS env)");
  analyze_cmd->add_flag("--json", as_json, "emit the JSON report");

  // double
  long long double_k = 0;
  auto* double_cmd = app.add_subcommand("double", "k-twisted double of the unknot");
  double_cmd->add_option("k", double_k, "twisting parameter k >= 0")->required();

  // sum
  std::string sum_a, sum_b;
  auto* sum_cmd = app.add_subcommand("sum", "connected sum of two knot files");
  sum_cmd->add_option("path1", sum_a)->required();
  sum_cmd->add_option("path2", sum_b)->required();

  // family
  long long fam_r = 0, fam_s = 0;
  auto* family_cmd = app.add_subcommand("family", "D_{3r+2} # D_{9(s^2+s)+2}");
  family_cmd->add_option("--r", fam_r, "r >= 1")->required();
  family_cmd->add_option("--s", fam_s, "s >= 1")->required();

  // metabolizers
  std::string group_spec, gram_spec;
  bool count_only = false;
  double met_budget = 0;
  unsigned met_threads = 0;
  auto* met_cmd = app.add_subcommand("metabolizers", "list metabolizers of a linking form");
  met_cmd->add_option("--group", group_spec, "component orders, e.g. \"3,9\"")->required();
  met_cmd->add_option("--gram", gram_spec, "gram rows, e.g. \"1/3,0;0,2/9\"")->required();
  met_cmd->add_flag("--count-only", count_only, "print only the count");
  met_cmd->add_option("--budget-seconds", met_budget, "time budget");
  met_cmd->add_option("--threads", met_threads, "worker threads");

  // verify-theorem12
  unsigned vt_i = 1;
  std::string vt_signs = "all";
  std::string vt_out;
  double vt_budget = 7200;
  unsigned vt_threads = 0;
  auto* vt_cmd = app.add_subcommand(
      "verify-theorem12", "enumerate metabolizers of the 4-fold form and certify infeasibility");
  vt_cmd->add_option("--i", vt_i, "the exponent parameter (default 1)");
  vt_cmd->add_option("--signs", vt_signs, "all (default) or one of ++, +-, -+, --");
  vt_cmd->add_option("--out", vt_out, "certificate JSONL output path");
  auto* vt_budget_opt = vt_cmd->add_option("--budget-seconds", vt_budget, "time budget (default 7200)");
  vt_cmd->add_option("--threads", vt_threads, "worker threads");

  // check-certs
  std::string cc_path;
  auto* cc_cmd = app.add_subcommand("check-certs", "re-verify a certificate stream");
  cc_cmd->add_option("path", cc_path, "certificate JSONL path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze_cmd)
      return run_analyze(analyze_path, engine, engine_prime, engine_ns, budget_seconds, threads,
                         as_json);
    if (*double_cmd) {
      if (double_k < 0) throw kc::InputError("k must be >= 0");
      std::cout << kc::knot_to_json(kc::twisted_double(kc::Int(double_k))).dump(2) << "\n";
      return kExitOk;
    }
    if (*sum_cmd) {
      kc::SeifertMatrix a = kc::read_knot_file(sum_a);
      kc::SeifertMatrix b = kc::read_knot_file(sum_b);
      std::cout << kc::knot_to_json(kc::connected_sum(a, b)).dump(2) << "\n";
      return kExitOk;
    }
    if (*family_cmd) {
      if (fam_r < 1 || fam_s < 1) throw kc::InputError("family needs r >= 1 and s >= 1");
      kc::FamilyKnot fam = kc::corollary42_family(kc::Int(fam_r), kc::Int(fam_s));
      kc::Json j = kc::knot_to_json(fam.knot);
      j["applicable"] = fam.applicable;
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }
    if (*met_cmd)
      return run_metabolizers(group_spec, gram_spec, count_only, met_budget, met_threads);
    if (*vt_cmd)
      return run_verify_theorem12(vt_i, vt_signs, vt_out, vt_budget, !vt_budget_opt->empty(),
                                  vt_threads);
    if (*cc_cmd) return run_check_certs(cc_path);
  } catch (const kc::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const kc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}
