#include "kc/serial.hpp"

#include <fstream>
#include <sstream>

namespace kc {

Json int_to_json(const Int& v) {
  if (v.fits_int64()) return v.to_int64();
  return v.str();
}

Int json_to_int(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw InputError("expected an integer or integer string");
}

Json mat_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix json_to_mat(const Json& j) {
  if (!j.is_array()) throw InputError("matrix must be an array of arrays");
  const auto m = static_cast<Eigen::Index>(j.size());
  Eigen::Index n = 0;
  if (m > 0) {
    if (!j[0].is_array()) throw InputError("matrix must be an array of arrays");
    n = static_cast<Eigen::Index>(j[0].size());
  }
  IntMatrix out(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_array() ||
        static_cast<Eigen::Index>(j[static_cast<std::size_t>(i)].size()) != n)
      throw InputError("ragged matrix rows");
    for (Eigen::Index c = 0; c < n; ++c)
      out(i, c) = json_to_int(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
  }
  return out;
}

Json knot_to_json(const SeifertMatrix& k) {
  Json j;
  j["name"] = k.name();
  j["matrix"] = mat_to_json(k.matrix());
  return j;
}

SeifertMatrix knot_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("matrix"))
    throw InputError("knot file needs a \"matrix\" field");
  std::string name = j.value("name", std::string());
  return SeifertMatrix::validate(json_to_mat(j.at("matrix")), std::move(name));
}

SeifertMatrix read_knot_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InputError("bad JSON in " + path + ": " + e.what());
  }
  return knot_from_json(j);
}

namespace {

Json poly_to_json(const IntPolynomial& p) {
  Json coeffs = Json::array();
  for (const Int& c : p.coeffs()) coeffs.push_back(int_to_json(c));
  return coeffs;
}

IntPolynomial poly_from_json(const Json& j) {
  std::vector<Int> coeffs;
  for (const auto& c : j) coeffs.push_back(json_to_int(c));
  return IntPolynomial(std::move(coeffs));
}

Json ints_to_json(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

std::vector<Int> ints_from_json(const Json& j) {
  std::vector<Int> v;
  for (const auto& x : j) v.push_back(json_to_int(x));
  return v;
}

Json vec_to_json(const IntVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.rows(); ++i) a.push_back(int_to_json(v(i)));
  return a;
}

IntVector vec_from_json(const Json& j) {
  IntVector v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const auto& x : j) v(i++) = json_to_int(x);
  return v;
}

const char* outcome_str(Outcome o) {
  switch (o) {
    case Outcome::Obstructed: return "obstructed";
    case Outcome::NotObstructed: return "not_obstructed";
    case Outcome::Inapplicable: return "inapplicable";
  }
  return "?";
}

Outcome outcome_from_str(const std::string& s) {
  if (s == "obstructed") return Outcome::Obstructed;
  if (s == "not_obstructed") return Outcome::NotObstructed;
  if (s == "inapplicable") return Outcome::Inapplicable;
  throw InputError("unknown outcome " + s);
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["outcome"] = outcome_str(v.outcome);
  j["reason"] = v.reason;
  j["metabolizers"] = v.metabolizer_count;
  if (v.witness_index) {
    const MetabolizerCertificate& c = v.certificates[*v.witness_index];
    Json w;
    w["generators"] = mat_to_json(c.generator_matrix);
    w["z"] = c.witness ? vec_to_json(*c.witness) : Json::array();
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Verdict verdict_from_json(const Json& j) {
  Verdict v;
  v.outcome = outcome_from_str(j.at("outcome").get<std::string>());
  v.reason = j.at("reason").get<std::string>();
  v.metabolizer_count = j.at("metabolizers").get<std::size_t>();
  if (!j.at("witness").is_null()) {
    MetabolizerCertificate c;
    c.generator_matrix = json_to_mat(j.at("witness").at("generators"));
    c.witness = vec_from_json(j.at("witness").at("z"));
    c.infeasible = false;
    v.certificates.push_back(std::move(c));
    v.witness_index = 0;
  }
  return v;
}

}  // namespace

Json report_to_json(const KnotReport& r) {
  Json j;
  j["name"] = r.name;
  j["alexander"] = poly_to_json(r.alexander);
  j["alexander_str"] = r.alexander.str();
  j["determinant"] = int_to_json(r.determinant);
  j["homology"] = ints_to_json(r.homology);
  Json pp = Json::object();
  for (const auto& [p, orders] : r.primary_parts) pp[p.str()] = ints_to_json(orders);
  j["primary_parts"] = std::move(pp);
  j["thm11"] = r.thm11 ? Json{{"p", int_to_json(r.thm11->first)}, {"k", r.thm11->second}}
                       : Json(nullptr);
  j["thm12"] = r.thm12 ? Json{{"i", *r.thm12}} : Json(nullptr);
  j["cor13"] = r.cor13 ? Json{{"m", int_to_json(*r.cor13)}} : Json(nullptr);
  j["cor41"] = r.cor41 ? Json{{"n", r.cor41->first}, {"m", int_to_json(r.cor41->second)}}
                       : Json(nullptr);
  j["algebraic_order"] = r.algebraic_order ? Json(to_string(*r.algebraic_order)) : Json(nullptr);
  j["engine_prime"] = int_to_json(r.engine_prime);
  Json eng = Json::object();
  for (const auto& [n, v] : r.engine) eng[std::to_string(n)] = verdict_to_json(v);
  j["engine"] = std::move(eng);
  return j;
}

KnotReport report_from_json(const Json& j) {
  KnotReport r;
  r.name = j.at("name").get<std::string>();
  r.alexander = poly_from_json(j.at("alexander"));
  r.determinant = json_to_int(j.at("determinant"));
  r.homology = ints_from_json(j.at("homology"));
  for (const auto& [key, val] : j.at("primary_parts").items())
    r.primary_parts[Int(key)] = ints_from_json(val);
  if (!j.at("thm11").is_null())
    r.thm11 = std::make_pair(json_to_int(j.at("thm11").at("p")),
                             j.at("thm11").at("k").get<unsigned>());
  if (!j.at("thm12").is_null()) r.thm12 = j.at("thm12").at("i").get<unsigned>();
  if (!j.at("cor13").is_null()) r.cor13 = json_to_int(j.at("cor13").at("m"));
  if (!j.at("cor41").is_null())
    r.cor41 = std::make_pair(j.at("cor41").at("n").get<unsigned>(),
                             json_to_int(j.at("cor41").at("m")));
  if (!j.at("algebraic_order").is_null()) {
    std::string s = j.at("algebraic_order").get<std::string>();
    if (s == "slice") r.algebraic_order = AlgebraicOrder::Slice;
    else if (s == "order2") r.algebraic_order = AlgebraicOrder::Order2;
    else if (s == "order4") r.algebraic_order = AlgebraicOrder::Order4;
    else throw InputError("unknown algebraic order " + s);
  }
  r.engine_prime = json_to_int(j.at("engine_prime"));
  for (const auto& [key, val] : j.at("engine").items())
    r.engine[static_cast<unsigned>(std::stoul(key))] = verdict_from_json(val);
  return r;
}

Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den < Int(1)) throw InputError("rational denominator must be positive");
    if (!(gcd(abs(num), den) == Int(1))) throw InputError("rational not reduced: " + s);
    return Rat(num, den);
  } catch (const std::runtime_error& e) {
    throw InputError("bad rational \"" + s + "\": " + e.what());
  }
}

std::string rational_str(const Rat& r) { return r.str(); }

namespace {
std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}
}  // namespace

FiniteAbelianGroup parse_group(const std::string& s) {
  std::vector<Int> orders;
  for (const std::string& part : split(s, ',')) {
    if (part.empty()) throw InputError("empty component order in group spec");
    orders.push_back(Int(part));
  }
  return FiniteAbelianGroup(std::move(orders));
}

RatMatrix parse_gram(const std::string& s, std::size_t n) {
  std::vector<std::string> rows = split(s, ';');
  if (rows.size() != n) throw InputError("gram matrix row count mismatch");
  RatMatrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> entries = split(rows[i], ',');
    if (entries.size() != n) throw InputError("gram matrix column count mismatch");
    for (std::size_t j = 0; j < n; ++j)
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_rational(entries[j]);
  }
  return g;
}

Json certificate_to_json(const Theorem12Certificate& c) {
  Json j;
  j["i"] = c.i;
  j["eps3"] = c.eps3;
  j["eps9"] = c.eps9;
  j["metabolizer"] = mat_to_json(c.generators);
  j["rank"] = c.rank;
  j["rows"] = c.rows;
  j["vars"] = c.vars;
  j["outcome"] = c.infeasible ? "infeasible" : "feasible";
  if (c.infeasible) {
    j["divisor"] = int_to_json(c.divisor);
    j["residue"] = int_to_json(c.residue);
  } else {
    j["z"] = c.witness ? vec_to_json(*c.witness) : Json::array();
  }
  return j;
}

Theorem12Certificate certificate_from_json(const Json& j) {
  Theorem12Certificate c;
  c.i = j.at("i").get<unsigned>();
  c.eps3 = j.at("eps3").get<int>();
  c.eps9 = j.at("eps9").get<int>();
  c.generators = json_to_mat(j.at("metabolizer"));
  c.rank = j.at("rank").get<std::size_t>();
  c.rows = j.at("rows").get<long long>();
  c.vars = j.at("vars").get<long long>();
  std::string outcome = j.at("outcome").get<std::string>();
  if (outcome == "infeasible") {
    c.infeasible = true;
    c.divisor = json_to_int(j.at("divisor"));
    c.residue = json_to_int(j.at("residue"));
  } else if (outcome == "feasible") {
    c.infeasible = false;
    c.witness = vec_from_json(j.at("z"));
  } else {
    throw InputError("unknown certificate outcome " + outcome);
  }
  return c;
}

LinkingForm sign_pair_form(unsigned i, int eps3, int eps9) {
  if (i < 1) throw InputError("sign pair form needs i >= 1");
  if ((eps3 != 1 && eps3 != -1) || (eps9 != 1 && eps9 != -1))
    throw InputError("signs must be ±1");
  Int q = pow(Int(3), 2 * i);
  FiniteAbelianGroup g({Int(3), q});
  RatMatrix gram = RatMatrix::Constant(2, 2, Rat(0));
  gram(0, 0) = eps3 == 1 ? Rat(Int(1), Int(3)) : Rat(Int(2), Int(3));
  gram(1, 1) = eps9 == 1 ? Rat(Int(1), q) : Rat(q - Int(1), q);
  return LinkingForm(std::move(g), std::move(gram));
}

std::optional<std::string> verify_certificate(const Theorem12Certificate& c) {
  LinkingForm base = sign_pair_form(c.i, c.eps3, c.eps9);
  LinkingForm form = power(base, 4);
  if (c.generators.cols() != 8) return "metabolizer generator rows must have 8 coordinates";
  std::vector<GroupElement> gens;
  for (Eigen::Index r = 0; r < c.generators.rows(); ++r) {
    std::vector<Int> coords(8);
    for (Eigen::Index j = 0; j < 8; ++j) coords[static_cast<std::size_t>(j)] = c.generators(r, j);
    gens.emplace_back(form.group(), std::move(coords));
  }
  Subgroup s = Subgroup::from_generators(form.group(), gens);
  if (!mat_equal(s.generator_matrix(), c.generators))
    return "generator matrix is not in canonical form";
  if (!(s.order() * s.order() == form.group().total_order()))
    return "|M|^2 != |H|";
  if (!is_metabolizer(form, s)) return "M != M^perp";
  if (s.rank() != c.rank) return "rank mismatch";

  ConstraintSystem cs = constraint_system(base, s, 4);
  if (cs.amat.rows() != static_cast<Eigen::Index>(c.rows) ||
      cs.amat.cols() != static_cast<Eigen::Index>(c.vars))
    return "constraint system dimensions differ";
  IntSolveResult sol = is_feasible(cs);
  if (sol.feasible() == c.infeasible)
    return c.infeasible ? "system is feasible but certificate claims infeasible"
                        : "system is infeasible but certificate claims feasible";
  if (c.infeasible) {
    if (!(sol.divisor == c.divisor) || !(sol.residue == c.residue))
      return "infeasibility certificate (divisor, residue) differs";
  } else {
    if (!c.witness) return "feasible certificate without witness";
    if (c.witness->rows() != cs.amat.cols()) return "witness length mismatch";
    IntVector check = cs.amat * (*c.witness);
    for (Eigen::Index r = 0; r < cs.bvec.rows(); ++r)
      if (!(check(r) == cs.bvec(r))) return "witness does not satisfy the system";
  }
  return std::nullopt;
}

}  // namespace kc
