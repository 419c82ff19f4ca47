#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "kc/knot.hpp"

namespace kc {

using Json = nlohmann::ordered_json;

// Entries are JSON integers when they fit in 64 bits, decimal strings
// otherwise; the parsers accept both.
Json int_to_json(const Int& v);
Int json_to_int(const Json& j);
Json mat_to_json(const IntMatrix& m);
IntMatrix json_to_mat(const Json& j);

// Knot files: {"name": str, "matrix": [[int]]}.
Json knot_to_json(const SeifertMatrix& k);
SeifertMatrix knot_from_json(const Json& j);
SeifertMatrix read_knot_file(const std::string& path);

// Reports serialize with a stable field order; parse(serialize(r)) followed
// by serialize is the identity on the JSON document.
Json report_to_json(const KnotReport& r);
KnotReport report_from_json(const Json& j);

// "p/q" with q > 0 and the fraction reduced, or a plain integer.
Rat parse_rational(const std::string& s);
std::string rational_str(const Rat& r);

// "3,9,3,9" -> component orders.
FiniteAbelianGroup parse_group(const std::string& s);
// Rows separated by ';', entries by ','; must be square and symmetric with
// denominators dividing the component orders.
RatMatrix parse_gram(const std::string& s, std::size_t n);

// One certificate per metabolizer of the 4-fold form: enough data to recheck
// M = M^perp and the constraint-system outcome without re-running the
// enumeration.
struct Theorem12Certificate {
  unsigned i = 1;
  int eps3 = 1;
  int eps9 = 1;
  IntMatrix generators;  // canonical generator matrix, rows in H = (Z3+Z3^{2i})^4
  std::size_t rank = 0;
  long long rows = 0;
  long long vars = 0;
  bool infeasible = false;
  Int divisor;
  Int residue;
  std::optional<IntVector> witness;
};

Json certificate_to_json(const Theorem12Certificate& c);
Theorem12Certificate certificate_from_json(const Json& j);

// The diagonalized base form diag(eps3/3, eps9/3^{2i}) on Z_3 + Z_{3^{2i}}.
LinkingForm sign_pair_form(unsigned i, int eps3, int eps9);

// Recompute everything the certificate claims; empty result means the
// certificate checks out, otherwise a human-readable rejection reason.
std::optional<std::string> verify_certificate(const Theorem12Certificate& c);

}  // namespace kc
