#pragma once

#include "coxalg/algebra.hpp"

#include <map>
#include <string>

namespace coxalg {

// I/O and schema errors; the CLI maps these to exit code 1.
class spec_error : public std::runtime_error {
 public:
  explicit spec_error(const std::string& what) : std::runtime_error(what) {}
};

// A parsed ring-spec file: the graded ring, named polynomials (in S) and
// named ideal presentations (in S or in the operator ring Q).
struct RingSpecFile {
  RingPtr ring;
  std::map<std::string, Polynomial> polynomials;
  std::map<std::string, IdealPresentation> ideals;
};

// JSON schema (version 1):
// {
//   "schema": 1,
//   "group": {"free_rank": 2, "moduli": [2]},
//   "order": {"mode": "semigroup"} |
//            {"mode": "functional", "functionals": [[1,0],["1/2",1]]},
//   "variables": [{"name": "x", "degree": "(1,0;1~2)"}, ...],
//   "polynomials": {"f": "x^2*u^3 + y^2*v^3"},
//   "ideals": {
//     "I":   {"generators": ["x^2*u - y^2*v"], "spans": ["(0,2)"]},
//     "ann": {"annihilator_of": "f"},
//     "J":   {"ring": "Q", "generators": ["X^4", "Y^4", "Z^2"]}
//   }
// }
RingSpecFile load_ring_spec(const std::string& path);
RingSpecFile parse_ring_spec(const std::string& json_text);

// Serializes a spec file (used by the artinianize/gorensteinize commands to
// emit derived ideals).
std::string ring_spec_to_json(const RingSpecFile& file);

}  // namespace coxalg
