#pragma once

#include "coxalg/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coxalg {

// The grading group G = Z^free_rank + Z_{m_1} + ... + Z_{m_N}.
struct GroupSpec {
  Index free_rank = 0;
  std::vector<Integer> moduli;  // each >= 2

  Index torsion_rank() const { return static_cast<Index>(moduli.size()); }
  bool operator==(const GroupSpec& other) const {
    return free_rank == other.free_rank && moduli == other.moduli;
  }
};

// An element of G; torsion entries are kept reduced into [0, m_j).
struct GroupElement {
  ZVec free;
  ZVec torsion;
};

GroupElement make_element(const GroupSpec& spec, ZVec free, ZVec torsion);
GroupElement zero_element(const GroupSpec& spec);

GroupElement group_add(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
GroupElement group_sub(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
GroupElement group_neg(const GroupSpec& spec, const GroupElement& a);
GroupElement group_scale(const GroupSpec& spec, const Integer& k, const GroupElement& a);

bool degree_eq(const GroupElement& a, const GroupElement& b);
bool degree_is_zero(const GroupElement& a);

// Strict total order (lexicographic on free then torsion parts); used as the
// map comparator everywhere a deterministic degree iteration order matters.
struct DegreeLess {
  bool operator()(const GroupElement& a, const GroupElement& b) const;
};

// Degree syntax "(a,b;r~m,...)": free coordinates, then torsion residues with
// their moduli after a semicolon. "(1,0)", "(;1~2)", "()".
std::string degree_to_string(const GroupSpec& spec, const GroupElement& g);
GroupElement parse_degree(const GroupSpec& spec, const std::string& text);

// How ⪯ is decided. Semigroup mode orders by membership of h-g in the monoid
// generated by the variable degrees; functional mode compares the free part
// against a list of rational functionals and ignores torsion (which makes it
// a preorder in general).
struct OrderSpec {
  enum class Mode { semigroup, functional };
  Mode mode = Mode::semigroup;
  std::vector<QVec> functionals;

  bool operator==(const OrderSpec& other) const;
};

// phi in Hom(G, Q), represented by its free part (torsion maps to zero in a
// torsion-free target). Positive on every variable degree by construction.
struct PositivityCertificate {
  QVec phi;
};

inline Rational phi_value(const PositivityCertificate& cert, const GroupElement& g) {
  Rational v = 0;
  for (Index i = 0; i < cert.phi.size(); ++i) v += cert.phi(i) * Rational(g.free(i));
  return v;
}

// A weak linear constraint a · x >= rhs.
struct LinearConstraint {
  QVec a;
  Rational rhs;
};

// Exact Fourier-Motzkin feasibility over Q; returns a satisfying point.
std::optional<QVec> feasible_point(std::vector<LinearConstraint> constraints, Index dim);

// phi with phi(free part) >= 1 on every listed degree, scaled so the minimum
// value over the list is exactly 1; nullopt when no positive functional
// exists (in particular whenever free_rank == 0).
std::optional<PositivityCertificate> positivity_certificate_for(
    const GroupSpec& spec, const std::vector<GroupElement>& degrees);

}  // namespace coxalg
