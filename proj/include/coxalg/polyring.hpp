#pragma once

#include "coxalg/grading.hpp"
#include "coxalg/scalar.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace coxalg {

struct Monomial {
  Eigen::VectorXi e;
};

inline Index total_degree(const Monomial& m) {
  Index t = 0;
  for (Index i = 0; i < m.e.size(); ++i) t += m.e(i);
  return t;
}

bool mon_eq(const Monomial& a, const Monomial& b);
bool mon_divides(const Monomial& a, const Monomial& b);  // a | b componentwise

// Monomials are kept in descending lexicographic order on exponent vectors
// (x before y, x^2 before x*y); this fixes slice bases, RREF pivots and all
// printed output.
struct MonLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class GradedRingSpec;
using RingPtr = std::shared_ptr<const GradedRingSpec>;

// Immutable description of S = K[x_1..x_n] (or its dual operator ring Q)
// with a G-grading, an order on G, and the cached positivity certificate.
class GradedRingSpec : public std::enable_shared_from_this<GradedRingSpec> {
 public:
  enum class Role { S, Q };

  static RingPtr make(std::vector<std::string> names, std::vector<GroupElement> degrees,
                      GroupSpec group, OrderSpec order, Role role = Role::S);

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<GroupElement>& degrees() const { return degrees_; }
  const GroupElement& degree_of(Index var) const { return degrees_[static_cast<size_t>(var)]; }
  const GroupSpec& group() const { return group_; }
  const OrderSpec& order() const { return order_; }
  Role role() const { return role_; }
  Index var_count() const { return static_cast<Index>(names_.size()); }

  // n x free_rank and n x torsion_rank weight matrices (row i = deg x_i).
  const ZMat& free_weights() const { return free_weights_; }
  const ZMat& torsion_weights() const { return torsion_weights_; }

  const std::optional<PositivityCertificate>& certificate() const { return certificate_; }
  const PositivityCertificate& require_certificate() const;

  // The operator ring with the same grading (names uppercased, role flipped).
  RingPtr dual() const;

  // Memoized per-degree monomial enumeration; see monomials_of_degree below.
  const std::vector<Monomial>& monomial_basis(const GroupElement& g) const;

 private:
  GradedRingSpec() = default;

  std::vector<std::string> names_;
  std::vector<GroupElement> degrees_;
  GroupSpec group_;
  OrderSpec order_;
  Role role_ = Role::S;
  ZMat free_weights_;
  ZMat torsion_weights_;
  std::optional<PositivityCertificate> certificate_;

  mutable std::mutex mutex_;
  mutable std::map<GroupElement, std::vector<Monomial>, DegreeLess> basis_memo_;
  mutable RingPtr dual_memo_;
};

bool same_variables(const GradedRingSpec& a, const GradedRingSpec& b);
bool same_ring(const RingPtr& a, const RingPtr& b);

GroupElement monomial_degree(const GradedRingSpec& ring, const Monomial& m);

// All monomials of G-degree g, in the canonical order. Requires a positivity
// certificate (otherwise the fiber can be infinite) and throws math_error
// without one.
const std::vector<Monomial>& monomials_of_degree(const RingPtr& ring, const GroupElement& g);

// Whether g lies in the monoid generated by the variable degrees.
bool is_realized(const RingPtr& ring, const GroupElement& g);

// The configured order on G. Semigroup mode decides h - g against the degree
// monoid; functional mode evaluates the configured functionals on the free
// part. Functional mode is in general only a preorder.
bool leq(const RingPtr& ring, const GroupElement& g, const GroupElement& h);
bool strictly_less(const RingPtr& ring, const GroupElement& g, const GroupElement& h);

// Cover pairs (g, h) of the restriction of the order to the given finite set.
std::vector<std::pair<GroupElement, GroupElement>> cover_relations(
    const RingPtr& ring, const std::vector<GroupElement>& degrees);

// Sparse exact polynomial; terms never store zero coefficients. `degree` is
// set iff the polynomial is (nonzero and) homogeneous.
struct Polynomial {
  RingPtr ring;
  std::map<Monomial, Rational, MonLess> terms;
  std::optional<GroupElement> degree;
};

Polynomial poly_zero(const RingPtr& ring);
Polynomial poly_constant(const RingPtr& ring, const Rational& c);
Polynomial poly_monomial(const RingPtr& ring, Monomial m, Rational coeff = 1);
Polynomial poly_variable(const RingPtr& ring, Index var);

bool poly_is_zero(const Polynomial& p);
bool poly_eq(const Polynomial& p, const Polynomial& q);

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial sub(const Polynomial& p, const Polynomial& q);
Polynomial neg(const Polynomial& p);
Polynomial scale(const Polynomial& p, const Rational& c);
Polynomial multiply(const Polynomial& p, const Polynomial& q);
Polynomial poly_pow(const Polynomial& p, Index k);

Rational evaluate(const Polynomial& p, const QVec& point);

// Differential action of the operator ring on polynomials: X^a sends x^c to
// (prod_i c_i!/(c_i-a_i)!) x^{c-a} when a <= c and to zero otherwise.
Polynomial apply_diff(const Polynomial& alpha, const Polynomial& f);

// Matrix of Q_g -> S_{w-g}, alpha -> alpha(f), for homogeneous f of degree w.
// Rows are indexed by the monomial basis of S_{w-g}, columns by the basis of
// Q_g; the kernel is Ann(f)_g and the rank is dim (Q/Ann(f))_g.
QMat catalecticant(const Polynomial& f, const GroupElement& g);

// Coefficient vector of p on an ordered monomial basis (throws if a term of
// p is not in the basis) and its inverse.
QVec coefficient_vector(const Polynomial& p, const std::vector<Monomial>& basis);
Polynomial poly_from_coefficients(const RingPtr& ring, const std::vector<Monomial>& basis,
                                  const QVec& coeffs);

// Text form: "3/2*x^2*u - y^2*v". The printer is canonical and parsing it
// back reproduces the polynomial exactly; '*' between symbols is optional on
// input.
std::string to_string(const Polynomial& p);
Polynomial parse_polynomial(const RingPtr& ring, const std::string& text);

}  // namespace coxalg
