#pragma once

#include "coxalg/algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace coxalg {

// The classes of the variables of one fixed degree l inside A_l.
struct LinearSpace {
  GroupElement degree;
  std::vector<Index> vars;  // variables with deg x_i = l
  QMat classes;             // their images in A_l (standard-monomial coords)
  Index rank = 0;           // dim of the span of the classes
};

std::vector<LinearSpace> linear_spaces(const AlgebraSupport& support);

struct ComparabilityEdge {
  enum class Kind { consecutive, comparable };
  Kind kind = Kind::comparable;
  GroupElement g, h;
  GroupElement l;  // degree of the linear element
  Index k = 1;     // h = g + k*l
};

// All linearly consecutive pairs (cover edges of the support with a nonzero
// linear space at the difference degree) followed by all linearly comparable
// triples (g, l, k) inside the support. Deterministic order.
std::vector<ComparabilityEdge> comparability_graph(const AlgebraSupport& support);

// phi with phi(l) = 1 and phi(omega) a positive integer, when one exists.
std::optional<QVec> phi_linear_functional(const RingPtr& ring, const GroupElement& l,
                                          const GroupElement& omega);

// Both Euler identities, verified exactly.
bool euler_identity_check(const Polynomial& f, const QVec& phi);
bool toric_euler_check(const Polynomial& f, const Polynomial& linear, const QVec& phi);

// Dual basis of C (columns = coordinates in the standard monomials of A_h)
// under the Poincare pairing of A = Q/Ann(f), normalized so that the socle
// generator evaluates to 1 on f. Returned columns are coordinates in the
// standard monomials of A_{omega-h}.
QMat dual_basis(const AlgebraSupport& support, const Polynomial& f, const GroupElement& h,
                const QMat& c_coords);

// Matrix of polynomials [(c_star_i . b_j)(f)]; evaluating at a point gives an
// exact rational matrix.
struct HessianData {
  std::vector<Polynomial> entries;  // row-major, rows * cols
  Index rows = 0, cols = 0;

  const Polynomial& at(Index i, Index j) const {
    return entries[static_cast<size_t>(i * cols + j)];
  }
};

HessianData mixed_hessian(const Polynomial& f, const std::vector<Polynomial>& b,
                          const std::vector<Polynomial>& c_star);
QMat hessian_evaluate(const HessianData& hessian, const QVec& point);

// Coefficient vector of a linear element as an evaluation point (one slot
// per ring variable).
QVec linear_element_point(const Polynomial& linear);

struct HessianCheckResult {
  bool equal = false;
  QMat multiplication;  // [.L^k] in the given bases
  QMat hessian_side;    // k! * Hess(a)
  QVec phi;
  Index k = 0;
};

// The two sides of the identity [.L^k]_B^C = k! Hess_f^{(C*,B)}(a), computed
// by independent code paths. B and C default to the standard monomial bases
// when empty (0x0) matrices are passed.
HessianCheckResult hessian_criterion_verify(const AlgebraSupport& support, const Polynomial& f,
                                            const ComparabilityEdge& edge, const Polynomial& linear,
                                            const QMat& b_coords = QMat(), const QMat& c_coords = QMat());

struct WitnessResult {
  bool maximal = false;
  Index rank = 0;
  Index target = 0;  // min(h_g, h_h)
  std::optional<Polynomial> witness;
  Index trials_used = 0;
};

// Randomized search for L with multiplication of maximal rank along an edge.
// The candidate stream is deterministic in (edge, seed): the all-ones vector
// first, then the coordinate vectors, then seeded integer vectors from a
// widening range. A failure after `trials` candidates is only probabilistic
// evidence, since maximal rank is a Zariski-open condition.
WitnessResult maximal_rank_witness(const AlgebraSupport& support, const ComparabilityEdge& edge,
                                   Index trials, std::uint64_t seed);

struct EdgeCheck {
  ComparabilityEdge edge;
  WitnessResult witness;
};

struct LefschetzReport {
  bool holds = false;
  bool preorder_mode = false;  // functional orders need not be antisymmetric
  std::vector<EdgeCheck> edges;
};

// Per-edge verdicts with one witness sought per edge; a comparable pair
// passes when some (l, k) route for it has a maximal-rank witness, and the
// overall verdict is the conjunction over pairs.
LefschetzReport twlp_check(const AlgebraSupport& support, Index trials, std::uint64_t seed);
LefschetzReport tslp_check(const AlgebraSupport& support, Index trials, std::uint64_t seed);

std::string format_report(const LefschetzReport& report, const RingPtr& ring);

}  // namespace coxalg
