#pragma once

#include "coxalg/algebra.hpp"
#include "coxalg/intlinalg.hpp"

#include <string>
#include <vector>

namespace coxalg {

// The grading written as weight matrices: row i of (p_free | p_tors) is
// deg x_i.
struct WeightData {
  ZMat p_free;
  ZMat p_tors;
  std::vector<Integer> moduli;
};

WeightData weight_data(const RingPtr& ring);

// Rays of the fan recovered from the grading: the HNF basis of the kernel
// lattice of the degree map Z^n -> G, one ray per variable (row), made
// primitive. The basis choice is canonical but only well defined up to a
// simultaneous GL_d(Z) transform.
struct RaysResult {
  ZMat kernel;  // n x d, columns form the HNF lattice basis
  std::vector<ZVec> rays;
  std::vector<Integer> scales;  // content divided out of each row
  std::vector<bool> repeated;   // flags rays equal to an earlier one
};

RaysResult rays_from_grading(const RingPtr& ring);

struct Polyhedron {
  std::vector<ZVec> normals;     // inequality <xi, normal_i> >= alpha_i
  std::vector<Integer> alphas;
  std::vector<QVec> vertices;
  bool bounded = false;
};

struct Fan {
  Index dim = 0;
  std::vector<ZVec> rays;
  std::vector<std::vector<Index>> max_cones;  // ray index sets, sorted
  bool complete = false;
};

// Polyhedron { xi : <xi, a_i> >= alpha_i } and its (inner) normal fan: one
// maximal cone per vertex, spanned by the rays active there. Throws when the
// polyhedron is empty or a vertex cone is not simplicial.
std::pair<Fan, Polyhedron> normal_fan(const std::vector<ZVec>& rays,
                                      const std::vector<Integer>& alphas);

struct MonomialIdeal {
  std::vector<Monomial> generators;  // minimal, sorted
};

// Generated by prod_{i not in cone} x_i over the maximal cones.
MonomialIdeal irrelevant_ideal(const Fan& fan, const RingPtr& ring);

struct ToricReconstruction {
  RaysResult rays;
  Fan fan;
  Polyhedron delta;
  MonomialIdeal irrelevant;
};

// The full grading -> rays -> fan -> irrelevant ideal pipeline. The alphas
// only move the polyhedron; the fan of a complete case does not depend on
// them. Defaults to the anticanonical choice alpha_i = -1.
ToricReconstruction reconstruct(const RingPtr& ring, std::vector<Integer> alphas = {});

// Sum of all variable degrees.
GroupElement anticanonical_class(const RingPtr& ring);

// Integer coefficients a with sum a_i deg(x_i) = c, via the degree map's
// Smith decomposition; errors when only rational representatives exist.
ZVec invariant_divisor_for_class(const RingPtr& ring, const GroupElement& c);

struct DivisorPolytope {
  Polyhedron polytope;
  ZVec coefficients;
  bool full_dimensional = false;
};

DivisorPolytope divisor_polytope(const std::vector<ZVec>& rays, const RingPtr& ring,
                                 const GroupElement& c);

// Support-function convexity test on a complete simplicial fan.
bool nef_check(const Fan& fan, const RingPtr& ring, const GroupElement& c);

struct HypothesisCheck {
  std::string description;
  enum class Status { verified, failed, assumed } status = Status::assumed;
};

struct CiReport {
  Index fan_dim = 0;
  bool picard_rank_one = false;
  GroupElement omega;
  std::vector<HypothesisCheck> hypotheses;
  ArtinianStatus status = ArtinianStatus::inconclusive;
  std::optional<std::pair<Index, QVec>> growth;  // not-Artinian witness
  Index dim_omega = 0;
  std::vector<std::pair<std::string, bool>> annihilation;  // x_rho * A_omega = 0
  std::optional<GorensteinVerdict> verdict;                // Picard rank 1 only
};

// Socle checks for d+1 forms on a d-dimensional complete simplicial toric
// variety: computes omega = sum deg f_i - anticanonical, verifies the nef and
// full-dimensional-polytope hypotheses where possible, and reports dim
// A_omega together with the per-variable annihilation of A_omega. The
// common-zero hypothesis is recorded as assumed, never verified.
CiReport ci_socle_check(const RingPtr& ring, const std::vector<Polynomial>& forms,
                        Rational phi_cap = Rational(64));

std::string format_reconstruction(const ToricReconstruction& recon, const RingPtr& ring);
std::string format_ci_report(const CiReport& report, const RingPtr& ring);

}  // namespace coxalg
