#pragma once

#include "coxalg/linalg.hpp"
#include "coxalg/polyring.hpp"

#include <map>
#include <optional>
#include <vector>

namespace coxalg {

// A homogeneous ideal, presented either by generators plus "all of S_h"
// degree-span clauses, or as the annihilator of a single polynomial in the
// dual ring. The two presentation styles are exclusive.
struct IdealPresentation {
  RingPtr ring;
  std::vector<Polynomial> generators;
  std::vector<GroupElement> span_degrees;
  std::optional<Polynomial> apolar_form;  // lives in ring->dual()
};

IdealPresentation ideal_from_generators(const RingPtr& ring, std::vector<Polynomial> generators,
                                        std::vector<GroupElement> span_degrees = {});

// Ann(f) as an ideal of the operator ring dual to f's ring.
IdealPresentation annihilator_ideal(const Polynomial& f);

// The degree-g slice of S/I: monomial basis of S_g, a RREF basis of I_g, and
// the surviving (standard) monomials that form a basis of the quotient.
struct DegreeSliceBasis {
  GroupElement degree;
  std::vector<Monomial> ambient;
  RrefResult ideal_rref;
  std::vector<Index> standard;

  Index dim() const { return static_cast<Index>(standard.size()); }
};

DegreeSliceBasis ideal_slice(const IdealPresentation& ideal, const GroupElement& g);

// Quotient coordinates of an ambient coefficient vector on the standard
// monomials.
QVec reduce_to_standard(const DegreeSliceBasis& slice, QVec ambient_coeffs);

std::map<GroupElement, Index, DegreeLess> hilbert_function(
    const IdealPresentation& ideal, const std::vector<GroupElement>& degrees);

// All degrees of monomials with phi-value at most `bound`, ordered by
// (phi-value, lexicographic).
std::vector<GroupElement> realized_degrees_up_to(const RingPtr& ring, const Rational& bound);

enum class ArtinianStatus { certified, not_artinian, inconclusive };

// Slice-by-slice description of A = S/I on the certified region. When
// `status` is `certified`, every realized degree with phi-value above
// `frontier` provably has h_g = 0: slices in a full window of width
// max phi(deg x_i) vanished, so any higher monomial is a variable times a
// monomial in a vanishing slice.
struct AlgebraSupport {
  IdealPresentation ideal;
  ArtinianStatus status = ArtinianStatus::inconclusive;
  std::map<GroupElement, DegreeSliceBasis, DegreeLess> slices;
  Rational frontier = 0;
  std::optional<GroupElement> greatest;
  // Witness for `not_artinian`: a variable whose powers stay out of the
  // ideal, certified by a functional psi that is zero on that variable,
  // nonnegative on every variable and positive on every generator degree.
  std::optional<std::pair<Index, QVec>> growth;

  std::vector<GroupElement> support() const;
  Index h(const GroupElement& g) const;
  const DegreeSliceBasis* find_slice(const GroupElement& g) const;
};

AlgebraSupport artinian_certify(const IdealPresentation& ideal, Rational phi_cap = Rational(64));

// Matrix of multiplication by homogeneous p from A_g to A_{g+deg p} in
// standard-monomial coordinates.
QMat multiplication_matrix(const AlgebraSupport& support, const Polynomial& p,
                           const GroupElement& g);

// Basis (columns, standard-monomial coordinates) of soc(A)_g, the
// intersection of the kernels of multiplication by each variable.
QMat socle_slice(const AlgebraSupport& support, const GroupElement& g);

struct GorensteinVerdict {
  bool gorenstein = false;
  std::optional<GroupElement> socle_degree;
  std::map<GroupElement, Index, DegreeLess> socle_dims;
};

GorensteinVerdict is_cox_gorenstein(const AlgebraSupport& support);

// Matrix of A_g x A_{w-g} -> A_w (rows indexed by the standard monomials of
// A_g), with A_w identified with Q via its standard monomial. Requires
// h_w = 1.
QMat poincare_pairing(const AlgebraSupport& support, const GroupElement& omega,
                      const GroupElement& g);

// Minimal Artinian quotient with greatest degree omega: adds "all of S_h"
// clauses for the minimal realized degrees h incomparable with omega.
// Requires omega maximal in the support of S/I on the verified region.
IdealPresentation artinianize(const IdealPresentation& ideal, const GroupElement& omega,
                              Rational phi_cap = Rational(64));

// Minimal Cox-Gorenstein quotient: J_g is the left kernel of the pairing
// S_g x S_{w-g} -> Q, (P,Q) -> Lambda(PQ), for the functional Lambda dual to
// the standard monomial of A_w. Preserves pairings that were already
// perfect. Requires an Artinian support with greatest element omega and
// h_w = 1.
IdealPresentation gorensteinize(const AlgebraSupport& support, const GroupElement& omega);

// Slice of the colon ideal (I' : F) at degree g, computed as the preimage of
// I'_{g+deg F} under multiplication by F.
DegreeSliceBasis colon_slice(const IdealPresentation& iprime, const Polynomial& f,
                             const GroupElement& g);

// A subspace of a single graded piece of the dual polynomial ring.
struct SubspaceSlice {
  GroupElement degree;
  std::vector<Monomial> ambient;
  RrefResult basis;

  Index dim() const { return basis.rank; }
};

// Slice of the inverse system I^{-1} = { f : alpha(f) = 0 for all alpha in I }.
SubspaceSlice inverse_system_slice(const IdealPresentation& ideal, const GroupElement& g);

}  // namespace coxalg
