#pragma once

#include "coxalg/algebra.hpp"

#include <string>
#include <vector>

namespace coxalg {

// The cover graph of the realized degrees of an Artinian algebra, weighted
// by the Hilbert function.
struct HasseHilbertDiagram {
  RingPtr ring;
  std::vector<GroupElement> nodes;  // sorted, h_g > 0
  std::vector<Index> weights;
  std::vector<std::pair<Index, Index>> edges;  // indices into nodes
  std::optional<Index> greatest;
};

HasseHilbertDiagram build_diagram(const AlgebraSupport& support);

// True iff g -> omega - g is a weight-preserving bijection of the nodes.
bool symmetry_check(const HasseHilbertDiagram& diagram, const GroupElement& omega);

// GraphViz DOT rendering; node labels are "h_g\n(g)". Byte-stable for fixed
// input.
std::string to_dot(const HasseHilbertDiagram& diagram);

// Plain-text adjacency listing, one "(g) h=..: -> (h1), (h2)" line per node.
std::string to_adjacency_text(const HasseHilbertDiagram& diagram);

}  // namespace coxalg
