#include "coxalg/hasse.hpp"

#include <algorithm>
#include <sstream>

namespace coxalg {

HasseHilbertDiagram build_diagram(const AlgebraSupport& support) {
  if (support.status != ArtinianStatus::certified)
    throw math_error("Hasse-Hilbert diagram of a non-Artinian algebra is infinite");
  HasseHilbertDiagram diagram;
  diagram.ring = support.ideal.ring;
  diagram.nodes = support.support();
  std::sort(diagram.nodes.begin(), diagram.nodes.end(), DegreeLess{});
  for (const auto& g : diagram.nodes) diagram.weights.push_back(support.h(g));

  const auto covers = cover_relations(diagram.ring, diagram.nodes);
  auto index_of = [&](const GroupElement& g) {
    const auto it = std::lower_bound(diagram.nodes.begin(), diagram.nodes.end(), g, DegreeLess{});
    return static_cast<Index>(it - diagram.nodes.begin());
  };
  for (const auto& [g, h] : covers) diagram.edges.emplace_back(index_of(g), index_of(h));
  std::sort(diagram.edges.begin(), diagram.edges.end());

  if (support.greatest) diagram.greatest = index_of(*support.greatest);
  return diagram;
}

bool symmetry_check(const HasseHilbertDiagram& diagram, const GroupElement& omega) {
  const GroupSpec& group = diagram.ring->group();
  for (Index i = 0; i < static_cast<Index>(diagram.nodes.size()); ++i) {
    const GroupElement mirror = group_sub(group, omega, diagram.nodes[static_cast<size_t>(i)]);
    const auto it = std::lower_bound(diagram.nodes.begin(), diagram.nodes.end(), mirror,
                                     DegreeLess{});
    if (it == diagram.nodes.end() || !degree_eq(*it, mirror)) return false;
    const Index j = static_cast<Index>(it - diagram.nodes.begin());
    if (diagram.weights[static_cast<size_t>(i)] != diagram.weights[static_cast<size_t>(j)])
      return false;
  }
  return true;
}

std::string to_dot(const HasseHilbertDiagram& diagram) {
  std::ostringstream os;
  os << "digraph {\n";
  for (Index i = 0; i < static_cast<Index>(diagram.nodes.size()); ++i) {
    os << "  \"n" << i << "\" [label=\"" << diagram.weights[static_cast<size_t>(i)] << "\\n"
       << degree_to_string(diagram.ring->group(), diagram.nodes[static_cast<size_t>(i)])
       << "\"];\n";
  }
  for (const auto& [a, b] : diagram.edges) os << "  \"n" << a << "\" -> \"n" << b << "\";\n";
  os << "}\n";
  return os.str();
}

std::string to_adjacency_text(const HasseHilbertDiagram& diagram) {
  std::ostringstream os;
  for (Index i = 0; i < static_cast<Index>(diagram.nodes.size()); ++i) {
    os << degree_to_string(diagram.ring->group(), diagram.nodes[static_cast<size_t>(i)])
       << " h=" << diagram.weights[static_cast<size_t>(i)] << " ->";
    bool any = false;
    for (const auto& [a, b] : diagram.edges) {
      if (a == i) {
        os << (any ? ", " : " ")
           << degree_to_string(diagram.ring->group(), diagram.nodes[static_cast<size_t>(b)]);
        any = true;
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace coxalg
