#include "coxalg/toric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace coxalg {

WeightData weight_data(const RingPtr& ring) {
  return WeightData{ring->free_weights(), ring->torsion_weights(), ring->group().moduli};
}

RaysResult rays_from_grading(const RingPtr& ring) {
  const Index n = ring->var_count();
  const GroupSpec& group = ring->group();
  if (rank(ring->free_weights().cast<Rational>()) != group.free_rank)
    throw math_error("degree map does not have full free rank");

  RaysResult result;
  result.kernel = integer_kernel_with_congruences(ZMat(ring->free_weights().transpose()),
                                                  ZMat(ring->torsion_weights().transpose()),
                                                  group.moduli);
  const Index d = result.kernel.cols();
  if (d != n - group.free_rank) throw math_error("kernel lattice has unexpected rank");
  for (Index i = 0; i < n; ++i) {
    ZVec row = result.kernel.row(i).transpose();
    if (row.isZero(0))
      throw math_error("degenerate grading: variable " + ring->names()[static_cast<size_t>(i)] +
                       " has zero ray");
    Integer content = 1;
    row = primitivize(std::move(row), &content);
    result.scales.push_back(content);
    bool seen = false;
    for (const auto& prev : result.rays) {
      if (prev.size() == row.size() && (prev - row).isZero(0)) {
        seen = true;
        break;
      }
    }
    result.repeated.push_back(seen);
    result.rays.push_back(std::move(row));
  }
  return result;
}

namespace {

bool qvec_eq(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

void combinations(Index n, Index k, std::vector<Index>& scratch,
                  const std::function<void(const std::vector<Index>&)>& visit, Index start = 0) {
  if (static_cast<Index>(scratch.size()) == k) {
    visit(scratch);
    return;
  }
  for (Index i = start; i < n; ++i) {
    scratch.push_back(i);
    combinations(n, k, scratch, visit, i + 1);
    scratch.pop_back();
  }
}

// Recession cone { xi : <xi, a_i> >= 0 } trivial? A nontrivial pointed cone
// has an extreme ray cut out by d-1 independent constraints; a non-pointed
// one contains the kernel of the full constraint matrix.
bool recession_cone_trivial(const std::vector<ZVec>& rays, Index dim) {
  const Index n = static_cast<Index>(rays.size());
  QMat all(n, dim);
  for (Index i = 0; i < n; ++i) all.row(i) = rays[static_cast<size_t>(i)].cast<Rational>().transpose();
  if (rank(all) < dim) return false;
  if (dim == 1) {
    // One-dimensional case: a direction survives iff all normals share a sign.
    bool pos = true, neg = true;
    for (const auto& a : rays) {
      if (a(0) < 0) pos = false;
      if (a(0) > 0) neg = false;
    }
    return !(pos || neg);
  }
  bool unbounded = false;
  std::vector<Index> scratch;
  combinations(n, dim - 1, scratch, [&](const std::vector<Index>& subset) {
    if (unbounded) return;
    QMat sub(dim - 1, dim);
    for (Index r = 0; r < dim - 1; ++r)
      sub.row(r) = rays[static_cast<size_t>(subset[static_cast<size_t>(r)])].cast<Rational>().transpose();
    const QMat kernel = kernel_basis(sub);
    if (kernel.cols() != 1) return;
    for (const int sign : {1, -1}) {
      const QVec xi = Rational(sign) * kernel.col(0);
      bool ok = true;
      for (const auto& a : rays) {
        Rational v = 0;
        for (Index t = 0; t < dim; ++t) v += xi(t) * Rational(a(t));
        if (v < 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        unbounded = true;
        return;
      }
    }
  });
  return !unbounded;
}

}  // namespace

namespace {

Rational facet_value(const std::vector<ZVec>& rays, const QVec& xi, Index i) {
  Rational v = 0;
  for (Index t = 0; t < xi.size(); ++t) v += xi(t) * Rational(rays[static_cast<size_t>(i)](t));
  return v;
}

// Vertex enumeration by solving all d-subsets of the facet equalities.
// Throws on an empty polyhedron; degenerate (over-determined) vertices are
// allowed here.
Polyhedron polyhedron_hull(const std::vector<ZVec>& rays, const std::vector<Integer>& alphas) {
  if (rays.empty() || rays.size() != alphas.size())
    throw std::invalid_argument("one alpha per ray required");
  const Index n = static_cast<Index>(rays.size());
  const Index dim = rays.front().size();

  {
    std::vector<LinearConstraint> cs;
    for (Index i = 0; i < n; ++i) {
      QVec a = rays[static_cast<size_t>(i)].cast<Rational>();
      cs.push_back({std::move(a), Rational(alphas[static_cast<size_t>(i)])});
    }
    if (!feasible_point(std::move(cs), dim)) throw math_error("empty polyhedron");
  }

  Polyhedron poly;
  poly.normals = rays;
  poly.alphas = alphas;
  std::vector<Index> scratch;
  combinations(n, dim, scratch, [&](const std::vector<Index>& subset) {
    QMat sub(dim, dim);
    QVec rhs(dim);
    for (Index r = 0; r < dim; ++r) {
      sub.row(r) = rays[static_cast<size_t>(subset[static_cast<size_t>(r)])].cast<Rational>().transpose();
      rhs(r) = Rational(alphas[static_cast<size_t>(subset[static_cast<size_t>(r)])]);
    }
    if (rank(sub) != dim) return;
    const auto point = solve(sub, rhs);
    for (Index i = 0; i < n; ++i)
      if (facet_value(rays, *point, i) < Rational(alphas[static_cast<size_t>(i)])) return;
    for (const auto& seen : poly.vertices)
      if (qvec_eq(seen, *point)) return;
    poly.vertices.push_back(*point);
  });
  poly.bounded = recession_cone_trivial(rays, dim);
  return poly;
}

}  // namespace

std::pair<Fan, Polyhedron> normal_fan(const std::vector<ZVec>& rays,
                                      const std::vector<Integer>& alphas) {
  Polyhedron poly = polyhedron_hull(rays, alphas);
  const Index n = static_cast<Index>(rays.size());
  const Index dim = rays.front().size();

  Fan fan;
  fan.dim = dim;
  fan.rays = rays;
  for (const auto& vertex : poly.vertices) {
    std::vector<Index> active;
    for (Index i = 0; i < n; ++i)
      if (facet_value(rays, vertex, i) == Rational(poly.alphas[static_cast<size_t>(i)]))
        active.push_back(i);
    if (static_cast<Index>(active.size()) != dim)
      throw math_error("non-simplicial vertex cone (outside simplicial scope): " +
                       std::to_string(active.size()) + " active facets at a vertex of a rank-" +
                       std::to_string(dim) + " fan");
    fan.max_cones.push_back(std::move(active));
  }
  std::sort(fan.max_cones.begin(), fan.max_cones.end());
  fan.complete = poly.bounded;
  return {std::move(fan), std::move(poly)};
}

MonomialIdeal irrelevant_ideal(const Fan& fan, const RingPtr& ring) {
  if (static_cast<Index>(fan.rays.size()) != ring->var_count())
    throw std::invalid_argument("fan and ring have different numbers of rays/variables");
  std::vector<Monomial> gens;
  for (const auto& cone : fan.max_cones) {
    Eigen::VectorXi e = Eigen::VectorXi::Ones(ring->var_count());
    for (Index i : cone) e(i) = 0;
    gens.push_back(Monomial{std::move(e)});
  }
  // minimalize: drop generators divisible by another
  std::sort(gens.begin(), gens.end(), MonLess{});
  gens.erase(std::unique(gens.begin(), gens.end(), mon_eq), gens.end());
  std::vector<Monomial> minimal;
  for (const auto& g : gens) {
    const bool redundant = std::any_of(gens.begin(), gens.end(), [&](const Monomial& other) {
      return !mon_eq(other, g) && mon_divides(other, g);
    });
    if (!redundant) minimal.push_back(g);
  }
  return MonomialIdeal{std::move(minimal)};
}

ToricReconstruction reconstruct(const RingPtr& ring, std::vector<Integer> alphas) {
  ToricReconstruction recon;
  recon.rays = rays_from_grading(ring);
  if (alphas.empty()) alphas.assign(static_cast<size_t>(ring->var_count()), Integer(-1));
  auto [fan, poly] = normal_fan(recon.rays.rays, alphas);
  recon.fan = std::move(fan);
  recon.delta = std::move(poly);
  recon.irrelevant = irrelevant_ideal(recon.fan, ring);
  return recon;
}

GroupElement anticanonical_class(const RingPtr& ring) {
  GroupElement sum = zero_element(ring->group());
  for (Index i = 0; i < ring->var_count(); ++i)
    sum = group_add(ring->group(), sum, ring->degree_of(i));
  return sum;
}

ZVec invariant_divisor_for_class(const RingPtr& ring, const GroupElement& c) {
  const GroupSpec& group = ring->group();
  const Index n = ring->var_count();
  const Index rho = group.free_rank, nt = group.torsion_rank();
  ZMat a = ZMat::Zero(rho + nt, n + nt);
  a.topLeftCorner(rho, n) = ring->free_weights().transpose();
  if (nt > 0) {
    a.bottomLeftCorner(nt, n) = ring->torsion_weights().transpose();
    for (Index j = 0; j < nt; ++j) a(rho + j, n + j) = group.moduli[static_cast<size_t>(j)];
  }
  ZVec b(rho + nt);
  b.head(rho) = c.free;
  if (nt > 0) b.tail(nt) = c.torsion;
  const auto solution = integer_solve(a, b);
  if (!solution) {
    QVec bq = b.cast<Rational>();
    if (solve(a.cast<Rational>(), bq))
      throw math_error("class has rational but no integral torus-invariant representative");
    throw math_error("class has no torus-invariant representative");
  }
  return solution->head(n);
}

DivisorPolytope divisor_polytope(const std::vector<ZVec>& rays, const RingPtr& ring,
                                 const GroupElement& c) {
  DivisorPolytope result;
  result.coefficients = invariant_divisor_for_class(ring, c);
  const Index dim = rays.front().size();
  std::vector<Integer> alphas;
  for (Index i = 0; i < static_cast<Index>(rays.size()); ++i)
    alphas.push_back(-result.coefficients(i));

  // P_D may legitimately be empty.
  try {
    result.polytope = polyhedron_hull(rays, alphas);
  } catch (const math_error&) {
    result.polytope.normals = rays;
    result.polytope.alphas = std::move(alphas);
    result.full_dimensional = false;
    return result;
  }
  if (result.polytope.vertices.empty()) {
    result.full_dimensional = false;
    return result;
  }
  QMat diffs(static_cast<Index>(result.polytope.vertices.size()) - 1, dim);
  for (Index i = 1; i < static_cast<Index>(result.polytope.vertices.size()); ++i)
    diffs.row(i - 1) =
        (result.polytope.vertices[static_cast<size_t>(i)] - result.polytope.vertices[0]).transpose();
  result.full_dimensional = diffs.rows() >= dim && rank(diffs) == dim;
  return result;
}

bool nef_check(const Fan& fan, const RingPtr& ring, const GroupElement& c) {
  if (!fan.complete) throw math_error("nef test needs a complete fan");
  const ZVec coeffs = invariant_divisor_for_class(ring, c);
  for (const auto& cone : fan.max_cones) {
    QMat sub(fan.dim, fan.dim);
    QVec rhs(fan.dim);
    for (Index r = 0; r < fan.dim; ++r) {
      sub.row(r) = fan.rays[static_cast<size_t>(cone[static_cast<size_t>(r)])].cast<Rational>().transpose();
      rhs(r) = Rational(-coeffs(cone[static_cast<size_t>(r)]));
    }
    const auto m_sigma = solve(sub, rhs);
    if (!m_sigma) throw math_error("simplicial cone solve failed");
    for (Index j = 0; j < static_cast<Index>(fan.rays.size()); ++j) {
      Rational v = 0;
      for (Index t = 0; t < fan.dim; ++t) v += (*m_sigma)(t)*Rational(fan.rays[static_cast<size_t>(j)](t));
      if (v < Rational(-coeffs(j))) return false;
    }
  }
  return true;
}

CiReport ci_socle_check(const RingPtr& ring, const std::vector<Polynomial>& forms,
                        Rational phi_cap) {
  CiReport report;
  const ToricReconstruction recon = reconstruct(ring);
  report.fan_dim = recon.fan.dim;
  if (static_cast<Index>(forms.size()) != recon.fan.dim + 1)
    throw std::invalid_argument("need dim + 1 forms (" + std::to_string(recon.fan.dim + 1) +
                                " for this grading)");
  std::vector<GroupElement> form_degrees;
  for (const auto& f : forms) {
    if (poly_is_zero(f) || !f.degree)
      throw std::invalid_argument("forms must be nonzero homogeneous");
    form_degrees.push_back(*f.degree);
  }
  report.picard_rank_one = ring->group().free_rank == 1;

  GroupElement omega = zero_element(ring->group());
  for (const auto& d : form_degrees) omega = group_add(ring->group(), omega, d);
  omega = group_sub(ring->group(), omega, anticanonical_class(ring));
  report.omega = omega;

  report.hypotheses.push_back({"fan is complete", recon.fan.complete
                                                      ? HypothesisCheck::Status::verified
                                                      : HypothesisCheck::Status::failed});
  for (size_t i = 0; i < form_degrees.size(); ++i) {
    HypothesisCheck check;
    check.description =
        "deg f_" + std::to_string(i) + " = " +
        degree_to_string(ring->group(), form_degrees[i]) + " is nef";
    if (recon.fan.complete) {
      try {
        check.status = nef_check(recon.fan, ring, form_degrees[i])
                           ? HypothesisCheck::Status::verified
                           : HypothesisCheck::Status::failed;
      } catch (const math_error&) {
        check.status = HypothesisCheck::Status::assumed;
      }
    }
    report.hypotheses.push_back(std::move(check));
  }
  {
    // Subset sums eta of the form degrees, deduplicated.
    std::map<GroupElement, bool, DegreeLess> sums;
    const size_t r = form_degrees.size();
    for (size_t mask = 1; mask < (size_t(1) << r); ++mask) {
      GroupElement eta = zero_element(ring->group());
      for (size_t i = 0; i < r; ++i)
        if (mask & (size_t(1) << i)) eta = group_add(ring->group(), eta, form_degrees[i]);
      sums.emplace(eta, true);
    }
    for (const auto& [eta, unused] : sums) {
      HypothesisCheck check;
      check.description =
          "P_eta is full dimensional for eta = " + degree_to_string(ring->group(), eta);
      try {
        check.status = divisor_polytope(recon.rays.rays, ring, eta).full_dimensional
                           ? HypothesisCheck::Status::verified
                           : HypothesisCheck::Status::failed;
      } catch (const math_error&) {
        check.status = HypothesisCheck::Status::assumed;
      }
      report.hypotheses.push_back(std::move(check));
    }
  }
  report.hypotheses.push_back(
      {"forms do not vanish simultaneously on the variety", HypothesisCheck::Status::assumed});

  const AlgebraSupport support = artinian_certify(ideal_from_generators(ring, forms), phi_cap);
  report.status = support.status;
  report.growth = support.growth;
  if (support.status != ArtinianStatus::certified) return report;

  report.dim_omega = support.h(omega);
  for (Index i = 0; i < ring->var_count(); ++i) {
    const QMat m = multiplication_matrix(support, poly_variable(ring, i), omega);
    report.annihilation.emplace_back(ring->names()[static_cast<size_t>(i)],
                                     m.rows() == 0 || m.isZero(0));
  }
  if (report.picard_rank_one) report.verdict = is_cox_gorenstein(support);
  return report;
}

std::string format_reconstruction(const ToricReconstruction& recon, const RingPtr& ring) {
  std::ostringstream os;
  os << "rays (one per variable, up to a global GL_d(Z) change of lattice basis):\n";
  for (Index i = 0; i < static_cast<Index>(recon.rays.rays.size()); ++i) {
    os << "  " << ring->names()[static_cast<size_t>(i)] << ": (";
    const ZVec& a = recon.rays.rays[static_cast<size_t>(i)];
    for (Index t = 0; t < a.size(); ++t) os << (t ? "," : "") << a(t);
    os << ")";
    if (recon.rays.scales[static_cast<size_t>(i)] > 1)
      os << "  [multiplicity " << recon.rays.scales[static_cast<size_t>(i)] << "]";
    if (recon.rays.repeated[static_cast<size_t>(i)]) os << "  [repeated ray]";
    os << "\n";
  }
  os << "maximal cones (1-based ray indices):";
  for (const auto& cone : recon.fan.max_cones) {
    os << " {";
    for (size_t t = 0; t < cone.size(); ++t) os << (t ? "," : "") << cone[t] + 1;
    os << "}";
  }
  os << "\n";
  os << "polyhedron: " << (recon.delta.bounded ? "bounded" : "unbounded") << ", "
     << recon.delta.vertices.size() << " vertex(es)\n";
  os << "fan: " << (recon.fan.complete ? "complete" : "not complete") << "\n";
  os << "irrelevant ideal: (";
  for (size_t t = 0; t < recon.irrelevant.generators.size(); ++t)
    os << (t ? ", " : "")
       << to_string(poly_monomial(ring, recon.irrelevant.generators[t]));
  os << ")\n";
  return os.str();
}

std::string format_ci_report(const CiReport& report, const RingPtr& ring) {
  std::ostringstream os;
  os << "fan dimension: " << report.fan_dim << "\n";
  os << "Picard rank one: " << (report.picard_rank_one ? "yes" : "no") << "\n";
  os << "omega = sum deg f_i - anticanonical = "
     << degree_to_string(ring->group(), report.omega) << "\n";
  os << "hypotheses:\n";
  for (const auto& check : report.hypotheses) {
    const char* status = check.status == HypothesisCheck::Status::verified  ? "verified"
                         : check.status == HypothesisCheck::Status::failed ? "FAILED"
                                                                            : "assumed";
    os << "  [" << status << "] " << check.description << "\n";
  }
  if (report.status == ArtinianStatus::not_artinian) {
    os << "quotient: not Artinian";
    if (report.growth)
      os << " (powers of " << ring->names()[static_cast<size_t>(report.growth->first)]
         << " survive)";
    os << "\n";
    return os.str();
  }
  if (report.status == ArtinianStatus::inconclusive) {
    os << "quotient: Artinian certification inconclusive within the cap\n";
    return os.str();
  }
  os << "quotient: Artinian\n";
  os << "dim A_omega = " << report.dim_omega << "\n";
  for (const auto& [name, kills] : report.annihilation)
    os << "  " << name << " * A_omega = 0: " << (kills ? "yes" : "NO") << "\n";
  if (report.verdict) {
    os << "Cox-Gorenstein: " << (report.verdict->gorenstein ? "yes" : "no");
    if (report.verdict->socle_degree)
      os << ", socle degree " << degree_to_string(ring->group(), *report.verdict->socle_degree);
    os << "\n";
  }
  return os.str();
}

}  // namespace coxalg
