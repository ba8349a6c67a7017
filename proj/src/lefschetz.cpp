#include "coxalg/lefschetz.hpp"

#include <algorithm>
#include <sstream>

namespace coxalg {

namespace {

struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // in [lo, hi]
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

QMat exact_inverse(const QMat& m) {
  if (m.rows() != m.cols()) throw math_error("degenerate pairing: matrix not square");
  const Index n = m.rows();
  QMat aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = QMat::Identity(n, n);
  const RrefResult re = rref(aug);
  if (re.rank != n) throw math_error("degenerate pairing: matrix not invertible");
  return re.r.rightCols(n);
}

}  // namespace

std::vector<LinearSpace> linear_spaces(const AlgebraSupport& support) {
  const RingPtr& ring = support.ideal.ring;
  std::vector<LinearSpace> spaces;
  for (Index i = 0; i < ring->var_count(); ++i) {
    const GroupElement& l = ring->degree_of(i);
    auto it = std::find_if(spaces.begin(), spaces.end(),
                           [&](const LinearSpace& s) { return degree_eq(s.degree, l); });
    if (it == spaces.end()) {
      spaces.push_back(LinearSpace{l, {}, QMat(), 0});
      it = std::prev(spaces.end());
    }
    it->vars.push_back(i);
  }
  for (auto& space : spaces) {
    const DegreeSliceBasis* slice = support.find_slice(space.degree);
    const Index dim = slice ? slice->dim() : 0;
    space.classes = QMat::Zero(dim, static_cast<Index>(space.vars.size()));
    if (dim > 0) {
      for (Index j = 0; j < space.classes.cols(); ++j) {
        const Polynomial var = poly_variable(ring, space.vars[static_cast<size_t>(j)]);
        space.classes.col(j) = reduce_to_standard(*slice, coefficient_vector(var, slice->ambient));
      }
      space.rank = rank(space.classes);
    }
  }
  std::sort(spaces.begin(), spaces.end(),
            [](const LinearSpace& a, const LinearSpace& b) { return DegreeLess{}(a.degree, b.degree); });
  return spaces;
}

namespace {

// h - g = k*l for a positive integer k?
std::optional<Index> solve_step_count(const GroupSpec& group, const GroupElement& diff,
                                      const GroupElement& l) {
  Index pivot = -1;
  for (Index i = 0; i < l.free.size(); ++i) {
    if (l.free(i) != 0) {
      pivot = i;
      break;
    }
  }
  if (pivot < 0) return std::nullopt;
  if (diff.free(pivot) % l.free(pivot) != 0) return std::nullopt;
  const Integer k = diff.free(pivot) / l.free(pivot);
  if (k <= 0) return std::nullopt;
  if (!degree_eq(group_scale(group, k, l), diff)) return std::nullopt;
  return static_cast<Index>(k);
}

}  // namespace

std::vector<ComparabilityEdge> comparability_graph(const AlgebraSupport& support) {
  if (support.status != ArtinianStatus::certified)
    throw math_error("comparability graph needs a certified Artinian algebra");
  const RingPtr& ring = support.ideal.ring;
  const std::vector<LinearSpace> spaces = linear_spaces(support);
  auto space_rank = [&](const GroupElement& l) -> Index {
    for (const auto& s : spaces)
      if (degree_eq(s.degree, l)) return s.rank;
    return 0;
  };

  std::vector<GroupElement> supp = support.support();
  std::sort(supp.begin(), supp.end(), DegreeLess{});

  std::vector<ComparabilityEdge> edges;
  for (const auto& [g, h] : cover_relations(ring, supp)) {
    const GroupElement diff = group_sub(ring->group(), h, g);
    if (space_rank(diff) > 0)
      edges.push_back({ComparabilityEdge::Kind::consecutive, g, h, diff, 1});
  }
  for (const auto& g : supp) {
    for (const auto& h : supp) {
      if (degree_eq(g, h) || !leq(ring, g, h)) continue;
      const GroupElement diff = group_sub(ring->group(), h, g);
      for (const auto& space : spaces) {
        if (space.rank == 0) continue;
        if (const auto k = solve_step_count(ring->group(), diff, space.degree))
          edges.push_back({ComparabilityEdge::Kind::comparable, g, h, space.degree, *k});
      }
    }
  }
  return edges;
}

std::optional<QVec> phi_linear_functional(const RingPtr& ring, const GroupElement& l,
                                          const GroupElement& omega) {
  const Index rho = ring->group().free_rank;
  QVec lf(rho), wf(rho);
  for (Index i = 0; i < rho; ++i) {
    lf(i) = Rational(l.free(i));
    wf(i) = Rational(omega.free(i));
  }
  if (lf.isZero(0)) return std::nullopt;
  // The identity machinery needs phi positive on every variable degree
  // (phi-degree zero must imply constant), phi(l) = 1, and phi(omega) a
  // positive integer. Scan the integer target, then the positivity margin.
  QMat pair(2, rho);
  pair.row(0) = lf.transpose();
  pair.row(1) = wf.transpose();
  std::vector<Rational> targets;
  if (rank(pair) == 1) {
    Index p = 0;
    while (lf(p) == 0) ++p;
    const Rational forced = wf(p) / lf(p);
    if (!is_integer(forced) || numerator(forced) <= 0) return std::nullopt;
    targets.push_back(forced);
  } else {
    for (long k = 1; k <= 32; ++k) targets.push_back(Rational(k));
  }
  for (const Rational& k : targets) {
    for (long margin_den : {1L, 4L, 16L, 64L}) {
      std::vector<LinearConstraint> cs;
      cs.push_back({lf, Rational(1)});
      cs.push_back({-lf, Rational(-1)});
      cs.push_back({wf, k});
      cs.push_back({-wf, -k});
      for (Index j = 0; j < ring->var_count(); ++j) {
        QVec a(rho);
        for (Index r = 0; r < rho; ++r) a(r) = Rational(ring->degree_of(j).free(r));
        cs.push_back({std::move(a), rat(1, margin_den)});
      }
      if (auto phi = feasible_point(std::move(cs), rho)) return phi;
    }
  }
  return std::nullopt;
}

bool euler_identity_check(const Polynomial& f, const QVec& phi) {
  if (poly_is_zero(f)) return true;
  if (!f.degree) throw std::invalid_argument("Euler identity needs homogeneous input");
  const RingPtr& ring = f.ring;
  const RingPtr q_ring = ring->dual();
  if (phi.size() != ring->group().free_rank)
    throw std::invalid_argument("functional has wrong dimension");
  auto phi_of = [&](const GroupElement& g) {
    Rational v = 0;
    for (Index i = 0; i < phi.size(); ++i) v += phi(i) * Rational(g.free(i));
    return v;
  };
  Polynomial lhs = poly_zero(ring);
  for (Index i = 0; i < ring->var_count(); ++i) {
    const Polynomial partial = apply_diff(poly_variable(q_ring, i), f);
    lhs = add(lhs, scale(multiply(poly_variable(ring, i), partial), phi_of(ring->degree_of(i))));
  }
  return poly_eq(lhs, scale(f, phi_of(*f.degree)));
}

QVec linear_element_point(const Polynomial& linear) {
  QVec point = QVec::Zero(linear.ring->var_count());
  for (const auto& [m, c] : linear.terms) {
    if (total_degree(m) != 1) throw std::invalid_argument("not a linear element");
    for (Index i = 0; i < m.e.size(); ++i)
      if (m.e(i) == 1) point(i) = c;
  }
  return point;
}

bool toric_euler_check(const Polynomial& f, const Polynomial& linear, const QVec& phi) {
  if (poly_is_zero(f) || !f.degree)
    throw std::invalid_argument("Euler identity needs homogeneous input");
  if (poly_is_zero(linear) || !linear.degree)
    throw std::invalid_argument("the linear element must be nonzero homogeneous");
  auto phi_of = [&](const GroupElement& g) {
    Rational v = 0;
    for (Index i = 0; i < phi.size(); ++i) v += phi(i) * Rational(g.free(i));
    return v;
  };
  if (phi_of(*linear.degree) != 1) throw math_error("the element is not phi-linear");
  const Rational exponent = phi_of(*f.degree);
  if (!is_integer(exponent) || exponent < 0)
    throw math_error("identity not applicable: phi(deg f) is not a nonnegative integer");
  const Index k = static_cast<Index>(numerator(exponent));
  if (k == 0 && total_degree(f.terms.begin()->first) != 0)
    throw math_error("identity not applicable: phi(deg f) = 0 on a nonconstant polynomial");
  const QVec point = linear_element_point(linear);
  const Polynomial lhs = apply_diff(poly_pow(linear, k), f);
  const Rational rhs = Rational(factorial(k)) * evaluate(f, point);
  return poly_eq(lhs, poly_constant(f.ring, rhs));
}

QMat dual_basis(const AlgebraSupport& support, const Polynomial& f, const GroupElement& h,
                const QMat& c_coords) {
  const RingPtr& ring = support.ideal.ring;
  const GroupElement omega = *f.degree;
  const GroupElement codegree = group_sub(ring->group(), omega, h);
  const DegreeSliceBasis* right = support.find_slice(h);
  const DegreeSliceBasis* left = support.find_slice(codegree);
  const Index dim_h = right ? right->dim() : 0;
  const Index dim_co = left ? left->dim() : 0;
  if (dim_h != dim_co) throw math_error("degenerate pairing: mismatched slice dimensions");
  if (dim_h == 0) return QMat(0, 0);
  // pairing(u, v) = (m_u m_v)(f) with the socle generator normalized by
  // Omega(f) = 1; on operator monomials this is just evaluation against f.
  QMat pairing(dim_co, dim_h);
  for (Index u = 0; u < dim_co; ++u) {
    const Monomial& mu = left->ambient[static_cast<size_t>(left->standard[static_cast<size_t>(u)])];
    for (Index v = 0; v < dim_h; ++v) {
      const Monomial& mv =
          right->ambient[static_cast<size_t>(right->standard[static_cast<size_t>(v)])];
      const Polynomial value = apply_diff(poly_monomial(ring, Monomial{mu.e + mv.e}), f);
      pairing(u, v) = poly_is_zero(value) ? Rational(0) : value.terms.begin()->second;
    }
  }
  QMat gamma = c_coords.size() == 0 ? QMat(QMat::Identity(dim_h, dim_h)) : c_coords;
  // Columns D with D^T * pairing * gamma = I.
  return exact_inverse(gamma.transpose() * pairing.transpose());
}

HessianData mixed_hessian(const Polynomial& f, const std::vector<Polynomial>& b,
                          const std::vector<Polynomial>& c_star) {
  HessianData data;
  data.rows = static_cast<Index>(c_star.size());
  data.cols = static_cast<Index>(b.size());
  data.entries.reserve(static_cast<size_t>(data.rows * data.cols));
  for (Index i = 0; i < data.rows; ++i)
    for (Index j = 0; j < data.cols; ++j)
      data.entries.push_back(apply_diff(
          multiply(c_star[static_cast<size_t>(i)], b[static_cast<size_t>(j)]), f));
  return data;
}

QMat hessian_evaluate(const HessianData& hessian, const QVec& point) {
  QMat m(hessian.rows, hessian.cols);
  for (Index i = 0; i < hessian.rows; ++i)
    for (Index j = 0; j < hessian.cols; ++j) m(i, j) = evaluate(hessian.at(i, j), point);
  return m;
}

HessianCheckResult hessian_criterion_verify(const AlgebraSupport& support, const Polynomial& f,
                                            const ComparabilityEdge& edge, const Polynomial& linear,
                                            const QMat& b_coords, const QMat& c_coords) {
  const RingPtr& ring = support.ideal.ring;
  if (!linear.degree || !degree_eq(*linear.degree, edge.l))
    throw std::invalid_argument("linear element degree does not match the edge");
  const auto phi = phi_linear_functional(ring, edge.l, *f.degree);
  if (!phi)
    throw math_error(
        "no functional makes the element phi-linear with phi(deg f) a positive integer");

  HessianCheckResult result;
  result.phi = *phi;
  result.k = edge.k;

  const DegreeSliceBasis* src = support.find_slice(edge.g);
  const DegreeSliceBasis* dst = support.find_slice(edge.h);
  const Index dim_g = src ? src->dim() : 0;
  const Index dim_h = dst ? dst->dim() : 0;
  QMat b = b_coords.size() == 0 ? QMat(QMat::Identity(dim_g, dim_g)) : b_coords;
  QMat c = c_coords.size() == 0 ? QMat(QMat::Identity(dim_h, dim_h)) : c_coords;

  const QMat mult_std = multiplication_matrix(support, poly_pow(linear, edge.k), edge.g);
  result.multiplication = exact_inverse(c) * mult_std * b;

  std::vector<Polynomial> b_polys, c_star_polys;
  for (Index j = 0; j < b.cols(); ++j) {
    QVec ambient = QVec::Zero(static_cast<Index>(src->ambient.size()));
    for (Index t = 0; t < dim_g; ++t)
      ambient(src->standard[static_cast<size_t>(t)]) = b(t, j);
    b_polys.push_back(poly_from_coefficients(ring, src->ambient, ambient));
  }
  const QMat c_star = dual_basis(support, f, edge.h, c);
  const GroupElement codegree = group_sub(ring->group(), *f.degree, edge.h);
  const DegreeSliceBasis* co = support.find_slice(codegree);
  for (Index j = 0; j < c_star.cols(); ++j) {
    QVec ambient = QVec::Zero(static_cast<Index>(co->ambient.size()));
    for (Index t = 0; t < c_star.rows(); ++t)
      ambient(co->standard[static_cast<size_t>(t)]) = c_star(t, j);
    c_star_polys.push_back(poly_from_coefficients(ring, co->ambient, ambient));
  }

  const HessianData hessian = mixed_hessian(f, b_polys, c_star_polys);
  result.hessian_side =
      Rational(factorial(edge.k)) * hessian_evaluate(hessian, linear_element_point(linear));
  result.equal = (result.multiplication - result.hessian_side).isZero(0);
  return result;
}

WitnessResult maximal_rank_witness(const AlgebraSupport& support, const ComparabilityEdge& edge,
                                   Index trials, std::uint64_t seed) {
  const RingPtr& ring = support.ideal.ring;
  std::vector<Index> vars;
  for (Index i = 0; i < ring->var_count(); ++i)
    if (degree_eq(ring->degree_of(i), edge.l)) vars.push_back(i);

  WitnessResult result;
  result.target = std::min(support.h(edge.g), support.h(edge.h));
  if (result.target == 0) {
    result.maximal = true;
    result.rank = 0;
    return result;
  }
  if (vars.empty()) return result;

  const GroupSpec& group = ring->group();
  SplitMix64 rng{seed ^ fnv1a(degree_to_string(group, edge.g) + degree_to_string(group, edge.h) +
                              degree_to_string(group, edge.l) + std::to_string(edge.k))};
  auto try_candidate = [&](const std::vector<long>& coeffs) -> bool {
    Polynomial linear = poly_zero(ring);
    for (size_t i = 0; i < vars.size(); ++i) {
      if (coeffs[i] == 0) continue;
      linear = add(linear, scale(poly_variable(ring, vars[i]), Rational(coeffs[i])));
    }
    if (poly_is_zero(linear)) return false;
    ++result.trials_used;
    const QMat m = multiplication_matrix(support, poly_pow(linear, edge.k), edge.g);
    const Index r = rank(m);
    if (r > result.rank) {
      result.rank = r;
      result.witness = linear;
    }
    return r == result.target;
  };

  std::vector<long> coeffs(vars.size(), 1);
  if (try_candidate(coeffs)) {
    result.maximal = true;
    return result;
  }
  for (size_t i = 0; i < vars.size() && result.trials_used < trials; ++i) {
    std::fill(coeffs.begin(), coeffs.end(), 0L);
    coeffs[i] = 1;
    if (try_candidate(coeffs)) {
      result.maximal = true;
      return result;
    }
  }
  for (Index attempt = 0; result.trials_used < trials && attempt < 8 * trials; ++attempt) {
    const long spread = 1 + static_cast<long>(result.trials_used / 16);
    for (size_t i = 0; i < vars.size(); ++i) coeffs[i] = rng.range(-spread, spread);
    if (try_candidate(coeffs)) {
      result.maximal = true;
      return result;
    }
  }
  return result;
}

namespace {

LefschetzReport run_checks(const AlgebraSupport& support, ComparabilityEdge::Kind kind,
                           Index trials, std::uint64_t seed) {
  LefschetzReport report;
  report.preorder_mode = support.ideal.ring->order().mode == OrderSpec::Mode::functional;
  std::vector<ComparabilityEdge> edges;
  for (auto& edge : comparability_graph(support))
    if (edge.kind == kind) edges.push_back(std::move(edge));

  for (const auto& edge : edges)
    report.edges.push_back({edge, maximal_rank_witness(support, edge, trials, seed)});

  // A comparable pair holds if some (l, k) route for it has a witness.
  report.holds = true;
  for (size_t i = 0; i < report.edges.size(); ++i) {
    const auto& a = report.edges[i];
    bool pair_ok = a.witness.maximal;
    for (size_t j = 0; j < report.edges.size() && !pair_ok; ++j) {
      const auto& b = report.edges[j];
      if (degree_eq(a.edge.g, b.edge.g) && degree_eq(a.edge.h, b.edge.h) && b.witness.maximal)
        pair_ok = true;
    }
    if (!pair_ok) {
      report.holds = false;
      break;
    }
  }
  return report;
}

}  // namespace

LefschetzReport twlp_check(const AlgebraSupport& support, Index trials, std::uint64_t seed) {
  return run_checks(support, ComparabilityEdge::Kind::consecutive, trials, seed);
}

LefschetzReport tslp_check(const AlgebraSupport& support, Index trials, std::uint64_t seed) {
  return run_checks(support, ComparabilityEdge::Kind::comparable, trials, seed);
}

std::string format_report(const LefschetzReport& report, const RingPtr& ring) {
  std::ostringstream os;
  const GroupSpec& group = ring->group();
  for (const auto& check : report.edges) {
    os << degree_to_string(group, check.edge.g) << " -[" << degree_to_string(group, check.edge.l)
       << "," << check.edge.k << "]-> " << degree_to_string(group, check.edge.h) << ": rank "
       << check.witness.rank << "/" << check.witness.target;
    if (check.witness.witness)
      os << ", witness L = " << to_string(*check.witness.witness);
    else if (check.witness.target > 0)
      os << ", no witness found";
    os << "\n";
  }
  os << "verdict: " << (report.holds ? "holds" : "fails") << "\n";
  if (report.preorder_mode)
    os << "note: functional order mode; the order may be a preorder (not antisymmetric)\n";
  return os.str();
}

}  // namespace coxalg
