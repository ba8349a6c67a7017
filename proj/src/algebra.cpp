#include "coxalg/algebra.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace coxalg {

IdealPresentation ideal_from_generators(const RingPtr& ring, std::vector<Polynomial> generators,
                                        std::vector<GroupElement> span_degrees) {
  IdealPresentation ideal;
  ideal.ring = ring;
  for (auto& gen : generators) {
    if (poly_is_zero(gen)) continue;
    if (!same_ring(gen.ring, ring)) throw std::invalid_argument("generator over a different ring");
    if (!gen.degree) throw std::invalid_argument("ideal generators must be homogeneous");
    ideal.generators.push_back(std::move(gen));
  }
  ideal.span_degrees = std::move(span_degrees);
  return ideal;
}

IdealPresentation annihilator_ideal(const Polynomial& f) {
  if (poly_is_zero(f) || !f.degree)
    throw std::invalid_argument("annihilator of a non-homogeneous or zero polynomial");
  IdealPresentation ideal;
  ideal.ring = f.ring->dual();
  ideal.apolar_form = f;
  return ideal;
}

DegreeSliceBasis ideal_slice(const IdealPresentation& ideal, const GroupElement& g) {
  const RingPtr& ring = ideal.ring;
  DegreeSliceBasis slice;
  slice.degree = g;
  slice.ambient = monomials_of_degree(ring, g);
  const Index dim = static_cast<Index>(slice.ambient.size());

  std::vector<QVec> rows;
  if (ideal.apolar_form) {
    const QMat kernel = kernel_basis(catalecticant(*ideal.apolar_form, g));
    for (Index j = 0; j < kernel.cols(); ++j) rows.push_back(kernel.col(j));
  } else {
    for (const auto& gen : ideal.generators) {
      const GroupElement cofactor = group_sub(ring->group(), g, *gen.degree);
      for (const auto& m : monomials_of_degree(ring, cofactor)) {
        const Polynomial prod = multiply(poly_monomial(ring, m), gen);
        rows.push_back(coefficient_vector(prod, slice.ambient));
      }
    }
    for (const auto& h : ideal.span_degrees) {
      const auto& span_mons = monomials_of_degree(ring, h);
      for (Index i = 0; i < dim; ++i) {
        const Monomial& mu = slice.ambient[static_cast<size_t>(i)];
        const bool hit = std::any_of(span_mons.begin(), span_mons.end(),
                                     [&](const Monomial& nu) { return mon_divides(nu, mu); });
        if (hit) {
          QVec row = QVec::Zero(dim);
          row(i) = 1;
          rows.push_back(std::move(row));
        }
      }
    }
  }

  QMat m(static_cast<Index>(rows.size()), dim);
  for (Index i = 0; i < m.rows(); ++i) m.row(i) = rows[static_cast<size_t>(i)].transpose();
  slice.ideal_rref = rref(m);
  std::vector<bool> is_pivot(static_cast<size_t>(dim), false);
  for (Index p : slice.ideal_rref.pivots) is_pivot[static_cast<size_t>(p)] = true;
  for (Index j = 0; j < dim; ++j)
    if (!is_pivot[static_cast<size_t>(j)]) slice.standard.push_back(j);
  return slice;
}

QVec reduce_to_standard(const DegreeSliceBasis& slice, QVec ambient_coeffs) {
  const QVec reduced = reduce_by_rref(slice.ideal_rref, std::move(ambient_coeffs));
  QVec out(slice.dim());
  for (Index k = 0; k < slice.dim(); ++k) out(k) = reduced(slice.standard[static_cast<size_t>(k)]);
  return out;
}

std::map<GroupElement, Index, DegreeLess> hilbert_function(
    const IdealPresentation& ideal, const std::vector<GroupElement>& degrees) {
  std::map<GroupElement, Index, DegreeLess> hf;
  for (const auto& g : degrees) hf.emplace(g, ideal_slice(ideal, g).dim());
  return hf;
}

std::vector<GroupElement> realized_degrees_up_to(const RingPtr& ring, const Rational& bound) {
  const PositivityCertificate& cert = ring->require_certificate();
  std::vector<GroupElement> out;
  if (bound < 0) return out;
  std::map<GroupElement, bool, DegreeLess> seen;
  std::deque<GroupElement> queue;
  const GroupElement zero = zero_element(ring->group());
  seen.emplace(zero, true);
  queue.push_back(zero);
  while (!queue.empty()) {
    GroupElement g = queue.front();
    queue.pop_front();
    out.push_back(g);
    for (Index i = 0; i < ring->var_count(); ++i) {
      GroupElement next = group_add(ring->group(), g, ring->degree_of(i));
      if (phi_value(cert, next) > bound) continue;
      if (seen.emplace(next, true).second) queue.push_back(std::move(next));
    }
  }
  std::sort(out.begin(), out.end(), [&](const GroupElement& a, const GroupElement& b) {
    const Rational pa = phi_value(cert, a), pb = phi_value(cert, b);
    if (pa != pb) return pa < pb;
    return DegreeLess{}(a, b);
  });
  return out;
}

std::vector<GroupElement> AlgebraSupport::support() const {
  std::vector<GroupElement> out;
  for (const auto& [g, slice] : slices)
    if (slice.dim() > 0) out.push_back(g);
  return out;
}

Index AlgebraSupport::h(const GroupElement& g) const {
  const auto it = slices.find(g);
  return it == slices.end() ? 0 : it->second.dim();
}

const DegreeSliceBasis* AlgebraSupport::find_slice(const GroupElement& g) const {
  const auto it = slices.find(g);
  return it == slices.end() ? nullptr : &it->second;
}

namespace {

// Sound non-Artinian certificate: a functional psi >= 0 on every variable
// degree, zero on variable i, and >= 1 on every generator and span-clause
// degree. Then no ideal element can reach the psi = 0 level, so the powers
// of x_i survive in the quotient forever.
std::optional<std::pair<Index, QVec>> growth_certificate(const IdealPresentation& ideal) {
  if (ideal.apolar_form) return std::nullopt;  // Q/Ann(f) is always Artinian
  const RingPtr& ring = ideal.ring;
  const Index rho = ring->group().free_rank;
  std::vector<GroupElement> ideal_degrees;
  for (const auto& gen : ideal.generators) ideal_degrees.push_back(*gen.degree);
  for (const auto& h : ideal.span_degrees) ideal_degrees.push_back(h);
  for (Index i = 0; i < ring->var_count(); ++i) {
    std::vector<LinearConstraint> cs;
    for (Index j = 0; j < ring->var_count(); ++j) {
      QVec a(rho);
      for (Index r = 0; r < rho; ++r) a(r) = Rational(ring->degree_of(j).free(r));
      cs.push_back({a, Rational(0)});
      if (j == i) cs.push_back({-a, Rational(0)});
    }
    for (const auto& d : ideal_degrees) {
      QVec a(rho);
      for (Index r = 0; r < rho; ++r) a(r) = Rational(d.free(r));
      cs.push_back({std::move(a), Rational(1)});
    }
    if (auto psi = feasible_point(std::move(cs), rho)) return std::make_pair(i, *psi);
  }
  return std::nullopt;
}

void detect_greatest(const RingPtr& ring, AlgebraSupport& support) {
  const std::vector<GroupElement> supp = support.support();
  for (const auto& candidate : supp) {
    const bool dominates = std::all_of(supp.begin(), supp.end(), [&](const GroupElement& g) {
      return leq(ring, g, candidate);
    });
    if (dominates) {
      support.greatest = candidate;
      return;
    }
  }
}

}  // namespace

AlgebraSupport artinian_certify(const IdealPresentation& ideal, Rational phi_cap) {
  const RingPtr& ring = ideal.ring;
  const PositivityCertificate& cert = ring->require_certificate();
  AlgebraSupport support;
  support.ideal = ideal;

  if (auto growth = growth_certificate(ideal)) {
    support.status = ArtinianStatus::not_artinian;
    support.growth = std::move(growth);
    return support;
  }

  Rational window = 0;
  for (Index i = 0; i < ring->var_count(); ++i)
    window = std::max(window, phi_value(cert, ring->degree_of(i)));

  Rational bound = window;
  for (;;) {
    if (bound > phi_cap) {
      support.status = ArtinianStatus::inconclusive;
      support.frontier = bound - window;
      return support;
    }
    const std::vector<GroupElement> degrees = realized_degrees_up_to(ring, bound);
    for (const auto& g : degrees) {
      if (support.slices.find(g) == support.slices.end())
        support.slices.emplace(g, ideal_slice(ideal, g));
    }
    // A window (t, t + W] of all-vanishing realized degrees certifies that
    // everything above t vanishes: peeling one variable off a monomial drops
    // its phi-value by at most W, so from above the window one always lands
    // inside it.
    std::vector<Rational> values{Rational(0)};
    for (const auto& g : degrees) values.push_back(phi_value(cert, g));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (const Rational& t : values) {
      if (t + window > bound) break;
      bool all_zero = true;
      for (const auto& g : degrees) {
        const Rational v = phi_value(cert, g);
        if (v > t && v <= t + window && support.h(g) > 0) {
          all_zero = false;
          break;
        }
      }
      if (all_zero) {
        support.status = ArtinianStatus::certified;
        support.frontier = t;
        detect_greatest(ring, support);
        return support;
      }
    }
    bound += window;
  }
}

QMat multiplication_matrix(const AlgebraSupport& support, const Polynomial& p,
                           const GroupElement& g) {
  if (poly_is_zero(p) || !p.degree)
    throw std::invalid_argument("multiplication by a non-homogeneous or zero element");
  const RingPtr& ring = support.ideal.ring;
  const DegreeSliceBasis* src = support.find_slice(g);
  DegreeSliceBasis src_local;
  if (!src) {
    src_local = ideal_slice(support.ideal, g);
    src = &src_local;
  }
  const GroupElement target = group_add(ring->group(), g, *p.degree);
  const DegreeSliceBasis* dst = support.find_slice(target);
  DegreeSliceBasis dst_local;
  if (!dst) {
    const PositivityCertificate& cert = ring->require_certificate();
    if (support.status == ArtinianStatus::certified && phi_value(cert, target) > support.frontier)
      return QMat::Zero(0, src->dim());  // certified-vanishing slice
    dst_local = ideal_slice(support.ideal, target);
    dst = &dst_local;
  }
  QMat m(dst->dim(), src->dim());
  for (Index j = 0; j < src->dim(); ++j) {
    const Monomial& mono = src->ambient[static_cast<size_t>(src->standard[static_cast<size_t>(j)])];
    const Polynomial prod = multiply(poly_monomial(ring, mono), p);
    m.col(j) = reduce_to_standard(*dst, coefficient_vector(prod, dst->ambient));
  }
  return m;
}

QMat socle_slice(const AlgebraSupport& support, const GroupElement& g) {
  const RingPtr& ring = support.ideal.ring;
  const DegreeSliceBasis* slice = support.find_slice(g);
  if (!slice || slice->dim() == 0) return QMat::Zero(0, 0);
  std::vector<QMat> blocks;
  Index total_rows = 0;
  for (Index i = 0; i < ring->var_count(); ++i) {
    blocks.push_back(multiplication_matrix(support, poly_variable(ring, i), g));
    total_rows += blocks.back().rows();
  }
  QMat stacked(total_rows, slice->dim());
  Index at = 0;
  for (const auto& block : blocks) {
    stacked.middleRows(at, block.rows()) = block;
    at += block.rows();
  }
  return kernel_basis(stacked);
}

GorensteinVerdict is_cox_gorenstein(const AlgebraSupport& support) {
  if (support.status != ArtinianStatus::certified)
    throw math_error("Cox-Gorenstein test needs a certified Artinian algebra");
  GorensteinVerdict verdict;
  Index total = 0;
  for (const auto& g : support.support()) {
    const Index dim = socle_slice(support, g).cols();
    if (dim > 0) {
      verdict.socle_dims.emplace(g, dim);
      total += dim;
    }
  }
  if (total == 1) {
    verdict.gorenstein = true;
    verdict.socle_degree = verdict.socle_dims.begin()->first;
  }
  return verdict;
}

QMat poincare_pairing(const AlgebraSupport& support, const GroupElement& omega,
                      const GroupElement& g) {
  const RingPtr& ring = support.ideal.ring;
  const DegreeSliceBasis* top = support.find_slice(omega);
  if (!top || top->dim() != 1) throw math_error("Poincare pairing needs h_omega = 1");
  const GroupElement codegree = group_sub(ring->group(), omega, g);
  const DegreeSliceBasis* left = support.find_slice(g);
  const DegreeSliceBasis* right = support.find_slice(codegree);
  const Index rows = left ? left->dim() : 0;
  const Index cols = right ? right->dim() : 0;
  QMat m = QMat::Zero(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Monomial& a = left->ambient[static_cast<size_t>(left->standard[static_cast<size_t>(i)])];
    for (Index j = 0; j < cols; ++j) {
      const Monomial& b =
          right->ambient[static_cast<size_t>(right->standard[static_cast<size_t>(j)])];
      const Polynomial prod = multiply(poly_monomial(ring, a), poly_monomial(ring, b));
      const QVec coords = reduce_to_standard(*top, coefficient_vector(prod, top->ambient));
      m(i, j) = coords(0);
    }
  }
  return m;
}

IdealPresentation artinianize(const IdealPresentation& ideal, const GroupElement& omega,
                              Rational phi_cap) {
  const RingPtr& ring = ideal.ring;
  const PositivityCertificate& cert = ring->require_certificate();
  if (ideal.apolar_form) throw std::invalid_argument("artinianize expects a generator presentation");
  if (!is_realized(ring, omega) || ideal_slice(ideal, omega).dim() == 0)
    throw math_error("artinianize: the requested greatest degree carries no nonzero slice");

  Rational window = 0;
  for (Index i = 0; i < ring->var_count(); ++i)
    window = std::max(window, phi_value(cert, ring->degree_of(i)));
  const Rational region = phi_value(cert, omega) + 2 * window;

  std::vector<GroupElement> incomparable;
  for (const auto& g : realized_degrees_up_to(ring, region)) {
    if (degree_eq(g, omega)) continue;
    if (leq(ring, omega, g)) {
      if (ideal_slice(ideal, g).dim() != 0)
        throw math_error("artinianize: " + degree_to_string(ring->group(), omega) +
                         " is not maximal in the support (" +
                         degree_to_string(ring->group(), g) + " survives above it)");
      continue;
    }
    if (!leq(ring, g, omega)) incomparable.push_back(g);
  }
  std::vector<GroupElement> minimal;
  for (const auto& h : incomparable) {
    const bool is_minimal = std::none_of(incomparable.begin(), incomparable.end(),
                                         [&](const GroupElement& other) {
                                           return !degree_eq(other, h) && leq(ring, other, h) &&
                                                  !leq(ring, h, other);
                                         });
    if (is_minimal) minimal.push_back(h);
  }

  IdealPresentation result = ideal;
  auto has_clause = [&](const GroupElement& h) {
    return std::any_of(result.span_degrees.begin(), result.span_degrees.end(),
                       [&](const GroupElement& other) { return degree_eq(other, h); });
  };
  for (const auto& h : minimal)
    if (!has_clause(h)) result.span_degrees.push_back(h);

  // The minimal incomparable clauses suffice for every grading exercised
  // here; the certification loop below catches and kills any stragglers.
  for (int round = 0; round < 32; ++round) {
    const AlgebraSupport support = artinian_certify(result, phi_cap);
    if (support.status != ArtinianStatus::certified)
      throw math_error("artinianize: could not certify the quotient Artinian within the cap");
    std::vector<GroupElement> escaped;
    for (const auto& g : support.support())
      if (!leq(ring, g, omega)) escaped.push_back(g);
    if (escaped.empty()) return result;
    for (const auto& g : escaped)
      if (!has_clause(g)) result.span_degrees.push_back(g);
  }
  throw math_error("artinianize: support would not stabilize below the requested degree");
}

IdealPresentation gorensteinize(const AlgebraSupport& support, const GroupElement& omega) {
  const RingPtr& ring = support.ideal.ring;
  if (support.status != ArtinianStatus::certified)
    throw math_error("gorensteinize needs a certified Artinian algebra");
  const DegreeSliceBasis* top = support.find_slice(omega);
  if (!top || top->dim() != 1)
    throw math_error("gorensteinize needs h_omega = 1 at the requested socle degree");
  for (const auto& g : support.support())
    if (!leq(ring, g, omega))
      throw math_error("gorensteinize: the requested socle degree is not the greatest element");

  if (support.ideal.apolar_form) return support.ideal;  // already Gorenstein

  // Lambda is the coordinate functional dual to the standard monomial of
  // A_omega; any nonzero choice yields the same kernel.
  auto lambda = [&](const Polynomial& p) {
    const QVec coords = reduce_to_standard(*top, coefficient_vector(p, top->ambient));
    return coords(0);
  };

  IdealPresentation result = support.ideal;
  for (const auto& g : support.support()) {
    const GroupElement codegree = group_sub(ring->group(), omega, g);
    const auto& mons_g = monomials_of_degree(ring, g);
    const auto& mons_co = monomials_of_degree(ring, codegree);
    if (mons_co.empty()) {
      // Nothing to pair against: the whole slice dies in the quotient.
      result.span_degrees.push_back(g);
      continue;
    }
    QMat pairing(static_cast<Index>(mons_g.size()), static_cast<Index>(mons_co.size()));
    for (Index i = 0; i < pairing.rows(); ++i) {
      for (Index j = 0; j < pairing.cols(); ++j) {
        const Polynomial prod = multiply(poly_monomial(ring, mons_g[static_cast<size_t>(i)]),
                                         poly_monomial(ring, mons_co[static_cast<size_t>(j)]));
        pairing(i, j) = lambda(prod);
      }
    }
    const QMat kernel = left_kernel_basis(pairing);
    const DegreeSliceBasis* slice = support.find_slice(g);
    for (Index c = 0; c < kernel.cols(); ++c) {
      // Only keep kernel vectors with a nonzero class in A_g; the rest are
      // already generated by the input presentation.
      if (slice && !reduce_to_standard(*slice, kernel.col(c)).isZero(0))
        result.generators.push_back(poly_from_coefficients(ring, mons_g, kernel.col(c)));
    }
  }
  return result;
}

DegreeSliceBasis colon_slice(const IdealPresentation& iprime, const Polynomial& f,
                             const GroupElement& g) {
  const RingPtr& ring = iprime.ring;
  if (poly_is_zero(f) || !f.degree)
    throw std::invalid_argument("colon by a non-homogeneous or zero element");
  if (!same_ring(f.ring, ring)) throw std::invalid_argument("colon element over a different ring");
  {
    const DegreeSliceBasis at_f = ideal_slice(iprime, *f.degree);
    if (reduce_to_standard(at_f, coefficient_vector(f, at_f.ambient)).isZero(0))
      throw math_error("colon: the element lies in the ideal");
  }
  DegreeSliceBasis slice;
  slice.degree = g;
  slice.ambient = monomials_of_degree(ring, g);
  const Index dim = static_cast<Index>(slice.ambient.size());
  const GroupElement target = group_add(ring->group(), g, *f.degree);
  const DegreeSliceBasis target_slice = ideal_slice(iprime, target);
  const Index tdim = static_cast<Index>(target_slice.ambient.size());

  QMat mult = QMat::Zero(tdim, dim);
  for (Index j = 0; j < dim; ++j) {
    const Polynomial prod = multiply(poly_monomial(ring, slice.ambient[static_cast<size_t>(j)]), f);
    mult.col(j) = coefficient_vector(prod, target_slice.ambient);
  }
  const Index irank = target_slice.ideal_rref.rank;
  QMat combined(tdim, dim + irank);
  combined.leftCols(dim) = mult;
  combined.rightCols(irank) = -target_slice.ideal_rref.r.topRows(irank).transpose();
  const QMat kernel = kernel_basis(combined);
  slice.ideal_rref = rref(kernel.topRows(dim).transpose());
  std::vector<bool> is_pivot(static_cast<size_t>(dim), false);
  for (Index p : slice.ideal_rref.pivots) is_pivot[static_cast<size_t>(p)] = true;
  for (Index j = 0; j < dim; ++j)
    if (!is_pivot[static_cast<size_t>(j)]) slice.standard.push_back(j);
  return slice;
}

SubspaceSlice inverse_system_slice(const IdealPresentation& ideal, const GroupElement& g) {
  const RingPtr& q_ring = ideal.ring;
  const RingPtr s_ring = q_ring->dual();
  SubspaceSlice slice;
  slice.degree = g;
  slice.ambient = monomials_of_degree(s_ring, g);
  const Index dim = static_cast<Index>(slice.ambient.size());

  if (ideal.apolar_form) {
    // (Ann f)^{-1} = Q . f: the g-slice is spanned by the degree-reducing
    // partials of f, i.e. the column space of a catalecticant.
    const Polynomial& f = *ideal.apolar_form;
    const GroupElement op_degree = group_sub(s_ring->group(), *f.degree, g);
    const QMat cat = catalecticant(f, op_degree);
    slice.basis = rref(cat.transpose());
    return slice;
  }

  std::vector<QVec> constraints;  // rows over the coefficients of f in S_g
  auto add_operator = [&](const Polynomial& alpha) {
    const GroupElement residual = group_sub(q_ring->group(), g, *alpha.degree);
    const auto& res_mons = monomials_of_degree(s_ring, residual);
    if (res_mons.empty()) return;
    QMat block(static_cast<Index>(res_mons.size()), dim);
    for (Index j = 0; j < dim; ++j) {
      const Polynomial image =
          apply_diff(alpha, poly_monomial(s_ring, slice.ambient[static_cast<size_t>(j)]));
      block.col(j) = coefficient_vector(image, res_mons);
    }
    for (Index r = 0; r < block.rows(); ++r) constraints.push_back(block.row(r).transpose());
  };
  for (const auto& gen : ideal.generators) add_operator(gen);
  for (const auto& h : ideal.span_degrees)
    for (const auto& m : monomials_of_degree(q_ring, h))
      add_operator(poly_monomial(q_ring, m));

  QMat c(static_cast<Index>(constraints.size()), dim);
  for (Index i = 0; i < c.rows(); ++i) c.row(i) = constraints[static_cast<size_t>(i)].transpose();
  slice.basis = rref(kernel_basis(c).transpose());
  return slice;
}

}  // namespace coxalg
