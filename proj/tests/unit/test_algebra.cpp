#include <doctest.h>

#include "coxalg/algebra.hpp"
#include "test_support.hpp"

#include <set>

using namespace coxalg;
using namespace coxalg::testing;

namespace {

// Row spaces of two RREFs coincide iff their canonical nonzero rows agree.
bool same_row_space(const RrefResult& a, const RrefResult& b) {
  if (a.rank != b.rank) return false;
  if (a.rank == 0) return true;
  if (a.r.cols() != b.r.cols()) return false;
  return (a.r.topRows(a.rank) - b.r.topRows(b.rank)).isZero(0);
}

}  // namespace

TEST_CASE("slice of the bigraded example ideal at (2,1)") {
  const RingPtr ring = p1p1_ring();
  const IdealPresentation ideal = ex1_ideal(ring);
  const DegreeSliceBasis slice = ideal_slice(ideal, deg(ring, "(2,1)"));
  CHECK(slice.ambient.size() == 6);
  CHECK(slice.ideal_rref.rank == 3);
  CHECK(slice.dim() == 3);
}

TEST_CASE("degree-zero slice of a proper ideal has h = 1") {
  const RingPtr ring = p1p1_ring();
  const IdealPresentation ideal = ex1_ideal(ring);
  CHECK(ideal_slice(ideal, deg(ring, "(0,0)")).dim() == 1);
  CHECK(ideal_slice(ideal_from_generators(ring, {}), deg(ring, "(0,0)")).dim() == 1);
}

TEST_CASE("annihilator slice of the Fermat form contains the expected power") {
  const RingPtr s = fake_wp112_ring();
  const IdealPresentation ann = annihilator_ideal(pp(s, "x^3*y^3*z"));
  const RingPtr q = ann.ring;
  const GroupElement g = deg(q, "(4;0~2)");
  const DegreeSliceBasis slice = ideal_slice(ann, g);
  CHECK(slice.dim() == 2);
  const Polynomial x4 = pp(q, "X^4");
  CHECK(in_row_space(slice.ideal_rref, coefficient_vector(x4, slice.ambient)));
}

TEST_CASE("Hilbert function of the total-order chain example") {
  const RingPtr ring = fake_wp112_ring();
  const IdealPresentation ideal =
      ideal_from_generators(ring, {pp(ring, "x"), pp(ring, "y^2"), pp(ring, "z^3")});
  const AlgebraSupport support = artinian_certify(ideal);
  REQUIRE(support.status == ArtinianStatus::certified);
  const std::vector<std::string> expected = {"(0;0~2)", "(1;0~2)", "(2;1~2)",
                                             "(3;1~2)", "(4;0~2)", "(5;0~2)"};
  const auto supp = support.support();
  REQUIRE(supp.size() == expected.size());
  for (size_t i = 0; i < expected.size(); ++i) {
    CHECK(degree_to_string(ring->group(), supp[i]) == expected[i]);
    CHECK(support.h(supp[i]) == 1);
  }
}

TEST_CASE("Hilbert function of the bigraded example matches the diagram") {
  const RingPtr ring = p1p1_ring();
  const AlgebraSupport support = artinian_certify(ex1_ideal(ring));
  REQUIRE(support.status == ArtinianStatus::certified);
  const std::vector<std::pair<std::string, Index>> expected = {
      {"(0,0)", 1}, {"(1,0)", 2}, {"(2,0)", 3}, {"(3,0)", 4}, {"(4,0)", 5},
      {"(0,1)", 2}, {"(1,1)", 4}, {"(2,1)", 3}, {"(3,1)", 2}, {"(4,1)", 1}};
  CHECK(support.support().size() == expected.size());
  for (const auto& [text, h] : expected)
    CHECK(support.h(parse_degree(ring->group(), text)) == h);
  REQUIRE(support.greatest.has_value());
  CHECK(degree_to_string(ring->group(), *support.greatest) == "(4,1)");
}

TEST_CASE("certification detects unbounded growth") {
  const RingPtr ring = p1p1_ring();
  const AlgebraSupport support = artinian_certify(ex4_ideal(ring));
  CHECK(support.status == ArtinianStatus::not_artinian);
  REQUIRE(support.growth.has_value());
  // the witness variable must be one of x, y (psi = second coordinate)
  CHECK(support.growth->first <= 1);
}

TEST_CASE("certification is inconclusive when neither route decides") {
  // S/(x^2) over the standard bivariate grading: not Artinian, but every
  // functional vanishing on a variable also vanishes on the generator.
  GroupSpec group{1, {}};
  const auto one = make_element(group, (ZVec(1) << 1).finished(), ZVec(0));
  const RingPtr ring = GradedRingSpec::make({"x", "y"}, {one, one}, group, OrderSpec{});
  const AlgebraSupport support =
      artinian_certify(ideal_from_generators(ring, {pp(ring, "x^2")}), Rational(10));
  CHECK(support.status == ArtinianStatus::inconclusive);
  CHECK(!support.growth.has_value());
}

TEST_CASE("Gorenstein and pairing queries reject bad inputs") {
  const RingPtr ring = p1p1_ring();
  const AlgebraSupport tall = artinian_certify(ex4_ideal(ring));
  CHECK_THROWS_AS(is_cox_gorenstein(tall), math_error);
  const AlgebraSupport support = artinian_certify(ex1_ideal(ring));
  // h at (4,0) is 5, not 1
  CHECK_THROWS_AS(poincare_pairing(support, deg(ring, "(4,0)"), deg(ring, "(0,0)")), math_error);
}

TEST_CASE("maximal ideal is Artinian with support {0}") {
  const RingPtr ring = p1p1_ring();
  const IdealPresentation m = ideal_from_generators(
      ring, {pp(ring, "x"), pp(ring, "y"), pp(ring, "u"), pp(ring, "v")});
  const AlgebraSupport support = artinian_certify(m);
  REQUIRE(support.status == ArtinianStatus::certified);
  const auto supp = support.support();
  REQUIRE(supp.size() == 1);
  CHECK(degree_is_zero(supp[0]));
}

TEST_CASE("multiplication by U+V is an isomorphism in the middle") {
  const RingPtr s = p1p1_ring();
  const AlgebraSupport support = artinian_certify(annihilator_ideal(pp(s, "x^2*u^3 + y^2*v^3")));
  REQUIRE(support.status == ArtinianStatus::certified);
  const RingPtr q = support.ideal.ring;
  const QMat m = multiplication_matrix(support, pp(q, "U + V"), deg(q, "(2,0)"));
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 2);
  CHECK(rank(m) == 2);
}

TEST_CASE("multiplication by 1 is the identity, by an ideal element zero") {
  const RingPtr ring = p1p1_ring();
  const AlgebraSupport support = artinian_certify(ex1_ideal(ring));
  const GroupElement g = deg(ring, "(2,0)");
  const QMat id = multiplication_matrix(support, poly_constant(ring, 1), g);
  CHECK((id - QMat::Identity(3, 3)).isZero(0));
  const QMat zero = multiplication_matrix(support, pp(ring, "x^2*v"), g);
  CHECK(zero.isZero(0));
}

TEST_CASE("socle of the bigraded example at (4,0)") {
  const RingPtr ring = p1p1_ring();
  const AlgebraSupport support = artinian_certify(ex1_ideal(ring));
  const GroupElement g = deg(ring, "(4,0)");
  const QMat socle = socle_slice(support, g);
  CHECK(socle.cols() == 3);
  // the socle is spanned by the classes of x^4, x^2 y^2, y^4
  const DegreeSliceBasis* slice = support.find_slice(g);
  QMat expected(slice->dim(), 3);
  Index col = 0;
  for (const char* text : {"x^4", "x^2*y^2", "y^4"}) {
    expected.col(col++) =
        reduce_to_standard(*slice, coefficient_vector(pp(ring, text), slice->ambient));
  }
  QMat joint(slice->dim(), 6);
  joint.leftCols(3) = socle;
  joint.rightCols(3) = expected;
  CHECK(rank(joint) == 3);
  CHECK(rank(expected) == 3);
}

TEST_CASE("socle at degree zero vanishes when a variable acts nontrivially") {
  const RingPtr ring = p1p1_ring();
  const AlgebraSupport support = artinian_certify(ex1_ideal(ring));
  CHECK(socle_slice(support, deg(ring, "(0,0)")).cols() == 0);
}

TEST_CASE("Gorenstein verdicts for the worked examples") {
  // chain example: yes with socle degree (5,0~2)
  const RingPtr ring2 = fake_wp112_ring();
  const AlgebraSupport chain = artinian_certify(
      ideal_from_generators(ring2, {pp(ring2, "x"), pp(ring2, "y^2"), pp(ring2, "z^3")}));
  const GorensteinVerdict v2 = is_cox_gorenstein(chain);
  CHECK(v2.gorenstein);
  CHECK(degree_to_string(ring2->group(), *v2.socle_degree) == "(5;0~2)");

  // bigraded example: no, with extra socle at (4,0)
  const RingPtr ring1 = p1p1_ring();
  const AlgebraSupport big = artinian_certify(ex1_ideal(ring1));
  const GorensteinVerdict v1 = is_cox_gorenstein(big);
  CHECK(!v1.gorenstein);
  CHECK(v1.socle_dims.size() == 2);
  CHECK(v1.socle_dims.at(parse_degree(ring1->group(), "(4,0)")) == 3);
  CHECK(v1.socle_dims.at(parse_degree(ring1->group(), "(4,1)")) == 1);

  // Fermat: yes with socle degree (8,0~2)
  const AlgebraSupport fermat = artinian_certify(annihilator_ideal(pp(ring2, "x^3*y^3*z")));
  const GorensteinVerdict v3 = is_cox_gorenstein(fermat);
  CHECK(v3.gorenstein);
  CHECK(degree_to_string(ring2->group(), *v3.socle_degree) == "(8;0~2)");
}

TEST_CASE("Poincare pairing of the bigraded example at (4,0)") {
  const RingPtr ring = p1p1_ring();
  const AlgebraSupport support = artinian_certify(ex1_ideal(ring));
  const GroupElement omega = deg(ring, "(4,1)");
  const QMat pairing = poincare_pairing(support, omega, deg(ring, "(4,0)"));
  CHECK(pairing.rows() == 5);
  CHECK(pairing.cols() == 2);
  CHECK(left_kernel_basis(pairing).cols() == 3);
  const QMat at_zero = poincare_pairing(support, omega, deg(ring, "(0,0)"));
  CHECK(at_zero.rows() == 1);
  CHECK(at_zero.cols() == 1);
  CHECK(at_zero(0, 0) != 0);
}

TEST_CASE("artinianize adds exactly the minimal incomparable span clauses") {
  const RingPtr ring = p1p1_ring();
  const GroupElement omega = deg(ring, "(4,1)");
  const IdealPresentation derived = artinianize(ex4_ideal(ring), omega);
  std::set<std::string> clauses;
  for (const auto& h : derived.span_degrees)
    clauses.insert(degree_to_string(ring->group(), h));
  CHECK(clauses == std::set<std::string>{"(0,2)", "(5,0)"});

  const AlgebraSupport support = artinian_certify(derived);
  REQUIRE(support.status == ArtinianStatus::certified);
  REQUIRE(support.greatest.has_value());
  CHECK(degree_eq(*support.greatest, omega));

  // slices below omega agree with the original quotient
  const IdealPresentation original = ex4_ideal(ring);
  for (const auto& g : realized_degrees_up_to(ring, Rational(5))) {
    if (!leq(ring, g, omega)) continue;
    const DegreeSliceBasis before = ideal_slice(original, g);
    const DegreeSliceBasis after = ideal_slice(derived, g);
    CHECK(before.dim() == after.dim());
    CHECK(same_row_space(before.ideal_rref, after.ideal_rref));
  }
}

TEST_CASE("artinianize of an already-Artinian ideal adds nothing") {
  const RingPtr ring = p1p1_ring();
  const IdealPresentation ideal = ex1_ideal(ring);
  const IdealPresentation derived = artinianize(ideal, deg(ring, "(4,1)"));
  CHECK(derived.span_degrees.size() == ideal.span_degrees.size());
  CHECK(derived.generators.size() == ideal.generators.size());
}

TEST_CASE("artinianize rejects non-maximal target degrees") {
  const RingPtr ring = p1p1_ring();
  CHECK_THROWS_AS(artinianize(ex4_ideal(ring), deg(ring, "(2,1)")), math_error);
}

TEST_CASE("artinianize under the first-coordinate preorder") {
  const RingPtr ring = fake_wp112_ring();
  // already Artinian with greatest (5;0~2): nothing to add
  const IdealPresentation chain =
      ideal_from_generators(ring, {pp(ring, "x"), pp(ring, "y^2"), pp(ring, "z^3")});
  const IdealPresentation same = artinianize(chain, deg(ring, "(5;0~2)"));
  CHECK(same.span_degrees.empty());
  // dropping z^3 leaves the z-direction alive above any candidate top degree
  const IdealPresentation open_ideal =
      ideal_from_generators(ring, {pp(ring, "x"), pp(ring, "y^2")});
  CHECK_THROWS_AS(artinianize(open_ideal, deg(ring, "(5;0~2)")), math_error);
}

TEST_CASE("gorensteinize the bigraded example") {
  const RingPtr ring = p1p1_ring();
  const AlgebraSupport support = artinian_certify(ex1_ideal(ring));
  const GroupElement omega = deg(ring, "(4,1)");
  const IdealPresentation derived = gorensteinize(support, omega);
  const AlgebraSupport after = artinian_certify(derived);
  REQUIRE(after.status == ArtinianStatus::certified);

  // h_(4,0) drops from 5 to 2 and every other weight is unchanged
  CHECK(after.h(deg(ring, "(4,0)")) == 2);
  for (const auto& g : support.support()) {
    if (degree_eq(g, deg(ring, "(4,0)"))) continue;
    CHECK(after.h(g) == support.h(g));
  }
  const GorensteinVerdict verdict = is_cox_gorenstein(after);
  CHECK(verdict.gorenstein);
  CHECK(degree_eq(*verdict.socle_degree, omega));

  // pairings of the quotient are perfect
  for (const auto& g : after.support()) {
    const QMat pairing = poincare_pairing(after, omega, g);
    CHECK(pairing.rows() == pairing.cols());
    CHECK(rank(pairing) == pairing.rows());
  }

  // idempotent up to slice equality
  const IdealPresentation twice = gorensteinize(after, omega);
  const AlgebraSupport support_twice = artinian_certify(twice);
  for (const auto& g : after.support()) CHECK(support_twice.h(g) == after.h(g));
}

TEST_CASE("gorensteinize keeps Gorenstein algebras unchanged") {
  const RingPtr ring = fake_wp112_ring();
  const IdealPresentation chain =
      ideal_from_generators(ring, {pp(ring, "x"), pp(ring, "y^2"), pp(ring, "z^3")});
  const AlgebraSupport support = artinian_certify(chain);
  const IdealPresentation derived = gorensteinize(support, deg(ring, "(5;0~2)"));
  const AlgebraSupport after = artinian_certify(derived);
  for (const auto& g : support.support()) CHECK(after.h(g) == support.h(g));
}

TEST_CASE("colon by 1 reproduces the ideal slice-wise") {
  const RingPtr ring = p1p1_ring();
  const IdealPresentation ideal = ex1_ideal(ring);
  for (const char* text : {"(2,1)", "(3,0)", "(4,1)"}) {
    const GroupElement g = deg(ring, text);
    const DegreeSliceBasis direct = ideal_slice(ideal, g);
    const DegreeSliceBasis via_colon = colon_slice(ideal, poly_constant(ring, 1), g);
    CHECK(direct.dim() == via_colon.dim());
    CHECK(same_row_space(direct.ideal_rref, via_colon.ideal_rref));
  }
}

TEST_CASE("colon of an apolar annihilator matches the derivative annihilator") {
  GroupSpec group{1, {}};
  const auto one = make_element(group, (ZVec(1) << 1).finished(), ZVec(0));
  const RingPtr s = GradedRingSpec::make({"x", "y"}, {one, one}, group, OrderSpec{});
  const IdealPresentation ann_f = annihilator_ideal(pp(s, "x^2*y^2"));
  const RingPtr q = ann_f.ring;
  const IdealPresentation ann_df = annihilator_ideal(pp(s, "x*y^2"));
  for (long d = 0; d <= 4; ++d) {
    const GroupElement g = make_element(group, (ZVec(1) << d).finished(), ZVec(0));
    const DegreeSliceBasis lhs = colon_slice(ann_f, pp(q, "X"), g);
    const DegreeSliceBasis rhs = ideal_slice(ann_df, g);
    CHECK(lhs.dim() == rhs.dim());
  }
}

TEST_CASE("colon rejects elements of the ideal") {
  const RingPtr ring = p1p1_ring();
  const IdealPresentation ideal = ex1_ideal(ring);
  CHECK_THROWS_AS(colon_slice(ideal, pp(ring, "x^2*v"), deg(ring, "(1,0)")), math_error);
}

TEST_CASE("inverse system of an annihilator recovers the cyclic module") {
  const RingPtr s = fake_wp112_ring();
  const Polynomial f = pp(s, "x^3*y^3*z");
  const IdealPresentation ann = annihilator_ideal(f);
  const SubspaceSlice top = inverse_system_slice(ann, deg(s, "(8;0~2)"));
  REQUIRE(top.dim() == 1);
  const Polynomial rep = poly_from_coefficients(s, top.ambient, top.basis.r.row(0).transpose());
  // spanned by f itself up to scale
  CHECK(poly_is_zero(sub(scale(rep, f.terms.begin()->second), f)));
}

TEST_CASE("inverse system of the maximal ideal vanishes in positive degrees") {
  const RingPtr s = p2_ring();
  const RingPtr q = s->dual();
  const IdealPresentation m =
      ideal_from_generators(q, {pp(q, "X"), pp(q, "Y"), pp(q, "Z")});
  CHECK(inverse_system_slice(m, deg(s, "(1)")).dim() == 0);
  CHECK(inverse_system_slice(m, deg(s, "(2)")).dim() == 0);
  CHECK(inverse_system_slice(m, deg(s, "(0)")).dim() == 1);
}

TEST_CASE("Macaulay duality: dim (Q/Ann f)_g = dim (Ann f)^{-1}_g") {
  TestRng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const RingPtr ring = random_graded_ring(rng);
    const Polynomial f = random_homogeneous_poly(rng, ring);
    const IdealPresentation ann = annihilator_ideal(f);
    for (const auto& g : realized_degrees_up_to(ring, phi_value(*ring->certificate(), *f.degree))) {
      const DegreeSliceBasis quotient = ideal_slice(ann, g);
      const SubspaceSlice module = inverse_system_slice(ann, g);
      CHECK(quotient.dim() == module.dim());
    }
  }
}

TEST_CASE("double annihilator: Ann of the inverse system slices is Ann(f) again") {
  GroupSpec group{1, {}};
  const auto one = make_element(group, (ZVec(1) << 1).finished(), ZVec(0));
  const RingPtr s = GradedRingSpec::make({"x", "y"}, {one, one}, group, OrderSpec{});
  const RingPtr q = s->dual();
  TestRng rng(43);
  for (int trial = 0; trial < 8; ++trial) {
    const Polynomial f = random_homogeneous_poly(rng, s);
    const IdealPresentation ann = annihilator_ideal(f);
    const long top = static_cast<long>(numerator(phi_value(*s->certificate(), *f.degree)));
    // collect the inverse-system slices
    std::vector<SubspaceSlice> module;
    for (long d = 0; d <= top; ++d)
      module.push_back(
          inverse_system_slice(ann, make_element(group, (ZVec(1) << d).finished(), ZVec(0))));
    // Ann(module) at each degree, computed from scratch against every slice
    for (long d = 0; d <= top; ++d) {
      const GroupElement g = make_element(group, (ZVec(1) << d).finished(), ZVec(0));
      const auto& ops = monomials_of_degree(q, g);
      std::vector<QVec> rows;
      for (const auto& slice : module) {
        for (Index b = 0; b < slice.basis.rank; ++b) {
          const Polynomial member =
              poly_from_coefficients(s, slice.ambient, slice.basis.r.row(b).transpose());
          const GroupElement target = group_sub(group, slice.degree, g);
          const auto& target_basis = monomials_of_degree(s, target);
          if (target_basis.empty()) continue;
          QMat block(static_cast<Index>(target_basis.size()), static_cast<Index>(ops.size()));
          for (Index c = 0; c < block.cols(); ++c)
            block.col(c) = coefficient_vector(
                apply_diff(poly_monomial(q, ops[static_cast<size_t>(c)]), member), target_basis);
          for (Index r = 0; r < block.rows(); ++r) rows.push_back(block.row(r).transpose());
        }
      }
      QMat constraints(static_cast<Index>(rows.size()), static_cast<Index>(ops.size()));
      for (Index r = 0; r < constraints.rows(); ++r)
        constraints.row(r) = rows[static_cast<size_t>(r)].transpose();
      const QMat double_ann = kernel_basis(constraints);
      const DegreeSliceBasis direct = ideal_slice(ann, g);
      CHECK(double_ann.cols() == direct.ideal_rref.rank);
      for (Index c = 0; c < double_ann.cols(); ++c)
        CHECK(in_row_space(direct.ideal_rref, double_ann.col(c)));
    }
  }
}

TEST_CASE("annihilator slices agree with an independently supplied generating set") {
  const RingPtr s = wp112_ring();
  const RingPtr q = s->dual();
  const IdealPresentation ann = annihilator_ideal(pp(s, "x^4 + y^4 + z^2"));
  // The published list in the contraction convention; under the derivative
  // action the last binomial picks up the factorial ratio 4!/2! = 12.
  const IdealPresentation listed = ideal_from_generators(
      q, {pp(q, "X*Y"), pp(q, "X*Z"), pp(q, "Y*Z"), pp(q, "X^5"), pp(q, "Y^5"), pp(q, "Z^3"),
          pp(q, "X^4 - Y^4"), pp(q, "X^4 - 12*Z^2")});
  for (long d = 0; d <= 8; ++d) {
    const GroupElement g = make_element(s->group(), (ZVec(1) << d).finished(), ZVec(0));
    const DegreeSliceBasis a = ideal_slice(ann, g);
    const DegreeSliceBasis b = ideal_slice(listed, g);
    CHECK(a.dim() == b.dim());
    CHECK(same_row_space(a.ideal_rref, b.ideal_rref));
  }
}
