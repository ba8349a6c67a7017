#include <doctest.h>

#include "coxalg/lefschetz.hpp"
#include "test_support.hpp"

using namespace coxalg;
using namespace coxalg::testing;

namespace {

AlgebraSupport middle_example() {
  const RingPtr s = p1p1_ring();
  return artinian_certify(annihilator_ideal(pp(s, "x^2*u^3 + y^2*v^3")));
}

AlgebraSupport weighted_example() {
  const RingPtr s = wp112_ring();
  return artinian_certify(annihilator_ideal(pp(s, "x^4 + y^4 + z^2")));
}

bool has_consecutive(const std::vector<ComparabilityEdge>& edges, const RingPtr& ring,
                     const std::string& g, const std::string& h) {
  for (const auto& e : edges)
    if (e.kind == ComparabilityEdge::Kind::consecutive &&
        degree_eq(e.g, parse_degree(ring->group(), g)) &&
        degree_eq(e.h, parse_degree(ring->group(), h)))
      return true;
  return false;
}

}  // namespace

TEST_CASE("comparability graph of the middle example") {
  const AlgebraSupport support = middle_example();
  const RingPtr ring = support.ideal.ring;
  const auto edges = comparability_graph(support);
  CHECK(has_consecutive(edges, ring, "(2,0)", "(2,1)"));
  // (2,0) and (0,3) are not linearly comparable
  for (const auto& e : edges) {
    if (e.kind != ComparabilityEdge::Kind::comparable) continue;
    CHECK(!(degree_eq(e.g, deg(ring, "(2,0)")) && degree_eq(e.h, deg(ring, "(0,3)"))));
  }
}

TEST_CASE("standard grading: every support pair is comparable") {
  const AlgebraSupport support = weighted_example();
  const RingPtr ring = support.ideal.ring;
  const auto edges = comparability_graph(support);
  // pairs (g,h), g < h, both weights nonzero: 0..4 all realized
  for (long a = 0; a <= 4; ++a) {
    for (long b = a + 1; b <= 4; ++b) {
      bool found = false;
      for (const auto& e : edges) {
        if (e.kind == ComparabilityEdge::Kind::comparable && e.g.free(0) == a &&
            e.h.free(0) == b && degree_eq(e.l, deg(ring, "(1)")) &&
            e.k == static_cast<Index>(b - a))
          found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("generalized Euler relation holds for arbitrary functionals") {
  TestRng rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const RingPtr ring = random_graded_ring(rng);
    const Polynomial f = random_homogeneous_poly(rng, ring);
    QVec phi(ring->group().free_rank);
    for (Index i = 0; i < phi.size(); ++i) phi(i) = rng.rational();
    CHECK(euler_identity_check(f, phi));
  }
}

TEST_CASE("toric differential Euler identity on worked examples") {
  // weighted ring: nontrivial evaluations on both linear degrees
  const RingPtr s = wp112_ring();
  const RingPtr q = s->dual();
  const Polynomial f = pp(s, "x^4 + y^4 + z^2");
  QVec phi(1);
  phi << 1;  // phi(deg X) = 1, phi(deg f) = 4
  CHECK(toric_euler_check(f, pp(q, "X + 2*Y"), phi));
  CHECK(toric_euler_check(f, pp(q, "X"), phi));
  QVec half(1);
  half << rat(1, 2);  // phi-linear for Z, phi(deg f) = 2
  CHECK(toric_euler_check(f, pp(q, "3*Z"), half));

  // bigraded example: phi positive on both variable degrees
  const RingPtr s2 = p1p1_ring();
  const RingPtr q2 = s2->dual();
  const Polynomial g = pp(s2, "x^2*u^3 + y^2*v^3");
  QVec phi2(2);
  phi2 << 1, rat(1, 3);  // phi(deg X) = 1, phi(deg g) = 3
  CHECK(toric_euler_check(g, pp(q2, "X + 2*Y"), phi2));
  QVec phi3(2);
  phi3 << rat(1, 2), 1;  // phi(deg U) = 1, phi(deg g) = 4
  CHECK(toric_euler_check(g, pp(q2, "U - V"), phi3));
  const Polynomial mono = pp(s2, "x^2*u^3");
  CHECK(toric_euler_check(mono, pp(q2, "X + Y"), phi2));
  CHECK(toric_euler_check(mono, pp(q2, "U"), phi3));
}

TEST_CASE("toric differential Euler identity on random instances") {
  TestRng rng(53);
  int done = 0;
  for (int attempt = 0; attempt < 400 && done < 25; ++attempt) {
    const RingPtr ring = random_graded_ring(rng);
    const RingPtr q = ring->dual();
    const Polynomial f = random_homogeneous_poly(rng, ring);
    // pick a linear degree and solve for an admissible phi
    const Index var = rng.range(0, ring->var_count() - 1);
    const GroupElement l = ring->degree_of(var);
    const auto phi = phi_linear_functional(ring, l, *f.degree);
    if (!phi) continue;
    Polynomial linear = poly_zero(q);
    for (Index i = 0; i < ring->var_count(); ++i)
      if (degree_eq(ring->degree_of(i), l))
        linear = add(linear, scale(poly_variable(q, i), Rational(rng.range(-3, 3))));
    if (poly_is_zero(linear)) continue;
    CHECK(toric_euler_check(f, linear, *phi));
    ++done;
  }
  CHECK(done == 25);
}

TEST_CASE("euler identity rejects non-integral exponents") {
  const RingPtr s = wp112_ring();
  const RingPtr q = s->dual();
  const Polynomial f = pp(s, "x*z");  // degree 3
  QVec phi(1);
  phi << rat(1, 2);  // phi-linear for z, but phi(3) = 3/2
  CHECK_THROWS_AS(toric_euler_check(f, pp(q, "Z"), phi), math_error);
}

TEST_CASE("dual basis pairs to the identity") {
  const AlgebraSupport support = weighted_example();
  const RingPtr q = support.ideal.ring;
  const RingPtr s = q->dual();
  const Polynomial f = pp(s, "x^4 + y^4 + z^2");
  // h = 0: the dual of {1} is the socle generator normalized by Omega(f) = 1
  const QMat omega_basis = dual_basis(support, f, deg(q, "(0)"), QMat());
  REQUIRE(omega_basis.cols() == 1);
  const DegreeSliceBasis* top = support.find_slice(deg(q, "(4)"));
  QVec ambient = QVec::Zero(static_cast<Index>(top->ambient.size()));
  for (Index t = 0; t < top->dim(); ++t)
    ambient(top->standard[static_cast<size_t>(t)]) = omega_basis(t, 0);
  const Polynomial rep = poly_from_coefficients(q, top->ambient, ambient);
  const Polynomial value = apply_diff(rep, f);
  CHECK(poly_eq(value, poly_constant(s, 1)));

  // generic degree: pairing of C* against C is the identity
  for (const char* text : {"(1)", "(2)"}) {
    const GroupElement h = deg(q, text);
    const GroupElement co = group_sub(q->group(), deg(q, "(4)"), h);
    const QMat dual = dual_basis(support, f, h, QMat());
    const DegreeSliceBasis* right = support.find_slice(h);
    const DegreeSliceBasis* left = support.find_slice(co);
    QMat pairing(dual.cols(), right->dim());
    for (Index i = 0; i < dual.cols(); ++i) {
      QVec amb = QVec::Zero(static_cast<Index>(left->ambient.size()));
      for (Index t = 0; t < left->dim(); ++t)
        amb(left->standard[static_cast<size_t>(t)]) = dual(t, i);
      const Polynomial c_star = poly_from_coefficients(q, left->ambient, amb);
      for (Index j = 0; j < right->dim(); ++j) {
        const Monomial& mj =
            right->ambient[static_cast<size_t>(right->standard[static_cast<size_t>(j)])];
        const Polynomial val = apply_diff(multiply(c_star, poly_monomial(q, mj)), f);
        pairing(i, j) = poly_is_zero(val) ? Rational(0) : val.terms.begin()->second;
      }
    }
    CHECK((pairing - QMat::Identity(pairing.rows(), pairing.cols())).isZero(0));
  }
}

TEST_CASE("dual basis of a monomial form is the complementary basis up to factorials") {
  GroupSpec group{1, {}};
  const auto one = make_element(group, (ZVec(1) << 1).finished(), ZVec(0));
  const RingPtr s = GradedRingSpec::make({"x", "y"}, {one, one}, group, OrderSpec{});
  const Polynomial f = pp(s, "x^2*y^2");
  const AlgebraSupport support = artinian_certify(annihilator_ideal(f));
  const RingPtr q = support.ideal.ring;
  const QMat dual = dual_basis(support, f, deg(q, "(1)"), QMat());
  // A_1 = {X, Y}; duals must be scalar multiples of X Y^2 resp. X^2 Y
  REQUIRE(dual.cols() == 2);
  for (Index j = 0; j < 2; ++j) {
    Index nonzero = 0;
    for (Index i = 0; i < dual.rows(); ++i)
      if (dual(i, j) != 0) ++nonzero;
    CHECK(nonzero == 1);
  }
}

TEST_CASE("mixed Hessian recovers the classical Hessian in the standard grading") {
  const RingPtr s = p2_ring();
  const Polynomial f = pp(s, "x^3 + y^3 + z^3");
  const RingPtr q = s->dual();
  std::vector<Polynomial> basis = {pp(q, "X"), pp(q, "Y"), pp(q, "Z")};
  const HessianData hessian = mixed_hessian(f, basis, basis);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) {
      const Polynomial direct =
          apply_diff(multiply(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]), f);
      CHECK(poly_eq(hessian.at(i, j), direct));
    }
  }
  CHECK(to_string(hessian.at(0, 0)) == "6*x");
  CHECK(poly_is_zero(hessian.at(0, 1)));
}

TEST_CASE("hessian entries vanish exactly on annihilator products") {
  const AlgebraSupport support = middle_example();
  const RingPtr q = support.ideal.ring;
  const RingPtr s = q->dual();
  const Polynomial f = pp(s, "x^2*u^3 + y^2*v^3");
  std::vector<Polynomial> b = {pp(q, "X"), pp(q, "Y")};
  std::vector<Polynomial> c = {pp(q, "X*U"), pp(q, "Y*V"), pp(q, "X*V")};
  const HessianData hessian = mixed_hessian(f, b, c);
  // (X V) X in Ann(f): entry is zero; (X U) X applied gives a nonzero entry
  CHECK(!poly_is_zero(hessian.at(0, 0)));
  CHECK(poly_is_zero(hessian.at(2, 0)));
  CHECK(poly_is_zero(hessian.at(2, 1)));
}

TEST_CASE("maximal rank witness finds the all-ones element first") {
  const AlgebraSupport support = middle_example();
  const RingPtr q = support.ideal.ring;
  ComparabilityEdge edge{ComparabilityEdge::Kind::consecutive, deg(q, "(2,0)"), deg(q, "(2,1)"),
                         deg(q, "(0,1)"), 1};
  const WitnessResult witness = maximal_rank_witness(support, edge, 64, 0);
  CHECK(witness.maximal);
  CHECK(witness.rank == 2);
  REQUIRE(witness.witness.has_value());
  CHECK(to_string(*witness.witness) == "U + V");
}

TEST_CASE("witness ranks never exceed min(h_g, h_h) and are basis independent") {
  const AlgebraSupport support = weighted_example();
  const RingPtr q = support.ideal.ring;
  for (const auto& edge : comparability_graph(support)) {
    const WitnessResult witness = maximal_rank_witness(support, edge, 32, 7);
    CHECK(witness.rank <= witness.target);
    if (!witness.witness) continue;
    // rank of the multiplication matrix is invariant under base change
    const QMat m = multiplication_matrix(support, poly_pow(*witness.witness, edge.k), edge.g);
    QMat change = QMat::Identity(m.cols(), m.cols());
    for (Index i = 0; i < m.cols(); ++i)
      for (Index j = i + 1; j < m.cols(); ++j) change(i, j) = Rational(1 + i + j);
    CHECK(rank(m) == rank(QMat(m * change)));
  }
}

TEST_CASE("the middle example has the TWLP with witness U+V on the middle edges") {
  const AlgebraSupport support = middle_example();
  const RingPtr q = support.ideal.ring;
  const LefschetzReport report = twlp_check(support, 64, 0);
  CHECK(report.holds);
  int middles = 0;
  for (const auto& check : report.edges) {
    const bool middle =
        (degree_to_string(q->group(), check.edge.g) == "(2,0)" &&
         degree_to_string(q->group(), check.edge.h) == "(2,1)") ||
        (degree_to_string(q->group(), check.edge.g) == "(1,1)" &&
         degree_to_string(q->group(), check.edge.h) == "(1,2)") ||
        (degree_to_string(q->group(), check.edge.g) == "(0,2)" &&
         degree_to_string(q->group(), check.edge.h) == "(0,3)");
    if (!middle) continue;
    ++middles;
    REQUIRE(check.witness.witness.has_value());
    CHECK(to_string(*check.witness.witness) == "U + V");
    CHECK(check.witness.maximal);
  }
  CHECK(middles == 3);
}

TEST_CASE("the weighted example has the TSLP with witness X+Y") {
  const AlgebraSupport support = weighted_example();
  const LefschetzReport report = tslp_check(support, 64, 0);
  CHECK(report.holds);
  for (const auto& check : report.edges) {
    if (check.witness.witness && degree_to_string(support.ideal.ring->group(), check.edge.l) == "(1)")
      CHECK(to_string(*check.witness.witness) == "X + Y");
  }
}

TEST_CASE("one-dimensional supports hold vacuously") {
  const RingPtr s = p2_ring();
  const Polynomial f = pp(s, "x");  // A = Q/Ann(x) has support {0, 1}
  const AlgebraSupport support = artinian_certify(annihilator_ideal(f));
  const LefschetzReport report = tslp_check(support, 8, 0);
  CHECK(report.holds);
}

TEST_CASE("standard-graded WLP verdict agrees with a classical oracle") {
  // A = Q/Ann(f), f = x^3 + y^3 + z^3: WLP holds classically.
  const RingPtr s = p2_ring();
  const Polynomial f = pp(s, "x^3 + y^3 + z^3");
  const AlgebraSupport support = artinian_certify(annihilator_ideal(f));
  const RingPtr q = support.ideal.ring;
  const LefschetzReport report = twlp_check(support, 64, 0);

  // oracle: exhaustive small-coefficient search for each consecutive pair
  for (const auto& check : report.edges) {
    bool oracle = false;
    for (long a = 0; a <= 2 && !oracle; ++a)
      for (long b = 0; b <= 2 && !oracle; ++b)
        for (long c = 0; c <= 2 && !oracle; ++c) {
          Polynomial linear = add(add(scale(poly_variable(q, 0), Rational(a)),
                                      scale(poly_variable(q, 1), Rational(b))),
                                  scale(poly_variable(q, 2), Rational(c)));
          if (poly_is_zero(linear)) continue;
          const QMat m = multiplication_matrix(support, linear, check.edge.g);
          if (rank(m) == check.witness.target) oracle = true;
        }
    CHECK(check.witness.maximal == oracle);
  }
  CHECK(report.holds);
}

TEST_CASE("standard-graded SLP verdict agrees with a classical oracle") {
  const RingPtr s = p2_ring();
  const Polynomial f = pp(s, "x^3 + y^3 + z^3");
  const AlgebraSupport support = artinian_certify(annihilator_ideal(f));
  const RingPtr q = support.ideal.ring;
  const LefschetzReport report = tslp_check(support, 64, 0);
  for (const auto& check : report.edges) {
    bool oracle = false;
    for (long a = 0; a <= 2 && !oracle; ++a)
      for (long b = 0; b <= 2 && !oracle; ++b)
        for (long c = 0; c <= 2 && !oracle; ++c) {
          Polynomial linear = add(add(scale(poly_variable(q, 0), Rational(a)),
                                      scale(poly_variable(q, 1), Rational(b))),
                                  scale(poly_variable(q, 2), Rational(c)));
          if (poly_is_zero(linear)) continue;
          const QMat m =
              multiplication_matrix(support, poly_pow(linear, check.edge.k), check.edge.g);
          if (rank(m) == check.witness.target) oracle = true;
        }
    CHECK(check.witness.maximal == oracle);
  }
  CHECK(report.holds);
}

TEST_CASE("hessian criterion on the worked middle edge") {
  const AlgebraSupport support = middle_example();
  const RingPtr q = support.ideal.ring;
  const RingPtr s = q->dual();
  const Polynomial f = pp(s, "x^2*u^3 + y^2*v^3");
  ComparabilityEdge edge{ComparabilityEdge::Kind::comparable, deg(q, "(2,0)"), deg(q, "(2,1)"),
                         deg(q, "(0,1)"), 1};
  const HessianCheckResult result = hessian_criterion_verify(support, f, edge, pp(q, "U + V"));
  CHECK(result.equal);
  CHECK(rank(result.multiplication) == 2);

  // k = 0 degenerates to the identity matrix on both sides
  ComparabilityEdge loop{ComparabilityEdge::Kind::comparable, deg(q, "(2,0)"), deg(q, "(2,0)"),
                         deg(q, "(0,1)"), 0};
  const HessianCheckResult idres = hessian_criterion_verify(support, f, loop, pp(q, "U + V"));
  CHECK(idres.equal);
  CHECK((idres.multiplication - QMat::Identity(2, 2)).isZero(0));
}

TEST_CASE("hessian criterion with non-standard bases") {
  const AlgebraSupport support = weighted_example();
  const RingPtr q = support.ideal.ring;
  const RingPtr s = q->dual();
  const Polynomial f = pp(s, "x^4 + y^4 + z^2");
  ComparabilityEdge edge{ComparabilityEdge::Kind::comparable, deg(q, "(1)"), deg(q, "(3)"),
                         deg(q, "(1)"), 2};
  QMat b(2, 2), c(2, 2);
  b << 1, 1, 0, 1;
  c << 2, 0, 1, 1;
  const HessianCheckResult result =
      hessian_criterion_verify(support, f, edge, pp(q, "X + Y"), b, c);
  CHECK(result.equal);
  CHECK(rank(result.multiplication) == 2);
}

TEST_CASE("hessian criterion rejects edges without an admissible functional") {
  const AlgebraSupport support = weighted_example();
  const RingPtr q = support.ideal.ring;
  const RingPtr s = q->dual();
  // f = x^2 z has degree 4... use x*z of degree 3: phi(l) = 1 for l = (2)
  // would force phi(omega) = 3/2, not an integer.
  const Polynomial f = pp(s, "x*z");
  const AlgebraSupport ann_support = artinian_certify(annihilator_ideal(f));
  ComparabilityEdge edge{ComparabilityEdge::Kind::comparable, deg(q, "(1)"), deg(q, "(3)"),
                         deg(q, "(2)"), 1};
  CHECK(!phi_linear_functional(q, deg(q, "(2)"), deg(q, "(3)")).has_value());
  CHECK_THROWS_AS(hessian_criterion_verify(ann_support, f, edge, pp(q, "Z")), math_error);
}

TEST_CASE("hessian criterion property on random apolar instances") {
  TestRng rng(59);
  int done = 0;
  for (int attempt = 0; attempt < 600 && done < 12; ++attempt) {
    const RingPtr ring = random_graded_ring(rng);
    const Polynomial f = random_homogeneous_poly(rng, ring);
    AlgebraSupport support = artinian_certify(annihilator_ideal(f));
    if (support.status != ArtinianStatus::certified) continue;
    const auto edges = comparability_graph(support);
    std::vector<ComparabilityEdge> usable;
    for (const auto& e : edges)
      if (e.kind == ComparabilityEdge::Kind::comparable &&
          phi_linear_functional(support.ideal.ring, e.l, *f.degree))
        usable.push_back(e);
    if (usable.empty()) continue;
    const auto& edge = usable[static_cast<size_t>(rng.next() % usable.size())];
    Polynomial linear = poly_zero(support.ideal.ring);
    for (Index i = 0; i < ring->var_count(); ++i)
      if (degree_eq(ring->degree_of(i), edge.l))
        linear = add(linear, scale(poly_variable(support.ideal.ring, i),
                                   Rational(rng.range(-3, 3))));
    if (poly_is_zero(linear)) continue;
    const HessianCheckResult result = hessian_criterion_verify(support, f, edge, linear);
    CHECK(result.equal);
    ++done;
  }
  CHECK(done == 12);
}
