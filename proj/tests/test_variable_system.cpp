#include <doctest.h>

#include "qloop/closed_forms.hpp"
#include "qloop/errors.hpp"
#include "qloop/exact_linalg.hpp"
#include "qloop/variable_system.hpp"
#include "support.hpp"

using namespace qloop;
using qloop::test::R;
using qloop::test::rational_matrix;

TEST_CASE("A3 loop: k = A s and the exponent form") {
  const MutationLoop loop = make_loop(Quiver::from_arrows(3, {{1, 2}, {3, 2}}), {2, 1, 3});
  const VariableSystem sys = build_system(loop);
  CHECK(sys.mutated_vertices == std::vector<int>{2, 1, 3});
  CHECK(is_nondegenerate(sys));
  // Columns follow first appearance: s_1, s_2, s_3.
  CHECK(sys.k_of_s == rational_matrix({{"-1", "2", "-1"}, {"2", "-1", "0"}, {"0", "-1", "2"}}));

  const ExponentForm form = exponent_form(loop);
  CHECK(form.delta == 4);
  CHECK(form.positivity.kind == Positivity::PositiveDefinite);
  const ExponentForm by_vertex = reorder(form, vertex_order(loop));
  CHECK(by_vertex.gram ==
        rational_matrix({{"3/4", "1/2", "1/4"}, {"1/2", "1", "1/2"}, {"1/4", "1/2", "3/4"}}));
}

TEST_CASE("A2 pentagon loop has Gram 1/2 on the diagonal and 1/4 off it") {
  const MutationLoop loop = make_loop(Quiver::from_arrows(2, {{1, 2}}), {2, 1, 2}, Permutation({2, 1}));
  const ExponentForm form = exponent_form(loop);
  CHECK(form.delta == 2);
  CHECK(form.gram == rational_matrix({{"1/2", "1/4", "1/4"}, {"1/4", "1/2", "1/4"}, {"1/4", "1/4", "1/2"}}));
  CHECK(vertex_order(loop).empty());
}

TEST_CASE("a loop with fewer mutations than s-classes is degenerate") {
  // Two disjoint vertices, only vertex 1 mutated: s_2 never enters any k.
  const MutationLoop loop = make_loop(Quiver(IntMatrix::Zero(2, 2)), {1});
  CHECK_FALSE(is_nondegenerate(build_system(loop)));
  CHECK_THROWS_AS(exponent_form(loop), DegenerateLoopError);
}

TEST_CASE("grading denominator") {
  CHECK(grading_denominator(rational_matrix({{"1/2", "-1/4"}, {"-1/4", "1/2"}})) == 2);
  CHECK(grading_denominator(rational_matrix({{"1", "1/2"}, {"1/2", "1"}})) == 1);
  CHECK(grading_denominator(rational_matrix({{"3/4", "1/8"}, {"1/8", "1"}})) == 4);
  CHECK(grading_denominator(rational_matrix({{"2/3"}})) == 3);
}

TEST_CASE("positivity certificates") {
  SUBCASE("positive definite") {
    const auto c = certify_positive(rational_matrix({{"1", "-1/2"}, {"-1/2", "1"}}));
    CHECK(c.kind == Positivity::PositiveDefinite);
  }
  SUBCASE("copositive but indefinite") {
    const auto gram = rational_matrix({{"1", "2"}, {"2", "1"}});
    const auto c = certify_positive(gram);
    CHECK(c.kind == Positivity::CopositiveCertified);
    CHECK(c.bound == R("1"));
    CHECK(simplex_minimum(gram) == R("1"));
  }
  SUBCASE("negative on the simplex") {
    const auto c = certify_positive(rational_matrix({{"1", "-2"}, {"-2", "1"}}));
    CHECK(c.kind == Positivity::Failed);
    CHECK(c.bound == R("-1/2"));
  }
  SUBCASE("positive semidefinite is rejected") {
    const auto c = certify_positive(rational_matrix({{"1", "-1"}, {"-1", "1"}}));
    CHECK(c.kind == Positivity::Failed);
  }
  SUBCASE("zero diagonal entry") {
    const auto c = certify_positive(rational_matrix({{"0", "1"}, {"1", "1"}}));
    CHECK(c.kind == Positivity::Failed);
  }
}

TEST_CASE("four-vertex loop is copositive but not positive definite") {
  const MutationLoop loop =
      make_loop(Quiver::from_arrows(4, {{1, 2}, {3, 2}, {3, 4}}), {4, 1, 2, 3, 2, 4, 1}, Permutation({4, 1, 2, 3}));
  const ExponentForm form = exponent_form(loop);
  CHECK(form.positivity.kind == Positivity::CopositiveCertified);
  CHECK_FALSE(is_positive_definite(form.gram));
  CHECK(form.positivity.bound > 0);
}

TEST_CASE("exact LDLT and inverse") {
  const RationalMatrix c = matrix_cast<Rational>(cartan_data(DynkinType(DynkinFamily::D, 5)).cartan);
  const auto f = exact_ldlt(c);
  CHECK(f.complete);
  CHECK(f.positive_definite);
  RationalMatrix d = RationalMatrix::Zero(5, 5);
  for (Eigen::Index i = 0; i < 5; ++i) d(i, i) = f.pivots(i);
  CHECK(RationalMatrix(f.lower * d * f.lower.transpose()) == c);
  const auto inv = exact_inverse(c);
  REQUIRE(inv);
  CHECK(RationalMatrix(*inv * c) == RationalMatrix::Identity(5, 5));
  CHECK_FALSE(exact_inverse(rational_matrix({{"1", "2"}, {"2", "4"}})));
}
