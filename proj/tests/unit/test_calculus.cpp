#include "support.hpp"

#include "c0model/calculus.hpp"
#include "c0model/sampling.hpp"

using namespace c0;
using c0::test::simple;

TEST_SUITE("calculus") {

TEST_CASE("functional calculus") {
  Matrix t(1, 1);
  t << 0.3;
  CHECK(std::abs(apply_function(BlaschkeProduct::factor(0.3), t)(0, 0)) < 1e-15);
  auto rng = sampling::stream(5, 0, 0);
  const Matrix g = sampling::normal_matrix(rng, 4, 4);
  const Matrix m = 0.9 * g / linalg::opnorm(g);
  CHECK(c0::test::max_abs(apply_function(simple({0.0}), m) - m) < 1e-14);
  const auto theta = BlaschkeProduct({{Complex(0.2, 0.3), 2}, {-0.5, 1}});
  const Matrix s = jordan_block(theta);
  for (const auto& big : big_divisors(theta)) {
    const Eigen::VectorXd sv = linalg::singular_values(apply_function(big.psi, s));
    CHECK(sv(1) < 1e-12 * sv(0));
  }
  // Rational symbols agree with their Blaschke form.
  CHECK(c0::test::max_abs(apply_function(theta.to_rational(), s) - apply_function(theta, s)) < 1e-13);
  Matrix on_pole(1, 1);
  on_pole << 0.5;
  const RationalFunction u({1.0}, {1.0, -0.5});  // pole at 2
  CHECK_THROWS_CODE(apply_function(u, 4.0 * on_pole), Errc::SingularResolvent);
}

TEST_CASE("contraction operator validation") {
  Matrix big(1, 1);
  big << 1.5;
  CHECK_THROWS_CODE(ContractionOperator{big}, Errc::NotAContraction);
  CHECK_THROWS_CODE(ContractionOperator{Matrix::Identity(2, 2)}, Errc::EigenvalueOnCircle);
  CHECK_THROWS_CODE(ContractionOperator{Matrix::Zero(2, 3)}, Errc::InvalidInput);
}

TEST_CASE("minimal functions") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.1;
  d(1, 1) = 0.2;
  CHECK(same_zeros(minimal_function(d), simple({0.1, 0.2})));
  Matrix cell(2, 2);
  cell << 0.3, 1.0, 0.0, 0.3;
  CHECK(same_zeros(minimal_function(cell), BlaschkeProduct({{0.3, 2}}), 1e-7));
  auto rng = sampling::stream(7, 0, 0);
  const auto theta = BlaschkeProduct({{Complex(0.1, 0.6), 3}, {-0.4, 1}, {Complex(0.7, -0.2), 2}});
  const Matrix u = sampling::random_unitary(rng, theta.degree());
  const ContractionOperator op(u * jordan_block(theta) * u.adjoint());
  CHECK(same_zeros(op.minimal_function(), theta, 1e-6));
}

TEST_CASE("Jordan models") {
  const Complex a(0.3, 0.1);
  const Complex c(-0.2, 0.4);
  Matrix twice = Matrix::Zero(2, 2);
  twice(0, 0) = a;
  twice(1, 1) = a;
  const JordanModel m1 = jordan_model(twice);
  REQUIRE(m1.blocks().size() == 2);
  CHECK(same_model(m1, JordanModel({simple({a}), simple({a})})));
  Matrix pair = Matrix::Zero(2, 2);
  pair(0, 0) = a;
  pair(1, 1) = c;
  CHECK(same_model(jordan_model(pair), JordanModel({simple({a, c})})));
  CHECK_FALSE(is_multiplicity_free(twice));
  CHECK(is_multiplicity_free(pair));

  auto rng = sampling::stream(11, 0, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const JordanModel planted = sampling::random_jordan_model(rng, 8, 0.9, 0.2);
    const auto conj = sampling::conjugated(rng, jordan_operator(planted), 1e3);
    CHECK(same_model(jordan_model(conj.t), planted, 1e-7));
  }
}

TEST_CASE("spectral structure") {
  Matrix cell = Matrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) cell(i, i) = 0.25;
  cell(0, 1) = 1.0;
  const auto structure = spectral_structure(cell);
  REQUIRE(structure.size() == 1);
  CHECK(structure[0].size == 3);
  CHECK(structure[0].blocks == std::vector<int>{2, 1});
}

TEST_CASE("cyclic vectors") {
  const auto zn = BlaschkeProduct({{0.0, 4}});
  Vector e0 = Vector::Zero(4);
  e0(0) = 1.0;
  CHECK(is_cyclic(jordan_block(zn), e0));
  CHECK_FALSE(is_cyclic(jordan_block(zn), Vector::Unit(4, 1).cast<Complex>()));
  Matrix twice = Matrix::Zero(2, 2);
  twice(0, 0) = 0.4;
  twice(1, 1) = 0.4;
  CHECK_THROWS_CODE(find_cyclic_vector(twice), Errc::NotMultiplicityFree);

  int found = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto rng = sampling::stream(13, 0, static_cast<std::uint64_t>(trial));
    const auto theta = sampling::random_blaschke(rng, 8, 0.9, 0.05, 2);
    const auto conj = sampling::conjugated(rng, jordan_block(theta), 10.0);
    const Vector xi = find_cyclic_vector(conj.t, static_cast<std::uint64_t>(trial));
    CHECK(std::abs(xi.norm() - 1.0) < 1e-12);
    found += is_cyclic(conj.t, xi) ? 1 : 0;
  }
  CHECK(found == 100);
}

TEST_CASE("partial-product basis") {
  const auto theta = simple({0.1, Complex(-0.3, 0.5), 0.6});
  const Matrix s = jordan_block(theta);
  Vector xi = Vector::Zero(3);
  xi(0) = 1.0;
  const Matrix basis = partial_product_basis(s, theta.flattened(), xi);
  CHECK(basis.cols() == 3);
  CHECK(std::isfinite(linalg::condition_number(basis)));
  CHECK(cyclicity_margin(s, xi, theta) > 1e-8);
}

TEST_CASE("kernels of divisors") {
  const auto theta = BlaschkeProduct({{0.2, 2}, {Complex(-0.4, 0.3), 1}, {0.7, 1}});
  const ContractionOperator op(jordan_block(theta));
  CHECK(kernel_of_divisor(op, theta).cols() == 4);
  CHECK(kernel_of_divisor(op, BlaschkeProduct()).cols() == 0);
  for (const auto& phi : enumerate_divisors(theta)) {
    const Matrix q = kernel_of_divisor(op, phi);
    REQUIRE(q.cols() == phi.degree());
    if (q.cols() > 0) {
      CHECK(c0::test::max_abs(apply_function(phi, op.matrix()) * q) < 1e-10);
      // Rank oracle independent of the Jordan structure.
      const Matrix kernel = linalg::nullspace(apply_function(phi, op.matrix()), 1e-9, 1e-9);
      CHECK(kernel.cols() == phi.degree());
    }
  }
  CHECK_THROWS_CODE(kernel_of_divisor(op, simple({0.5})), Errc::NotADivisor);
}

}
