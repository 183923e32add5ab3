#include "support.hpp"

#include <functional>

#include "c0model/modelspace.hpp"

using namespace c0;
using c0::test::simple;

namespace {

// Matrix of P_{H(theta)} M_z computed by quadrature: entry (i, j) = <z e_j, e_i>.
Matrix quadrature_shift(const ModelSpace& space) {
  const int n = space.dimension();
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto f = [&](Complex z) { return z * space.basis_value(j, z); };
      auto g = [&](Complex z) { return space.basis_value(i, z); };
      m(i, j) = c0::test::circle_inner<std::function<Complex(Complex)>>(f, g);
    }
  }
  return m;
}

}  // namespace

TEST_SUITE("modelspace") {

TEST_CASE("basis of small model spaces") {
  const auto z2 = tm_basis(BlaschkeProduct({{0.0, 2}}));
  REQUIRE(z2.dimension() == 2);
  const Complex w(0.3, -0.2);
  CHECK(std::abs(z2.basis_value(0, w) - 1.0) < 1e-15);
  CHECK(std::abs(z2.basis_value(1, w) - w) < 1e-15);
  const Complex lambda(0.4, 0.5);
  const auto one = tm_basis(simple({lambda}));
  const Complex expected = std::sqrt(1.0 - std::norm(lambda)) / (1.0 - std::conj(lambda) * w);
  CHECK(std::abs(one.basis_value(0, w) - expected) < 1e-15);
  CHECK_THROWS_CODE(tm_basis(BlaschkeProduct()), Errc::DegreeZero);
}

TEST_CASE("basis is orthonormal") {
  const auto space = tm_basis(simple({0.0, 0.5}));
  Matrix gram(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      std::function<Complex(Complex)> f = [&](Complex z) { return space.basis_value(j, z); };
      std::function<Complex(Complex)> g = [&](Complex z) { return space.basis_value(i, z); };
      gram(i, j) = c0::test::circle_inner(f, g);
    }
  }
  CHECK(c0::test::max_abs(gram - Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("compressed shift") {
  Matrix nil(2, 2);
  nil << 0.0, 0.0, 1.0, 0.0;
  CHECK(c0::test::max_abs(jordan_block(BlaschkeProduct({{0.0, 2}})) - nil) < 1e-15);
  const Complex lambda(-0.3, 0.6);
  const Matrix one = jordan_block(simple({lambda}));
  REQUIRE(one.rows() == 1);
  CHECK(std::abs(one(0, 0) - lambda) < 1e-15);
  const Matrix two = jordan_block(simple({0.2, 0.5}));
  CHECK(std::abs(two(0, 1)) < 1e-15);
  CHECK(std::abs(two(0, 0) - 0.2) < 1e-15);
  CHECK(std::abs(two(1, 1) - 0.5) < 1e-15);
}

TEST_CASE("compressed shift agrees with quadrature") {
  const BlaschkeProduct thetas[] = {
      simple({0.2, 0.5}),
      BlaschkeProduct({{Complex(0.3, 0.4), 3}, {Complex(-0.5, 0.1), 1}}),
      BlaschkeProduct({{0.0, 2}, {Complex(0.1, -0.6), 2}}),
  };
  for (const auto& theta : thetas) {
    const auto space = tm_basis(theta);
    CHECK(c0::test::max_abs(jordan_block(theta) - quadrature_shift(space)) < 1e-12);
  }
}

TEST_CASE("reproducing kernel coordinates") {
  const Vector k0 = model_kernel(BlaschkeProduct({{0.0, 2}}), 0.0);
  REQUIRE(k0.size() == 2);
  CHECK(std::abs(k0(0) - 1.0) < 1e-15);
  CHECK(std::abs(k0(1)) < 1e-15);
  const Vector k = model_kernel(simple({0.5}), 0.5);
  REQUIRE(k.size() == 1);
  CHECK(std::abs(k(0) - 0.8660254037844386) < 1e-15);
  CHECK_THROWS_CODE(model_kernel(BlaschkeProduct({{0.0, 2}}), 0.3), Errc::NotARoot);
}

TEST_CASE("custom basis order") {
  const auto theta = simple({0.1, Complex(0.2, 0.3), -0.4});
  std::vector<Complex> order = {-0.4, 0.1, Complex(0.2, 0.3)};
  const Matrix s = jordan_block(theta, order);
  CHECK(std::abs(s(0, 0) + 0.4) < 1e-15);
  std::vector<Complex> bad = {0.1, 0.1, -0.4};
  CHECK_THROWS_CODE(jordan_block(theta, bad), Errc::InvalidInput);
  const auto phi = simple({Complex(0.2, 0.3)});
  const auto first = divisor_first_order(theta, phi);
  CHECK(std::abs(first[0] - Complex(0.2, 0.3)) < 1e-15);
}

TEST_CASE("Jordan operators") {
  const Complex a(0.3, 0.1);
  const Complex c(-0.2, 0.4);
  const Matrix single = jordan_operator(JordanModel({simple({a})}));
  REQUIRE(single.rows() == 1);
  CHECK(std::abs(single(0, 0) - a) < 1e-15);
  const Matrix twice = jordan_operator(JordanModel({simple({a}), simple({a})}));
  CHECK(c0::test::max_abs(twice - a * Matrix::Identity(2, 2)) < 1e-15);
  const Matrix three = jordan_operator(JordanModel({simple({a, c}), simple({a})}));
  REQUIRE(three.rows() == 3);
  CHECK(std::abs(three(1, 2)) + std::abs(three(2, 1)) + std::abs(three(0, 2)) < 1e-15);
  CHECK_THROWS_CODE(JordanModel({simple({a}), simple({c})}), Errc::InvalidInput);
}

}
