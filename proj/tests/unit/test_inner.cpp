#include "support.hpp"

#include "c0model/inner.hpp"

using namespace c0;
using c0::test::simple;

TEST_SUITE("inner") {

TEST_CASE("evaluation of elementary products") {
  CHECK(std::abs(simple({0.0})(0.5) - 0.5) < 1e-15);
  const Complex lambda(0.3, -0.4);
  CHECK(std::abs(BlaschkeProduct::factor(lambda)(lambda)) < 1e-15);
  CHECK(std::abs(BlaschkeProduct::normalized(0.6)(0.0) - 0.6) < 1e-15);
  // Canonical products are positive at the origin.
  const auto theta = simple({Complex(0.2, 0.5), Complex(-0.7, 0.1)});
  CHECK(std::abs(theta(0.0).imag()) < 1e-15);
  CHECK(theta(0.0).real() > 0.0);
}

TEST_CASE("boundary modulus is one") {
  const auto theta = BlaschkeProduct({{Complex(0.5, 0.1), 2}, {Complex(-0.3, 0.6), 1}}, Complex(0.0, 1.0));
  for (int k = 0; k < 97; ++k) {
    const Complex z = std::polar(1.0, 0.37 * k);
    CHECK(std::abs(std::abs(theta(z)) - 1.0) < 1e-13);
  }
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_CODE(BlaschkeProduct({{1.0, 1}}), Errc::InvalidInput);
  CHECK_THROWS_CODE(BlaschkeProduct({{0.5, 0}}), Errc::InvalidInput);
  CHECK_THROWS_CODE(BlaschkeProduct({{0.5, 1}}, 2.0), Errc::InvalidInput);
  CHECK_THROWS_CODE(RationalFunction({1.0}, {1.0, -2.0}), Errc::PoleInDisk);
  // Zeros within the merge tolerance collapse.
  const BlaschkeProduct merged({{0.3, 1}, {0.3 + 1e-10, 1}});
  REQUIRE(merged.zeros().size() == 1);
  CHECK(merged.zeros()[0].multiplicity == 2);
}

TEST_CASE("divide") {
  const BlaschkeProduct theta({{0.3, 2}});
  const BlaschkeProduct phi({{0.3, 1}});
  const auto q = divide(theta, phi);
  REQUIRE(q.zeros().size() == 1);
  CHECK(q.zeros()[0].multiplicity == 1);
  CHECK(std::abs(q.zeros()[0].location - 0.3) < 1e-15);
  CHECK_THROWS_CODE(divide(simple({0.3}), simple({0.5})), Errc::NotADivisor);
  CHECK(same_zeros(divide(theta, BlaschkeProduct()), theta));
}

TEST_CASE("gcd and lcm") {
  const Complex i(0.0, 1.0);
  const BlaschkeProduct a({{0.3, 2}, {0.5 * i, 1}});
  const BlaschkeProduct b({{0.3, 1}, {-0.2, 1}});
  const Lattice l = lattice(a, b);
  CHECK(same_zeros(l.gcd, BlaschkeProduct({{0.3, 1}})));
  CHECK(same_zeros(l.lcm, BlaschkeProduct({{0.3, 2}, {0.5 * i, 1}, {-0.2, 1}})));
  const Lattice self = lattice(a, a);
  CHECK(same_zeros(self.gcd, a));
  CHECK(same_zeros(self.lcm, a));
  const auto c = simple({0.1, -0.6});
  const Lattice coprime = lattice(a, c);
  CHECK(coprime.gcd.is_constant());
  CHECK(same_zeros(coprime.lcm, a * c));
}

TEST_CASE("divisor enumeration") {
  CHECK(enumerate_divisors(simple({0.1, 0.2, 0.3})).size() == 8);
  const auto powers = enumerate_divisors(BlaschkeProduct({{0.4, 3}}));
  REQUIRE(powers.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(powers[static_cast<std::size_t>(k)].degree() == k);
  const auto one = enumerate_divisors(BlaschkeProduct());
  REQUIRE(one.size() == 1);
  CHECK(one[0].is_constant());
  // Mixed radix: the first zero varies fastest.
  const auto two = enumerate_divisors(BlaschkeProduct({{0.1, 1}, {0.5, 2}}));
  REQUIRE(two.size() == 6);
  CHECK(same_zeros(two[1], simple({0.1})));
  CHECK(same_zeros(two[2], simple({0.5})));
}

TEST_CASE("big divisors") {
  const Complex a(0.2, 0.1);
  const Complex c(-0.5, 0.3);
  const auto two = big_divisors(simple({a, c}));
  REQUIRE(two.size() == 2);
  for (const auto& big : two) {
    const Complex other = std::abs(big.lambda - a) < 1e-12 ? c : a;
    CHECK(same_zeros(big.psi, simple({other})));
  }
  const auto square = big_divisors(BlaschkeProduct({{a, 2}}));
  REQUIRE(square.size() == 1);
  CHECK(same_zeros(square[0].psi, simple({a})));
  CHECK(big_divisors(simple({a, c, 0.7})).size() == 3);
  CHECK_THROWS_CODE(big_divisors(BlaschkeProduct()), Errc::DegreeZero);
}

TEST_CASE("mobius_solve") {
  const Complex lambda(0.3, 0.2);
  CHECK(std::abs(mobius_solve(lambda, lambda)) < 1e-15);
  CHECK(std::abs(mobius_solve(lambda, 0.0) - lambda) < 1e-15);
  const Complex z = mobius_solve(0.5, 0.25);
  CHECK(std::abs(z - 0.2857142857142857) < 1e-15);
  CHECK(std::abs(blaschke_factor(z, blaschke_factor(0.25, 0.5))) < 1e-15);
}

TEST_CASE("boundary supremum") {
  CHECK(std::abs(supnorm_boundary(RationalFunction::polynomial({-2.0, 1.0})) - 3.0) < 1e-12);
  CHECK(std::abs(supnorm_boundary(BlaschkeProduct::factor(Complex(0.4, -0.3)).to_rational()) - 1.0) < 1e-12);
  CHECK(std::abs(supnorm_boundary(RationalFunction::constant(2.0)) - 2.0) < 1e-15);
  const BoundaryNorm n = boundary_norm(RationalFunction::polynomial({-2.0, 1.0}));
  CHECK(n.certified_upper >= n.value);
}

}
