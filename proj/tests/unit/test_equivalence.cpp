#include "support.hpp"

#include "c0model/equivalence.hpp"
#include "c0model/sampling.hpp"

using namespace c0;
using c0::test::simple;

namespace {

const BlaschkeProduct& sample_theta() {
  static const BlaschkeProduct theta({{Complex(0.2, 0.3), 2}, {-0.5, 1}, {Complex(0.1, -0.7), 1}});
  return theta;
}

}  // namespace

TEST_SUITE("equivalence") {

TEST_CASE("Sarason norm") {
  const auto& theta = sample_theta();
  CHECK(sarason_norm(theta.to_rational(), theta) < 1e-12);
  for (const auto& big : big_divisors(theta)) {
    CHECK(std::abs(sarason_norm(big.psi.to_rational(), theta) - 1.0) < 1e-9);
  }
  const RationalFunction half = RationalFunction::polynomial({0.5, 0.5});
  const auto z = simple({0.0});
  CHECK(std::abs(sarason_norm(half, z) - 0.5) < 1e-15);
  const HankelEstimate h = hankel_distance(half, z);
  CHECK(std::abs(h.value - 0.5) < 1e-12);
  CHECK(h.truncation >= 512);
}

TEST_CASE("Sarason norm matches the Hankel estimate") {
  auto rng = sampling::stream(19, 0, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto theta = sampling::random_blaschke(rng, 5, 0.9, 0.05, 2);
    const auto u = sampling::random_rational(rng, 4, 1);
    CHECK(std::abs(sarason_norm(u, theta) - hankel_distance(u, theta).value) < 1e-6);
  }
}

TEST_CASE("commutant dimensions") {
  const auto& theta = sample_theta();
  CHECK(commutant_basis(jordan_block(theta), false).size() == static_cast<std::size_t>(theta.degree()));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = -0.2;
  CHECK(commutant_basis(d, false).size() == 2);
  CHECK(commutant_basis(Matrix::Zero(2, 2), false).size() == 4);
  // Orthonormal in the Frobenius inner product.
  const auto basis = commutant_basis(jordan_block(theta), false);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex ip = (basis[j].adjoint() * basis[i]).trace();
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("irreducibility") {
  CHECK(irreducibility_check(jordan_block(sample_theta())).irreducible);
  const Complex a(0.3, 0.4);
  const JordanModel model({BlaschkeProduct({{a, 2}}), simple({a})});
  CHECK(irreducibility_check(jordan_operator(model)).irreducible);

  const Complex c(-0.5, 0.1);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = c;
  const IrreducibilityResult r = irreducibility_check(d);
  CHECK_FALSE(r.irreducible);
  REQUIRE(r.witness.has_value());
  const Matrix& p = *r.witness;
  Matrix e0 = Matrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  Matrix e1 = Matrix::Zero(2, 2);
  e1(1, 1) = 1.0;
  CHECK(std::min(c0::test::max_abs(p - e0), c0::test::max_abs(p - e1)) < 1e-10);
  CHECK(r.witness_residual < 1e-10);
}

TEST_CASE("idempotents in the double commutant") {
  const IrreducibilityResult distinct = irreducibility_check(jordan_block(simple({0.1, -0.6})));
  CHECK(distinct.has_idempotent);
  CHECK(distinct.idempotent_residual < 1e-8);
  const IrreducibilityResult power = irreducibility_check(jordan_block(BlaschkeProduct({{0.4, 3}})));
  CHECK_FALSE(power.has_idempotent);
}

TEST_CASE("maximality report") {
  const auto& theta = sample_theta();
  const MaximalityReport rep = maximality_report(ContractionOperator(jordan_block(theta)));
  REQUIRE(rep.entries.size() == theta.zeros().size());
  for (const auto& e : rep.entries) {
    CHECK(std::abs(e.norm - 1.0) < 1e-9);
    CHECK(e.sigma2 < 1e-9);
    CHECK(e.cyclic);
  }
  auto rng = sampling::stream(23, 0, 0);
  const auto planted = sampling::stein_contraction(rng, jordan_block(theta), 10.0);
  const MaximalityReport off = maximality_report(ContractionOperator(planted.t));
  double smallest = 2.0;
  for (const auto& e : off.entries) smallest = std::min(smallest, e.norm);
  CHECK(smallest < 1.0 - 1e-3);
  Matrix twice = Matrix::Zero(2, 2);
  twice(0, 0) = 0.4;
  twice(1, 1) = 0.4;
  CHECK_THROWS_CODE(maximality_report(ContractionOperator(twice)), Errc::NotMultiplicityFree);
}

TEST_CASE("unitary recovery") {
  const auto& theta = sample_theta();
  const Matrix s = jordan_block(theta);
  const UnitaryRecovery fixed = unitary_from_maximality(ContractionOperator(s));
  const Eigen::Index n = s.rows();
  CHECK(c0::test::max_abs(fixed.w.adjoint() * fixed.w - Matrix::Identity(n, n)) < 1e-10);
  CHECK(c0::test::max_abs(fixed.w * s - s * fixed.w) < 1e-10);

  auto rng = sampling::stream(29, 0, 0);
  const Matrix u = sampling::random_unitary(rng, n);
  const UnitaryRecovery rec = unitary_from_maximality(ContractionOperator(u * s * u.adjoint()));
  CHECK(rec.unitarity_residual < 1e-8);
  CHECK(rec.intertwining_residual < 1e-8);
  CHECK(same_zeros(rec.theta, theta, 1e-7));

  // Scaling keeps a multiplicity-free operator but breaks norm-one divisors.
  CHECK_THROWS_CODE(unitary_from_maximality(ContractionOperator(0.5 * s)), Errc::NotMaximal);
  const auto planted = sampling::stein_contraction(rng, s, 1e3);
  CHECK_THROWS_CODE(unitary_from_maximality(ContractionOperator(planted.t)), Errc::NotMaximal);
}

TEST_CASE("hypothesis constants") {
  CHECK(beta_floor(2) == 0.0);
  CHECK(std::abs(beta_floor(3) - std::pow(0.75, 0.25)) < 1e-15);
  const double beta = 0.95;
  const double beta_prime = 0.98;
  const double mu = mobius_radius(beta, beta_prime);
  CHECK(mu > 0.0);
  CHECK(std::abs((beta_prime - mu) * beta_prime / (1.0 + mu) - beta * beta) < 1e-14);
  const Complex anchor(0.5, 0.2);
  const double r = euclidean_radius(mu, anchor);
  // A Euclidean disk of radius r about the anchor stays inside the
  // pseudo-hyperbolic disk of radius mu.
  for (int k = 0; k < 64; ++k) {
    const Complex z = anchor + std::polar(r, 2.0 * std::numbers::pi * k / 64);
    CHECK(std::abs(blaschke_factor(anchor, z)) <= mu + 1e-12);
  }
}

TEST_CASE("similarity synthesis") {
  const auto theta = simple({0.1, Complex(-0.3, 0.5), 0.6});
  const ContractionOperator s(jordan_block(theta));
  const SimilarityCertificate same = similarity_synthesize(s, s, 0.995, 0.998);
  CHECK(same.residual < 1e-12);
  CHECK(c0::test::max_abs(same.x - same.x(0, 0) * Matrix::Identity(3, 3)) < 1e-8 * same.norm_x);

  auto rng = sampling::stream(31, 0, 0);
  // Mild conjugations keep the divisor norms above the floor.
  const auto p1 = sampling::stein_contraction(rng, s.matrix(), 1.01);
  const auto p2 = sampling::stein_contraction(rng, s.matrix(), 1.01);
  const ContractionOperator t1(p1.t);
  const ContractionOperator t2(p2.t);
  const double h = std::min(hypothesis_value(t1), hypothesis_value(t2));
  const double floor = beta_floor(3);
  REQUIRE(h > floor);
  CHECK(c0::test::max_abs(p1.t - s.matrix()) > 1e-6);
  const SimilarityCertificate cert =
      similarity_synthesize(t1, t2, floor + 0.5 * (h - floor), floor + 0.9 * (h - floor));
  CHECK(c0::test::max_abs(cert.x * t1.matrix() - t2.matrix() * cert.x) < 1e-7 * cert.norm_x);
  CHECK(cert.norm_x * cert.norm_x_inv >= 1.0);

  const ContractionOperator bigger(jordan_block(theta * simple({-0.8})));
  CHECK_THROWS_CODE(similarity_synthesize(s, bigger, 0.995, 0.998), Errc::MinimalFunctionMismatch);
  CHECK_THROWS_CODE(similarity_synthesize(s, s, 0.5, 0.6), Errc::HypothesisFailed);
}

}
