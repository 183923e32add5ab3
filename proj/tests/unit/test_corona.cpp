#include "support.hpp"

#include <algorithm>

#include "c0model/corona.hpp"
#include "c0model/sampling.hpp"

using namespace c0;
using c0::test::simple;

namespace {

double grid_residual(const BlaschkeProduct& t1, const BlaschkeProduct& t2, const CoronaSolution& s, int points) {
  double worst = 0.0;
  for (int k = 0; k < points; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / points);
    worst = std::max(worst, std::abs(t1(z) * s.u1(z) + t2(z) * s.u2(z) - 1.0));
  }
  return worst;
}

}  // namespace

TEST_SUITE("corona") {

TEST_CASE("Bezout identity for z and b_1/2") {
  const auto t1 = simple({0.0});
  const auto t2 = BlaschkeProduct::factor(0.5);
  const CoronaSolution s = bezout_solve(t1, t2);
  for (const Complex z : {Complex(0.0), Complex(0.3, -0.2), Complex(-0.9, 0.1), Complex(0.0, 1.0)}) {
    CHECK(std::abs(s.u1(z) - 2.0) < 1e-13);
    CHECK(std::abs(s.u2(z) - (z - 2.0)) < 1e-13);
  }
  CHECK(s.residual < 1e-13);
  CHECK(std::abs(s.norm1 - 2.0) < 1e-9);
  CHECK(std::abs(s.norm2 - 3.0) < 1e-9);
}

TEST_CASE("Bezout identity checks") {
  const Complex a(0.1, 0.2);
  CHECK_THROWS_CODE(bezout_solve(simple({a}), simple({a})), Errc::NotCoprime);
  const auto t1 = BlaschkeProduct({{0.0, 2}});
  const auto t2 = simple({0.7});
  const CoronaSolution s = bezout_solve(t1, t2);
  CHECK(grid_residual(t1, t2, s, 4096) < 1e-10);
}

TEST_CASE("random coprime pairs") {
  auto rng = sampling::stream(3, 0, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t1 = sampling::random_blaschke(rng, 3, 0.9, 0.2, 2);
    std::vector<Complex> avoid = t1.flattened();
    const auto pts = sampling::separated_points(rng, 2, 0.9, 0.2, avoid);
    const BlaschkeProduct t2({{pts[0], 2}, {pts[1], 1}});
    const CoronaSolution s = bezout_solve(t1, t2);
    CHECK(grid_residual(t1, t2, s, 1000) < 1e-8);
    CHECK(s.delta >= separation_lower_bound(t1.flattened(), t2.flattened()) - 1e-12);
  }
}

TEST_CASE("separation lower bound") {
  const std::vector<Complex> e0 = {0.0};
  const std::vector<Complex> f0 = {0.8};
  CHECK(std::abs(separation_lower_bound(e0, f0) - 0.2) < 1e-15);
  const std::vector<Complex> e1 = {0.0, 0.1};
  const std::vector<Complex> f1 = {0.9};
  CHECK(std::abs(separation_lower_bound(e1, f1) - 0.04) < 1e-15);
  const std::vector<Complex> none;
  CHECK_THROWS_CODE(separation_lower_bound(none, f1), Errc::EmptySet);
}

TEST_CASE("grid infimum of |z| + |b_0.8(z)|") {
  const auto t1 = simple({0.0});
  const auto t2 = BlaschkeProduct::factor(0.8);
  double inf = 10.0;
  const int radial = 316;
  const int angular = 317;
  for (int i = 0; i <= radial; ++i) {
    const double r = static_cast<double>(i) / radial;
    for (int j = 0; j < angular; ++j) {
      const Complex z = std::polar(r, 2.0 * std::numbers::pi * j / angular);
      inf = std::min(inf, std::abs(t1(z)) + std::abs(t2(z)));
    }
  }
  CHECK(inf >= 0.2);
  const double delta = disk_infimum(t1, t2);
  CHECK(delta >= 0.2);
  CHECK(delta <= inf + 1e-12);
}

TEST_CASE("cluster split") {
  const std::vector<Complex> pair = {0.0, 0.9};
  const ClusterSplit a = cluster_split(pair, 0.8);
  CHECK(a.k == 1);
  CHECK(a.e == std::vector<Complex>{0.0});
  CHECK(a.f == std::vector<Complex>{0.9});
  const std::vector<Complex> four = {0.0, 0.04, 0.08, 0.9};
  const ClusterSplit b = cluster_split(four, 0.8);
  CHECK(b.k == 2);
  CHECK(b.e.size() == 3);
  CHECK(b.f == std::vector<Complex>{0.9});
  const std::vector<Complex> single = {Complex(0.2, 0.1)};
  const ClusterSplit c = cluster_split(single, 0.5);
  CHECK(c.k == 1);
  CHECK(c.degenerate);
  CHECK(c.f.empty());
  const std::vector<Complex> none;
  CHECK_THROWS_CODE(cluster_split(none, 0.5), Errc::InvalidInput);
}

TEST_CASE("cluster split brute force") {
  auto rng = sampling::stream(17, 0, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = sampling::uniform_int(rng, 1, 8);
    std::vector<Complex> pts;
    for (int k = 0; k < n; ++k) pts.push_back(sampling::disk_point(rng, 0.9));
    const double eps = sampling::uniform(rng, 0.05, 1.0);
    const ClusterSplit s = cluster_split(pts, eps);
    CHECK(s.e.size() + s.f.size() == pts.size());
    CHECK(std::abs(s.threshold - std::ldexp(eps, -(n + 1 - s.k))) < 1e-15);
    for (const Complex e : s.e) CHECK(std::abs(e - pts[0]) <= s.threshold);
    for (const Complex f : s.f) {
      for (const Complex e : s.e) CHECK(std::abs(e - f) >= s.threshold);
    }
    // No smaller k works.
    for (int k = 1; k < s.k; ++k) {
      const double th = std::ldexp(eps, -(n + 1 - k));
      bool ok = true;
      for (const Complex p : pts) {
        if (std::abs(p - pts[0]) <= th) continue;
        for (const Complex q : pts) {
          if (std::abs(q - pts[0]) <= th && std::abs(p - q) < th) ok = false;
        }
      }
      CHECK_FALSE(ok);
    }
  }
}

TEST_CASE("split similarity") {
  const auto t1 = simple({0.0});
  const auto t2 = BlaschkeProduct::factor(0.5);
  const ContractionOperator op(jordan_block(t1 * t2));
  const SplitCertificate cert = split_similarity(op, t1, t2);
  CHECK(cert.residual < 1e-9);
  CHECK(cert.norm_x_inv <= std::sqrt(2.0) + 1e-9);
  CHECK(cert.norm_x <= cert.bound_x + 1e-6);
  CHECK(cert.block1.rows() == 1);
  CHECK(cert.block2.rows() == 1);

  const auto a = BlaschkeProduct({{Complex(0.3, 0.2), 2}});
  const auto b = simple({-0.4, Complex(0.1, -0.6)});
  Matrix sum = Matrix::Zero(4, 4);
  sum.topLeftCorner(2, 2) = jordan_block(a);
  sum.bottomRightCorner(2, 2) = jordan_block(b);
  const SplitCertificate diag = split_similarity(ContractionOperator(sum), a, b);
  CHECK(std::isfinite(linalg::condition_number(diag.x)));
  CHECK(diag.residual < 1e-9);
  CHECK(diag.norm_x_inv <= std::sqrt(2.0) + 1e-9);
  CHECK(diag.norm_x <= diag.bound_x + 1e-6);

  CHECK_THROWS_CODE(split_similarity(ContractionOperator(jordan_block(a * a)), a, a), Errc::NotCoprime);
  CHECK_THROWS_CODE(split_similarity(op, t1, simple({0.3})), Errc::MinimalFunctionMismatch);
}

}
