#include "c0model/corona.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "c0model/linalg.hpp"

namespace c0 {

namespace {

using Series = std::vector<Complex>;

constexpr double kResidualLimit = 1e-8;

Series series_mul(const Series& a, const Series& b) {
  Series out(a.size(), Complex(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Taylor coefficients of 1/theta around z0, orders 0..len-1.
Series reciprocal_taylor(const BlaschkeProduct& theta, Complex z0, std::size_t len) {
  Series acc(len, Complex(0.0));
  acc[0] = 1.0 / theta.constant();
  for (const Zero& zero : theta.zeros()) {
    const Complex a = zero.location;
    const Complex a_bar = std::conj(a);
    const Complex head = 1.0 - a_bar * z0;
    const Complex d = z0 - a;
    // (head - conj(a) h) / (d + h) = (head - conj(a) h) sum_k (-h)^k / d^{k+1}
    Series geometric(len);
    Complex term = 1.0 / d;
    for (std::size_t k = 0; k < len; ++k) {
      geometric[k] = term;
      term *= -1.0 / d;
    }
    Series factor(len, Complex(0.0));
    for (std::size_t k = 0; k < len; ++k) {
      factor[k] += head * geometric[k];
      if (k + 1 < len) factor[k + 1] -= a_bar * geometric[k];
    }
    const Complex phase = factor_phase(a);
    for (Complex& c : factor) c *= phase;
    for (int m = 0; m < zero.multiplicity; ++m) acc = series_mul(acc, factor);
  }
  return acc;
}

// Hermite interpolant of 1/theta1 at the zeros of theta2, monomial form.
poly::Poly hermite_reciprocal(const BlaschkeProduct& theta1, const BlaschkeProduct& theta2) {
  std::vector<Complex> nodes;
  std::vector<Series> taylor;
  for (const Zero& z : theta2.zeros()) {
    const Series s = reciprocal_taylor(theta1, z.location, static_cast<std::size_t>(z.multiplicity));
    for (int k = 0; k < z.multiplicity; ++k) {
      nodes.push_back(z.location);
      taylor.push_back(s);
    }
  }
  const std::size_t m = nodes.size();
  if (m == 0) return {Complex(0.0)};
  std::vector<Series> dd(m, Series(m, Complex(0.0)));
  for (std::size_t i = 0; i < m; ++i) dd[i][0] = taylor[i][0];
  for (std::size_t j = 1; j < m; ++j) {
    for (std::size_t i = j; i < m; ++i) {
      if (nodes[i] == nodes[i - j]) {
        dd[i][j] = taylor[i][j];
      } else {
        dd[i][j] = (dd[i][j - 1] - dd[i - 1][j - 1]) / (nodes[i] - nodes[i - j]);
      }
    }
  }
  poly::Poly p{dd[m - 1][m - 1]};
  for (std::size_t k = m - 1; k-- > 0;) {
    p = poly::mul(p, poly::Poly{-nodes[k], 1.0});
    p[0] += dd[k][k];
  }
  return p;
}

double min_zero_distance(const BlaschkeProduct& a, const BlaschkeProduct& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const Zero& x : a.zeros()) {
    for (const Zero& y : b.zeros()) best = std::min(best, std::abs(x.location - y.location));
  }
  return best;
}

Complex unit_point(int k, int count) {
  return std::polar(1.0, 2.0 * std::numbers::pi * k / count);
}

Complex project_to_disk(Complex z) {
  const double r = std::abs(z);
  return r > 1.0 ? z / r : z;
}

}  // namespace

double disk_infimum(const BlaschkeProduct& theta1, const BlaschkeProduct& theta2) {
  auto g = [&](Complex z) { return std::abs(theta1(z)) + std::abs(theta2(z)); };
  std::vector<std::pair<double, Complex>> candidates;
  constexpr int kRadii = 64;
  constexpr int kAngles = 256;
  candidates.emplace_back(g(0.0), Complex(0.0));
  for (int i = 1; i <= kRadii; ++i) {
    const double r = static_cast<double>(i) / kRadii;
    for (int j = 0; j < kAngles; ++j) {
      const Complex z = r * unit_point(j, kAngles);
      candidates.emplace_back(g(z), z);
    }
  }
  for (const auto* theta : {&theta1, &theta2}) {
    for (const Zero& z : theta->zeros()) candidates.emplace_back(g(z.location), z.location);
  }
  const std::size_t keep = std::min<std::size_t>(8, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), candidates.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  double best = candidates.front().first;
  const Complex directions[] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
  for (std::size_t c = 0; c < keep; ++c) {
    auto [value, z] = candidates[c];
    double step = 1.0 / kRadii;
    for (int iter = 0; iter < 400 && step > 1e-13; ++iter) {
      bool moved = false;
      for (Complex d : directions) {
        const Complex trial = project_to_disk(z + step * d);
        const double v = g(trial);
        if (v < value) {
          value = v;
          z = trial;
          moved = true;
          break;
        }
      }
      if (!moved) step /= 2.0;
    }
    best = std::min(best, value);
  }
  return best;
}

CoronaSolution bezout_solve(const BlaschkeProduct& theta1, const BlaschkeProduct& theta2) {
  const double gap = min_zero_distance(theta1, theta2);
  if (gap < tol::kZeroMerge) throw Error(Errc::NotCoprime, "theta1 and theta2 share a zero");
  if (gap < 10.0 * tol::kZeroMerge) {
    throw Error(Errc::IllConditioned, "zeros of theta1 and theta2 nearly collide (distance " +
                                          std::to_string(gap) + ")");
  }
  const RationalFunction r1 = theta1.to_rational();
  const RationalFunction r2 = theta2.to_rational();
  const poly::Poly p = hermite_reciprocal(theta1, theta2);
  // 1 - theta1 p = (D1 - N1 p) / D1, and N2 divides D1 - N1 p exactly.
  const poly::Poly top = poly::sub(r1.denominator(), poly::mul(r1.numerator(), p));
  const poly::Division division = poly::divide(top, r2.numerator());
  poly::Poly quotient = division.quotient;
  if (quotient.empty()) quotient = {Complex(0.0)};

  CoronaSolution sol;
  sol.u1 = RationalFunction::polynomial(p);
  sol.u2 = RationalFunction::trusted(poly::mul(quotient, r2.denominator()), r1.denominator());
  sol.remainder = poly::coefficient_norm(division.remainder);
  for (int k = 0; k < kResidualGrid; ++k) {
    const Complex z = unit_point(k, kResidualGrid);
    const double err = std::abs(theta1(z) * sol.u1(z) + theta2(z) * sol.u2(z) - 1.0);
    sol.residual = std::max(sol.residual, err);
  }
  sol.norm1 = supnorm_boundary(sol.u1);
  sol.norm2 = supnorm_boundary(sol.u2);
  sol.delta = disk_infimum(theta1, theta2);
  if (!(sol.residual < kResidualLimit)) {
    throw Error(Errc::IllConditioned, "Bezout residual " + std::to_string(sol.residual) +
                                          " (delta " + std::to_string(sol.delta) + ")");
  }
  return sol;
}

double separation_lower_bound(std::span<const Complex> e, std::span<const Complex> f) {
  if (e.empty() || f.empty()) throw Error(Errc::EmptySet, "separation needs two nonempty sets");
  double r = std::numeric_limits<double>::infinity();
  for (Complex a : e) {
    for (Complex b : f) r = std::min(r, std::abs(a - b));
  }
  const auto n = static_cast<double>(std::max(e.size(), f.size()));
  return std::pow(r / 4.0, n);
}

ClusterSplit cluster_split(std::span<const Complex> zeros, double eps) {
  if (zeros.empty()) throw Error(Errc::InvalidInput, "cluster_split needs at least one point");
  if (!(eps > 0.0)) throw Error(Errc::InvalidInput, "cluster_split needs eps > 0");
  const int n = static_cast<int>(zeros.size());
  const Complex anchor = zeros.front();
  for (int k = 1; k <= n; ++k) {
    const double threshold = std::ldexp(eps, -(n + 1 - k));
    ClusterSplit split;
    split.k = k;
    split.threshold = threshold;
    std::vector<Complex> rest;
    for (Complex z : zeros) {
      (std::abs(z - anchor) <= threshold ? split.e : rest).push_back(z);
    }
    bool ok = true;
    for (Complex z : rest) {
      for (Complex e : split.e) {
        if (std::abs(z - e) < threshold) ok = false;
      }
    }
    if (!ok) continue;
    split.f = std::move(rest);
    split.degenerate = split.f.empty();
    // Brute-force recheck of the defining conditions.
    bool valid = split.e.size() + split.f.size() == zeros.size() && !split.e.empty();
    for (Complex e : split.e) valid = valid && std::abs(e - anchor) <= threshold;
    for (Complex f : split.f) {
      for (Complex e : split.e) valid = valid && std::abs(f - e) >= threshold;
    }
    if (!valid) throw Error(Errc::NumericalFailure, "cluster split failed its own verification");
    return split;
  }
  throw Error(Errc::NumericalFailure, "no admissible cluster split");
}

SplitCertificate split_with(const Matrix& t, const BlaschkeProduct& theta1, const BlaschkeProduct& theta2,
                            const CoronaSolution& corona, Eigen::Index dim1, Eigen::Index dim2) {
  const Eigen::Index n = t.rows();
  SplitCertificate cert;
  cert.corona = corona;
  const Matrix to1 = apply_function(theta2, t) * apply_function(corona.u2, t);
  const Matrix to2 = apply_function(theta1, t) * apply_function(corona.u1, t);
  cert.q1 = kernel_basis(t, theta1, dim1);
  cert.q2 = kernel_basis(t, theta2, dim2);
  cert.x.resize(dim1 + dim2, n);
  cert.x.topRows(dim1) = cert.q1.adjoint() * to1;
  cert.x.bottomRows(dim2) = cert.q2.adjoint() * to2;
  Eigen::PartialPivLU<Matrix> lu(cert.x);
  cert.x_inv = lu.inverse();
  cert.block1 = cert.q1.adjoint() * t * cert.q1;
  cert.block2 = cert.q2.adjoint() * t * cert.q2;
  Matrix blocks = Matrix::Zero(n, n);
  blocks.topLeftCorner(dim1, dim1) = cert.block1;
  blocks.bottomRightCorner(dim2, dim2) = cert.block2;
  Matrix q(n, dim1 + dim2);
  q << cert.q1, cert.q2;
  cert.norm_x = linalg::opnorm(cert.x);
  cert.norm_x_inv = linalg::opnorm(cert.x_inv);
  cert.bound_x = std::hypot(corona.norm1, corona.norm2);
  cert.residual = linalg::opnorm(cert.x * t * cert.x_inv - blocks);
  cert.inverse_residual = linalg::opnorm(cert.x * q - Matrix::Identity(n, n));
  return cert;
}

SplitCertificate split_similarity(const ContractionOperator& t, const BlaschkeProduct& theta1,
                                  const BlaschkeProduct& theta2, const CoronaSolution& corona) {
  if (!lattice(theta1, theta2).gcd.is_constant()) throw Error(Errc::NotCoprime, "theta1 and theta2 share a zero");
  if (!same_zeros(t.minimal_function(), theta1 * theta2)) {
    throw Error(Errc::MinimalFunctionMismatch, "minimal function of T is not theta1 theta2");
  }
  const auto& structure = t.structure();
  return split_with(t.matrix(), theta1, theta2, corona, kernel_dimension(structure, theta1),
                    kernel_dimension(structure, theta2));
}

SplitCertificate split_similarity(const ContractionOperator& t, const BlaschkeProduct& theta1,
                                  const BlaschkeProduct& theta2) {
  if (!lattice(theta1, theta2).gcd.is_constant()) throw Error(Errc::NotCoprime, "theta1 and theta2 share a zero");
  return split_similarity(t, theta1, theta2, bezout_solve(theta1, theta2));
}

}  // namespace c0
