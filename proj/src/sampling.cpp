#include "c0model/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "c0model/linalg.hpp"

namespace c0::sampling {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng stream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t trial) {
  const std::uint64_t key = mix(mix(mix(seed) ^ stream_id) ^ trial);
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  return Rng(seq);
}

double uniform(Rng& rng, double lo, double hi) {
  // Built from raw bits so results do not depend on the standard library.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int uniform_int(Rng& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(rng() % span);
}

Complex complex_normal(Rng& rng) {
  // Box-Muller on two uniforms in (0, 1].
  const double u1 = 1.0 - uniform(rng, 0.0, 1.0);
  const double u2 = uniform(rng, 0.0, 1.0);
  const double r = std::sqrt(-std::log(u1));
  return std::polar(r, 2.0 * std::numbers::pi * u2);
}

Vector normal_vector(Rng& rng, Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal(rng);
  return v;
}

Vector unit_vector(Rng& rng, Eigen::Index n) { return normal_vector(rng, n).normalized(); }

Matrix normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal(rng);
  }
  return m;
}

Complex disk_point(Rng& rng, double radius) {
  const double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
  return std::polar(r, uniform(rng, -std::numbers::pi, std::numbers::pi));
}

std::vector<Complex> separated_points(Rng& rng, int count, double radius, double separation,
                                      const std::vector<Complex>& avoid) {
  std::vector<Complex> pts;
  int attempts = 0;
  while (static_cast<int>(pts.size()) < count) {
    if (++attempts > 100000) throw Error(Errc::InvalidInput, "cannot place separated points");
    const Complex z = disk_point(rng, radius);
    auto far = [&](Complex w) { return std::abs(z - w) >= separation; };
    if (std::all_of(pts.begin(), pts.end(), far) && std::all_of(avoid.begin(), avoid.end(), far)) pts.push_back(z);
  }
  return pts;
}

BlaschkeProduct random_blaschke(Rng& rng, int degree, double radius, double separation, int max_mult) {
  std::vector<int> mults;
  int total = 0;
  while (total < degree) {
    const int m = std::min(uniform_int(rng, 1, std::max(1, max_mult)), degree - total);
    mults.push_back(m);
    total += m;
  }
  const std::vector<Complex> pts = separated_points(rng, static_cast<int>(mults.size()), radius, separation);
  std::vector<Zero> zeros;
  for (std::size_t i = 0; i < pts.size(); ++i) zeros.push_back({pts[i], mults[i]});
  return BlaschkeProduct(std::move(zeros));
}

Matrix random_unitary(Rng& rng, Eigen::Index n) {
  const Matrix g = normal_matrix(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix conditioned_matrix(Rng& rng, Eigen::Index n, double cond) {
  const Matrix u = random_unitary(rng, n);
  const Matrix v = random_unitary(rng, n);
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double f = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
    s(i) = std::pow(cond, f);
  }
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

RationalFunction random_rational(Rng& rng, int num_degree, int den_degree, double pole_min, double pole_max) {
  poly::Poly num;
  for (int k = 0; k <= num_degree; ++k) num.push_back(complex_normal(rng) / std::sqrt(static_cast<double>(num_degree + 1)));
  std::vector<Complex> poles;
  for (int k = 0; k < den_degree; ++k) {
    poles.push_back(std::polar(uniform(rng, pole_min, pole_max), uniform(rng, -std::numbers::pi, std::numbers::pi)));
  }
  poly::Poly den = poly::from_roots(poles);
  // Normalize so the denominator is 1 at the origin.
  den = poly::scale(den, 1.0 / den.front());
  return RationalFunction(std::move(num), std::move(den));
}

Planted stein_contraction(Rng& rng, const Matrix& s, double target_cond) {
  const Eigen::Index n = s.rows();
  Planted out;
  if (target_cond <= 1.0) {
    out.x = random_unitary(rng, n);
    out.t = out.x * s * out.x.adjoint();
    out.cond = 1.0;
    return out;
  }
  const Matrix b = normal_matrix(rng, n, n);
  Matrix g = b * b.adjoint();
  g /= linalg::opnorm(g);
  // Smith doubling for W - S^* W S = G.
  Matrix w = g;
  Matrix a = s;
  for (int it = 0; it < 64 && linalg::opnorm(a) > 1e-18; ++it) {
    w = w + a.adjoint() * w * a;
    a = a * a;
  }
  w = (w + w.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(w);
  const double lo = eig.eigenvalues()(0);
  const double hi = eig.eigenvalues()(n - 1);
  const double c2 = target_cond * target_cond;
  double shift = 0.0;
  if (c2 > 1.0 && hi / lo > c2) shift = (hi - c2 * lo) / (c2 - 1.0);
  Eigen::VectorXd root = (eig.eigenvalues().array() + shift).sqrt();
  const Matrix sqrt_p = eig.eigenvectors() * root.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
  out.x = random_unitary(rng, n) * sqrt_p;
  out.t = out.x * s * out.x.inverse();
  out.cond = linalg::condition_number(out.x);
  return out;
}

Planted conjugated(Rng& rng, const Matrix& s, double cond) {
  Planted out;
  out.x = conditioned_matrix(rng, s.rows(), cond);
  out.t = out.x * s * out.x.inverse();
  out.cond = linalg::condition_number(out.x);
  return out;
}

JordanModel random_jordan_model(Rng& rng, int max_dim, double radius, double separation) {
  const int distinct = uniform_int(rng, 1, std::max(1, std::min(4, max_dim)));
  const std::vector<Complex> pts = separated_points(rng, distinct, radius, separation);
  // Partition of each eigenvalue's multiplicity into block sizes.
  std::vector<std::vector<int>> sizes(static_cast<std::size_t>(distinct));
  int budget = uniform_int(rng, distinct, max_dim);
  for (int i = 0; i < distinct; ++i) {
    const int remaining_points = distinct - i - 1;
    const int mult = i + 1 == distinct ? budget : uniform_int(rng, 1, budget - remaining_points);
    budget -= mult;
    int left = mult;
    while (left > 0) {
      const int b = uniform_int(rng, 1, left);
      sizes[static_cast<std::size_t>(i)].push_back(b);
      left -= b;
    }
    std::sort(sizes[static_cast<std::size_t>(i)].rbegin(), sizes[static_cast<std::size_t>(i)].rend());
  }
  std::size_t count = 0;
  for (const auto& s : sizes) count = std::max(count, s.size());
  std::vector<BlaschkeProduct> blocks;
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<Zero> zeros;
    for (int i = 0; i < distinct; ++i) {
      const auto& s = sizes[static_cast<std::size_t>(i)];
      if (j < s.size()) zeros.push_back({pts[static_cast<std::size_t>(i)], s[j]});
    }
    blocks.emplace_back(std::move(zeros));
  }
  return JordanModel(std::move(blocks));
}

}  // namespace c0::sampling
