#include "c0model/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>

#include "c0model/linalg.hpp"

namespace c0 {

namespace {

constexpr double kInitialClusterRadius = 0.1;
constexpr double kSmallestClusterRadius = 1e-14;
constexpr double kResolventRcond = 1e-14;

int find_root(std::vector<int>& parent, int i) {
  while (parent[static_cast<std::size_t>(i)] != i) {
    parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
    i = parent[static_cast<std::size_t>(i)];
  }
  return i;
}

std::vector<std::vector<int>> single_linkage(const std::vector<Complex>& points,
                                             const std::vector<int>& members, double radius) {
  const int m = static_cast<int>(members.size());
  std::vector<int> parent(static_cast<std::size_t>(m));
  std::iota(parent.begin(), parent.end(), 0);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      const Complex pa = points[static_cast<std::size_t>(members[static_cast<std::size_t>(a)])];
      const Complex pb = points[static_cast<std::size_t>(members[static_cast<std::size_t>(b)])];
      if (std::abs(pa - pb) < radius) parent[static_cast<std::size_t>(find_root(parent, a))] = find_root(parent, b);
    }
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(static_cast<std::size_t>(m), -1);
  for (int a = 0; a < m; ++a) {
    const int r = find_root(parent, a);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(
        members[static_cast<std::size_t>(a)]);
  }
  return groups;
}

std::vector<int> blocks_from_weyr(const std::vector<int>& weyr) {
  std::vector<int> blocks;
  if (weyr.empty()) return blocks;
  for (int i = 0; i < weyr.front(); ++i) {
    int size = 0;
    for (int w : weyr) {
      if (w > i) ++size;
    }
    blocks.push_back(size);
  }
  return blocks;
}

bool canonical_less(Complex a, Complex b) {
  const double ma = std::abs(a);
  const double mb = std::abs(b);
  if (std::abs(ma - mb) > tol::kZeroMerge) return ma < mb;
  return std::arg(a) < std::arg(b);
}

Eigen::PartialPivLU<Matrix> checked_lu(const Matrix& q, const char* what) {
  Eigen::PartialPivLU<Matrix> lu(q);
  if (!(lu.rcond() >= kResolventRcond)) throw Error(Errc::SingularResolvent, what);
  return lu;
}

Vector normal_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

}  // namespace

std::vector<Complex> disk_eigenvalues(const Matrix& t) {
  if (t.rows() != t.cols()) throw Error(Errc::InvalidInput, "operator must be square");
  if (t.rows() == 0) return {};
  Eigen::ComplexEigenSolver<Matrix> solver(t, false);
  if (solver.info() != Eigen::Success) throw Error(Errc::NumericalFailure, "eigenvalue iteration failed");
  std::vector<Complex> values(solver.eigenvalues().data(), solver.eigenvalues().data() + t.rows());
  for (Complex v : values) {
    if (!(std::abs(v) < 1.0 - tol::kSpectralMargin)) {
      throw Error(Errc::EigenvalueOnCircle, "eigenvalue of modulus " + std::to_string(std::abs(v)));
    }
  }
  return values;
}

std::vector<SpectralCluster> spectral_structure(const Matrix& t) {
  const std::vector<Complex> values = disk_eigenvalues(t);
  const Eigen::Index n = t.rows();
  std::vector<SpectralCluster> clusters;
  std::vector<int> all(values.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::pair<std::vector<int>, double>> work;
  if (!all.empty()) work.emplace_back(all, kInitialClusterRadius);
  while (!work.empty()) {
    auto [members, radius] = work.back();
    work.pop_back();
    for (const auto& group : single_linkage(values, members, radius)) {
      Complex center = 0.0;
      for (int i : group) center += values[static_cast<std::size_t>(i)];
      center /= static_cast<double>(group.size());
      const Matrix shifted = t - center * Matrix::Identity(n, n);
      const double cutoff = tol::kRankRelative * std::max(1.0, linalg::opnorm(shifted));
      std::vector<int> weyr = linalg::weyr_characteristic(shifted, cutoff);
      const int total = std::accumulate(weyr.begin(), weyr.end(), 0);
      if (total == static_cast<int>(group.size())) {
        SpectralCluster c;
        c.center = center;
        c.size = total;
        c.blocks = blocks_from_weyr(weyr);
        c.weyr = std::move(weyr);
        clusters.push_back(std::move(c));
      } else if (group.size() == 1 || radius < kSmallestClusterRadius) {
        throw Error(Errc::NumericalFailure, "Jordan structure is numerically ambiguous");
      } else {
        work.emplace_back(group, radius / 10.0);
      }
    }
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const SpectralCluster& a, const SpectralCluster& b) { return canonical_less(a.center, b.center); });
  return clusters;
}

struct ContractionOperator::Cache {
  std::once_flag once;
  std::vector<SpectralCluster> structure;
  BlaschkeProduct theta;
  JordanModel model;
};

ContractionOperator::ContractionOperator(Matrix m) : m_(std::move(m)), cache_(std::make_shared<Cache>()) {
  if (m_.rows() != m_.cols()) throw Error(Errc::InvalidInput, "operator must be square");
  norm_ = linalg::opnorm(m_);
  if (norm_ > 1.0 + tol::kContraction) {
    throw Error(Errc::NotAContraction, "largest singular value " + std::to_string(norm_));
  }
  eigenvalues_ = disk_eigenvalues(m_);
}

const std::vector<SpectralCluster>& ContractionOperator::structure() const {
  std::call_once(cache_->once, [this] {
    cache_->structure = spectral_structure(m_);
    cache_->theta = c0::minimal_function(cache_->structure);
    cache_->model = c0::jordan_model(cache_->structure);
  });
  return cache_->structure;
}

const BlaschkeProduct& ContractionOperator::minimal_function() const {
  structure();
  return cache_->theta;
}

const JordanModel& ContractionOperator::jordan_model() const {
  structure();
  return cache_->model;
}

Matrix apply_function(const RationalFunction& u, const Matrix& t) {
  const Matrix p = poly::eval(u.numerator(), t);
  const poly::Poly& den = u.denominator();
  if (den.size() == 1) return p / den.front();
  return checked_lu(poly::eval(den, t), "q(T) is numerically singular").solve(p);
}

Matrix blaschke_factor_at(Complex lambda, const Matrix& t) {
  const Eigen::Index n = t.rows();
  const Matrix id = Matrix::Identity(n, n);
  if (lambda == Complex(0.0)) return t;
  return checked_lu(id - std::conj(lambda) * t, "I - conj(lambda) T is numerically singular")
      .solve(t - lambda * id);
}

Vector blaschke_factor_apply(Complex lambda, const Matrix& t, const Vector& v) {
  if (lambda == Complex(0.0)) return t * v;
  const Eigen::Index n = t.rows();
  const Matrix resolvent = Matrix::Identity(n, n) - std::conj(lambda) * t;
  return checked_lu(resolvent, "I - conj(lambda) T is numerically singular").solve(t * v - lambda * v);
}

Matrix apply_function(const BlaschkeProduct& theta, const Matrix& t) {
  const Eigen::Index n = t.rows();
  Matrix result = theta.constant() * Matrix::Identity(n, n);
  for (const Zero& z : theta.zeros()) {
    const Matrix f = blaschke_factor_at(z.location, t) / factor_phase(z.location);
    for (int k = 0; k < z.multiplicity; ++k) result = result * f;
  }
  return result;
}

BlaschkeProduct minimal_function(std::span<const SpectralCluster> structure) {
  std::vector<Zero> zeros;
  for (const auto& c : structure) zeros.push_back({c.center, c.blocks.front()});
  return BlaschkeProduct(std::move(zeros));
}

BlaschkeProduct minimal_function(const Matrix& t) {
  const auto structure = spectral_structure(t);
  return minimal_function(structure);
}

JordanModel jordan_model(std::span<const SpectralCluster> structure) {
  std::size_t count = 0;
  for (const auto& c : structure) count = std::max(count, c.blocks.size());
  std::vector<BlaschkeProduct> blocks;
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<Zero> zeros;
    for (const auto& c : structure) {
      if (j < c.blocks.size()) zeros.push_back({c.center, c.blocks[j]});
    }
    blocks.emplace_back(std::move(zeros));
  }
  return JordanModel(std::move(blocks));
}

JordanModel jordan_model(const Matrix& t) {
  const auto structure = spectral_structure(t);
  return jordan_model(structure);
}

bool is_multiplicity_free(std::span<const SpectralCluster> structure) {
  return std::all_of(structure.begin(), structure.end(),
                     [](const SpectralCluster& c) { return c.blocks.size() <= 1; });
}

bool is_multiplicity_free(const Matrix& t) {
  const auto structure = spectral_structure(t);
  return is_multiplicity_free(structure);
}

Matrix partial_product_basis(const Matrix& t, std::span<const Complex> zeros, const Vector& xi) {
  const auto n = static_cast<Eigen::Index>(zeros.size());
  Matrix basis(t.rows(), n);
  Vector v = xi;
  for (Eigen::Index k = 0; k < n; ++k) {
    basis.col(k) = v;
    if (k + 1 < n) v = blaschke_factor_apply(zeros[static_cast<std::size_t>(k)], t, v);
  }
  return basis;
}

Matrix krylov_matrix(const Matrix& t, const Vector& xi) {
  const Eigen::Index n = t.rows();
  Matrix k(n, n);
  Vector v = xi;
  for (Eigen::Index j = 0; j < n; ++j) {
    k.col(j) = v;
    v = t * v;
  }
  return k;
}

double cyclicity_margin(const Matrix& t, const Vector& xi, const BlaschkeProduct& theta) {
  const Eigen::Index n = t.rows();
  if (n == 0) return 1.0;
  if (theta.degree() < n) return 0.0;
  const std::vector<Complex> zeros = theta.flattened();
  Matrix basis = partial_product_basis(t, zeros, xi);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double len = basis.col(k).norm();
    if (len == 0.0) return 0.0;
    basis.col(k) /= len;
  }
  const Eigen::VectorXd s = linalg::singular_values(basis);
  return s(n - 1) / s(0);
}

double cyclicity_margin(const Matrix& t, const Vector& xi) {
  return cyclicity_margin(t, xi, minimal_function(t));
}

bool is_cyclic(const Matrix& t, const Vector& xi, const BlaschkeProduct& theta) {
  return cyclicity_margin(t, xi, theta) > tol::kCyclic;
}

bool is_cyclic(const Matrix& t, const Vector& xi) { return is_cyclic(t, xi, minimal_function(t)); }

Vector find_cyclic_vector(const Matrix& t, std::uint64_t seed) {
  const auto structure = spectral_structure(t);
  if (!is_multiplicity_free(structure)) throw Error(Errc::NotMultiplicityFree, "no cyclic vector exists");
  const BlaschkeProduct theta = minimal_function(structure);
  std::mt19937_64 rng(seed);
  for (int draw = 0; draw < kCyclicDraws; ++draw) {
    Vector xi = normal_vector(rng, t.rows());
    xi.normalize();
    if (is_cyclic(t, xi, theta)) return xi;
  }
  throw Error(Errc::CyclicSearchFailed, "no draw passed the cyclicity test");
}

int kernel_dimension(std::span<const SpectralCluster> structure, const BlaschkeProduct& phi) {
  int dim = 0;
  for (const auto& c : structure) {
    int mult = 0;
    for (const Zero& z : phi.zeros()) {
      if (std::abs(z.location - c.center) < tol::kZeroMerge) mult += z.multiplicity;
    }
    for (int b : c.blocks) dim += std::min(b, mult);
  }
  return dim;
}

Matrix kernel_basis(const Matrix& t, const BlaschkeProduct& phi, Eigen::Index dim) {
  const Eigen::Index n = t.rows();
  if (dim == 0) return Matrix(n, 0);
  if (dim == n) return Matrix::Identity(n, n);
  return linalg::smallest_right_singular(apply_function(phi, t), dim);
}

namespace {

Matrix kernel_from_structure(const Matrix& t, std::span<const SpectralCluster> structure,
                             const BlaschkeProduct& theta, const BlaschkeProduct& phi) {
  if (!divides(phi, theta)) throw Error(Errc::NotADivisor, "phi does not divide the minimal function");
  return kernel_basis(t, phi, kernel_dimension(structure, phi));
}

}  // namespace

Matrix kernel_of_divisor(const Matrix& t, const BlaschkeProduct& phi) {
  const auto structure = spectral_structure(t);
  return kernel_from_structure(t, structure, minimal_function(structure), phi);
}

Matrix kernel_of_divisor(const ContractionOperator& t, const BlaschkeProduct& phi) {
  return kernel_from_structure(t.matrix(), t.structure(), t.minimal_function(), phi);
}

}  // namespace c0
