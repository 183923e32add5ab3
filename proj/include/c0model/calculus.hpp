#pragma once

// Rational functional calculus on matrices, minimal functions, Jordan models,
// cyclic vectors and kernels of divisors.
//
// Algebraic operations accept any square matrix whose spectrum lies in the
// open disk. Operations whose statements involve operator norms take a
// validated ContractionOperator instead.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "c0model/inner.hpp"
#include "c0model/modelspace.hpp"

namespace c0 {

/// Eigenvalues of a square matrix. Throws EigenvalueOnCircle when some
/// |lambda| >= 1 - tol::kSpectralMargin.
std::vector<Complex> disk_eigenvalues(const Matrix& t);

/// One group of numerically coincident eigenvalues.
struct SpectralCluster {
  Complex center;              // mean of the member eigenvalues
  int size = 0;                // algebraic multiplicity
  std::vector<int> weyr;       // w_1 >= w_2 >= ..., sum == size
  std::vector<int> blocks;     // Jordan block sizes, descending
};

/// Clusters the spectrum (single linkage, radius shrinking from 0.1 by
/// factors of 10 until every cluster's Weyr characteristic accounts for its
/// whole size) and reads off the Jordan structure of each cluster.
std::vector<SpectralCluster> spectral_structure(const Matrix& t);

class ContractionOperator {
 public:
  /// Throws NotAContraction when sigma_1 > 1 + tol::kContraction and
  /// EigenvalueOnCircle when the spectrum reaches the circle.
  explicit ContractionOperator(Matrix m);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dimension() const { return m_.rows(); }
  double norm() const { return norm_; }
  const std::vector<Complex>& eigenvalues() const { return eigenvalues_; }

  /// Lazily computed once and shared between copies.
  const std::vector<SpectralCluster>& structure() const;
  const BlaschkeProduct& minimal_function() const;
  const JordanModel& jordan_model() const;

 private:
  struct Cache;

  Matrix m_;
  double norm_ = 0.0;
  std::vector<Complex> eigenvalues_;
  std::shared_ptr<Cache> cache_;
};

/// u(T) = q(T)^{-1} p(T). Throws SingularResolvent when q(T) is numerically
/// singular (reciprocal condition below 1e-14).
Matrix apply_function(const RationalFunction& u, const Matrix& t);

/// theta(T) as the product of its factors (I - conj(l) T)^{-1} (T - l I).
Matrix apply_function(const BlaschkeProduct& theta, const Matrix& t);

/// Plain b_lambda(T).
Matrix blaschke_factor_at(Complex lambda, const Matrix& t);

/// b_lambda(T) v without forming the matrix.
Vector blaschke_factor_apply(Complex lambda, const Matrix& t, const Vector& v);

BlaschkeProduct minimal_function(const Matrix& t);
BlaschkeProduct minimal_function(std::span<const SpectralCluster> structure);

JordanModel jordan_model(const Matrix& t);
JordanModel jordan_model(std::span<const SpectralCluster> structure);

/// Jordan model with at most one block.
bool is_multiplicity_free(const Matrix& t);
bool is_multiplicity_free(std::span<const SpectralCluster> structure);

/// Columns xi, b_{l1}(T) xi, (b_{l1} b_{l2})(T) xi, ... (zeros.size() columns).
Matrix partial_product_basis(const Matrix& t, std::span<const Complex> zeros, const Vector& xi);

/// Columns xi, T xi, ..., T^{N-1} xi.
Matrix krylov_matrix(const Matrix& t, const Vector& xi);

/// sigma_min / sigma_max of the column-normalized partial-product basis built
/// from the zeros of the minimal function. This spans the same subspace as
/// the Krylov matrix and is far better conditioned. Zero when deg theta < N.
double cyclicity_margin(const Matrix& t, const Vector& xi);
double cyclicity_margin(const Matrix& t, const Vector& xi, const BlaschkeProduct& theta);

bool is_cyclic(const Matrix& t, const Vector& xi);
bool is_cyclic(const Matrix& t, const Vector& xi, const BlaschkeProduct& theta);

inline constexpr int kCyclicDraws = 16;

/// Unit cyclic vector from at most kCyclicDraws seeded complex-normal draws.
/// Throws NotMultiplicityFree or CyclicSearchFailed.
Vector find_cyclic_vector(const Matrix& t, std::uint64_t seed = 0);

/// Orthonormal basis of ker phi(T). The dimension is read from the Jordan
/// structure (sum over blocks of min(block size, multiplicity of the block's
/// eigenvalue in phi)) and the basis is the matching set of smallest right
/// singular vectors of phi(T). Throws NotADivisor unless phi divides the
/// minimal function.
Matrix kernel_of_divisor(const Matrix& t, const BlaschkeProduct& phi);
Matrix kernel_of_divisor(const ContractionOperator& t, const BlaschkeProduct& phi);

/// Expected dim ker phi(T) from a Jordan structure.
int kernel_dimension(std::span<const SpectralCluster> structure, const BlaschkeProduct& phi);

/// The `dim` smallest right singular vectors of phi(T).
Matrix kernel_basis(const Matrix& t, const BlaschkeProduct& phi, Eigen::Index dim);

}  // namespace c0
