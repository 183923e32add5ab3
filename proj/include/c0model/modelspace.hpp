#pragma once

// Coordinates for the model space H(theta) = H^2 (-) theta H^2.
//
// The Takenaka-Malmquist basis attached to a zero sequence l_1, ..., l_N is
//
//     e_k(z) = sqrt(1 - |l_k|^2) / (1 - conj(l_k) z) * prod_{j<k} b_{l_j}(z)
//
// and is orthonormal in H^2. All operators below are matrices in this basis.

#include <optional>
#include <span>
#include <vector>

#include "c0model/inner.hpp"

namespace c0 {

struct ModelSpace {
  BlaschkeProduct theta;
  std::vector<Complex> zeros;  // basis order, repeated by multiplicity
  std::vector<RationalFunction> basis;

  int dimension() const { return static_cast<int>(zeros.size()); }

  /// e_k(z) evaluated directly from the product formula.
  Complex basis_value(int k, Complex z) const;
};

/// Basis in canonical zero order. Throws DegreeZero.
ModelSpace tm_basis(const BlaschkeProduct& theta);

/// Basis in a caller-chosen order; `order` must be a permutation of the
/// flattened zeros of theta (InvalidInput otherwise).
ModelSpace tm_basis(const BlaschkeProduct& theta, std::span<const Complex> order);

/// Flattened zeros of theta with those of the divisor phi first.
std::vector<Complex> divisor_first_order(const BlaschkeProduct& theta, const BlaschkeProduct& phi);

/// Compressed shift S(theta) in the TM basis (lower triangular).
Matrix jordan_block(const BlaschkeProduct& theta);
Matrix jordan_block(const BlaschkeProduct& theta, std::span<const Complex> order);

/// Matrix of the compressed shift for an explicit zero sequence.
Matrix compressed_shift(std::span<const Complex> zeros);

/// TM coordinates of k_lambda(z) = (1 - |lambda|^2) / (1 - conj(lambda) z).
/// <f, k_lambda> = (1 - |lambda|^2) f(lambda) for f in H(theta).
/// Throws NotARoot unless |theta(lambda)| <= 1e-8.
Vector model_kernel(const BlaschkeProduct& theta, Complex lambda);
Vector model_kernel(const BlaschkeProduct& theta, Complex lambda, std::span<const Complex> order);

class JordanModel {
 public:
  JordanModel() = default;

  /// Drops trailing constant blocks; throws InvalidInput unless each block
  /// divides its predecessor.
  explicit JordanModel(std::vector<BlaschkeProduct> blocks);

  const std::vector<BlaschkeProduct>& blocks() const { return blocks_; }
  int dimension() const;

 private:
  std::vector<BlaschkeProduct> blocks_;
};

/// Same block count and matching zero multisets blockwise.
bool same_model(const JordanModel& a, const JordanModel& b, double tol = tol::kZeroMerge);

/// Block diagonal sum of jordan_block(theta_k).
Matrix jordan_operator(const JordanModel& model);

}  // namespace c0
