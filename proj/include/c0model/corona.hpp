#pragma once

// Bezout identities for coprime finite Blaschke products, the separation
// bound, the cluster split and the block-diagonalizing similarity.

#include <span>
#include <vector>

#include "c0model/calculus.hpp"
#include "c0model/inner.hpp"

namespace c0 {

struct CoronaSolution {
  RationalFunction u1;
  RationalFunction u2;
  double residual = 0.0;   // max |theta1 u1 + theta2 u2 - 1| on the boundary grid
  double norm1 = 0.0;      // sup |u1| on the circle
  double norm2 = 0.0;      // sup |u2| on the circle
  double delta = 0.0;      // estimate of inf over the disk of |theta1| + |theta2|
  double remainder = 0.0;  // coefficient norm of the remainder in the exact division
};

/// u1 is the Hermite interpolant (degree < deg theta2) of 1/theta1 at the
/// zeros of theta2; u2 = (1 - theta1 u1) / theta2 with the polynomial part
/// obtained by exact division. Throws NotCoprime when zeros of the two
/// products coincide within tol::kZeroMerge and IllConditioned when they are
/// closer than 10 tol::kZeroMerge or the identity residual reaches 1e-8.
CoronaSolution bezout_solve(const BlaschkeProduct& theta1, const BlaschkeProduct& theta2);

/// Boundary-grid size for the Bezout residual.
inline constexpr int kResidualGrid = 8192;

/// (r/4)^N with r = min |e - f| and N = max(|E|, |F|). Throws EmptySet.
double separation_lower_bound(std::span<const Complex> e, std::span<const Complex> f);

/// Estimate of inf over the closed disk of |theta1(z)| + |theta2(z)|: polar
/// grid plus the zeros of both products, then compass-search refinement of
/// the best candidates. The result is an attained value, hence never below
/// the true infimum.
double disk_infimum(const BlaschkeProduct& theta1, const BlaschkeProduct& theta2);

struct ClusterSplit {
  int k = 1;
  double threshold = 0.0;
  std::vector<Complex> e;
  std::vector<Complex> f;
  bool degenerate = false;  // F is empty
};

/// Smallest k in 1..N such that, with threshold eps 2^{-(N+1-k)}, every
/// point is either within the threshold of the anchor (the first entry) or
/// at least the threshold away from all such points. The result is
/// re-verified by brute force before returning.
ClusterSplit cluster_split(std::span<const Complex> zeros, double eps);

struct SplitCertificate {
  Matrix x;        // [Q1^* (theta2 u2)(T) ; Q2^* (theta1 u1)(T)]
  Matrix x_inv;    // LU inverse of x
  Matrix q1;       // orthonormal basis of ker theta1(T)
  Matrix q2;       // orthonormal basis of ker theta2(T)
  Matrix block1;   // Q1^* T Q1
  Matrix block2;   // Q2^* T Q2
  double norm_x = 0.0;
  double norm_x_inv = 0.0;
  double bound_x = 0.0;           // sqrt(norm1^2 + norm2^2)
  double residual = 0.0;          // ||X T X^{-1} - block1 (+) block2||
  double inverse_residual = 0.0;  // ||X [Q1 Q2] - I||
  CoronaSolution corona;
};

/// Requires minimal_function(T) == theta1 theta2 (MinimalFunctionMismatch)
/// and gcd(theta1, theta2) == 1 (NotCoprime).
SplitCertificate split_similarity(const ContractionOperator& t, const BlaschkeProduct& theta1,
                                  const BlaschkeProduct& theta2);
SplitCertificate split_similarity(const ContractionOperator& t, const BlaschkeProduct& theta1,
                                  const BlaschkeProduct& theta2, const CoronaSolution& corona);

/// No precondition checks; the kernel dimensions are supplied by the caller.
SplitCertificate split_with(const Matrix& t, const BlaschkeProduct& theta1, const BlaschkeProduct& theta2,
                            const CoronaSolution& corona, Eigen::Index dim1, Eigen::Index dim2);

}  // namespace c0
