#pragma once

// Dense linear-algebra helpers built on Eigen's SVD.

#include <span>
#include <vector>

#include "c0model/types.hpp"

namespace c0::linalg {

Eigen::VectorXd singular_values(const Matrix& a);

/// Largest singular value.
double opnorm(const Matrix& a);

/// sigma_max / sigma_min (infinity for singular input).
double condition_number(const Matrix& a);

/// Orthonormal basis of the numerical nullspace: right singular vectors with
/// sigma <= rel * sigma_1 (all of them when sigma_1 == 0).
/// Singular values at or below `floor` are also treated as zero.
Matrix nullspace(const Matrix& a, double rel = tol::kRankRelative, double floor = 0.0);

/// Right singular vectors for the `dim` smallest singular values.
Matrix smallest_right_singular(const Matrix& a, Eigen::Index dim);

/// Orthonormal basis of the numerical column space.
Matrix orthonormal_range(const Matrix& a, double rel = tol::kRankRelative);

/// ||P1 - P2|| for the orthogonal projections onto span(q1), span(q2);
/// the sine of the largest principal angle when dimensions agree.
double subspace_distance(const Matrix& q1, const Matrix& q2);

/// ||(I - Q2 Q2^*) Q1||: zero iff span(q1) is inside span(q2).
double inclusion_gap(const Matrix& q1, const Matrix& q2);

/// Hausdorff distance between two finite point sets.
double hausdorff(std::span<const Complex> a, std::span<const Complex> b);

/// Multiset matching distance: smallest max |a_i - b_pi(i)| over greedy
/// nearest-neighbour assignment (sizes must agree, else infinity).
double matching_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Weyr characteristic w_k = dim ker M^k - dim ker M^{k-1} via the staircase
/// reduction: after splitting off ker M the next nullity is read from the
/// compression of M to the orthogonal complement of the kernel, so no matrix
/// power is ever formed. Singular values <= cutoff count as zero.
std::vector<int> weyr_characteristic(const Matrix& m, double cutoff);

/// Complex orthonormal basis (unit columns, mutually orthogonal) from QR.
Matrix orthonormalize(const Matrix& a);

/// Stack generators for a Sylvester nullspace: rows of (G^T (x) I - I (x) G)
/// for each G, so that vec(X) is in the nullspace iff XG = GX for all G.
Matrix commutation_system(std::span<const Matrix> generators, Eigen::Index n);

}  // namespace c0::linalg
