#pragma once

// Seeded random instances for tests and experiments.

#include <cstdint>
#include <random>
#include <vector>

#include "c0model/inner.hpp"
#include "c0model/modelspace.hpp"

namespace c0::sampling {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
std::uint64_t mix(std::uint64_t x);

/// Independent generator for (seed, stream, trial).
Rng stream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t trial);

double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive
Complex complex_normal(Rng& rng);
Vector normal_vector(Rng& rng, Eigen::Index n);
Vector unit_vector(Rng& rng, Eigen::Index n);
Matrix normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Uniform in the disk |z| <= radius.
Complex disk_point(Rng& rng, double radius);

/// `count` points in |z| <= radius, pairwise at least `separation` apart and
/// at least `separation` from every point of `avoid`.
std::vector<Complex> separated_points(Rng& rng, int count, double radius, double separation,
                                      const std::vector<Complex>& avoid = {});

/// Distinct zeros drawn with separated_points, multiplicities in 1..max_mult,
/// total degree exactly `degree`.
BlaschkeProduct random_blaschke(Rng& rng, int degree, double radius, double separation, int max_mult = 1);

/// Haar unitary (QR of a complex Gaussian with phase correction).
Matrix random_unitary(Rng& rng, Eigen::Index n);

/// U diag(s) V^* with s log-spaced from 1 to cond.
Matrix conditioned_matrix(Rng& rng, Eigen::Index n, double cond);

/// Rational function with numerator degree `num_degree` and denominator
/// roots of modulus in [pole_min, pole_max].
RationalFunction random_rational(Rng& rng, int num_degree, int den_degree, double pole_min = 1.5,
                                 double pole_max = 4.0);

struct Planted {
  Matrix t;  // X S X^{-1}
  Matrix x;
  double cond = 1.0;
};

/// X S X^{-1} with X^* X = t I + sum_k (S^*)^k G S^k, G = B B^* > 0. The
/// Stein identity P - S^* P S = t (I - S^* S) + G >= G makes the result a
/// strict contraction whenever S is a contraction. t is chosen so that
/// cond(X) equals `target_cond` when possible (smaller otherwise).
Planted stein_contraction(Rng& rng, const Matrix& s, double target_cond);

/// X S X^{-1} for X = conditioned_matrix(n, cond); not a contraction in general.
Planted conjugated(Rng& rng, const Matrix& s, double cond);

/// Random divisibility chain theta_0, theta_1, ... of total degree <= max_dim.
JordanModel random_jordan_model(Rng& rng, int max_dim, double radius, double separation);

}  // namespace c0::sampling
