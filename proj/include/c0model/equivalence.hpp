#pragma once

// Sarason distances, commutants and irreducibility, maximality and unitary
// recovery, and the recursive similarity synthesizer.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "c0model/calculus.hpp"
#include "c0model/corona.hpp"

namespace c0 {

/// ||u(S(theta))|| = dist(u, theta H-infinity). Zero for constant theta.
double sarason_norm(const RationalFunction& u, const BlaschkeProduct& theta);

struct HankelEstimate {
  double value = 0.0;
  int truncation = 0;  // final Hankel size L
  double change = 0.0;  // |value(L) - value(L/2)|
};

/// Largest singular value of the L x L Hankel matrix with entries
/// c_{-(j+k+1)}, where c_n are the Fourier coefficients of u conj(theta) on
/// the circle. Starts at L = 512 and doubles until the value moves < 1e-8.
HankelEstimate hankel_distance(const RationalFunction& u, const BlaschkeProduct& theta);

/// Frobenius-orthonormal basis of {X : XT = TX} (and XT^* = T^*X when
/// with_adjoints is set).
std::vector<Matrix> commutant_basis(const Matrix& t, bool with_adjoints);

/// Frobenius-orthonormal basis of the matrices commuting with every
/// generator (and every generator's adjoint when with_adjoints is set).
std::vector<Matrix> commutant_of(std::span<const Matrix> generators, Eigen::Index n, bool with_adjoints);

struct IrreducibilityResult {
  bool irreducible = true;
  int commutant_dimension = 0;  // dim {T}'
  int reducing_dimension = 0;   // dim ({T}' + {T}'^*)'; 1 iff irreducible
  std::optional<Matrix> witness;  // nontrivial orthogonal projection commuting with {T}'
  double witness_residual = 0.0;  // max ||PX - XP|| over a basis of {T}'
  int double_commutant_dimension = 0;
  bool has_idempotent = false;  // nontrivial idempotent found in {T}''
  std::optional<Matrix> idempotent;
  double idempotent_residual = 0.0;  // max(||P^2 - P||, commutation with {T}')
};

IrreducibilityResult irreducibility_check(const Matrix& t, std::uint64_t seed = 0);

struct MaximalityEntry {
  BlaschkeProduct psi;
  Complex lambda;
  double norm = 0.0;
  double sigma2 = 0.0;
  Vector xi;
  bool cyclic = false;
  double margin = 0.0;
};

struct MaximalityReport {
  BlaschkeProduct theta;
  std::vector<MaximalityEntry> entries;
};

/// Throws NotMultiplicityFree; DegreeZero for the trivial space.
MaximalityReport maximality_report(const ContractionOperator& t);

struct UnitaryRecovery {
  Matrix w;  // W T = S(theta) W with S(theta) = jordan_block(theta)
  BlaschkeProduct theta;
  BlaschkeProduct psi;
  Complex lambda;
  Vector xi;
  double psi_norm = 0.0;
  double sigma2 = 0.0;
  double unitarity_residual = 0.0;     // ||W^* W - I||
  double intertwining_residual = 0.0;  // ||W T - S(theta) W||
};

/// Throws NotMaximal when no big divisor has 1 - ||psi(T)|| < 1e-8 with a
/// rank-one psi(T); NotMultiplicityFree.
UnitaryRecovery unitary_from_maximality(const ContractionOperator& t);

/// min over nonconstant divisors psi of theta and big divisors phi of psi of
/// ||phi(T|ker psi(T))||. By von Neumann's inequality this is the minimum
/// over all proper divisors phi of psi. Requires a multiplicity-free T.
double hypothesis_value(const ContractionOperator& t);

/// (1 - 1/(N-1)^2)^{1/4}, or 0 for N <= 2.
double beta_floor(int n);

/// mu solving (beta' - mu) beta' / (1 + mu) = beta^2.
double mobius_radius(double beta, double beta_prime);

/// Euclidean radius r with |l - anchor| < r implying |b_anchor(l)| < mu.
double euclidean_radius(double mu, Complex anchor);

struct TraceNode {
  bool base = true;
  std::vector<Complex> zeros;
  double norm_x = 0.0;
  double norm_x_inv = 0.0;
  // base case
  Vector xi1;
  Vector xi2;
  double psi_norm1 = 0.0;  // ||psi_N(T_i) xi_i||
  double psi_norm2 = 0.0;
  double basis_cond1 = 0.0;  // condition numbers of the partial-product bases
  double basis_cond2 = 0.0;
  int retries = 0;
  // split case
  ClusterSplit split;
  double corona_norm1 = 0.0;
  double corona_norm2 = 0.0;
  double corona_residual = 0.0;
  double delta = 0.0;
  double separation_bound = 0.0;
  double y1_norm = 0.0;
  double y1_inv_norm = 0.0;
  double y2_norm = 0.0;
  double y2_inv_norm = 0.0;
  double split_residual = 0.0;  // max over both block-diagonalizations
  std::vector<TraceNode> children;
};

struct SimilarityOptions {
  bool enforce_hypotheses = true;
  std::uint64_t seed = 0;
};

struct SimilarityCertificate {
  Matrix x;  // X T1 = T2 X
  double residual = 0.0;
  double norm_x = 0.0;
  double norm_x_inv = 0.0;
  double beta = 0.0;
  double beta_prime = 0.0;
  double mu = 0.0;
  double radius = 0.0;  // Euclidean radius at the top level
  double hypothesis1 = 0.0;  // NaN when not evaluated
  double hypothesis2 = 0.0;
  TraceNode trace;
};

/// Divisor count above which the operator hypothesis is not evaluated.
inline constexpr std::size_t kHypothesisDivisorLimit = 4096;

/// Throws MinimalFunctionMismatch, NotMultiplicityFree, HypothesisFailed and
/// propagates corona errors.
SimilarityCertificate similarity_synthesize(const ContractionOperator& t1, const ContractionOperator& t2,
                                            double beta, double beta_prime,
                                            const SimilarityOptions& options = {});

}  // namespace c0
