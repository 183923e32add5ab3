#pragma once

// Finite Blaschke products and rational H-infinity functions.
//
// A BlaschkeProduct is stored as
//
//     theta(z) = constant * prod_k  bt_{lambda_k}(z)^{m_k}
//
// where bt_lambda = -(conj(lambda)/|lambda|) b_lambda is the factor normalized
// so that bt_lambda(0) = |lambda| > 0, and bt_0 = z. The canonical form has
// constant == 1, so theta(0) > 0 whenever theta has no zero at the origin.

#include <cstddef>
#include <span>
#include <vector>

#include "c0model/poly.hpp"
#include "c0model/types.hpp"

namespace c0 {

struct Zero {
  Complex location;
  int multiplicity = 1;
};

/// Plain disk automorphism b_lambda(z) = (z - lambda) / (1 - conj(lambda) z).
Complex blaschke_factor(Complex lambda, Complex z);

/// Normalized factor bt_lambda; bt_0(z) = z.
Complex normalized_factor(Complex lambda, Complex z);

/// Unimodular c with b_lambda = c * bt_lambda.
Complex factor_phase(Complex lambda);

class RationalFunction {
 public:
  /// The constant function 1.
  RationalFunction();

  /// Validates the denominator (no roots in the closed disk after cancelling
  /// common roots). Throws PoleInDisk or InvalidInput.
  RationalFunction(poly::Poly numerator, poly::Poly denominator);

  static RationalFunction polynomial(poly::Poly p);
  static RationalFunction constant(Complex c);

  /// Skips root finding. The caller guarantees the denominator has no roots
  /// in the closed disk (used for products of known factors).
  static RationalFunction trusted(poly::Poly numerator, poly::Poly denominator);

  const poly::Poly& numerator() const { return num_; }
  const poly::Poly& denominator() const { return den_; }

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(Complex s, const RationalFunction& a);

 private:
  struct TrustedTag {};
  RationalFunction(TrustedTag, poly::Poly numerator, poly::Poly denominator);

  poly::Poly num_;
  poly::Poly den_;
};

class BlaschkeProduct {
 public:
  /// The constant 1.
  BlaschkeProduct() = default;

  /// Merges zeros closer than tol::kZeroMerge, sorts canonically (modulus,
  /// then argument). Throws InvalidInput on |zero| >= 1, multiplicity < 1 or
  /// a non-unimodular constant.
  explicit BlaschkeProduct(std::vector<Zero> zeros, Complex constant = 1.0);

  /// Canonical product with one factor per listed root (repeats allowed).
  static BlaschkeProduct from_roots(std::span<const Complex> roots);
  /// The plain factor b_lambda (constant chosen so theta == b_lambda exactly).
  static BlaschkeProduct factor(Complex lambda);
  /// The canonical factor bt_lambda.
  static BlaschkeProduct normalized(Complex lambda);

  Complex constant() const { return constant_; }
  const std::vector<Zero>& zeros() const { return zeros_; }
  int degree() const;
  bool is_constant() const { return zeros_.empty(); }

  /// Zeros repeated by multiplicity, canonical order.
  std::vector<Complex> flattened() const;

  Complex operator()(Complex z) const;

  BlaschkeProduct canonical() const;
  RationalFunction to_rational() const;

  friend BlaschkeProduct operator*(const BlaschkeProduct& a, const BlaschkeProduct& b);

 private:
  Complex constant_ = 1.0;
  std::vector<Zero> zeros_;
};

/// Zero multisets agree within tol (constants ignored).
bool same_zeros(const BlaschkeProduct& a, const BlaschkeProduct& b, double tol = tol::kZeroMerge);

/// theta / phi. Throws NotADivisor if some zero of phi is unmatched.
BlaschkeProduct divide(const BlaschkeProduct& theta, const BlaschkeProduct& phi);

/// phi | theta under the zero-merging tolerance.
bool divides(const BlaschkeProduct& phi, const BlaschkeProduct& theta);

struct Lattice {
  BlaschkeProduct gcd;
  BlaschkeProduct lcm;
};

Lattice lattice(const BlaschkeProduct& a, const BlaschkeProduct& b);

inline constexpr std::size_t kMaxDivisors = 1'000'000;

/// All inner divisors (canonical), count prod (m_i + 1). Mixed-radix order:
/// the first zero's exponent varies fastest. Throws TooManyDivisors.
std::vector<BlaschkeProduct> enumerate_divisors(const BlaschkeProduct& theta);

struct BigDivisor {
  BlaschkeProduct psi;
  Complex lambda;
};

/// One entry theta / bt_lambda per distinct zero. Throws DegreeZero.
std::vector<BigDivisor> big_divisors(const BlaschkeProduct& theta);

/// z = b_mu(lambda); b_z o b_mu vanishes at lambda.
Complex mobius_solve(Complex lambda, Complex mu);

struct BoundaryNorm {
  double value = 0.0;          // refined maximum of |u| on the circle
  double certified_upper = 0.0;  // derivative-bound certificate on the final grid
  std::size_t grid_points = 0;
};

BoundaryNorm boundary_norm(const RationalFunction& u);

/// sup_{|z|=1} |u(z)| (= H-infinity norm by the maximum principle).
double supnorm_boundary(const RationalFunction& u);

}  // namespace c0
