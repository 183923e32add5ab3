#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace c0 {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Numerical thresholds shared by every module.
namespace tol {
/// Zeros closer than this are identified (gcd, divisibility, merging).
inline constexpr double kZeroMerge = 1e-8;
/// Relative singular-value cutoff for ranks and nullspaces.
inline constexpr double kRankRelative = 1e-10;
/// |constant| must be 1 within this.
inline constexpr double kUnimodular = 1e-12;
/// Denominator roots must satisfy |r| > 1 + kPoleMargin.
inline constexpr double kPoleMargin = 1e-8;
/// Eigenvalues must satisfy |lambda| < 1 - kSpectralMargin.
inline constexpr double kSpectralMargin = 1e-10;
/// Largest singular value allowed for a contraction.
inline constexpr double kContraction = 1e-9;
/// 1 - ||psi(T)|| below this counts as norm one.
inline constexpr double kMaximality = 1e-8;
/// sigma_2 / sigma_1 below this counts as rank one.
inline constexpr double kRankOne = 1e-8;
/// Krylov-type cyclicity: smallest/largest singular value must exceed this.
inline constexpr double kCyclic = 1e-8;
}  // namespace tol

enum class Errc {
  NotADivisor,
  TooManyDivisors,
  DegreeZero,
  NotARoot,
  SingularResolvent,
  EigenvalueOnCircle,
  NotAContraction,
  NotMultiplicityFree,
  CyclicSearchFailed,
  NotCoprime,
  IllConditioned,
  EmptySet,
  MinimalFunctionMismatch,
  NotMaximal,
  HypothesisFailed,
  PoleInDisk,
  InvalidInput,
  NumericalFailure,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace c0
