#include "c0model/inner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace c0 {

Complex blaschke_factor(Complex lambda, Complex z) {
  return (z - lambda) / (1.0 - std::conj(lambda) * z);
}

Complex normalized_factor(Complex lambda, Complex z) {
  if (lambda == Complex(0.0)) return z;
  return -(std::conj(lambda) / std::abs(lambda)) * blaschke_factor(lambda, z);
}

Complex factor_phase(Complex lambda) {
  if (lambda == Complex(0.0)) return 1.0;
  return -lambda / std::abs(lambda);
}

// ---------------------------------------------------------------------------
// RationalFunction

namespace {

bool same_root(Complex a, Complex b) {
  return std::abs(a - b) <= tol::kZeroMerge * std::max(1.0, std::abs(a));
}

}  // namespace

RationalFunction::RationalFunction() : num_{1.0}, den_{1.0} {}

RationalFunction::RationalFunction(TrustedTag, poly::Poly numerator, poly::Poly denominator)
    : num_(poly::trim(std::move(numerator))), den_(poly::trim(std::move(denominator))) {
  if (den_.empty()) throw Error(Errc::InvalidInput, "zero denominator");
  if (num_.empty()) den_ = {1.0};
}

RationalFunction RationalFunction::trusted(poly::Poly numerator, poly::Poly denominator) {
  return RationalFunction(TrustedTag{}, std::move(numerator), std::move(denominator));
}

RationalFunction RationalFunction::polynomial(poly::Poly p) { return trusted(std::move(p), {1.0}); }

RationalFunction RationalFunction::constant(Complex c) { return trusted({c}, {1.0}); }

RationalFunction::RationalFunction(poly::Poly numerator, poly::Poly denominator)
    : RationalFunction(TrustedTag{}, std::move(numerator), std::move(denominator)) {
  if (poly::degree(den_) <= 0) return;
  std::vector<Complex> den_roots = poly::roots(den_);
  std::vector<Complex> num_roots = poly::roots(num_);

  bool cancelled = false;
  for (auto it = den_roots.begin(); it != den_roots.end();) {
    auto match = std::find_if(num_roots.begin(), num_roots.end(),
                              [&](Complex r) { return same_root(r, *it); });
    if (match != num_roots.end()) {
      num_roots.erase(match);
      it = den_roots.erase(it);
      cancelled = true;
    } else {
      ++it;
    }
  }
  for (Complex r : den_roots) {
    if (std::abs(r) <= 1.0 + tol::kPoleMargin) {
      throw Error(Errc::PoleInDisk, "denominator root at |z| = " + std::to_string(std::abs(r)));
    }
  }
  if (cancelled) {
    const Complex lead_num = num_.back();
    const Complex lead_den = den_.back();
    num_ = poly::scale(poly::from_roots(num_roots), lead_num);
    den_ = poly::scale(poly::from_roots(den_roots), lead_den);
  }
}

Complex RationalFunction::operator()(Complex z) const {
  return poly::eval(num_, z) / poly::eval(den_, z);
}

Complex RationalFunction::derivative(Complex z) const {
  const Complex n = poly::eval(num_, z);
  const Complex d = poly::eval(den_, z);
  const Complex dn = poly::eval(poly::derivative(num_), z);
  const Complex dd = poly::eval(poly::derivative(den_), z);
  return (dn * d - n * dd) / (d * d);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction::trusted(poly::mul(a.num_, b.num_), poly::mul(a.den_, b.den_));
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction::trusted(poly::add(a.num_, b.num_), a.den_);
  return RationalFunction::trusted(
      poly::add(poly::mul(a.num_, b.den_), poly::mul(b.num_, a.den_)), poly::mul(a.den_, b.den_));
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return a + Complex(-1.0) * b;
}

RationalFunction operator*(Complex s, const RationalFunction& a) {
  return RationalFunction::trusted(poly::scale(a.num_, s), a.den_);
}

// ---------------------------------------------------------------------------
// BlaschkeProduct

BlaschkeProduct::BlaschkeProduct(std::vector<Zero> zeros, Complex constant) : constant_(constant) {
  if (std::abs(std::abs(constant) - 1.0) > tol::kUnimodular) {
    throw Error(Errc::InvalidInput, "Blaschke constant must be unimodular");
  }
  for (const Zero& z : zeros) {
    if (z.multiplicity < 1) throw Error(Errc::InvalidInput, "zero multiplicity must be >= 1");
    if (!(std::abs(z.location) < 1.0)) throw Error(Errc::InvalidInput, "zero outside the open disk");
    auto match = std::find_if(zeros_.begin(), zeros_.end(), [&](const Zero& e) {
      return std::abs(e.location - z.location) < tol::kZeroMerge;
    });
    if (match == zeros_.end()) {
      zeros_.push_back(z);
    } else {
      const int m = match->multiplicity + z.multiplicity;
      match->location = (static_cast<double>(match->multiplicity) * match->location +
                         static_cast<double>(z.multiplicity) * z.location) /
                        static_cast<double>(m);
      match->multiplicity = m;
    }
  }
  std::sort(zeros_.begin(), zeros_.end(), [](const Zero& a, const Zero& b) {
    const double ma = std::abs(a.location);
    const double mb = std::abs(b.location);
    if (ma != mb) return ma < mb;
    return std::arg(a.location) < std::arg(b.location);
  });
}

BlaschkeProduct BlaschkeProduct::from_roots(std::span<const Complex> roots) {
  std::vector<Zero> zeros;
  zeros.reserve(roots.size());
  for (Complex r : roots) zeros.push_back({r, 1});
  return BlaschkeProduct(std::move(zeros));
}

BlaschkeProduct BlaschkeProduct::factor(Complex lambda) {
  return BlaschkeProduct({{lambda, 1}}, factor_phase(lambda));
}

BlaschkeProduct BlaschkeProduct::normalized(Complex lambda) { return BlaschkeProduct({{lambda, 1}}); }

int BlaschkeProduct::degree() const {
  int d = 0;
  for (const Zero& z : zeros_) d += z.multiplicity;
  return d;
}

std::vector<Complex> BlaschkeProduct::flattened() const {
  std::vector<Complex> out;
  for (const Zero& z : zeros_) out.insert(out.end(), static_cast<std::size_t>(z.multiplicity), z.location);
  return out;
}

Complex BlaschkeProduct::operator()(Complex z) const {
  Complex acc = constant_;
  for (const Zero& zero : zeros_) {
    const Complex f = normalized_factor(zero.location, z);
    for (int k = 0; k < zero.multiplicity; ++k) acc *= f;
  }
  return acc;
}

BlaschkeProduct BlaschkeProduct::canonical() const {
  BlaschkeProduct out(*this);
  out.constant_ = 1.0;
  return out;
}

RationalFunction BlaschkeProduct::to_rational() const {
  poly::Poly num{constant_};
  poly::Poly den{1.0};
  for (const Zero& z : zeros_) {
    const Complex l = z.location;
    poly::Poly nf;
    if (l == Complex(0.0)) {
      nf = {0.0, 1.0};
    } else {
      const Complex c = -std::conj(l) / std::abs(l);
      nf = {-c * l, c};
    }
    const poly::Poly df{1.0, -std::conj(l)};
    for (int k = 0; k < z.multiplicity; ++k) {
      num = poly::mul(num, nf);
      den = poly::mul(den, df);
    }
  }
  return RationalFunction::trusted(std::move(num), std::move(den));
}

BlaschkeProduct operator*(const BlaschkeProduct& a, const BlaschkeProduct& b) {
  std::vector<Zero> zeros = a.zeros_;
  zeros.insert(zeros.end(), b.zeros_.begin(), b.zeros_.end());
  Complex c = a.constant_ * b.constant_;
  c /= std::abs(c);
  return BlaschkeProduct(std::move(zeros), c);
}

namespace {

const Zero* find_zero(const std::vector<Zero>& zeros, Complex location, double tol) {
  const Zero* best = nullptr;
  double best_d = tol;
  for (const Zero& z : zeros) {
    const double d = std::abs(z.location - location);
    if (d < best_d || (d == 0.0 && best == nullptr)) {
      best = &z;
      best_d = d;
    }
  }
  return best;
}

}  // namespace

bool same_zeros(const BlaschkeProduct& a, const BlaschkeProduct& b, double tol) {
  if (a.zeros().size() != b.zeros().size()) return false;
  for (const Zero& z : a.zeros()) {
    const Zero* m = find_zero(b.zeros(), z.location, tol);
    if (m == nullptr || m->multiplicity != z.multiplicity) return false;
  }
  return true;
}

BlaschkeProduct divide(const BlaschkeProduct& theta, const BlaschkeProduct& phi) {
  std::vector<Zero> rest = theta.zeros();
  for (const Zero& z : phi.zeros()) {
    auto it = std::find_if(rest.begin(), rest.end(), [&](const Zero& e) {
      return std::abs(e.location - z.location) < tol::kZeroMerge;
    });
    if (it == rest.end() || it->multiplicity < z.multiplicity) {
      throw Error(Errc::NotADivisor, "zero (" + std::to_string(z.location.real()) + ", " +
                                         std::to_string(z.location.imag()) + ") not matched");
    }
    it->multiplicity -= z.multiplicity;
    if (it->multiplicity == 0) rest.erase(it);
  }
  Complex c = theta.constant() / phi.constant();
  c /= std::abs(c);
  return BlaschkeProduct(std::move(rest), c);
}

bool divides(const BlaschkeProduct& phi, const BlaschkeProduct& theta) {
  for (const Zero& z : phi.zeros()) {
    const Zero* m = find_zero(theta.zeros(), z.location, tol::kZeroMerge);
    if (m == nullptr || m->multiplicity < z.multiplicity) return false;
  }
  return true;
}

Lattice lattice(const BlaschkeProduct& a, const BlaschkeProduct& b) {
  std::vector<Zero> gcd;
  std::vector<Zero> lcm;
  for (const Zero& z : a.zeros()) {
    const Zero* m = find_zero(b.zeros(), z.location, tol::kZeroMerge);
    const int mb = m == nullptr ? 0 : m->multiplicity;
    if (std::min(z.multiplicity, mb) > 0) gcd.push_back({z.location, std::min(z.multiplicity, mb)});
    lcm.push_back({z.location, std::max(z.multiplicity, mb)});
  }
  for (const Zero& z : b.zeros()) {
    if (find_zero(a.zeros(), z.location, tol::kZeroMerge) == nullptr) lcm.push_back(z);
  }
  return {BlaschkeProduct(std::move(gcd)), BlaschkeProduct(std::move(lcm))};
}

std::vector<BlaschkeProduct> enumerate_divisors(const BlaschkeProduct& theta) {
  const auto& zeros = theta.zeros();
  std::size_t count = 1;
  for (const Zero& z : zeros) {
    count *= static_cast<std::size_t>(z.multiplicity + 1);
    if (count > kMaxDivisors) throw Error(Errc::TooManyDivisors, "more than 1e6 divisors");
  }
  std::vector<BlaschkeProduct> out;
  out.reserve(count);
  std::vector<int> exponent(zeros.size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    std::vector<Zero> sub;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      if (exponent[i] > 0) sub.push_back({zeros[i].location, exponent[i]});
    }
    out.emplace_back(std::move(sub));
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      if (++exponent[i] <= zeros[i].multiplicity) break;
      exponent[i] = 0;
    }
  }
  return out;
}

std::vector<BigDivisor> big_divisors(const BlaschkeProduct& theta) {
  if (theta.is_constant()) throw Error(Errc::DegreeZero, "constant function has no big divisors");
  std::vector<BigDivisor> out;
  for (const Zero& z : theta.zeros()) {
    out.push_back({divide(theta, BlaschkeProduct::normalized(z.location)), z.location});
  }
  return out;
}

Complex mobius_solve(Complex lambda, Complex mu) { return blaschke_factor(mu, lambda); }

// ---------------------------------------------------------------------------
// Boundary sup-norm

namespace {

constexpr std::size_t kInitialGrid = 4096;
constexpr std::size_t kMaxGrid = std::size_t{1} << 20;
constexpr double kGridAgreement = 1e-9;

double modulus_at(const RationalFunction& u, double t) { return std::abs(u(std::polar(1.0, t))); }

double golden_max(const RationalFunction& u, double a, double b) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = modulus_at(u, x1);
  double f2 = modulus_at(u, x2);
  for (int it = 0; it < 90 && b - a > 1e-15; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = modulus_at(u, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = modulus_at(u, x1);
    }
  }
  return std::max(f1, f2);
}

double refined_max(const RationalFunction& u, std::size_t m, std::vector<double>& values) {
  const double h = 2.0 * std::numbers::pi / static_cast<double>(m);
  values.resize(m);
  for (std::size_t i = 0; i < m; ++i) values[i] = modulus_at(u, h * static_cast<double>(i));
  double best = *std::max_element(values.begin(), values.end());
  for (std::size_t i = 0; i < m; ++i) {
    const double prev = values[(i + m - 1) % m];
    const double next = values[(i + 1) % m];
    if (values[i] >= prev && values[i] >= next) {
      const double t = h * static_cast<double>(i);
      best = std::max(best, golden_max(u, t - h, t + h));
    }
  }
  return best;
}

}  // namespace

BoundaryNorm boundary_norm(const RationalFunction& u) {
  std::vector<double> values;
  std::size_t m = kInitialGrid;
  double estimate = refined_max(u, m, values);
  while (m < kMaxGrid) {
    const double next = refined_max(u, 2 * m, values);
    m *= 2;
    const bool settled = std::abs(next - estimate) < kGridAgreement;
    estimate = std::max(estimate, next);
    if (settled) break;
  }

  // On an arc of length h every point lies within h/2 of a grid node, so
  // |u| <= |u(node)| + (h/2) sup|u'| with sup|u'| bounded through coefficient
  // sums and a lower bound for |q| on the arc.
  const double h = 2.0 * std::numbers::pi / static_cast<double>(m);
  const auto& p = u.numerator();
  const auto& q = u.denominator();
  const double p0 = poly::coefficient_norm(p);
  const double p1 = poly::derivative_coefficient_norm(p);
  const double q0 = poly::coefficient_norm(q);
  const double q1 = poly::derivative_coefficient_norm(q);
  double upper = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Complex za = std::polar(1.0, h * static_cast<double>(i));
    const Complex zb = std::polar(1.0, h * static_cast<double>(i + 1));
    const double qmin = std::min(std::abs(poly::eval(q, za)), std::abs(poly::eval(q, zb))) - 0.5 * h * q1;
    if (qmin <= 0.0) {
      upper = std::numeric_limits<double>::infinity();
      break;
    }
    const double dbound = (p1 * q0 + p0 * q1) / (qmin * qmin);
    upper = std::max(upper, std::max(values[i], values[(i + 1) % m]) + 0.5 * h * dbound);
  }
  return {estimate, std::max(upper, estimate), m};
}

double supnorm_boundary(const RationalFunction& u) { return boundary_norm(u).value; }

}  // namespace c0
