#include "c0model/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "c0model/linalg.hpp"
#include "c0model/sampling.hpp"

namespace c0::verify {

namespace {

using sampling::Rng;

struct Outcome {
  Outcome() = default;
  Outcome(std::initializer_list<double> v) : values(v) {}

  std::vector<double> values;
  bool ok = true;
  std::string message;
};

struct Trial {
  Rng& rng;
  const std::vector<double>& tol;
  int max_degree;
  io::Json& detail;
  std::optional<SweepRow>& row;
  std::size_t index;
};

using TrialFn = std::function<Outcome(Trial&)>;

struct PropertyDef {
  std::string id;
  std::string title;
  bool criterion;
  std::vector<std::pair<std::string, double>> metrics;
  double trial_factor;  // trials = max(1, round(factor * config.trials))
  TrialFn fn;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

int degree_cap(const Trial& t, int cap) { return std::max(1, std::min(cap, t.max_degree)); }

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(sampling::uniform(rng, std::log(lo), std::log(hi)));
}

// theta1, theta2 with all distinct zeros at least `sep` apart.
std::pair<BlaschkeProduct, BlaschkeProduct> coprime_pair(Rng& rng, int d1, int d2, double sep, int max_mult) {
  const BlaschkeProduct a = sampling::random_blaschke(rng, d1, 0.9, sep, max_mult);
  std::vector<Complex> taken;
  for (const Zero& z : a.zeros()) taken.push_back(z.location);
  std::vector<int> mults;
  int total = 0;
  while (total < d2) {
    const int m = std::min(sampling::uniform_int(rng, 1, max_mult), d2 - total);
    mults.push_back(m);
    total += m;
  }
  const auto pts = sampling::separated_points(rng, static_cast<int>(mults.size()), 0.9, sep, taken);
  std::vector<Zero> zeros;
  for (std::size_t i = 0; i < pts.size(); ++i) zeros.push_back({pts[i], mults[i]});
  return {a, BlaschkeProduct(std::move(zeros))};
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// ---------------------------------------------------------------------------
// Acceptance criteria

Outcome annihilation(Trial& t) {
  const int n = sampling::uniform_int(t.rng, 1, degree_cap(t, 10));
  const BlaschkeProduct theta = sampling::random_blaschke(t.rng, n, 0.9, 0.0, 1);
  t.detail["theta"] = io::to_json(theta);
  const Matrix s = jordan_block(theta);
  const double ann = linalg::opnorm(apply_function(theta, s));
  const std::vector<Complex> eig = disk_eigenvalues(s);
  const std::vector<Complex> zeros = theta.flattened();
  return {ann, linalg::matching_distance(eig, zeros)};
}

Outcome sarason(Trial& t) {
  const int n = sampling::uniform_int(t.rng, 1, degree_cap(t, 10));
  const BlaschkeProduct theta = sampling::random_blaschke(t.rng, n, 0.9, 0.0, 1);
  const RationalFunction u = sampling::random_rational(t.rng, sampling::uniform_int(t.rng, 0, 8),
                                                       sampling::uniform_int(t.rng, 0, 2));
  t.detail["theta"] = io::to_json(theta);
  t.detail["u"] = io::to_json(u);
  const double s = sarason_norm(u, theta);
  const HankelEstimate h = hankel_distance(u, theta);
  t.detail["sarason"] = s;
  t.detail["hankel"] = h.value;
  return {std::abs(s - h.value)};
}

Outcome big_divisor_norms(Trial& t) {
  const int n = sampling::uniform_int(t.rng, 1, degree_cap(t, 10));
  const BlaschkeProduct theta = sampling::random_blaschke(t.rng, n, 0.9, 0.05, 2);
  t.detail["theta"] = io::to_json(theta);
  const Matrix s = jordan_block(theta);
  double defect = 0.0;
  double sigma2 = 0.0;
  for (const BigDivisor& big : big_divisors(theta)) {
    const Eigen::VectorXd sv = linalg::singular_values(apply_function(big.psi, s));
    defect = std::max(defect, std::abs(sv(0) - 1.0));
    if (sv.size() > 1) sigma2 = std::max(sigma2, sv(1));
  }
  return {defect, sigma2};
}

Outcome corona_identity(Trial& t) {
  const auto [a, b] = coprime_pair(t.rng, sampling::uniform_int(t.rng, 1, 3), sampling::uniform_int(t.rng, 1, 3),
                                   0.2, 2);
  t.detail["theta1"] = io::to_json(a);
  t.detail["theta2"] = io::to_json(b);
  const CoronaSolution sol = bezout_solve(a, b);
  const double bound = separation_lower_bound(a.flattened(), b.flattened());
  t.detail["delta"] = sol.delta;
  t.detail["bound"] = bound;
  return {sol.residual, bound - sol.delta};
}

Outcome split_bounds(Trial& t) {
  const auto [a, b] = coprime_pair(t.rng, sampling::uniform_int(t.rng, 1, 3), sampling::uniform_int(t.rng, 1, 3),
                                   0.2, 2);
  t.detail["theta1"] = io::to_json(a);
  t.detail["theta2"] = io::to_json(b);
  Matrix m;
  switch (t.index % 3) {
    case 0:
      m = jordan_block(a * b);
      break;
    case 1:
      m = direct_sum(jordan_block(a), jordan_block(b));
      break;
    default:
      m = sampling::stein_contraction(t.rng, jordan_block(a * b), log_uniform(t.rng, 1.0, 100.0)).t;
      break;
  }
  t.detail["T"] = io::matrix_to_json(m);
  const SplitCertificate cert = split_similarity(ContractionOperator(m), a, b);
  return {cert.norm_x_inv - std::sqrt(2.0), cert.norm_x - cert.bound_x, cert.residual};
}

Outcome unitary_recovery(Trial& t) {
  const int cap = degree_cap(t, 12);
  const int n = t.index % 4 == 0 ? cap : sampling::uniform_int(t.rng, 1, cap);
  const BlaschkeProduct theta = sampling::random_blaschke(t.rng, n, 0.9, 0.05, 2);
  const Matrix u = sampling::random_unitary(t.rng, n);
  const Matrix m = u * jordan_block(theta) * u.adjoint();
  t.detail["theta"] = io::to_json(theta);
  t.detail["T"] = io::matrix_to_json(m);
  const auto start = std::chrono::steady_clock::now();
  const UnitaryRecovery rec = unitary_from_maximality(ContractionOperator(m));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {rec.unitarity_residual, rec.intertwining_residual, seconds > 1.0 ? 1.0 : 0.0};
}

Outcome similarity(Trial& t) {
  const int n = sampling::uniform_int(t.rng, 2, std::max(2, degree_cap(t, 6)));
  const BlaschkeProduct theta = sampling::random_blaschke(t.rng, n, 0.9, 0.05, 1);
  const Matrix s = jordan_block(theta);
  t.detail["theta"] = io::to_json(theta);
  const double floor = beta_floor(theta.degree());
  double log_c = sampling::uniform(t.rng, 0.0, 0.5 * std::log(1e3));
  std::optional<ContractionOperator> t1;
  std::optional<ContractionOperator> t2;
  Matrix x1;
  Matrix x2;
  double h = 0.0;
  for (int attempt = 0; attempt < 60; ++attempt) {
    const auto p1 = sampling::stein_contraction(t.rng, s, std::exp(log_c * sampling::uniform(t.rng, 0.5, 1.0)));
    const auto p2 = sampling::stein_contraction(t.rng, s, std::exp(log_c * sampling::uniform(t.rng, 0.5, 1.0)));
    t1.emplace(p1.t);
    t2.emplace(p2.t);
    x1 = p1.x;
    x2 = p2.x;
    h = std::min(hypothesis_value(*t1), hypothesis_value(*t2));
    if (h > floor + 1e-9) break;
    log_c *= 0.5;
  }
  const double beta_prime = floor + 0.9 * (h - floor);
  const double beta = floor + 0.5 * (h - floor);
  const Matrix x0 = x2 * x1.inverse();
  t.detail["T1"] = io::matrix_to_json(t1->matrix());
  t.detail["T2"] = io::matrix_to_json(t2->matrix());
  t.detail["beta"] = beta;
  t.detail["betaPrime"] = beta_prime;
  t.detail["condX0"] = linalg::condition_number(x0);
  SimilarityOptions options;
  options.seed = t.rng();
  const SimilarityCertificate cert = similarity_synthesize(*t1, *t2, beta, beta_prime, options);
  const double relative = cert.residual / cert.norm_x;
  t.row = SweepRow{theta.degree(), beta, beta_prime, cert.norm_x, cert.norm_x_inv, relative};
  Outcome out{relative, cert.norm_x * cert.norm_x_inv};
  if (linalg::condition_number(x0) > 1e3 * (1.0 + 1e-9)) {
    out.ok = false;
    out.message = "planted conjugacy exceeds the condition budget";
  }
  return out;
}

Outcome jordan_recovery(Trial& t) {
  const JordanModel model = sampling::random_jordan_model(t.rng, degree_cap(t, 10), 0.9, 0.2);
  const Matrix j = jordan_operator(model);
  const auto planted = sampling::conjugated(t.rng, j, log_uniform(t.rng, 1.0, 1e3));
  t.detail["model"] = io::to_json(model);
  t.detail["T"] = io::matrix_to_json(planted.t);
  const JordanModel got = jordan_model(planted.t);
  t.detail["recovered"] = io::to_json(got);
  const double count_gap = std::abs(static_cast<double>(got.blocks().size()) -
                                    static_cast<double>(model.blocks().size()));
  double err = 0.0;
  if (count_gap > 0.0) {
    err = kInf;
  } else {
    for (std::size_t k = 0; k < model.blocks().size(); ++k) {
      const auto a = model.blocks()[k].flattened();
      const auto b = got.blocks()[k].flattened();
      err = std::max(err, linalg::matching_distance(a, b));
    }
  }
  return {count_gap, err};
}

double projection_error(const Matrix& p) {
  return std::max(linalg::opnorm(p * p - p), linalg::opnorm(p - p.adjoint()));
}

Outcome irreducibility(Trial& t) {
  const int kind = static_cast<int>(t.index % 3);
  Matrix m;
  bool expected = true;
  if (kind == 0) {
    const BlaschkeProduct theta =
        sampling::random_blaschke(t.rng, sampling::uniform_int(t.rng, 1, degree_cap(t, 6)), 0.9, 0.1, 2);
    t.detail["theta"] = io::to_json(theta);
    m = jordan_block(theta);
  } else if (kind == 1) {
    const JordanModel model = sampling::random_jordan_model(t.rng, degree_cap(t, 6), 0.9, 0.2);
    t.detail["model"] = io::to_json(model);
    m = jordan_operator(model);
  } else {
    const auto [a, b] =
        coprime_pair(t.rng, sampling::uniform_int(t.rng, 1, 3), sampling::uniform_int(t.rng, 1, 3), 0.2, 2);
    t.detail["theta1"] = io::to_json(a);
    t.detail["theta2"] = io::to_json(b);
    m = direct_sum(jordan_block(a), jordan_block(b));
    expected = false;
  }
  t.detail["T"] = io::matrix_to_json(m);
  const IrreducibilityResult res = irreducibility_check(m, t.rng());
  const Matrix u = sampling::random_unitary(t.rng, m.rows());
  const IrreducibilityResult conj = irreducibility_check(u * m * u.adjoint(), t.rng());
  double witness_error = 0.0;
  if (!expected) {
    if (!res.witness) {
      witness_error = kInf;
    } else {
      const Matrix& p = *res.witness;
      const Eigen::Index n = p.rows();
      const bool nontrivial = linalg::opnorm(p) > 0.5 && linalg::opnorm(Matrix::Identity(n, n) - p) > 0.5;
      witness_error = nontrivial ? std::max(projection_error(p), res.witness_residual) : kInf;
    }
  }
  return {res.irreducible == expected ? 0.0 : 1.0, witness_error,
           conj.irreducible == res.irreducible ? 0.0 : 1.0};
}

Outcome mobius_estimate(Trial& t) {
  const int n = sampling::uniform_int(t.rng, 1, 8);
  const Matrix g = sampling::normal_matrix(t.rng, n, n);
  const Matrix m = g / linalg::opnorm(g) * sampling::uniform(t.rng, 0.1, 1.0);
  const Vector h = sampling::unit_vector(t.rng, n);
  const double delta = (m * h).norm();
  const Complex mu = std::polar(delta * sampling::uniform(t.rng, 0.0, 1.0),
                                sampling::uniform(t.rng, -std::numbers::pi, std::numbers::pi));
  t.detail["T"] = io::matrix_to_json(m);
  t.detail["h"] = io::to_json(h);
  t.detail["mu"] = io::to_json(mu);
  const double bound = (delta - std::abs(mu)) / (1.0 + std::abs(mu));
  const double got = blaschke_factor_apply(mu, m, h).norm();
  return {bound - got};
}

Outcome subspace_lattice(Trial& t) {
  const int n = sampling::uniform_int(t.rng, 1, degree_cap(t, 8));
  const BlaschkeProduct theta = sampling::random_blaschke(t.rng, n, 0.9, 0.05, 1);
  t.detail["theta"] = io::to_json(theta);
  const ContractionOperator op(jordan_block(theta));
  const std::vector<BlaschkeProduct> divisors = enumerate_divisors(theta);
  std::vector<Matrix> kernels;
  std::vector<Matrix> projectors;
  double dim_errors = 0.0;
  double block_error = 0.0;
  for (const auto& phi : divisors) {
    kernels.push_back(kernel_of_divisor(op, phi));
    projectors.push_back(kernels.back() * kernels.back().adjoint());
    if (kernels.back().cols() != phi.degree()) dim_errors += 1.0;
    if (phi.degree() > 0) {
      const auto order = divisor_first_order(theta, phi);
      const Matrix lead = jordan_block(theta, order).topLeftCorner(phi.degree(), phi.degree());
      block_error = std::max(block_error, (lead - jordan_block(phi)).cwiseAbs().maxCoeff());
    }
  }
  double worst_included = 0.0;
  double nesting_errors = 0.0;
  const Eigen::Index dim = op.dimension();
  for (std::size_t i = 0; i < divisors.size(); ++i) {
    if (kernels[i].cols() == 0) continue;
    for (std::size_t j = 0; j < divisors.size(); ++j) {
      const Matrix residual = kernels[i] - projectors[j] * kernels[i];
      double gap = residual.norm();
      if (gap < 1e-3) gap = linalg::opnorm(residual);
      if (kernels[j].cols() == 0) gap = 1.0;
      if (kernels[j].cols() == dim) gap = 0.0;
      const bool nested = gap < 1e-7;
      const bool divisible = divides(divisors[i], divisors[j]);
      if (divisible) worst_included = std::max(worst_included, gap);
      if (nested != divisible) nesting_errors += 1.0;
    }
  }
  return {dim_errors, worst_included, nesting_errors, block_error};
}

// ---------------------------------------------------------------------------
// Auxiliary properties

Outcome unimodularity(Trial& t) {
  const BlaschkeProduct theta =
      sampling::random_blaschke(t.rng, sampling::uniform_int(t.rng, 1, degree_cap(t, 10)), 0.9, 0.0, 2);
  t.detail["theta"] = io::to_json(theta);
  double worst = 0.0;
  for (int k = 0; k < 64; ++k) {
    const Complex z = std::polar(1.0, sampling::uniform(t.rng, -std::numbers::pi, std::numbers::pi));
    worst = std::max(worst, std::abs(std::abs(theta(z)) - 1.0));
  }
  return {worst};
}

Outcome von_neumann(Trial& t) {
  const BlaschkeProduct theta =
      sampling::random_blaschke(t.rng, sampling::uniform_int(t.rng, 1, degree_cap(t, 8)), 0.9, 0.05, 2);
  const Matrix m = sampling::stein_contraction(t.rng, jordan_block(theta), log_uniform(t.rng, 1.0, 100.0)).t;
  const RationalFunction u = sampling::random_rational(t.rng, sampling::uniform_int(t.rng, 0, 6),
                                                       sampling::uniform_int(t.rng, 0, 2));
  t.detail["T"] = io::matrix_to_json(m);
  t.detail["u"] = io::to_json(u);
  return {linalg::opnorm(apply_function(u, m)) - supnorm_boundary(u)};
}

Outcome lcm_span(Trial& t) {
  const BlaschkeProduct theta =
      sampling::random_blaschke(t.rng, sampling::uniform_int(t.rng, 2, degree_cap(t, 8)), 0.9, 0.1, 2);
  const ContractionOperator op(
      sampling::stein_contraction(t.rng, jordan_block(theta), log_uniform(t.rng, 1.0, 30.0)).t);
  t.detail["theta"] = io::to_json(theta);
  t.detail["T"] = io::matrix_to_json(op.matrix());
  const auto divisors = enumerate_divisors(theta);
  const int family = sampling::uniform_int(t.rng, 1, 3);
  BlaschkeProduct lcm;
  Matrix stacked(op.dimension(), 0);
  for (int k = 0; k < family; ++k) {
    const auto& phi = divisors[static_cast<std::size_t>(
        sampling::uniform_int(t.rng, 0, static_cast<int>(divisors.size()) - 1))];
    lcm = lattice(lcm, phi).lcm;
    const Matrix q = kernel_of_divisor(op, phi);
    Matrix next(op.dimension(), stacked.cols() + q.cols());
    next << stacked, q;
    stacked = next;
  }
  const Matrix span = linalg::orthonormal_range(stacked, 1e-9);
  const Matrix target = kernel_of_divisor(op, lcm);
  const double dist = span.cols() == target.cols() ? linalg::subspace_distance(span, target) : kInf;
  return {dist};
}

Outcome cyclic_criterion(Trial& t) {
  const int n = sampling::uniform_int(t.rng, 1, degree_cap(t, 10));
  const BlaschkeProduct theta = sampling::random_blaschke(t.rng, n, 0.9, 0.05, 2);
  const Matrix u = sampling::random_unitary(t.rng, n);
  const Matrix m = u * jordan_block(theta) * u.adjoint();
  t.detail["theta"] = io::to_json(theta);
  double failures = 0.0;
  double cond = 0.0;
  for (const BigDivisor& big : big_divisors(theta)) {
    const Matrix p = apply_function(big.psi, m);
    Eigen::BDCSVD<Matrix> svd(p, Eigen::ComputeFullV);
    const Vector xi = svd.matrixV().col(0);
    if (!((p * xi).norm() > 1.0 - 1e-10)) continue;
    if (!is_cyclic(m, xi, theta)) failures += 1.0;
    cond = std::max(cond, linalg::condition_number(partial_product_basis(m, theta.flattened(), xi)));
  }
  t.detail["basisCondition"] = cond;
  return {failures, std::isfinite(cond) ? 0.0 : 1.0};
}

Outcome mobius_solve_check(Trial& t) {
  const Complex lambda = sampling::disk_point(t.rng, 0.95);
  const Complex mu = sampling::disk_point(t.rng, 0.95);
  t.detail["lambda"] = io::to_json(lambda);
  t.detail["mu"] = io::to_json(mu);
  const Complex z = mobius_solve(lambda, mu);
  auto composed = [&](Complex w) { return blaschke_factor(z, blaschke_factor(mu, w)); };
  double boundary = 0.0;
  for (int k = 0; k < 64; ++k) {
    boundary = std::max(boundary, std::abs(std::abs(composed(std::polar(1.0, 2.0 * std::numbers::pi * k / 64))) - 1.0));
  }
  return {std::abs(composed(lambda)), boundary};
}

Outcome no_idempotents(Trial& t) {
  const Complex lambda = sampling::disk_point(t.rng, 0.9);
  const int n = sampling::uniform_int(t.rng, 1, degree_cap(t, 6));
  const BlaschkeProduct theta({{lambda, n}});
  const Matrix m = sampling::stein_contraction(t.rng, jordan_block(theta), log_uniform(t.rng, 1.0, 10.0)).t;
  t.detail["T"] = io::matrix_to_json(m);
  const IrreducibilityResult res = irreducibility_check(m, t.rng());
  return {res.has_idempotent ? 1.0 : 0.0};
}

Outcome recovery_commutes(Trial& t) {
  const int n = sampling::uniform_int(t.rng, 1, degree_cap(t, 8));
  const BlaschkeProduct theta = sampling::random_blaschke(t.rng, n, 0.9, 0.05, 2);
  const Matrix s = jordan_block(theta);
  const Matrix u = sampling::random_unitary(t.rng, n);
  const Matrix m = u * s * u.adjoint();
  t.detail["T"] = io::matrix_to_json(m);
  const UnitaryRecovery rec = unitary_from_maximality(ContractionOperator(m));
  const Matrix composite = rec.w * u;
  Matrix projected = Matrix::Zero(n, n);
  for (const Matrix& b : commutant_basis(s, false)) {
    const Complex coeff = (b.adjoint() * composite).trace();
    projected += coeff * b;
  }
  return {(composite - projected).norm() / std::max(1.0, composite.norm())};
}

Outcome lattice_laws(Trial& t) {
  const auto pool = sampling::separated_points(t.rng, 4, 0.9, 0.05);
  auto draw = [&] {
    std::vector<Zero> zeros;
    for (Complex p : pool) {
      const int m = sampling::uniform_int(t.rng, 0, 2);
      if (m > 0) zeros.push_back({p, m});
    }
    return BlaschkeProduct(std::move(zeros));
  };
  const BlaschkeProduct a = draw();
  const BlaschkeProduct b = draw();
  const BlaschkeProduct c = draw();
  t.detail["a"] = io::to_json(a);
  t.detail["b"] = io::to_json(b);
  t.detail["c"] = io::to_json(c);
  double violations = 0.0;
  auto check = [&](bool ok) { violations += ok ? 0.0 : 1.0; };
  const Lattice ab = lattice(a, b);
  const Lattice ba = lattice(b, a);
  check(same_zeros(ab.gcd, ba.gcd) && same_zeros(ab.lcm, ba.lcm));
  check(same_zeros(lattice(ab.gcd, c).gcd, lattice(a, lattice(b, c).gcd).gcd));
  check(same_zeros(lattice(ab.lcm, c).lcm, lattice(a, lattice(b, c).lcm).lcm));
  check(same_zeros(lattice(a, ab.lcm).gcd, a));
  check(same_zeros(lattice(a, ab.gcd).lcm, a));
  check(same_zeros(ab.gcd * ab.lcm, a * b));
  check(same_zeros(divide(a * b, b) * b, a * b));
  std::size_t expected = 1;
  for (const Zero& z : a.zeros()) expected *= static_cast<std::size_t>(z.multiplicity + 1);
  const auto divisors = enumerate_divisors(a);
  check(divisors.size() == expected);
  return {violations};
}

Outcome model_space_checks(Trial& t) {
  const BlaschkeProduct theta =
      sampling::random_blaschke(t.rng, sampling::uniform_int(t.rng, 1, degree_cap(t, 10)), 0.9, 0.05, 2);
  t.detail["theta"] = io::to_json(theta);
  const Matrix s = jordan_block(theta);
  const ModelSpace space = tm_basis(theta);
  const Vector f = sampling::normal_vector(t.rng, space.dimension());
  double kernel_error = 0.0;
  for (const Zero& z : theta.zeros()) {
    const Vector k = model_kernel(theta, z.location);
    Complex value = 0.0;
    for (int j = 0; j < space.dimension(); ++j) value += f(j) * space.basis_value(j, z.location);
    const Complex inner = k.adjoint() * f;
    kernel_error = std::max(kernel_error, std::abs(inner / (1.0 - std::norm(z.location)) - value));
  }
  return {linalg::opnorm(s) - 1.0, kernel_error};
}

std::vector<PropertyDef> definitions() {
  return {
      {"C1", "Annihilation and spectrum of S(theta)", true, {{"annihilation", 1e-9}, {"spectrum", 1e-8}}, 2.0,
       annihilation},
      {"C2", "Sarason norm equals Hankel distance", true, {{"gap", 1e-6}}, 1.0, sarason},
      {"C3", "Big divisors of S(theta) have norm one and rank one", true,
       {{"norm_defect", 1e-9}, {"sigma2", 1e-9}}, 1.0, big_divisor_norms},
      {"C4", "Bezout identity and separation bound", true, {{"residual", 1e-8}, {"delta_deficit", 1e-12}}, 1.0,
       corona_identity},
      {"C5", "Split similarity norm bounds", true,
       {{"inverse_norm_excess", 1e-9}, {"norm_excess", 1e-6}, {"residual", 1e-8}}, 1.0, split_bounds},
      {"C6", "Unitary recovery from maximality", true,
       {{"unitarity", 1e-8}, {"intertwining", 1e-8}, {"over_one_second", 0.5}}, 1.0, unitary_recovery},
      {"C7", "Similarity synthesis for planted conjugacies", true,
       {{"relative_residual", 1e-7}, {"condition", 1e14}}, 1.0, similarity},
      {"C8", "Jordan model recovery", true, {{"block_count_gap", 0.5}, {"zero_error", 1e-7}}, 1.0,
       jordan_recovery},
      {"C9", "Irreducibility classification", true,
       {{"misclassified", 0.5}, {"witness_error", 1e-8}, {"unitary_invariance", 0.5}}, 1.5, irreducibility},
      {"C10", "Mobius lower bound", true, {{"deficit", 1e-12}}, 10.0, mobius_estimate},
      {"C11", "Invariant-subspace lattice", true,
       {{"dimension_errors", 0.5}, {"included_gap", 1e-7}, {"nesting_errors", 0.5}, {"leading_block", 1e-10}}, 1.0,
       subspace_lattice},
      {"P1", "Unimodular boundary values", false, {{"modulus_defect", 1e-10}}, 1.0, unimodularity},
      {"P2", "von Neumann inequality", false, {{"excess", 1e-8}}, 1.0, von_neumann},
      {"P3", "Kernels of a divisor family span the kernel of the lcm", false, {{"distance", 1e-7}}, 0.5, lcm_span},
      {"P4", "Norm-attaining vectors of big divisors are cyclic", false,
       {{"not_cyclic", 0.5}, {"singular_basis", 0.5}}, 0.5, cyclic_criterion},
      {"P5", "Mobius composition", false, {{"root", 1e-12}, {"boundary", 1e-10}}, 1.0, mobius_solve_check},
      {"P6", "No nontrivial idempotents in {T}'' for a single zero", false, {{"idempotent_found", 0.5}}, 0.5,
       no_idempotents},
      {"P7", "Recovered unitary composed with the planted one commutes with S(theta)", false,
       {{"commutant_distance", 1e-7}}, 0.5, recovery_commutes},
      {"P8", "Lattice laws and divisor enumeration", false, {{"violations", 0.5}}, 1.0, lattice_laws},
      {"P9", "Contractivity of S(theta) and kernel reproduction", false,
       {{"norm_excess", 1e-10}, {"kernel_error", 1e-8}}, 1.0, model_space_checks},
  };
}

double tolerance_for(const ExperimentConfig& config, const std::string& id, const std::string& metric,
                     double fallback) {
  const auto it = config.tolerances.find(id + "." + metric);
  return it == config.tolerances.end() ? fallback : it->second;
}

struct Slot {
  Outcome outcome;
  io::Json detail = io::Json::object();
  std::optional<SweepRow> row;
  bool threw = false;
  std::string error;
};

PropertyResult run_definition(const PropertyDef& def, std::uint64_t stream_id, const ExperimentConfig& config) {
  PropertyResult result;
  result.id = def.id;
  result.title = def.title;
  result.criterion = def.criterion;
  std::vector<double> tol;
  for (const auto& [name, value] : def.metrics) {
    tol.push_back(tolerance_for(config, def.id, name, value));
    result.metrics.push_back({name, tol.back(), -kInf});
  }
  const auto trials = static_cast<std::size_t>(
      std::max(1L, std::lround(def.trial_factor * static_cast<double>(config.trials))));
  std::vector<Slot> slots(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      Slot& slot = slots[i];
      Rng rng = sampling::stream(config.seed, stream_id, i);
      Trial trial{rng, tol, config.max_degree, slot.detail, slot.row, i};
      try {
        slot.outcome = def.fn(trial);
      } catch (const std::exception& e) {
        slot.threw = true;
        slot.error = e.what();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(config.threads, static_cast<int>(trials)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < trials; ++i) {
    Slot& slot = slots[i];
    ++result.cases;
    bool ok = !slot.threw && slot.outcome.ok;
    std::string message = slot.threw ? slot.error : slot.outcome.message;
    if (!slot.threw) {
      for (std::size_t m = 0; m < result.metrics.size() && m < slot.outcome.values.size(); ++m) {
        const double v = slot.outcome.values[m];
        Metric& metric = result.metrics[m];
        if (std::isnan(v) || v > metric.worst) metric.worst = std::isnan(v) ? kInf : v;
        if (!(v < metric.tolerance)) {
          if (ok) {
            std::ostringstream os;
            os.precision(6);
            os << metric.name << " = " << v << " (tolerance " << metric.tolerance << ")";
            message = os.str();
          }
          ok = false;
        }
      }
    }
    if (slot.row) result.sweep.push_back(*slot.row);
    if (!ok) {
      ++result.failures;
      if (!result.first_failure) result.first_failure = Failure{i, message, std::move(slot.detail)};
    }
  }
  for (Metric& m : result.metrics) {
    if (m.worst == -kInf) m.worst = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "n/a";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string csv_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

int threads_from_env() {
  if (const char* v = std::getenv("C0M_THREADS")) {
    const int n = std::atoi(v);
    if (n > 0) return n;
  }
  return 1;
}

bool SuiteReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed(); });
}

std::vector<std::string> property_ids() {
  std::vector<std::string> ids;
  for (const auto& d : definitions()) ids.push_back(d.id);
  return ids;
}

std::vector<std::string> criterion_ids() {
  std::vector<std::string> ids;
  for (const auto& d : definitions()) {
    if (d.criterion) ids.push_back(d.id);
  }
  return ids;
}

PropertyResult run_property(const std::string& id, const ExperimentConfig& config) {
  const auto defs = definitions();
  for (std::size_t k = 0; k < defs.size(); ++k) {
    if (defs[k].id == id) return run_definition(defs[k], k + 1, config);
  }
  throw Error(Errc::InvalidInput, "unknown property " + id);
}

SuiteReport run_suite(const ExperimentConfig& config, const std::vector<std::string>& ids) {
  SuiteReport report;
  report.config = config;
  for (const auto& id : ids.empty() ? property_ids() : ids) report.results.push_back(run_property(id, config));
  return report;
}

io::Json report_json(const SuiteReport& report) {
  io::Json tolerances = io::Json::object();
  for (const auto& [name, value] : report.config.tolerances) tolerances[name] = value;
  io::Json results = io::Json::array();
  for (const auto& r : report.results) {
    io::Json metrics = io::Json::array();
    for (const auto& m : r.metrics) {
      metrics.push_back({{"name", m.name}, {"tolerance", io::number(m.tolerance)}, {"worst", io::number(m.worst)}});
    }
    io::Json entry = {{"id", r.id},
                      {"title", r.title},
                      {"criterion", r.criterion},
                      {"cases", r.cases},
                      {"failures", r.failures},
                      {"passed", r.passed()},
                      {"metrics", std::move(metrics)}};
    if (r.first_failure) {
      entry["firstFailure"] = {{"trial", r.first_failure->trial},
                               {"message", r.first_failure->message},
                               {"detail", r.first_failure->detail}};
    } else {
      entry["firstFailure"] = nullptr;
    }
    if (!r.sweep.empty()) entry["sweepRows"] = r.sweep.size();
    results.push_back(std::move(entry));
  }
  return {{"config",
           {{"seed", report.config.seed},
            {"trials", report.config.trials},
            {"maxDegree", report.config.max_degree},
            {"tolerances", std::move(tolerances)}}},
          {"passed", report.passed()},
          {"results", std::move(results)}};
}

std::string report_table(const SuiteReport& report) {
  struct Row {
    std::string cells[8];
  };
  std::vector<Row> rows;
  rows.push_back({{"ID", "Property", "Cases", "Fail", "Metric", "Worst", "Tolerance", "Status"}});
  for (const auto& r : report.results) {
    bool first = true;
    for (const auto& m : r.metrics) {
      Row row;
      row.cells[0] = first ? r.id : "";
      row.cells[1] = first ? r.title : "";
      row.cells[2] = first ? std::to_string(r.cases) : "";
      row.cells[3] = first ? std::to_string(r.failures) : "";
      row.cells[4] = m.name;
      row.cells[5] = format_number(m.worst);
      row.cells[6] = format_number(m.tolerance);
      row.cells[7] = first ? (r.passed() ? "PASS" : "FAIL") : "";
      rows.push_back(row);
      first = false;
    }
  }
  std::size_t width[8] = {};
  for (const auto& row : rows) {
    for (int c = 0; c < 8; ++c) width[c] = std::max(width[c], row.cells[c].size());
  }
  std::string rule = "+";
  for (auto w : width) rule += std::string(w + 2, '-') + "+";
  std::ostringstream os;
  os << rule << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << "|";
    for (int c = 0; c < 8; ++c) {
      const std::string& cell = rows[i].cells[c];
      const bool numeric = c == 2 || c == 3 || c == 5 || c == 6;
      const std::string pad(width[c] - cell.size(), ' ');
      os << " " << (numeric ? pad + cell : cell + pad) << " |";
    }
    os << "\n";
    if (i == 0) os << rule << "\n";
  }
  os << rule << "\n";
  os << (report.passed() ? "all properties passed" : "some properties failed") << "\n";
  return os.str();
}

std::string sweep_csv(const SuiteReport& report) {
  std::ostringstream os;
  os << "N,beta,betaPrime,normX,normXinv,residual\n";
  for (const auto& r : report.results) {
    for (const auto& row : r.sweep) {
      os << row.n << "," << csv_number(row.beta) << "," << csv_number(row.beta_prime) << ","
         << csv_number(row.norm_x) << "," << csv_number(row.norm_x_inv) << "," << csv_number(row.residual) << "\n";
    }
  }
  return os.str();
}

void emit_report(const SuiteReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::InvalidInput, "cannot create " + dir.string() + ": " + ec.message());
  io::write_file(dir / "report.json", report_json(report));
  io::write_text(dir / "report.txt", report_table(report));
  io::write_text(dir / "similarity_sweep.csv", sweep_csv(report));
}

}  // namespace c0::verify
