#include "c0model/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <unsupported/Eigen/FFT>

#include "c0model/linalg.hpp"
#include "c0model/modelspace.hpp"

namespace c0 {

namespace {

constexpr int kHankelStart = 512;
constexpr int kHankelMax = 2048;
constexpr double kHankelAgreement = 1e-8;
constexpr int kRangeColumns = 40;
constexpr int kContourPoints = 128;
constexpr double kIdempotentTol = 1e-8;
constexpr int kWitnessDraws = 8;
constexpr int kBaseRetries = 16;
constexpr double kSynthesisResidual = 1e-7;

Complex complex_normal(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double re = gauss(rng);
  const double im = gauss(rng);
  return {re, im};
}

Matrix normal_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal(rng);
  }
  return m;
}

Matrix random_combination(std::span<const Matrix> basis, std::mt19937_64& rng) {
  Matrix z = Matrix::Zero(basis.front().rows(), basis.front().cols());
  for (const Matrix& b : basis) z += complex_normal(rng) * b;
  return z;
}

double max_commutator(const Matrix& p, std::span<const Matrix> generators) {
  double worst = 0.0;
  for (const Matrix& g : generators) worst = std::max(worst, linalg::opnorm(p * g - g * p));
  return worst;
}

// Top singular value of a matrix of rank far below its size.
double top_singular_value(const Matrix& h, std::mt19937_64& rng) {
  const Eigen::Index k = std::min<Eigen::Index>(h.cols(), kRangeColumns);
  Matrix y = h * normal_matrix(rng, h.cols(), k);
  y = h * (h.adjoint() * y);
  Eigen::HouseholderQR<Matrix> qr(y);
  const Matrix q = qr.householderQ() * Matrix::Identity(h.rows(), k);
  return linalg::opnorm(q.adjoint() * h);
}

double hankel_top(const RationalFunction& u, const BlaschkeProduct& theta, int size) {
  const int samples = 8 * size;
  std::vector<Complex> values(static_cast<std::size_t>(samples));
  for (int m = 0; m < samples; ++m) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * m / samples);
    values[static_cast<std::size_t>(m)] = u(z) * std::conj(theta(z));
  }
  Eigen::FFT<double> fft;
  std::vector<Complex> spectrum;
  fft.fwd(spectrum, values);
  // c_{-m} = spectrum[samples - m] / samples
  auto coeff = [&](int m) { return spectrum[static_cast<std::size_t>(samples - m)] / static_cast<double>(samples); };
  Matrix h(size, size);
  for (int j = 0; j < size; ++j) {
    for (int k = 0; k < size; ++k) h(j, k) = coeff(j + k + 1);
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  return top_singular_value(h, rng);
}

std::vector<Matrix> unvec_basis(const Matrix& null, Eigen::Index n) {
  std::vector<Matrix> basis;
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    basis.push_back(Eigen::Map<const Matrix>(null.col(c).data(), n, n));
  }
  return basis;
}

}  // namespace

double sarason_norm(const RationalFunction& u, const BlaschkeProduct& theta) {
  if (theta.is_constant()) return 0.0;
  return linalg::opnorm(apply_function(u, jordan_block(theta)));
}

HankelEstimate hankel_distance(const RationalFunction& u, const BlaschkeProduct& theta) {
  HankelEstimate est;
  int size = kHankelStart;
  est.value = hankel_top(u, theta, size);
  est.truncation = size;
  est.change = std::numeric_limits<double>::infinity();
  while (size < kHankelMax) {
    size *= 2;
    const double next = hankel_top(u, theta, size);
    est.change = std::abs(next - est.value);
    est.value = next;
    est.truncation = size;
    if (est.change < kHankelAgreement) break;
  }
  return est;
}

std::vector<Matrix> commutant_of(std::span<const Matrix> generators, Eigen::Index n, bool with_adjoints) {
  std::vector<Matrix> all(generators.begin(), generators.end());
  if (with_adjoints) {
    for (const Matrix& g : generators) all.push_back(g.adjoint());
  }
  if (all.empty()) {
    return unvec_basis(Matrix::Identity(n * n, n * n), n);
  }
  // Scale-aware floor: a generator that is a multiple of I up to rounding
  // must not produce a relative-noise nullspace.
  double scale = 0.0;
  for (const Matrix& g : all) scale = std::max(scale, linalg::opnorm(g));
  return unvec_basis(linalg::nullspace(linalg::commutation_system(all, n), tol::kRankRelative,
                                       tol::kRankRelative * scale), n);
}

std::vector<Matrix> commutant_basis(const Matrix& t, bool with_adjoints) {
  const Matrix gens[] = {t};
  return commutant_of(gens, t.rows(), with_adjoints);
}

IrreducibilityResult irreducibility_check(const Matrix& t, std::uint64_t seed) {
  const Eigen::Index n = t.rows();
  IrreducibilityResult res;
  std::mt19937_64 rng(seed);
  const std::vector<Matrix> first = commutant_basis(t, false);
  res.commutant_dimension = static_cast<int>(first.size());
  const std::vector<Matrix> reducing = commutant_of(first, n, true);
  res.reducing_dimension = static_cast<int>(reducing.size());
  res.irreducible = reducing.size() <= 1;

  if (!res.irreducible) {
    for (int draw = 0; draw < kWitnessDraws && !res.witness; ++draw) {
      const Matrix z = random_combination(reducing, rng);
      const Matrix herm = (z + z.adjoint()) / 2.0;
      Eigen::SelfAdjointEigenSolver<Matrix> eig(herm);
      const Eigen::VectorXd& ev = eig.eigenvalues();
      const double spread = ev(n - 1) - ev(0);
      Eigen::Index cut = 0;
      double gap = 0.0;
      for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (ev(i + 1) - ev(i) > gap) {
          gap = ev(i + 1) - ev(i);
          cut = i + 1;
        }
      }
      if (!(gap > 1e-6 * std::max(1.0, spread))) continue;
      const Matrix v = eig.eigenvectors().leftCols(cut);
      const Matrix p = v * v.adjoint();
      const double residual = max_commutator(p, first);
      if (residual < kIdempotentTol) {
        res.witness = p;
        res.witness_residual = residual;
      }
    }
  }

  const std::vector<Matrix> second = commutant_of(first, n, false);
  res.double_commutant_dimension = static_cast<int>(second.size());
  if (!second.empty() && n > 0) {
    const Matrix a = random_combination(second, rng);
    const double scale = linalg::opnorm(a);
    if (scale > 0.0) {
      const Matrix a_scaled = a / (2.0 * scale);
      std::vector<SpectralCluster> clusters;
      try {
        clusters = spectral_structure(a_scaled);
      } catch (const Error&) {
        clusters.clear();
      }
      if (clusters.size() >= 2) {
        const Complex c = clusters.front().center;
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < clusters.size(); ++i) gap = std::min(gap, std::abs(clusters[i].center - c));
        const double rho = gap / 2.0;
        Matrix p = Matrix::Zero(n, n);
        const Matrix id = Matrix::Identity(n, n);
        for (int m = 0; m < kContourPoints; ++m) {
          const Complex w = std::polar(rho, 2.0 * std::numbers::pi * m / kContourPoints);
          p += w * (((c + w) * id - a_scaled).partialPivLu().inverse());
        }
        p /= static_cast<double>(kContourPoints);
        const double idem = linalg::opnorm(p * p - p);
        const double member = max_commutator(p, first);
        const bool nontrivial = linalg::opnorm(p) > 0.5 && linalg::opnorm(id - p) > 0.5;
        res.idempotent_residual = std::max(idem, member);
        if (nontrivial && idem < kIdempotentTol && member < kIdempotentTol) {
          res.has_idempotent = true;
          res.idempotent = p;
        }
      }
    }
  }
  return res;
}

MaximalityReport maximality_report(const ContractionOperator& t) {
  if (t.jordan_model().blocks().size() > 1) throw Error(Errc::NotMultiplicityFree, "T has no cyclic vector");
  MaximalityReport report;
  report.theta = t.minimal_function();
  for (const BigDivisor& big : big_divisors(report.theta)) {
    const Matrix m = apply_function(big.psi, t.matrix());
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
    MaximalityEntry entry;
    entry.psi = big.psi;
    entry.lambda = big.lambda;
    entry.norm = svd.singularValues()(0);
    entry.sigma2 = m.cols() > 1 ? svd.singularValues()(1) : 0.0;
    entry.xi = svd.matrixV().col(0);
    entry.margin = cyclicity_margin(t.matrix(), entry.xi, report.theta);
    entry.cyclic = entry.margin > tol::kCyclic;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

UnitaryRecovery unitary_from_maximality(const ContractionOperator& t) {
  if (t.jordan_model().blocks().size() > 1) throw Error(Errc::NotMultiplicityFree, "T has no cyclic vector");
  UnitaryRecovery rec;
  rec.theta = t.minimal_function();
  const Matrix& tm = t.matrix();
  double best = -1.0;
  Matrix best_v;
  for (const BigDivisor& big : big_divisors(rec.theta)) {
    Eigen::BDCSVD<Matrix> svd(apply_function(big.psi, tm), Eigen::ComputeFullV);
    const double s1 = svd.singularValues()(0);
    if (s1 > best) {
      best = s1;
      rec.psi = big.psi;
      rec.lambda = big.lambda;
      rec.psi_norm = s1;
      rec.sigma2 = tm.cols() > 1 ? svd.singularValues()(1) : 0.0;
      best_v = svd.matrixV();
    }
  }
  if (!(1.0 - rec.psi_norm < tol::kMaximality) || !(rec.sigma2 < tol::kRankOne * rec.psi_norm)) {
    throw Error(Errc::NotMaximal, "largest big-divisor norm " + std::to_string(rec.psi_norm) +
                                      ", second singular value " + std::to_string(rec.sigma2));
  }
  rec.xi = best_v.col(0);
  std::vector<Complex> order = rec.psi.flattened();
  order.push_back(rec.lambda);
  const Matrix s = jordan_block(rec.theta);
  Vector kernel = model_kernel(rec.theta, rec.lambda);
  kernel.normalize();
  const Matrix z = partial_product_basis(tm, order, rec.xi);
  const Matrix y = partial_product_basis(s, order, kernel);
  rec.w = y * z.partialPivLu().inverse();
  const Eigen::Index n = tm.rows();
  rec.unitarity_residual = linalg::opnorm(rec.w.adjoint() * rec.w - Matrix::Identity(n, n));
  rec.intertwining_residual = linalg::opnorm(rec.w * tm - s * rec.w);
  return rec;
}

double hypothesis_value(const ContractionOperator& t) {
  const BlaschkeProduct& theta = t.minimal_function();
  const Matrix& tm = t.matrix();
  double value = 1.0;
  for (const BlaschkeProduct& psi : enumerate_divisors(theta)) {
    if (psi.degree() < 2) continue;
    const Matrix q = kernel_basis(tm, psi, psi.degree());
    const Matrix restricted = q.adjoint() * tm * q;
    for (const BigDivisor& big : big_divisors(psi)) {
      value = std::min(value, linalg::opnorm(apply_function(big.psi, restricted)));
    }
  }
  return value;
}

double beta_floor(int n) {
  if (n <= 2) return 0.0;
  const double m = static_cast<double>(n - 1);
  return std::pow(1.0 - 1.0 / (m * m), 0.25);
}

double mobius_radius(double beta, double beta_prime) {
  return (beta_prime * beta_prime - beta * beta) / (beta_prime + beta * beta);
}

double euclidean_radius(double mu, Complex anchor) {
  // |b_a(l)| <= |l - a| / (1 - |a|^2 - |a| |l - a|), so |l - a| < r keeps it below mu.
  const double a = std::abs(anchor);
  return mu * (1.0 - a * a) / (1.0 + mu * a);
}

namespace {

struct Synthesis {
  Matrix x;
  TraceNode node;
};

Synthesis synthesize_base(const Matrix& t1, const Matrix& t2, const BlaschkeProduct& theta,
                          std::mt19937_64& rng) {
  Synthesis out;
  out.node.base = true;
  const std::vector<Complex> order = theta.flattened();
  const Complex anchor = order.back();
  const BlaschkeProduct psi = divide(theta, BlaschkeProduct::normalized(anchor));
  int retries = 0;
  auto pick = [&](const Matrix& t, double& attained) {
    const Matrix m = apply_function(psi, t);
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Vector top = svd.matrixV().col(0);
    Vector xi = top;
    for (int attempt = 0; attempt <= kBaseRetries; ++attempt) {
      if (is_cyclic(t, xi, theta)) {
        attained = (m * xi).norm();
        return xi;
      }
      ++retries;
      Vector noise(t.rows());
      for (Eigen::Index i = 0; i < noise.size(); ++i) noise(i) = complex_normal(rng);
      xi = top + (0.05 * (attempt + 1)) * noise.normalized();
      xi.normalize();
    }
    throw Error(Errc::CyclicSearchFailed, "no cyclic vector near the top singular vector");
  };
  out.node.xi1 = pick(t1, out.node.psi_norm1);
  out.node.xi2 = pick(t2, out.node.psi_norm2);
  out.node.retries = retries;
  const Matrix z1 = partial_product_basis(t1, order, out.node.xi1);
  const Matrix z2 = partial_product_basis(t2, order, out.node.xi2);
  out.node.basis_cond1 = linalg::condition_number(z1);
  out.node.basis_cond2 = linalg::condition_number(z2);
  out.x = z2 * z1.partialPivLu().inverse();
  return out;
}

Synthesis synthesize(const Matrix& t1, const Matrix& t2, const BlaschkeProduct& theta, double mu,
                     std::mt19937_64& rng) {
  const std::vector<Complex> order = theta.flattened();
  const Complex anchor = order.back();
  const double r = euclidean_radius(mu, anchor);
  const bool clustered =
      std::all_of(order.begin(), order.end(), [&](Complex l) { return std::abs(l - anchor) < r; });
  Synthesis out;
  if (clustered) {
    out = synthesize_base(t1, t2, theta, rng);
  } else {
    std::vector<Complex> list{anchor};
    list.insert(list.end(), order.begin(), order.end() - 1);
    out.node.base = false;
    out.node.split = cluster_split(list, r);
    const BlaschkeProduct theta_e = BlaschkeProduct::from_roots(out.node.split.e);
    const BlaschkeProduct theta_f = BlaschkeProduct::from_roots(out.node.split.f);
    const CoronaSolution corona = bezout_solve(theta_e, theta_f);
    out.node.corona_norm1 = corona.norm1;
    out.node.corona_norm2 = corona.norm2;
    out.node.corona_residual = corona.residual;
    out.node.delta = corona.delta;
    out.node.separation_bound = separation_lower_bound(out.node.split.e, out.node.split.f);
    const Eigen::Index de = theta_e.degree();
    const Eigen::Index df = theta_f.degree();
    const SplitCertificate y1 = split_with(t1, theta_e, theta_f, corona, de, df);
    const SplitCertificate y2 = split_with(t2, theta_e, theta_f, corona, de, df);
    out.node.y1_norm = y1.norm_x;
    out.node.y1_inv_norm = y1.norm_x_inv;
    out.node.y2_norm = y2.norm_x;
    out.node.y2_inv_norm = y2.norm_x_inv;
    out.node.split_residual = std::max(y1.residual, y2.residual);
    Synthesis e = synthesize(y1.block1, y2.block1, theta_e, mu, rng);
    Synthesis f = synthesize(y1.block2, y2.block2, theta_f, mu, rng);
    const Eigen::Index n = t1.rows();
    Matrix middle = Matrix::Zero(n, n);
    middle.topLeftCorner(de, de) = e.x;
    middle.bottomRightCorner(df, df) = f.x;
    out.x = y2.x_inv * middle * y1.x;
    out.node.children.push_back(std::move(e.node));
    out.node.children.push_back(std::move(f.node));
  }
  out.node.zeros = order;
  out.node.norm_x = linalg::opnorm(out.x);
  out.node.norm_x_inv = linalg::opnorm(out.x.inverse());
  return out;
}

}  // namespace

SimilarityCertificate similarity_synthesize(const ContractionOperator& t1, const ContractionOperator& t2,
                                            double beta, double beta_prime, const SimilarityOptions& options) {
  if (t1.dimension() != t2.dimension()) {
    throw Error(Errc::MinimalFunctionMismatch, "operators act on spaces of different dimension");
  }
  const BlaschkeProduct& theta = t1.minimal_function();
  if (!same_zeros(theta, t2.minimal_function())) {
    throw Error(Errc::MinimalFunctionMismatch, "T1 and T2 have different minimal functions");
  }
  if (t1.jordan_model().blocks().size() > 1 || t2.jordan_model().blocks().size() > 1) {
    throw Error(Errc::NotMultiplicityFree, "similarity synthesis needs multiplicity-free operators");
  }
  const int n = theta.degree();
  const double floor = beta_floor(n);
  if (!(beta_prime < 1.0 && beta < beta_prime && beta > floor)) {
    throw Error(Errc::HypothesisFailed, "need 1 > beta' > beta > " + std::to_string(floor));
  }
  SimilarityCertificate cert;
  cert.beta = beta;
  cert.beta_prime = beta_prime;
  cert.hypothesis1 = std::numeric_limits<double>::quiet_NaN();
  cert.hypothesis2 = std::numeric_limits<double>::quiet_NaN();
  std::size_t divisor_count = 1;
  for (const Zero& z : theta.zeros()) divisor_count *= static_cast<std::size_t>(z.multiplicity + 1);
  if (options.enforce_hypotheses && divisor_count <= kHypothesisDivisorLimit) {
    cert.hypothesis1 = hypothesis_value(t1);
    cert.hypothesis2 = hypothesis_value(t2);
    if (!(std::min(cert.hypothesis1, cert.hypothesis2) > beta_prime)) {
      throw Error(Errc::HypothesisFailed, "divisor norms " + std::to_string(cert.hypothesis1) + ", " +
                                              std::to_string(cert.hypothesis2) + " do not exceed beta'");
    }
  }
  cert.mu = mobius_radius(beta, beta_prime);
  cert.radius = n > 0 ? euclidean_radius(cert.mu, theta.flattened().back()) : 0.0;
  if (n == 0) {
    cert.x = Matrix(0, 0);
    cert.norm_x = cert.norm_x_inv = 1.0;
    return cert;
  }
  std::mt19937_64 rng(options.seed);
  Synthesis s = synthesize(t1.matrix(), t2.matrix(), theta, cert.mu, rng);
  cert.x = std::move(s.x);
  cert.trace = std::move(s.node);
  cert.norm_x = cert.trace.norm_x;
  cert.norm_x_inv = cert.trace.norm_x_inv;
  cert.residual = linalg::opnorm(cert.x * t1.matrix() - t2.matrix() * cert.x);
  if (!(cert.residual < kSynthesisResidual * std::max(cert.norm_x, 1.0))) {
    throw Error(Errc::NumericalFailure, "intertwining residual " + std::to_string(cert.residual));
  }
  return cert;
}

}  // namespace c0
