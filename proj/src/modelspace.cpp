#include "c0model/modelspace.hpp"

#include <cmath>

namespace c0 {

namespace {

void check_order(const BlaschkeProduct& theta, std::span<const Complex> order) {
  if (!same_zeros(BlaschkeProduct::from_roots(order), theta)) {
    throw Error(Errc::InvalidInput, "basis order is not a permutation of the zeros");
  }
}

}  // namespace

Complex ModelSpace::basis_value(int k, Complex z) const {
  const Complex l = zeros[static_cast<std::size_t>(k)];
  Complex v = std::sqrt(1.0 - std::norm(l)) / (1.0 - std::conj(l) * z);
  for (int j = 0; j < k; ++j) v *= blaschke_factor(zeros[static_cast<std::size_t>(j)], z);
  return v;
}

ModelSpace tm_basis(const BlaschkeProduct& theta) {
  const std::vector<Complex> order = theta.flattened();
  return tm_basis(theta, order);
}

ModelSpace tm_basis(const BlaschkeProduct& theta, std::span<const Complex> order) {
  if (theta.is_constant()) throw Error(Errc::DegreeZero, "H(theta) is trivial for constant theta");
  check_order(theta, order);
  ModelSpace space{theta, {order.begin(), order.end()}, {}};
  poly::Poly num{1.0};
  poly::Poly den{1.0};
  for (Complex l : order) {
    const poly::Poly kernel_den{1.0, -std::conj(l)};
    space.basis.push_back(RationalFunction::trusted(poly::scale(num, std::sqrt(1.0 - std::norm(l))),
                                                    poly::mul(den, kernel_den)));
    num = poly::mul(num, poly::Poly{-l, 1.0});
    den = poly::mul(den, kernel_den);
  }
  return space;
}

std::vector<Complex> divisor_first_order(const BlaschkeProduct& theta, const BlaschkeProduct& phi) {
  const BlaschkeProduct rest = divide(theta, phi);
  std::vector<Complex> order = phi.flattened();
  const std::vector<Complex> tail = rest.flattened();
  order.insert(order.end(), tail.begin(), tail.end());
  return order;
}

Matrix compressed_shift(std::span<const Complex> zeros) {
  const auto n = static_cast<Eigen::Index>(zeros.size());
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double dj = std::sqrt(1.0 - std::norm(zeros[static_cast<std::size_t>(j)]));
    a(j, j) = zeros[static_cast<std::size_t>(j)];
    Complex chain = 1.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double di = std::sqrt(1.0 - std::norm(zeros[static_cast<std::size_t>(i)]));
      a(i, j) = di * dj * chain;
      chain *= -std::conj(zeros[static_cast<std::size_t>(i)]);
    }
  }
  return a;
}

Matrix jordan_block(const BlaschkeProduct& theta) {
  if (theta.is_constant()) throw Error(Errc::DegreeZero, "S(theta) needs a nonconstant theta");
  return compressed_shift(theta.flattened());
}

Matrix jordan_block(const BlaschkeProduct& theta, std::span<const Complex> order) {
  if (theta.is_constant()) throw Error(Errc::DegreeZero, "S(theta) needs a nonconstant theta");
  check_order(theta, order);
  return compressed_shift(order);
}

Vector model_kernel(const BlaschkeProduct& theta, Complex lambda) {
  const std::vector<Complex> order = theta.flattened();
  return model_kernel(theta, lambda, order);
}

Vector model_kernel(const BlaschkeProduct& theta, Complex lambda, std::span<const Complex> order) {
  if (theta.is_constant()) throw Error(Errc::DegreeZero, "H(theta) is trivial for constant theta");
  if (std::abs(theta(lambda)) > 1e-8) throw Error(Errc::NotARoot, "k_lambda requires theta(lambda) = 0");
  check_order(theta, order);
  const auto n = static_cast<Eigen::Index>(order.size());
  Vector c(n);
  const double scale = 1.0 - std::norm(lambda);
  Complex partial = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex l = order[static_cast<std::size_t>(k)];
    const Complex ek = std::sqrt(1.0 - std::norm(l)) / (1.0 - std::conj(l) * lambda) * partial;
    c(k) = scale * std::conj(ek);
    partial *= blaschke_factor(l, lambda);
  }
  return c;
}

JordanModel::JordanModel(std::vector<BlaschkeProduct> blocks) : blocks_(std::move(blocks)) {
  while (!blocks_.empty() && blocks_.back().is_constant()) blocks_.pop_back();
  for (std::size_t k = 1; k < blocks_.size(); ++k) {
    if (!divides(blocks_[k], blocks_[k - 1])) {
      throw Error(Errc::InvalidInput, "Jordan model blocks must form a divisibility chain");
    }
  }
}

int JordanModel::dimension() const {
  int d = 0;
  for (const auto& b : blocks_) d += b.degree();
  return d;
}

bool same_model(const JordanModel& a, const JordanModel& b, double tol) {
  if (a.blocks().size() != b.blocks().size()) return false;
  for (std::size_t k = 0; k < a.blocks().size(); ++k) {
    if (!same_zeros(a.blocks()[k], b.blocks()[k], tol)) return false;
  }
  return true;
}

Matrix jordan_operator(const JordanModel& model) {
  const Eigen::Index n = model.dimension();
  Matrix j = Matrix::Zero(n, n);
  Eigen::Index offset = 0;
  for (const auto& block : model.blocks()) {
    const Matrix s = jordan_block(block);
    j.block(offset, offset, s.rows(), s.cols()) = s;
    offset += s.rows();
  }
  return j;
}

}  // namespace c0
