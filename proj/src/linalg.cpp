#include "c0model/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace c0::linalg {

namespace {

using Svd = Eigen::BDCSVD<Matrix>;

// Tall systems are reduced to their square R factor first; R has the same
// singular values and right singular vectors.
Matrix squared_up(const Matrix& a) {
  if (a.rows() <= a.cols()) return a;
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
}

}  // namespace

Eigen::VectorXd singular_values(const Matrix& a) {
  if (a.size() == 0) return {};
  return Svd(a).singularValues();
}

double opnorm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

double condition_number(const Matrix& a) {
  const Eigen::VectorXd s = singular_values(a);
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

Matrix nullspace(const Matrix& a_in, double rel, double floor) {
  const Eigen::Index n = a_in.cols();
  if (a_in.rows() == 0) return Matrix::Identity(n, n);
  const Matrix a = squared_up(a_in);
  Svd svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = std::max(floor, s.size() > 0 ? rel * s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

Matrix smallest_right_singular(const Matrix& a_in, Eigen::Index dim) {
  const Matrix a = squared_up(a_in);
  Svd svd(a, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(dim);
}

Matrix orthonormal_range(const Matrix& a, double rel) {
  if (a.cols() == 0) return Matrix(a.rows(), 0);
  Svd svd(a, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = rel * s(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0.0) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

double subspace_distance(const Matrix& q1, const Matrix& q2) {
  const Matrix p1 = q1 * q1.adjoint();
  const Matrix p2 = q2 * q2.adjoint();
  return opnorm(p1 - p2);
}

double inclusion_gap(const Matrix& q1, const Matrix& q2) {
  if (q1.cols() == 0) return 0.0;
  const Matrix residual = q1 - q2 * (q2.adjoint() * q1);
  return opnorm(residual);
}

double hausdorff(std::span<const Complex> a, std::span<const Complex> b) {
  auto directed = [](std::span<const Complex> x, std::span<const Complex> y) {
    double worst = 0.0;
    for (Complex p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (Complex q : y) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double matching_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (Complex p : a) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && std::abs(p - b[j]) < best_d) {
        best_d = std::abs(p - b[j]);
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

std::vector<int> weyr_characteristic(const Matrix& m_in, double cutoff) {
  std::vector<int> weyr;
  Matrix m = m_in;
  while (m.rows() > 0) {
    Svd svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > cutoff) ++rank;
    }
    const Eigen::Index nullity = m.rows() - rank;
    if (nullity == 0) break;
    weyr.push_back(static_cast<int>(nullity));
    const Matrix v = svd.matrixV().leftCols(rank);
    m = v.adjoint() * m * v;
  }
  return weyr;
}

Matrix orthonormalize(const Matrix& a) {
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(a.rows(), a.cols());
}

Matrix commutation_system(std::span<const Matrix> generators, Eigen::Index n) {
  const Eigen::Index n2 = n * n;
  Matrix k(n2 * static_cast<Eigen::Index>(generators.size()), n2);
  k.setZero();
  // vec is column-major: vec(XG)[i + n j] = sum_l X(i,l) G(l,j),
  // vec(GX)[i + n j] = sum_l G(i,l) X(l,j).
  Eigen::Index row0 = 0;
  for (const Matrix& g : generators) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index row = row0 + i + n * j;
        for (Eigen::Index l = 0; l < n; ++l) {
          k(row, i + n * l) += g(l, j);
          k(row, l + n * j) -= g(i, l);
        }
      }
    }
    row0 += n2;
  }
  return k;
}

}  // namespace c0::linalg
