#include "c0model/poly.hpp"

#include <algorithm>
#include <cmath>

namespace c0::poly {

Poly trim(Poly p) {
  while (!p.empty() && p.back() == Complex(0.0)) p.pop_back();
  return p;
}

int degree(const Poly& p) {
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) {
    if (p[k] != Complex(0.0)) return k;
  }
  return -1;
}

Complex eval(const Poly& p, Complex z) {
  Complex acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return trim(std::move(d));
}

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Complex(0.0));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
  return trim(std::move(r));
}

Poly sub(const Poly& a, const Poly& b) { return add(a, scale(b, -1.0)); }

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Complex(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return trim(std::move(r));
}

Poly scale(const Poly& p, Complex s) {
  Poly r(p);
  for (auto& c : r) c *= s;
  return trim(std::move(r));
}

Poly from_roots(std::span<const Complex> roots) {
  Poly p{1.0};
  for (Complex r : roots) p = mul(p, Poly{-r, 1.0});
  return p;
}

std::vector<Complex> roots(const Poly& p_in) {
  const Poly p = trim(p_in);
  const int n = degree(p);
  if (n <= 0) return {};
  // Leading zero coefficients are roots at the origin; strip them first so the
  // companion matrix only sees the nonzero spectrum.
  int shift = 0;
  while (p[shift] == Complex(0.0)) ++shift;
  std::vector<Complex> out(static_cast<std::size_t>(shift), Complex(0.0));
  const int m = n - shift;
  if (m == 0) return out;
  Matrix companion = Matrix::Zero(m, m);
  for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) companion(i, m - 1) = -p[shift + i] / p[n];
  Eigen::ComplexEigenSolver<Matrix> solver(companion, false);
  for (int i = 0; i < m; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

Division divide(const Poly& a_in, const Poly& b_in) {
  const Poly b = trim(b_in);
  if (b.empty()) throw Error(Errc::InvalidInput, "polynomial division by zero");
  Poly r = trim(a_in);
  const int db = degree(b);
  if (degree(r) < db) return {{}, r};
  Poly q(static_cast<std::size_t>(degree(r) - db + 1), Complex(0.0));
  for (int k = degree(r) - db; k >= 0; --k) {
    const Complex c = r[k + db] / b[db];
    q[k] = c;
    for (int j = 0; j <= db; ++j) r[k + j] -= c * b[j];
    r[k + db] = 0.0;
  }
  r.resize(static_cast<std::size_t>(db));
  return {trim(std::move(q)), trim(std::move(r))};
}

double coefficient_norm(const Poly& p) {
  double s = 0.0;
  for (Complex c : p) s += std::abs(c);
  return s;
}

double derivative_coefficient_norm(const Poly& p) {
  double s = 0.0;
  for (std::size_t k = 1; k < p.size(); ++k) s += static_cast<double>(k) * std::abs(p[k]);
  return s;
}

Matrix eval(const Poly& p, const Matrix& a) {
  const Eigen::Index n = a.rows();
  Matrix acc = Matrix::Zero(n, n);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = (acc * a).eval();
    acc.diagonal().array() += *it;
  }
  return acc;
}

}  // namespace c0::poly
