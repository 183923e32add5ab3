#pragma once

// Dense complex polynomials, coefficients in ascending degree.

#include <span>
#include <vector>

#include "c0model/types.hpp"

namespace c0::poly {

using Poly = std::vector<Complex>;

/// Drops trailing zero coefficients. The zero polynomial becomes {}.
Poly trim(Poly p);

int degree(const Poly& p);

Complex eval(const Poly& p, Complex z);
Poly derivative(const Poly& p);

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& p, Complex s);

/// prod (z - r) over the given roots.
Poly from_roots(std::span<const Complex> roots);

/// All complex roots (companion-matrix eigenvalues).
std::vector<Complex> roots(const Poly& p);

struct Division {
  Poly quotient;
  Poly remainder;
};

/// Long division a = q*b + r with deg r < deg b.
Division divide(const Poly& a, const Poly& b);

/// Sum of |coefficient| and of k*|coefficient|: bounds for |p| and |p'| on the unit circle.
double coefficient_norm(const Poly& p);
double derivative_coefficient_norm(const Poly& p);

/// p(A) by Horner's rule.
Matrix eval(const Poly& p, const Matrix& a);

}  // namespace c0::poly
