#pragma once

#include <complex>
#include <vector>

namespace rif {

// Dense real polynomial, coefficients in ascending order: c[i] multiplies x^i.
struct Poly {
  std::vector<double> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
};

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scaled(const Poly& a, double s);
Poly poly_derivative(const Poly& a);
std::complex<double> poly_eval(const Poly& p, std::complex<double> x);

// Sum of |c[i]| * |x|^i, the natural scale for relative residuals of
// poly_eval at x.
double poly_eval_scale(const Poly& p, std::complex<double> x);

// All complex roots via the balanced companion matrix, each polished by a few
// Newton steps on the original polynomial. Requires a nonzero leading
// coefficient. Throws RootCountError if any polished root keeps a relative
// residual above `residual_tol`.
std::vector<std::complex<double>> poly_roots(const Poly& p, double residual_tol = 1e-9);

}  // namespace rif
