#pragma once

// Dense complex polynomials (ascending coefficients) and a simultaneous
// root finder.  Shared numeric utility for the fiber and landing code.

#include <complex>
#include <vector>

namespace cubics {

using Complex = std::complex<double>;
using Poly = std::vector<Complex>;  // p[k] multiplies v^k

Complex poly_eval(const Poly& p, Complex x);
Poly poly_derivative(const Poly& p);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
// Drops trailing near-zero coefficients (relative to the largest one).
void poly_trim(Poly& p, double rel_tol = 1e-13);

// Quotient of p by a monic linear factor (v - root); the remainder is
// returned through rem.
Poly poly_deflate_linear(const Poly& p, Complex root, Complex* rem = nullptr);

// Long division p = q * d + r with deg(r) < deg(d).
std::pair<Poly, Poly> poly_divmod(const Poly& p, const Poly& d);

// All roots by Aberth-Ehrlich iteration from a scaled circle start, with a
// final Newton polish per root.  Throws cubics::numerical_error when the
// iteration stalls.
std::vector<Complex> poly_roots(const Poly& p, double tol = 1e-13, int max_iter = 400);

}  // namespace cubics
