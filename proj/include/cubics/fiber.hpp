#pragma once

// The curve of maps with marked period exactly p, fibered over the a-plane:
// the deflated return polynomial in v, and its numerical fibers.

#include <vector>

#include "cubics/cubic_map.hpp"
#include "cubics/polynomial.hpp"

namespace cubics {

struct FiberConfig {
  double deflate_tol = 1e-9;      // relative residual allowed after deflation
  double fiber_tol = 1e-9;        // |f^p(a) - a| at an accepted root
  double exactness_floor = 1e-6;  // |f^d(a) - a| must exceed this for d | p, d < p
};

struct FiberPolynomial {
  Complex a;
  long p = 0;
  Poly coeffs;                      // ascending in v
  long degree = 0;                  // 3^{p-1} minus lower-period degrees
  double deflation_residual = 0.0;  // relative, from the verification points
};

// Degree of the deflated polynomial: 1, 2, 8, 24, ... for p = 1, 2, 3, 4.
long fiber_degree(long p);

// Coefficients of f^p(a) - a as a polynomial in v (no deflation).
Poly return_polynomial(Complex a, long p);

// The deflated polynomial: (f^p(a) - a) divided by the polynomials of all
// proper divisor periods.  Computed in double precision and recomputed with
// 50-digit scalars when the deflation residual exceeds deflate_tol; throws
// numerical_error if even that fails.
FiberPolynomial phi_p(Complex a, long p, const FiberConfig& cfg = {});

struct Fiber {
  Complex a;
  std::vector<Complex> roots;
  double min_separation = 0.0;
};

// All v-roots over a, polished by Newton and validated dynamically (return
// residual below fiber_tol, no proper divisor period within the exactness
// floor).
Fiber fiber_roots(const FiberPolynomial& fp, const FiberConfig& cfg = {});

}  // namespace cubics
