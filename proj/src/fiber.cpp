#include "cubics/fiber.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_complex.hpp>

#include "cubics/errors.hpp"

namespace cubics {

namespace {

using BigComplex = boost::multiprecision::cpp_complex_50;

template <typename C>
std::vector<C> scalar_return_polynomial(C a, long p) {
  // iterate the marked point symbolically in v: z <- z^3 - 3a^2 z + 2a^3 + v
  const C a2 = a * a;
  std::vector<C> z{a};  // f^0(a)
  for (long it = 0; it < p; ++it) {
    std::vector<C> sq(2 * z.size() - 1, C(0));
    for (size_t i = 0; i < z.size(); ++i)
      for (size_t j = 0; j < z.size(); ++j) sq[i + j] += z[i] * z[j];
    std::vector<C> cube(sq.size() + z.size() - 1, C(0));
    for (size_t i = 0; i < sq.size(); ++i)
      for (size_t j = 0; j < z.size(); ++j) cube[i + j] += sq[i] * z[j];
    for (size_t i = 0; i < z.size(); ++i) cube[i] -= C(3) * a2 * z[i];
    cube[0] += C(2) * a2 * a;
    if (cube.size() < 2) cube.resize(2, C(0));
    cube[1] += C(1);
    z = std::move(cube);
  }
  z[0] -= a;
  return z;
}

template <typename C>
std::vector<C> scalar_divide_exact(const std::vector<C>& num, const std::vector<C>& den) {
  std::vector<C> rem = num;
  std::vector<C> quo(num.size() - den.size() + 1, C(0));
  const C lead = den.back();
  for (size_t i = quo.size(); i-- > 0;) {
    C c = rem[i + den.size() - 1] / lead;
    quo[i] = c;
    for (size_t j = 0; j < den.size(); ++j) rem[i + j] -= c * den[j];
  }
  return quo;
}

template <typename C>
std::vector<C> scalar_phi(C a, long p) {
  std::vector<C> poly = scalar_return_polynomial(a, p);
  for (long d = 1; d < p; ++d)
    if (p % d == 0) poly = scalar_divide_exact(poly, scalar_phi(a, d));
  return poly;
}

template <typename C>
C scalar_eval(const std::vector<C>& poly, C x) {
  C acc(0);
  for (size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
  return acc;
}

// Relative residual of phi * (lower-period product) against f^p(a) - a on a
// ring of test points.
template <typename C>
double deflation_residual(C a, long p, const std::vector<C>& phi) {
  const std::vector<C> full = scalar_return_polynomial(a, p);
  double scale = 0.0;
  for (const C& c : full) scale = std::max(scale, static_cast<double>(abs(c)));
  const double r = 1.0 + static_cast<double>(abs(a));
  const double degree_full = static_cast<double>(full.size() - 1);
  const double value_scale = scale * std::pow(r, degree_full) * (degree_full + 1.0);
  double worst = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double ang = 2.0 * M_PI * j / 8.0 + 0.19;
    C v = C(r * std::cos(ang), r * std::sin(ang));
    C prod = scalar_eval(phi, v);
    for (long d = 1; d < p; ++d)
      if (p % d == 0) prod *= scalar_eval(scalar_phi(a, d), v);
    const double err = static_cast<double>(abs(prod - scalar_eval(full, v)));
    worst = std::max(worst, err / value_scale);
  }
  return worst;
}

}  // namespace

long fiber_degree(long p) {
  long deg = 1;
  for (long k = 1; k < p; ++k) deg *= 3;
  for (long d = 1; d < p; ++d)
    if (p % d == 0) deg -= fiber_degree(d);
  return deg;
}

Poly return_polynomial(Complex a, long p) { return scalar_return_polynomial(a, p); }

FiberPolynomial phi_p(Complex a, long p, const FiberConfig& cfg) {
  if (p < 1) throw std::domain_error("phi_p: p must be >= 1");
  FiberPolynomial out;
  out.a = a;
  out.p = p;
  out.degree = fiber_degree(p);

  out.coeffs = scalar_phi(a, p);
  out.deflation_residual = deflation_residual(a, p, out.coeffs);
  if (out.deflation_residual > cfg.deflate_tol) {
    // recompute with 50-digit scalars
    BigComplex ab(a.real(), a.imag());
    std::vector<BigComplex> big = scalar_phi(ab, p);
    out.coeffs.resize(big.size());
    for (size_t i = 0; i < big.size(); ++i)
      out.coeffs[i] = Complex(static_cast<double>(big[i].real()),
                              static_cast<double>(big[i].imag()));
    out.deflation_residual = deflation_residual(ab, p, big);
    if (out.deflation_residual > cfg.deflate_tol)
      throw numerical_error("phi_p: deflation residual above tolerance at 50 digits");
  }
  if (static_cast<long>(out.coeffs.size()) != out.degree + 1)
    throw numerical_error("phi_p: degree bookkeeping failed");
  return out;
}

Fiber fiber_roots(const FiberPolynomial& fp, const FiberConfig& cfg) {
  Fiber out;
  out.a = fp.a;
  out.roots = poly_roots(fp.coeffs);
  // dynamical validation
  for (const Complex& v : out.roots) {
    CubicMap f(fp.a, v, fp.p);
    Complex z = fp.a;
    for (long d = 1; d <= fp.p; ++d) {
      z = f(z);
      if (d < fp.p && fp.p % d == 0 && std::abs(z - fp.a) < cfg.exactness_floor)
        throw numerical_error("fiber_roots: root has a proper divisor period");
    }
    if (std::abs(z - fp.a) > cfg.fiber_tol * (1.0 + std::abs(fp.a) + std::abs(v)))
      throw numerical_error("fiber_roots: return residual above fiber_tol");
  }
  out.min_separation = 1e300;
  for (size_t i = 0; i < out.roots.size(); ++i)
    for (size_t j = i + 1; j < out.roots.size(); ++j)
      out.min_separation = std::min(out.min_separation, std::abs(out.roots[i] - out.roots[j]));
  if (out.roots.size() < 2) out.min_separation = 0.0;
  return out;
}

}  // namespace cubics
