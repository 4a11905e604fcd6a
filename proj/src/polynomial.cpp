#include "cubics/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "cubics/errors.hpp"

namespace cubics {

Complex poly_eval(const Poly& p, Complex x) {
  Complex acc = 0.0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {Complex(0.0)};
  Poly d(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
  return d;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, Complex(0.0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Complex(0.0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

void poly_trim(Poly& p, double rel_tol) {
  double scale = 0.0;
  for (const Complex& c : p) scale = std::max(scale, std::abs(c));
  while (p.size() > 1 && std::abs(p.back()) <= rel_tol * scale) p.pop_back();
}

Poly poly_deflate_linear(const Poly& p, Complex root, Complex* rem) {
  if (p.size() < 2) {
    if (rem) *rem = p.empty() ? Complex(0.0) : p[0];
    return {Complex(0.0)};
  }
  Poly q(p.size() - 1);
  Complex carry = p.back();
  for (size_t i = p.size() - 1; i-- > 0;) {
    q[i] = carry;
    carry = p[i] + carry * root;
  }
  if (rem) *rem = carry;
  return q;
}

std::pair<Poly, Poly> poly_divmod(const Poly& p, const Poly& d) {
  Poly den = d;
  poly_trim(den);
  if (den.size() == 1 && den[0] == Complex(0.0))
    throw std::invalid_argument("poly_divmod: division by zero polynomial");
  if (p.size() < den.size()) return {Poly{Complex(0.0)}, p};
  Poly rem = p;
  Poly quo(p.size() - den.size() + 1, Complex(0.0));
  const Complex lead = den.back();
  for (size_t i = quo.size(); i-- > 0;) {
    Complex c = rem[i + den.size() - 1] / lead;
    quo[i] = c;
    for (size_t j = 0; j < den.size(); ++j) rem[i + j] -= c * den[j];
  }
  rem.resize(den.size() - 1);
  if (rem.empty()) rem.push_back(Complex(0.0));
  return {quo, rem};
}

std::vector<Complex> poly_roots(const Poly& p_in, double tol, int max_iter) {
  Poly p = p_in;
  poly_trim(p);
  const size_t n = p.size() - 1;
  if (n == 0) return {};
  if (n == 1) return {-p[0] / p[1]};

  // Cauchy-style radius for the start circle.
  double radius = 0.0;
  for (size_t i = 0; i < n; ++i)
    radius = std::max(radius, std::pow(std::abs(p[i] / p[n]), 1.0 / double(n - i)));
  radius = 2.0 * radius + 1e-6;

  std::vector<Complex> z(n);
  for (size_t i = 0; i < n; ++i) {
    double ang = 2.0 * M_PI * (double(i) + 0.35) / double(n) + 0.6;  // fixed offset, no axis lock
    z[i] = radius * Complex(std::cos(ang), std::sin(ang));
  }

  const Poly dp = poly_derivative(p);
  double scale = 0.0;
  for (const Complex& c : p) scale = std::max(scale, std::abs(c));

  for (int iter = 0; iter < max_iter; ++iter) {
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i) {
      Complex val = poly_eval(p, z[i]);
      Complex der = poly_eval(dp, z[i]);
      Complex newton = (der != Complex(0.0)) ? val / der : Complex(0.0);
      Complex repulsion = 0.0;
      for (size_t j = 0; j < n; ++j)
        if (j != i) {
          Complex diff = z[i] - z[j];
          if (std::abs(diff) < 1e-300) diff = Complex(1e-300, 0.0);
          repulsion += 1.0 / diff;
        }
      Complex denom = 1.0 - newton * repulsion;
      Complex step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    if (worst < tol) break;
    if (iter == max_iter - 1) throw numerical_error("poly_roots: Aberth iteration stalled");
  }

  // Newton polish against the original polynomial.
  for (size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 6; ++k) {
      Complex val = poly_eval(p, z[i]);
      Complex der = poly_eval(dp, z[i]);
      if (std::abs(der) < 1e-300) break;
      Complex step = val / der;
      z[i] -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z[i]))) break;
    }
    (void)scale;
  }
  return z;
}

}  // namespace cubics
