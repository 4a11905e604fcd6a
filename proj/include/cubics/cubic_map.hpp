#pragma once

// The marked cubic family f_{a,v}(z) = (z-a)^2 (z+2a) + v and the basic
// escape machinery: Green function, external Boettcher coordinate, and the
// argument of the escaping cocritical point 2a.

#include <complex>
#include <optional>

namespace cubics {

using Complex = std::complex<double>;

struct DynamicsConfig {
  double curve_tol = 1e-10;      // |f^p(a) - a| for the on-curve check
  double ray_tol = 1e-9;         // accuracy target for traced ray points
  double join_tol = 1e-6;        // how close separation tails must come to -a
  int escape_budget = 4000;      // iteration budget before "bounded"
  double green_refine = 1e100;   // keep iterating past escape up to this modulus
  double flow_step = 0.05;       // base Green-level step of the outward flow
  double angle_tol = 1e-10;      // convergence target for flow refinement
};

class CubicMap {
 public:
  CubicMap(Complex a, Complex v, long p) : a_(a), v_(v), p_(p) {}

  Complex a() const { return a_; }
  Complex v() const { return v_; }
  long p() const { return p_; }
  Complex free_critical() const { return -a_; }
  Complex cocritical() const { return 2.0 * a_; }

  // (z-a)^2 (z+2a) + v  ==  z^3 - 3 a^2 z + 2 a^3 + v
  Complex operator()(Complex z) const {
    return z * z * z - 3.0 * a_ * a_ * z + 2.0 * a_ * a_ * a_ + v_;
  }
  Complex derivative(Complex z) const { return 3.0 * (z * z - a_ * a_); }
  Complex iterate(Complex z, long n) const {
    for (long i = 0; i < n; ++i) z = (*this)(z);
    return z;
  }

  // j-th marked orbit point a_j = f^j(a).
  Complex marked_point(long j) const { return iterate(a_, j); }

  // |f^p(a) - a| < curve_tol and no proper divisor of p closes the orbit.
  bool on_curve(double curve_tol = 1e-10) const;

  // Radius beyond which escape is monotone; combines the configured bound
  // with max(4, 2(|a|+|v|)+2).
  double escape_radius() const;

 private:
  Complex a_, v_;
  long p_;
};

inline Complex evaluate(const CubicMap& f, Complex z) { return f(z); }

struct EscapeResult {
  bool escaped = false;
  std::optional<long> first_escape_iter;
  double green = 0.0;            // natural-log units; 0 when not escaped
  bool budget_exhausted = false;  // bounded verdict came from the budget
};

// Green function G(z) = lim 3^{-n} log |f^n(z)|, by iterating past the
// escape radius and extracting the logarithm before overflow.
EscapeResult green(const CubicMap& f, Complex z, const DynamicsConfig& cfg = {});

// d/dz log(phi): limit of 3^{-n} (f^n)'(z) / f^n(z); defined wherever the
// orbit of z escapes.  Throws numerical_error if the orbit stays bounded
// within the budget or passes through 0.
Complex log_phi_derivative(const CubicMap& f, Complex z, const DynamicsConfig& cfg = {});

// External Boettcher coordinate, |phi(z)| = exp(G(z)).  Requires
// G(z) > G(-a) (domain_error otherwise).  Far from the Julia set the value
// comes from the infinite-product form of lim (f^n z)^{3^-n}; otherwise the
// point is first carried outward along the Green gradient flow, which fixes
// the argument.
Complex boettcher_external(const CubicMap& f, Complex z, const DynamicsConfig& cfg = {});

// Argument of phi at z, in [0,1) turns (the external angle of the flow line
// through z).  Same domain as boettcher_external except that the cocritical
// level itself is allowed.
double external_angle(const CubicMap& f, Complex z, const DynamicsConfig& cfg = {});

// External angle of the cocritical point 2a; requires -a to escape.
double cocritical_angle(const CubicMap& f, const DynamicsConfig& cfg = {});

// Point of the external ray at argument t (turns) and Green level g, for
// levels high enough that the product form of phi converges; used as the
// anchor of ray tracing.
Complex high_level_ray_point(const CubicMap& f, double t, double g,
                             const DynamicsConfig& cfg = {});

}  // namespace cubics
