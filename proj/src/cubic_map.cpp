#include "cubics/cubic_map.hpp"

#include <cmath>

#include "cubics/errors.hpp"

namespace cubics {

namespace {

double wrap_turn(double t) {
  t -= std::floor(t);
  if (t >= 1.0) t -= 1.0;
  return t;
}

}  // namespace

bool CubicMap::on_curve(double curve_tol) const {
  Complex z = a_;
  for (long j = 1; j <= p_; ++j) {
    z = (*this)(z);
    if (j < p_ && p_ % j == 0 && std::abs(z - a_) < curve_tol) return false;
  }
  return std::abs(z - a_) < curve_tol;
}

double CubicMap::escape_radius() const {
  const double s = std::abs(a_), t = std::abs(v_);
  const double spec = std::max(4.0, 2.0 * (s + t) + 2.0);
  // sufficient for |f(z)| >= 2|z| once |z| >= max(1, this):
  // |f(z)| >= |z| (|z|^2 - 3|a|^2 - |2a^3 + v|) and |z|^2 - ... >= 2
  const double derived = std::sqrt(3.0 * s * s + 2.0 * s * s * s + t + 2.0);
  return std::max(spec, derived);
}

EscapeResult green(const CubicMap& f, Complex z, const DynamicsConfig& cfg) {
  EscapeResult res;
  const double r0 = f.escape_radius();
  long n = 0;
  while (n < cfg.escape_budget && std::abs(z) <= r0) {
    z = f(z);
    ++n;
  }
  if (std::abs(z) <= r0) {
    res.budget_exhausted = true;
    return res;
  }
  res.escaped = true;
  res.first_escape_iter = n;
  // Keep iterating: beyond r0 the modulus at least doubles per step, so the
  // refinement cap is reached in a few iterations and the truncated tail of
  // the limit is ~ |a|^2 / |z_n|^2, far below double precision.
  while (std::abs(z) < cfg.green_refine) {
    z = f(z);
    ++n;
  }
  res.green = std::log(std::abs(z)) * std::pow(3.0, -static_cast<double>(n));
  return res;
}

Complex log_phi_derivative(const CubicMap& f, Complex z, const DynamicsConfig& cfg) {
  // T_n = 3^{-n} (f^n)'(z) / f^n(z) obeys T_{n+1} = T_n (z_n^3 - a^2 z_n)/z_{n+1}
  // and converges to (log phi)' once the orbit escapes.
  const Complex a2 = f.a() * f.a();
  const double r0 = f.escape_radius();
  Complex t = 1.0 / z;
  Complex cur = z;
  long n = 0;
  if (std::abs(cur) < 1e-300) throw numerical_error("log_phi_derivative: orbit through 0");
  while (n < cfg.escape_budget) {
    Complex next = f(cur);
    if (std::abs(next) < 1e-300)
      throw numerical_error("log_phi_derivative: orbit through 0");
    Complex factor = (cur * cur * cur - a2 * cur) / next;
    t *= factor;
    cur = next;
    ++n;
    if (std::abs(cur) > r0 && std::abs(factor - 1.0) < 1e-16) return t;
    if (std::abs(cur) > 1e120) return t;
  }
  throw numerical_error("log_phi_derivative: orbit did not escape within budget");
}

namespace {

// log(phi(z)) - log(z) via the principal-branch product; only valid when the
// per-step multipliers 1 + w_k stay well inside the right half plane, which
// is checked and reported through *safe.
Complex log_phi_correction(const CubicMap& f, Complex z, bool* safe) {
  Complex acc = 0.0;
  Complex cur = z;
  double weight = 1.0 / 3.0;
  *safe = true;
  for (int k = 0; k < 200; ++k) {
    Complex cube = cur * cur * cur;
    Complex next = f(cur);
    if (std::abs(cube) < 1e-300) {
      *safe = false;
      return acc;
    }
    Complex ratio = next / cube;  // 1 + w_k
    if (std::abs(ratio - 1.0) > 0.5) *safe = false;
    acc += weight * std::log(ratio);
    weight /= 3.0;
    cur = next;
    if (std::abs(cur) > 1e100) break;
  }
  return acc;
}

// Carries z outward along the Green gradient flow to Green level g_top by
// integrating dz/dg = 1 / (log phi)'(z) with RK4; arg(phi) is constant along
// the flow.  Returns the far endpoint.
Complex flow_outward(const CubicMap& f, Complex z, double g_from, double g_top,
                     const DynamicsConfig& cfg, double step) {
  auto rhs = [&](Complex w) { return 1.0 / log_phi_derivative(f, w, cfg); };
  double g = g_from;
  Complex cur = z;
  while (g < g_top) {
    double h = std::min(step * std::max(0.2, g), g_top - g);
    Complex k1 = rhs(cur);
    Complex k2 = rhs(cur + 0.5 * h * k1);
    Complex k3 = rhs(cur + 0.5 * h * k2);
    Complex k4 = rhs(cur + h * k3);
    cur += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    g += h;
  }
  return cur;
}

double far_field_angle(const CubicMap& f, Complex z_far) {
  bool safe = true;
  Complex corr = log_phi_correction(f, z_far, &safe);
  if (!safe) throw numerical_error("external angle: far-field product not convergent");
  return wrap_turn((std::arg(z_far) + corr.imag()) / (2.0 * M_PI));
}

double angle_by_flow(const CubicMap& f, Complex z, double g_here,
                     const DynamicsConfig& cfg) {
  // g_top high enough that the product multipliers at the far end are tame
  const double s = std::abs(f.a()), t = std::abs(f.v());
  double g_top = std::max({4.0, g_here + 0.5,
                           0.5 * std::log(10.0 * (3.0 * s * s + 2.0 * s * s * s + t + 1.0))});
  double prev = -1.0;
  double step = cfg.flow_step;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Complex far = flow_outward(f, z, g_here, g_top, cfg, step);
    double theta = far_field_angle(f, far);
    if (prev >= 0.0) {
      double diff = std::abs(theta - prev);
      diff = std::min(diff, 1.0 - diff);
      if (diff < cfg.angle_tol) return theta;
    }
    prev = theta;
    step *= 0.5;
  }
  throw numerical_error("external angle: flow refinement did not stabilize");
}

}  // namespace

double external_angle(const CubicMap& f, Complex z, const DynamicsConfig& cfg) {
  EscapeResult gz = green(f, z, cfg);
  if (!gz.escaped) throw std::domain_error("external_angle: point does not escape");
  bool safe = true;
  Complex corr = log_phi_correction(f, z, &safe);
  if (safe) return wrap_turn((std::arg(z) + corr.imag()) / (2.0 * M_PI));
  return angle_by_flow(f, z, gz.green, cfg);
}

Complex boettcher_external(const CubicMap& f, Complex z, const DynamicsConfig& cfg) {
  EscapeResult gz = green(f, z, cfg);
  EscapeResult gc = green(f, f.free_critical(), cfg);
  if (!gz.escaped || gz.green <= gc.green)
    throw std::domain_error("boettcher_external: requires G(z) > G(-a)");
  double theta = external_angle(f, z, cfg);
  return std::polar(std::exp(gz.green), 2.0 * M_PI * theta);
}

double cocritical_angle(const CubicMap& f, const DynamicsConfig& cfg) {
  EscapeResult gc = green(f, f.free_critical(), cfg);
  if (!gc.escaped) throw std::domain_error("cocritical_angle: free critical point bounded");
  return external_angle(f, f.cocritical(), cfg);
}

Complex high_level_ray_point(const CubicMap& f, double t, double g,
                             const DynamicsConfig& cfg) {
  (void)cfg;
  const Complex target = std::polar(std::exp(g), 2.0 * M_PI * t);
  Complex z = target;
  // Newton on phi(z) = target with phi from the product form; at these
  // levels phi is a near-identity, so convergence is immediate.
  for (int it = 0; it < 60; ++it) {
    bool safe = true;
    Complex logphi = std::log(z) + log_phi_correction(f, z, &safe);
    if (!safe) throw numerical_error("high_level_ray_point: level too low");
    Complex phi = std::exp(logphi);
    Complex dphi = phi * log_phi_derivative(f, z);
    Complex step = (phi - target) / dphi;
    z -= step;
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(z))) return z;
  }
  throw numerical_error("high_level_ray_point: Newton did not converge");
}

}  // namespace cubics
