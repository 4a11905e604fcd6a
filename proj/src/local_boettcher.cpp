#include "cubics/local_boettcher.hpp"

#include <cmath>
#include <vector>

#include "cubics/errors.hpp"

namespace cubics {

Complex cycle_quadratic_coefficient(const CubicMap& f, long k) {
  // Track (u, u', u'') of f^j along the cycle starting at a_k; the first
  // derivative vanishes because the cycle passes through the critical point.
  Complex u = f.marked_point(k), du = 1.0, ddu = 0.0;
  for (long j = 0; j < f.p(); ++j) {
    Complex fu = f.derivative(u);   // 3(u^2 - a^2)
    Complex ffu = 6.0 * u;          // f''
    ddu = ffu * du * du + fu * ddu;
    du = fu * du;
    u = f(u);
  }
  return 0.5 * ddu;
}

Complex local_boettcher_cycle(const CubicMap& f, long k, Complex z,
                              const LocalBoettcherConfig& cfg, const DynamicsConfig& dyn) {
  (void)dyn;
  const Complex ak = f.marked_point(k);
  const Complex c2 = cycle_quadratic_coefficient(f, k);
  if (std::abs(c2) < 1e-14)
    throw std::domain_error("local_boettcher_cycle: cycle is degenerate (free critical point on it)");

  if (std::abs(z - ak) < 1e-15 * (1.0 + std::abs(ak))) return 0.0;

  // Iterate g = f^p until the linearized coordinate is inside the core disk,
  // recording the orbit for the pullback pass.
  std::vector<Complex> orbit{z};
  Complex cur = z;
  long steps = 0;
  while (std::abs(c2 * (cur - ak)) > cfg.core_scale) {
    cur = f.iterate(cur, f.p());
    orbit.push_back(cur);
    if (++steps > cfg.budget / std::max<long>(1, f.p()))
      throw std::domain_error("local_boettcher_cycle: point not attracted to a_k within budget");
  }

  // Normal form at the core: w = c2 (u - ak) (1 + d (u - ak) + O(^2)) with
  // d = c3 / (2 c2); c3 from the cubic Taylor term of f^p at ak.
  Complex u = ak, du = 1.0, ddu = 0.0, dddu = 0.0;
  for (long j = 0; j < f.p(); ++j) {
    Complex fu = f.derivative(u), ffu = 6.0 * u, fffu = 6.0;
    dddu = fffu * du * du * du + 3.0 * ffu * du * ddu + fu * dddu;
    ddu = ffu * du * du + fu * ddu;
    du = fu * du;
    u = f(u);
  }
  const Complex c3 = dddu / 6.0;
  const Complex d = c3 / (2.0 * c2);

  const Complex eps = orbit.back() - ak;
  Complex w = c2 * eps * (1.0 + d * eps);

  // Pull back by square roots; pick the branch aligned with the linearized
  // coordinate at each orbit point.
  for (size_t j = orbit.size() - 1; j-- > 0;) {
    Complex root = std::sqrt(w);
    Complex guide = c2 * (orbit[j] - ak);
    if ((root * std::conj(guide)).real() < 0.0) root = -root;
    w = root;
  }
  return w;
}

}  // namespace cubics
