#include "cubics/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <random>

#include "cubics/errors.hpp"

namespace cubics {

namespace {

// Scaled discriminant of the fiber over a: the product of squared root
// differences, each divided by a fixed reference scale so that high degrees
// stay inside double range.  A constant rescale keeps it polynomial in a.
double log_reference_scale(const Fiber& fiber) {
  double acc = 0.0;
  long count = 0;
  for (size_t i = 0; i < fiber.roots.size(); ++i)
    for (size_t j = i + 1; j < fiber.roots.size(); ++j) {
      acc += std::log(std::abs(fiber.roots[i] - fiber.roots[j]));
      ++count;
    }
  return count ? acc / count : 0.0;
}

Complex scaled_discriminant(const Fiber& fiber, double log_ref) {
  Complex acc = 1.0;
  for (size_t i = 0; i < fiber.roots.size(); ++i)
    for (size_t j = i + 1; j < fiber.roots.size(); ++j) {
      Complex d = fiber.roots[i] - fiber.roots[j];
      acc *= (d * d) * std::exp(-2.0 * log_ref);
    }
  return acc;
}

// Newton polish of a candidate branch point on {phi = 0, dphi/dv = 0} in
// (a, v); returns nullopt when it does not converge.
std::optional<Complex> polish_branch_point(long p, Complex a, Complex v,
                                           const FiberConfig& fcfg) {
  for (int it = 0; it < 40; ++it) {
    FiberPolynomial fp = phi_p(a, p, fcfg);
    Poly d1 = poly_derivative(fp.coeffs);
    Poly d2 = poly_derivative(d1);
    const Complex F1 = poly_eval(fp.coeffs, v);
    const Complex F2 = poly_eval(d1, v);
    const double scale = 1.0 + std::abs(a) + std::abs(v);
    if (std::abs(F1) < 1e-13 * scale && std::abs(F2) < 1e-11 * scale)
      return a;
    // Jacobian: d/da by central differences, d/dv analytic
    const double h = 1e-6 * scale;
    FiberPolynomial fpp = phi_p(a + h, p, fcfg), fpm = phi_p(a - h, p, fcfg);
    const Complex dF1da = (poly_eval(fpp.coeffs, v) - poly_eval(fpm.coeffs, v)) / (2.0 * h);
    const Complex dF2da =
        (poly_eval(poly_derivative(fpp.coeffs), v) - poly_eval(poly_derivative(fpm.coeffs), v)) /
        (2.0 * h);
    const Complex dF1dv = F2;
    const Complex dF2dv = poly_eval(d2, v);
    const Complex det = dF1da * dF2dv - dF1dv * dF2da;
    if (std::abs(det) < 1e-280) return std::nullopt;
    const Complex da = (F1 * dF2dv - dF1dv * F2) / det;
    const Complex dv = (dF1da * F2 - F1 * dF2da) / det;
    a -= da;
    v -= dv;
    if (std::abs(da) + std::abs(dv) < 1e-14 * scale) return a;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Complex> branch_points(long p, Complex center, double radius,
                                   const BranchPointConfig& bcfg, const FiberConfig& fcfg) {
  if (p < 2 || p > 4) throw std::domain_error("branch_points: p must be in {2,3,4}");

  // sample count comfortably above the discriminant degree (the fiber roots
  // grow linearly in a, so the degree is at most about n(n-1))
  const long n_deg = fiber_degree(p);
  const int m = std::max<int>(bcfg.samples, static_cast<int>(2 * n_deg * (n_deg - 1) + 64));
  const double R = bcfg.sample_radius;

  // reference scale from one sample fiber
  Fiber f0 = fiber_roots(phi_p(Complex(R, 0.0) + center, p, fcfg), fcfg);
  const double log_ref = log_reference_scale(f0);

  std::vector<Complex> values(m);
  for (int j = 0; j < m; ++j) {
    const double ang = 2.0 * M_PI * j / m;
    const Complex a = center + std::polar(R, ang);
    values[j] = scaled_discriminant(fiber_roots(phi_p(a, p, fcfg), fcfg), log_ref);
  }

  // trigonometric interpolation: coeff_k = mean_j values_j w^{-kj} / R^k
  Poly disc(m);
  double maxmag = 0.0;
  for (int k = 0; k < m; ++k) {
    Complex acc = 0.0;
    for (int j = 0; j < m; ++j)
      acc += values[j] * std::polar(1.0, -2.0 * M_PI * k * j / m);
    disc[k] = acc / (double(m) * std::pow(R, k));
    maxmag = std::max(maxmag, std::abs(disc[k]) * std::pow(R, k));
  }
  // require decay at the top: otherwise the sample count undershoots the degree
  double top = 0.0;
  for (int k = m - m / 8; k < m; ++k) top = std::max(top, std::abs(disc[k]) * std::pow(R, k));
  if (top > 1e-5 * maxmag)
    throw std::invalid_argument("branch_points: interpolation degree bound exceeded");
  poly_trim(disc, bcfg.trim_rel);

  std::vector<Complex> candidates = poly_roots(disc, 1e-11, 2000);

  std::vector<Complex> verified;
  for (Complex c : candidates) {
    const Complex a_cand = c + center;
    if (std::abs(c) > radius) continue;
    // locate the closest root pair and polish on the collision system
    Fiber fib = fiber_roots(phi_p(a_cand, p, fcfg), fcfg);
    Complex v_near = 0.0;
    double best = 1e300;
    for (size_t i = 0; i < fib.roots.size(); ++i)
      for (size_t j = i + 1; j < fib.roots.size(); ++j) {
        double d = std::abs(fib.roots[i] - fib.roots[j]);
        if (d < best) {
          best = d;
          v_near = 0.5 * (fib.roots[i] + fib.roots[j]);
        }
      }
    auto polished = polish_branch_point(p, a_cand, v_near, fcfg);
    if (!polished) continue;
    // verification: genuine near-collision here, clear separation a bit away
    auto min_sep_at = [&](Complex a) {
      FiberPolynomial fp = phi_p(a, p, fcfg);
      auto roots = poly_roots(fp.coeffs);
      double sep = 1e300;
      for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j)
          sep = std::min(sep, std::abs(roots[i] - roots[j]));
      return sep;
    };
    if (min_sep_at(*polished) > bcfg.collide_tol) continue;
    bool clear_nearby = false;  // nearby branch points may mask one direction
    for (Complex probe : {Complex(0.1, 0.0), Complex(-0.1, 0.0), Complex(0.0, 0.1),
                          Complex(0.0, -0.1)})
      if (min_sep_at(*polished + probe) > bcfg.clear_tol) clear_nearby = true;
    if (!clear_nearby) continue;
    if (std::abs(*polished - center) > radius) continue;
    bool dup = false;
    for (const Complex& b : verified)
      if (std::abs(b - *polished) < 1e-6) dup = true;
    if (!dup) verified.push_back(*polished);
  }
  std::sort(verified.begin(), verified.end(), [](Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return verified;
}

bool MonodromyPerm::is_identity() const {
  for (size_t i = 0; i < mapping.size(); ++i)
    if (mapping[i] != static_cast<long>(i)) return false;
  return true;
}

MonodromyPerm compose(const MonodromyPerm& second, const MonodromyPerm& first) {
  MonodromyPerm out;
  out.mapping.resize(first.mapping.size());
  for (size_t i = 0; i < first.mapping.size(); ++i)
    out.mapping[i] = second.mapping[static_cast<size_t>(first.mapping[i])];
  return out;
}

namespace {

// One adaptive continuation leg from a0 to a1; roots updated in place.
void continue_segment(std::vector<Complex>& roots, long p, Complex a0, Complex a1,
                      const ContinuationConfig& ccfg, const FiberConfig& fcfg) {
  const size_t n = roots.size();
  double pos = 0.0;
  double step = ccfg.step;
  const double seg_len = std::abs(a1 - a0);
  if (seg_len < 1e-15) return;
  step = std::min(step, 1.0);

  auto root_scale = [&]() {
    double s = 1.0;
    for (const Complex& r : roots) s = std::max(s, std::abs(r));
    return s;
  };

  while (pos < 1.0) {
    const double next = std::min(1.0, pos + step / seg_len);
    const Complex a = a0 + (a1 - a0) * next;
    FiberPolynomial fp = phi_p(a, p, fcfg);
    Poly deriv = poly_derivative(fp.coeffs);

    std::vector<Complex> trial = roots;
    bool ok = true;
    const double scale = root_scale();
    for (size_t i = 0; i < n && ok; ++i) {
      Complex z = trial[i];
      bool converged = false;
      for (int it = 0; it < ccfg.max_newton; ++it) {
        Complex val = poly_eval(fp.coeffs, z);
        Complex der = poly_eval(deriv, z);
        if (std::abs(der) < 1e-280) break;
        Complex d = val / der;
        z -= d;
        if (std::abs(d) < 1e-13 * (1.0 + std::abs(z))) {
          converged = true;
          break;
        }
      }
      // reject when Newton fails or the root jumped far from its predictor
      if (!converged || std::abs(z - trial[i]) > 0.25 * scale + 0.5) ok = false;
      trial[i] = z;
    }
    if (ok) {
      for (size_t i = 0; i < n && ok; ++i)
        for (size_t j = i + 1; j < n; ++j)
          if (std::abs(trial[i] - trial[j]) < ccfg.collision_tol * scale) {
            ok = false;
            break;
          }
    }
    if (!ok) {
      step *= 0.5;
      if (step < ccfg.min_step)
        throw numerical_error("continue_fiber: persistent collision or Newton failure");
      continue;
    }
    roots = std::move(trial);
    pos = next;
    step = std::min(step * 1.4, ccfg.step * 4.0);
  }
}

}  // namespace

ContinuationResult continue_fiber(const Fiber& start, const std::vector<Complex>& path,
                                  const ContinuationConfig& ccfg, const FiberConfig& fcfg) {
  if (path.size() < 1) throw std::invalid_argument("continue_fiber: empty path");
  ContinuationResult out;
  std::vector<Complex> roots = start.roots;
  long p = 0;
  {
    // infer p from the degree (1, 2, 8, 24, ...)
    for (long q = 1; q <= 6; ++q)
      if (fiber_degree(q) == static_cast<long>(roots.size())) p = q;
    if (p == 0) throw std::invalid_argument("continue_fiber: fiber degree not recognized");
  }

  Complex a_cur = start.a;
  for (const Complex& a_next : path) {
    continue_segment(roots, p, a_cur, a_next, ccfg, fcfg);
    a_cur = a_next;
  }

  out.end.a = a_cur;
  out.end.roots = roots;
  out.end.min_separation = 1e300;
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      out.end.min_separation = std::min(out.end.min_separation, std::abs(roots[i] - roots[j]));

  // permutation by nearest matching against the start fiber (loops)
  out.perm.mapping.assign(roots.size(), -1);
  std::vector<bool> taken(roots.size(), false);
  for (size_t i = 0; i < roots.size(); ++i) {
    double best = 1e300;
    long arg = -1;
    for (size_t j = 0; j < start.roots.size(); ++j) {
      if (taken[j]) continue;
      double d = std::abs(roots[i] - start.roots[j]);
      if (d < best) {
        best = d;
        arg = static_cast<long>(j);
      }
    }
    out.perm.mapping[i] = arg;
    taken[static_cast<size_t>(arg)] = true;
  }
  return out;
}

MonodromyResult monodromy_transitive(long p, const MonodromyOptions& opts,
                                     const ContinuationConfig& ccfg, const FiberConfig& fcfg) {
  if (p < 2 || p > 4) throw std::domain_error("monodromy_transitive: p must be in {2,3,4}");
  MonodromyResult res;
  res.degree = fiber_degree(p);
  res.branch_points = branch_points(p, Complex(0.0, 0.0), opts.domain_radius, {}, fcfg);

  // keep the basepoint clear of every branch point
  Complex base = opts.basepoint;
  for (int tries = 0; tries < 50; ++tries) {
    double clear = 1e300;
    for (const Complex& b : res.branch_points) clear = std::min(clear, std::abs(base - b));
    if (clear > 2.5 * ccfg.safety_margin) break;
    base += Complex(0.11, 0.07);
  }
  res.basepoint = base;
  Fiber start = fiber_roots(phi_p(base, p, fcfg), fcfg);

  // process branch points nearest first; loops already found may make the
  // action transitive before all branch points are visited
  std::vector<Complex> order = res.branch_points;
  std::sort(order.begin(), order.end(),
            [&](Complex x, Complex y) { return std::abs(x - base) < std::abs(y - base); });

  std::vector<long> uf(static_cast<size_t>(res.degree));
  std::iota(uf.begin(), uf.end(), 0);
  std::function<long(long)> find = [&](long x) {
    while (uf[static_cast<size_t>(x)] != x) {
      uf[static_cast<size_t>(x)] = uf[static_cast<size_t>(uf[static_cast<size_t>(x)])];
      x = uf[static_cast<size_t>(x)];
    }
    return x;
  };
  auto unite = [&](long x, long y) { uf[static_cast<size_t>(find(x))] = find(y); };
  auto orbits = [&]() {
    long c = 0;
    for (long i = 0; i < res.degree; ++i)
      if (find(i) == i) ++c;
    return c;
  };

  res.conclusive = true;
  for (const Complex& b : order) {
    // loop radius: capped by half the distance to the nearest other branch point
    double radius = ccfg.safety_margin;
    for (const Complex& other : res.branch_points)
      if (std::abs(other - b) > 1e-9) radius = std::min(radius, 0.45 * std::abs(other - b));
    radius *= opts.radius_scale;

    // approach leg: basepoint -> ring entry, detouring around other branch points
    const Complex dir = (base - b) / std::abs(base - b);
    const Complex entry = b + radius * dir;
    std::vector<Complex> leg{base, entry};
    for (int pass = 0; pass < 4; ++pass) {
      bool changed = false;
      std::vector<Complex> refined{leg.front()};
      for (size_t i = 0; i + 1 < leg.size(); ++i) {
        const Complex s0 = leg[i], s1 = leg[i + 1];
        for (const Complex& other : res.branch_points) {
          if (std::abs(other - b) < 1e-9) continue;
          const Complex d = s1 - s0;
          if (std::norm(d) < 1e-18) continue;
          double t = ((other - s0) / d).real();
          t = std::clamp(t, 0.0, 1.0);
          const Complex foot = s0 + t * d;
          if (std::abs(other - foot) < 0.8 * ccfg.safety_margin && t > 0.01 && t < 0.99) {
            Complex off = other - foot;
            Complex perp = (std::abs(off) < 1e-12)
                               ? Complex(-d.imag(), d.real()) / std::abs(d)
                               : -off / std::abs(off);
            refined.push_back(other + 1.3 * ccfg.safety_margin * perp);
            changed = true;
            break;
          }
        }
        refined.push_back(s1);
      }
      leg = refined;
      if (!changed) break;
    }
    std::vector<Complex> path(leg.begin() + 1, leg.end());  // ends at entry
    // the circle around b, entered and exited at entry
    const int arc_steps = 24;
    const double ang0 = std::arg(entry - b);
    for (int s = 1; s <= arc_steps; ++s)
      path.push_back(b + std::polar(radius, ang0 + 2.0 * M_PI * s / arc_steps));
    // return leg: the approach reversed
    for (size_t i = leg.size() - 1; i-- > 0;) path.push_back(leg[i]);  // ends at base

    try {
      ContinuationResult cont = continue_fiber(start, path, ccfg, fcfg);
      // sanity: mapping must be a bijection with small matching distances
      std::vector<bool> seen(static_cast<size_t>(res.degree), false);
      for (long img : cont.perm.mapping) {
        if (img < 0 || img >= res.degree || seen[static_cast<size_t>(img)])
          throw numerical_error("monodromy: loop permutation is not a bijection");
        seen[static_cast<size_t>(img)] = true;
      }
      res.generators.push_back(cont.perm);
      for (long i = 0; i < res.degree; ++i) unite(i, cont.perm.mapping[static_cast<size_t>(i)]);
    } catch (const numerical_error&) {
      res.conclusive = false;
    }
    if (opts.early_exit && orbits() == 1) break;
  }

  res.orbit_count = orbits();
  res.transitive = res.conclusive ? (res.orbit_count == 1) : false;
  if (!res.conclusive && res.orbit_count == 1) res.transitive = true;  // loops found suffice
  return res;
}

bool smoothness_spot_check(long p, int samples, double smooth_tol, unsigned seed) {
  if (p < 2) throw std::domain_error("smoothness_spot_check: p must be >= 2");
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  FiberConfig fcfg;
  for (int s = 0; s < samples; ++s) {
    Complex a(1.4 * unif(rng), 1.4 * unif(rng));
    FiberPolynomial fp = phi_p(a, p, fcfg);
    auto roots = poly_roots(fp.coeffs);
    const Complex v = roots[static_cast<size_t>(rng() % roots.size())];
    // numerical gradient of phi_p in (a, v)
    const double scale = 1.0 + std::abs(a) + std::abs(v);
    const double h = 1e-6 * scale;
    const Complex dv = poly_eval(poly_derivative(fp.coeffs), v);
    const Complex da =
        (poly_eval(phi_p(a + h, p, fcfg).coeffs, v) - poly_eval(phi_p(a - h, p, fcfg).coeffs, v)) /
        (2.0 * h);
    double coeff_scale = 0.0;
    for (const Complex& c : fp.coeffs) coeff_scale = std::max(coeff_scale, std::abs(c));
    if (std::hypot(std::abs(da), std::abs(dv)) < smooth_tol * coeff_scale) return false;
  }
  return true;
}

}  // namespace cubics
