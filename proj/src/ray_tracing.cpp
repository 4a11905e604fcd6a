#include "cubics/ray_tracing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "cubics/errors.hpp"
#include "cubics/polynomial.hpp"

namespace cubics {

namespace {

double wrap_turn(double t) {
  t -= std::floor(t);
  if (t >= 1.0) t -= 1.0;
  return t;
}

// Anchor level: high enough that the product form of phi is a near identity
// even one band down (levels in (anchor/3, anchor]).
double anchor_level(const CubicMap& f) {
  const double s = std::abs(f.a()), t = std::abs(f.v());
  const double safe = std::max(2.5, 0.5 * std::log(20.0 * (3.0 * s * s + 2.0 * s * s * s + t + 1.0)));
  return 3.0 * safe;
}

class RayMarcher {
 public:
  RayMarcher(const CubicMap& f, double angle, std::optional<Angle> exact,
             const DynamicsConfig& cfg, double anchor_floor = 0.0)
      : f_(f), cfg_(cfg), base_angle_(angle), exact_(std::move(exact)) {
    anchor_ = std::max(anchor_level(f), anchor_floor);
  }

  double anchor() const { return anchor_; }

  // Argument of the ray image at pullback depth n, i.e. frac(3^n t).
  double angle_at_depth(long n) const {
    if (exact_) {
      Angle t = *exact_;
      for (long i = 0; i < n; ++i) t = triple(t);
      return t.to_double();
    }
    double t = base_angle_;
    for (long i = 0; i < n; ++i) t = wrap_turn(3.0 * t);
    return t;
  }

  // Solve for the ray point at Green level g by Newton on f^n(z) = target,
  // seeded at `seed`.  Returns nullopt when Newton fails.
  std::optional<Complex> solve_at(double g, Complex seed) const {
    long n = 0;
    double lvl = g;
    while (lvl <= anchor_ / 3.0) {
      lvl *= 3.0;
      ++n;
    }
    const Complex target = high_level_ray_point(f_, angle_at_depth(n), lvl, cfg_);
    Complex z = seed;
    double best = std::numeric_limits<double>::max();
    for (int it = 0; it < 40; ++it) {
      // f^n(z) and (f^n)'(z)
      Complex val = z, der = 1.0;
      for (long k = 0; k < n; ++k) {
        der *= f_.derivative(val);
        val = f_(val);
      }
      const Complex res = val - target;
      const double rn = std::abs(res);
      if (rn < 1e-12 * (1.0 + std::abs(target))) return z;
      if (std::abs(der) < 1e-290) return std::nullopt;
      Complex step = res / der;
      // damping: do not let one Newton step run away
      double limit = 0.5 * (1.0 + std::abs(z));
      if (std::abs(step) > limit) step *= limit / std::abs(step);
      z -= step;
      if (rn > 4.0 * best && it > 6) return std::nullopt;
      best = std::min(best, rn);
    }
    return std::nullopt;
  }

 private:
  const CubicMap& f_;
  DynamicsConfig cfg_;
  double base_angle_;
  std::optional<Angle> exact_;
  double anchor_ = 0.0;
};

RayPolyline trace_ray_impl(const CubicMap& f, double angle, std::optional<Angle> exact,
                           const RayTraceOptions& opts, const DynamicsConfig& cfg,
                           double anchor_floor = 0.0) {
  RayMarcher marcher(f, angle, exact, cfg, anchor_floor);
  RayPolyline ray;
  ray.angle = wrap_turn(angle);
  ray.exact_angle = exact;
  ray.terminated_at = RayTermination::green_floor;

  const double g_top = marcher.anchor();
  Complex cur = high_level_ray_point(f, angle, g_top, cfg);
  ray.points.push_back({cur, g_top});

  double g = g_top;
  long band = 0;
  while (g > opts.g_floor) {
    const double band_lo = std::max(opts.g_floor, g_top * std::pow(3.0, -double(band + 1)));
    long steps = std::min<long>(opts.max_band_steps, opts.base_steps << std::min<long>(band, 20));
    const double ratio = std::pow(band_lo / g, 1.0 / double(steps));
    while (g > band_lo * 1.0000001) {
      double g_next = std::max(band_lo, g * ratio);
      auto z = marcher.solve_at(g_next, cur);
      int halvings = 0;
      double target = g_next;
      while (!z && halvings < opts.max_halvings) {
        target = std::sqrt(g * target);  // halve the step in log level
        z = marcher.solve_at(target, cur);
        ++halvings;
      }
      if (!z) {
        ray.terminated_at = RayTermination::singularity;
        return ray;
      }
      cur = *z;
      g = target;
      ray.points.push_back({cur, g});
    }
    ++band;
  }

  if (opts.estimate_landing) {
    // continue halving the level until the point stalls, then extrapolate
    Complex prev = cur;
    double gl = g;
    for (int j = 0; j < 60; ++j) {
      gl *= 0.5;
      auto z = marcher.solve_at(gl, prev);
      if (!z) break;
      ray.points.push_back({*z, gl});
      if (std::abs(*z - prev) < 1e-9 * (1.0 + std::abs(*z))) {
        prev = *z;
        break;
      }
      prev = *z;
    }
    ray.landing = prev;
    ray.terminated_at = RayTermination::landing_estimate;
  }
  return ray;
}

}  // namespace

RayPolyline trace_ray(const CubicMap& f, const Angle& t, const RayTraceOptions& opts,
                      const DynamicsConfig& cfg) {
  return trace_ray_impl(f, t.to_double(), t, opts, cfg);
}

RayPolyline trace_ray_at(const CubicMap& f, double t, const RayTraceOptions& opts,
                         const DynamicsConfig& cfg) {
  return trace_ray_impl(f, wrap_turn(t), std::nullopt, opts, cfg);
}

namespace {

// Roots of f(z) = w (monic cubic in z).
std::array<Complex, 3> cubic_preimages(const CubicMap& f, Complex w) {
  const Complex a = f.a();
  Poly p = {2.0 * a * a * a + f.v() - w, -3.0 * a * a, 0.0, 1.0};
  auto roots = poly_roots(p);
  return {roots[0], roots[1], roots[2]};
}

}  // namespace

SeparationCurve separation_curve(const CubicMap& f, const DynamicsConfig& cfg) {
  EscapeResult gc = green(f, f.free_critical(), cfg);
  if (!gc.escaped) throw std::domain_error("separation_curve: free critical point bounded");
  const double ga = gc.green;
  const double theta = cocritical_angle(f, cfg);

  SeparationCurve sep;
  sep.theta = theta;
  sep.junction = f.free_critical();
  sep.junction_green = ga;

  // Main descent to just above the junction level.
  const double g1 = ga * 1.9;
  const double anchor_floor = 3.2 * g1;  // keep the polyline gap-free above g1
  RayTraceOptions main_opts;
  main_opts.g_floor = g1;
  sep.left = trace_ray_impl(f, theta + 1.0 / 3.0, std::nullopt, main_opts, cfg, anchor_floor);
  sep.right = trace_ray_impl(f, theta - 1.0 / 3.0, std::nullopt, main_opts, cfg, anchor_floor);
  if (sep.left.terminated_at != RayTermination::green_floor ||
      sep.right.terminated_at != RayTermination::green_floor)
    throw numerical_error("separation_curve: trace failed above the junction level");

  // Tail: pull back points of the image ray at 3 theta through the branch of
  // f^{-1} near -a; the level g1 is bisected toward G(-a) until the tail
  // reaches join_tol of -a.  The image points sit at levels 3g > 3 G(-a),
  // where the image ray is smooth and well conditioned.
  RayMarcher image(f, wrap_turn(3.0 * theta), std::nullopt, cfg);
  Complex seed_w = high_level_ray_point(f, wrap_turn(3.0 * theta), image.anchor(), cfg);

  auto extend_tail = [&](RayPolyline& ray) {
    Complex prev = ray.points.back().z;
    Complex w_seed = seed_w;
    double delta = g1 - ga;
    for (int j = 0; j < 48; ++j) {
      delta *= 0.5;
      const double g = ga + delta;
      auto w = image.solve_at(3.0 * g, w_seed);
      if (!w) throw numerical_error("separation_curve: image ray query failed");
      w_seed = *w;
      auto roots = cubic_preimages(f, *w);
      // pick the preimage continuing this flow line (nearest to the previous
      // tail point; the other near-branch belongs to the sibling ray)
      Complex best = roots[0];
      for (const Complex& r : roots)
        if (std::abs(r - prev) < std::abs(best - prev)) best = r;
      prev = best;
      ray.points.push_back({best, g});
      if (std::abs(best - sep.junction) < cfg.join_tol) break;
    }
    if (std::abs(prev - sep.junction) > cfg.join_tol)
      throw numerical_error("separation_curve: tail did not reach -a");
    ray.points.push_back({sep.junction, ga});
    ray.terminated_at = RayTermination::singularity;
  };
  extend_tail(sep.left);
  extend_tail(sep.right);
  return sep;
}

namespace {

// Proper crossing test for segments [p1,p2] and [q1,q2]; returns nullopt on
// a near-degenerate configuration (endpoint grazing / collinearity).
std::optional<bool> segments_cross(Complex p1, Complex p2, Complex q1, Complex q2) {
  auto orient = [](Complex u, Complex v, Complex w) {
    return (v.real() - u.real()) * (w.imag() - u.imag()) -
           (v.imag() - u.imag()) * (w.real() - u.real());
  };
  const double scale = std::max({std::abs(p2 - p1), std::abs(q2 - q1), 1e-30});
  const double eps = 1e-13 * scale * scale;
  double o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  double o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (std::abs(o1) < eps || std::abs(o2) < eps || std::abs(o3) < eps || std::abs(o4) < eps) {
    // far-apart bounding boxes cannot cross; only flag genuine near misses
    auto no_overlap = [](double a1, double a2, double b1, double b2) {
      return std::max(a1, a2) < std::min(b1, b2) || std::max(b1, b2) < std::min(a1, a2);
    };
    if (no_overlap(p1.real(), p2.real(), q1.real(), q2.real()) ||
        no_overlap(p1.imag(), p2.imag(), q1.imag(), q2.imag()))
      return false;
    return std::nullopt;
  }
  return (o1 > 0) != (o2 > 0) && (o3 > 0) != (o4 > 0);
}

// Counts crossings of [z0, z1] with the polyline; nullopt on ambiguity.
std::optional<long> polyline_crossings(const RayPolyline& ray, Complex z0, Complex z1) {
  long count = 0;
  for (size_t i = 0; i + 1 < ray.points.size(); ++i) {
    auto c = segments_cross(z0, z1, ray.points[i].z, ray.points[i + 1].z);
    if (!c) return std::nullopt;
    if (*c) ++count;
  }
  return count;
}

}  // namespace

Side side_of(const CubicMap& f, const SeparationCurve& sep, Complex z,
             const DynamicsConfig& cfg) {
  EscapeResult gz = green(f, z, cfg);
  if (gz.escaped && gz.green >= sep.junction_green)
    throw std::domain_error("side_of: point is not below the cocritical level");

  const double scale = 1.0 + std::abs(f.a()) + std::abs(z);
  // deterministic perturbations of the reference endpoint for retries
  static const Complex dirs[] = {{0.0, 0.0}, {1.0, 0.3}, {-0.7, 0.9}, {0.2, -1.1}, {-1.0, -0.5}};
  for (const Complex& d : dirs) {
    const Complex ref = f.a() + 3e-8 * scale * d;
    auto cl = polyline_crossings(sep.left, z, ref);
    auto cr = polyline_crossings(sep.right, z, ref);
    if (!cl || !cr) continue;
    return ((*cl + *cr) % 2 == 0) ? Side::D0 : Side::D1;
  }
  throw geometry_error("side_of: crossing parity stayed ambiguous after retries");
}

KneadingWord kneading_word(const CubicMap& f, const SeparationCurve& sep,
                           const DynamicsConfig& cfg) {
  std::vector<uint8_t> bits;
  bits.reserve(static_cast<size_t>(f.p()));
  Complex z = f.a();
  for (long j = 1; j <= f.p(); ++j) {
    z = f(z);
    EscapeResult gz = green(f, z, cfg);
    if (gz.escaped && gz.green >= sep.junction_green)
      throw numerical_error("kneading_word: marked orbit point at or above the cocritical level");
    bits.push_back(side_of(f, sep, z, cfg) == Side::D0 ? 0 : 1);
  }
  if (bits.back() != 0)
    throw numerical_error("kneading_word: closing orbit point classified off D0");
  return KneadingWord(std::move(bits));
}

KneadingWord kneading_word(const CubicMap& f, const DynamicsConfig& cfg) {
  return kneading_word(f, separation_curve(f, cfg), cfg);
}

std::optional<std::string> itinerary_word(const CubicMap& f, Complex z, long ell,
                                          const DynamicsConfig& cfg) {
  SeparationCurve sep = separation_curve(f, cfg);
  std::string word;
  word.reserve(static_cast<size_t>(ell));
  Complex cur = z;
  for (long j = 0; j < ell; ++j) {
    EscapeResult gz = green(f, cur, cfg);
    if (gz.escaped && gz.green >= sep.junction_green) return std::nullopt;
    word.push_back(side_of(f, sep, cur, cfg) == Side::D0 ? '0' : '1');
    cur = f(cur);
  }
  return word;
}

FixedPoints fixed_and_prefixed(const CubicMap& f, const DynamicsConfig& cfg) {
  SeparationCurve sep = separation_curve(f, cfg);
  const Complex a = f.a();
  // f(z) - z = z^3 - (3a^2 + 1) z + 2a^3 + v
  Poly fix_poly = {2.0 * a * a * a + f.v(), -3.0 * a * a - 1.0, 0.0, 1.0};
  auto fixed = poly_roots(fix_poly);

  std::vector<Complex> on_d1;
  for (Complex z : fixed)
    if (side_of(f, sep, z, cfg) == Side::D1) on_d1.push_back(z);
  if (on_d1.size() != 1)
    throw geometry_error("fixed_and_prefixed: expected exactly one fixed point on D1");

  FixedPoints out;
  out.z_fix = on_d1[0];
  auto pre = cubic_preimages(f, out.z_fix);
  // drop the copy of z_fix itself, keep the two D0 preimages
  std::sort(pre.begin(), pre.end(), [&](Complex x, Complex y) {
    return std::abs(x - out.z_fix) < std::abs(y - out.z_fix);
  });
  out.z1 = pre[1];
  out.z2 = pre[2];
  if (side_of(f, sep, out.z1, cfg) != Side::D0 || side_of(f, sep, out.z2, cfg) != Side::D0)
    throw geometry_error("fixed_and_prefixed: prefixed point not on D0 side");
  return out;
}

}  // namespace cubics
