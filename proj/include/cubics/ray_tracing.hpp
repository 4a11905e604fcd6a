#pragma once

// External ray tracing by backward Newton, the separation curve through the
// free critical point, and everything that depends on which side of it a
// point falls: kneading words, itineraries, fixed and prefixed points.

#include <optional>
#include <string>
#include <vector>

#include "cubics/angle.hpp"
#include "cubics/cubic_map.hpp"
#include "cubics/kneading.hpp"

namespace cubics {

enum class RayTermination { green_floor, singularity, landing_estimate };

struct RayPoint {
  Complex z;
  double g;  // Green level
};

struct RayPolyline {
  double angle = 0.0;  // turns in [0,1)
  std::optional<Angle> exact_angle;
  std::vector<RayPoint> points;  // Green level strictly decreasing
  RayTermination terminated_at = RayTermination::green_floor;
  std::optional<Complex> landing;
};

struct RayTraceOptions {
  double g_floor = 1e-3;
  bool estimate_landing = false;
  int base_steps = 4;        // steps in the top level band; doubles per band
  int max_band_steps = 8192;
  int max_halvings = 24;
};

// Points of the external ray at argument t from a high anchor level down to
// opts.g_floor.  Each level step solves f^n(z) = anchor target by damped
// Newton seeded at the previous point, halving the level step on failure;
// persistent failure ends the trace with terminated_at = singularity.
RayPolyline trace_ray(const CubicMap& f, const Angle& t, const RayTraceOptions& opts = {},
                      const DynamicsConfig& cfg = {});
RayPolyline trace_ray_at(const CubicMap& f, double t, const RayTraceOptions& opts = {},
                         const DynamicsConfig& cfg = {});

struct SeparationCurve {
  double theta = 0.0;     // cocritical angle
  RayPolyline left;       // angle theta + 1/3
  RayPolyline right;      // angle theta - 1/3
  Complex junction;       // -a
  double junction_green = 0.0;  // G(-a)
};

// The two flow lines at arguments theta +- 1/3 terminating at -a, traced
// down to ~join_tol of the junction.  Requires -a to escape.
SeparationCurve separation_curve(const CubicMap& f, const DynamicsConfig& cfg = {});

enum class Side { D0, D1 };

// Which complementary region of the separation curve contains z, by the
// crossing parity of the segment [z, a] (a always lies in D0).  Requires
// G(z) < G(-a).  Near-degenerate crossings are retried with a perturbed
// reference endpoint; persistent ambiguity throws geometry_error.
Side side_of(const CubicMap& f, const SeparationCurve& sep, Complex z,
             const DynamicsConfig& cfg = {});

// Kneading word iota_1..iota_p of the marked orbit (iota_j by the side of
// f^j(a); the last symbol is 0 by construction).
KneadingWord kneading_word(const CubicMap& f, const DynamicsConfig& cfg = {});
KneadingWord kneading_word(const CubicMap& f, const SeparationCurve& sep,
                           const DynamicsConfig& cfg = {});

// Side itinerary of z over ell steps, or nullopt if an iterate leaves
// D0 u D1 (Green value at or above G(-a)).
std::optional<std::string> itinerary_word(const CubicMap& f, Complex z, long ell,
                                          const DynamicsConfig& cfg = {});

struct FixedPoints {
  Complex z_fix;  // the unique fixed point on the D1 side
  Complex z1, z2;  // its two preimages on the D0 side
};

FixedPoints fixed_and_prefixed(const CubicMap& f, const DynamicsConfig& cfg = {});

}  // namespace cubics
