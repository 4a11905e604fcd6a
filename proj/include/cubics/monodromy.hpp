#pragma once

// Branch points of the a-projection, homotopy continuation of fibers along
// a-paths, and the monodromy transitivity test that certifies connectivity
// (hence irreducibility, the curve being smooth) at small p.

#include <vector>

#include "cubics/fiber.hpp"

namespace cubics {

struct ContinuationConfig {
  double step = 0.02;            // initial step along a path segment
  double min_step = 1e-7;
  double collision_tol = 1e-6;   // pairwise root distance guard (relative)
  double safety_margin = 0.08;   // paths keep this distance from branch points
  int max_newton = 30;
};

struct BranchPointConfig {
  int samples = 512;             // circle samples for disc interpolation
  double sample_radius = 1.3;
  double trim_rel = 1e-8;        // relative trim for interpolated coefficients
  double collide_tol = 1e-4;     // fiber min-separation at a verified branch point
  double clear_tol = 1e-2;       // ... and required separation 0.1 away
};

// All a in the disk |a - center| < radius where the fiber polynomial has a
// multiple root: interpolate the (scaled) discriminant over a sample circle,
// root-find it, polish each candidate on {phi = 0, d phi/dv = 0}, and keep
// candidates that show a genuine fiber collision.
std::vector<Complex> branch_points(long p, Complex center, double radius,
                                   const BranchPointConfig& bcfg = {},
                                   const FiberConfig& fcfg = {});

struct MonodromyPerm {
  std::vector<long> mapping;  // image of root index i under the loop
  bool is_identity() const;
};

MonodromyPerm compose(const MonodromyPerm& second, const MonodromyPerm& first);

struct ContinuationResult {
  Fiber end;
  MonodromyPerm perm;  // meaningful when the path is a loop
};

// Tracks every root of the fiber along the a-path (list of waypoints joined
// by segments) with adaptive predictor-corrector steps.  Throws
// numerical_error when two tracked roots collide persistently.
ContinuationResult continue_fiber(const Fiber& start, const std::vector<Complex>& path,
                                  const ContinuationConfig& ccfg = {},
                                  const FiberConfig& fcfg = {});

struct MonodromyOptions {
  Complex basepoint{1.17, 0.93};
  double radius_scale = 1.0;   // scales every loop radius (stability runs)
  double domain_radius = 2.5;  // branch point search disk
  bool early_exit = true;      // stop adding generators once transitive
};

struct MonodromyResult {
  bool transitive = false;
  long orbit_count = 0;
  long degree = 0;
  std::vector<MonodromyPerm> generators;
  std::vector<Complex> branch_points;
  Complex basepoint;
  bool conclusive = false;  // false when a loop failed to continue
};

// Basepoint fiber plus one loop per branch point; transitivity of the group
// generated by the loop permutations is equivalent to connectivity.  A
// continuation failure yields conclusive = false, never a false positive.
MonodromyResult monodromy_transitive(long p, const MonodromyOptions& opts = {},
                                     const ContinuationConfig& ccfg = {},
                                     const FiberConfig& fcfg = {});

// Gradient of the fiber polynomial in (a, v) at sampled curve points stays
// above smooth_tol; p = 1 is rejected.
bool smoothness_spot_check(long p, int samples, double smooth_tol = 1e-6,
                           unsigned seed = 20260809);

}  // namespace cubics
