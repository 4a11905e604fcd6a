#pragma once

// Position of the free critical point relative to the marked cycle's basin:
// adjacent (A), bitransitive (B), capture (C), disjoint (D), or Escape.
// The A/B-versus-C distinction is a basin connectivity question decided by a
// grid flood fill, so answers carry a confidence field.

#include <optional>
#include <vector>

#include "cubics/cubic_map.hpp"

namespace cubics {

enum class HypTag { A, B, C, D, Escape, Unknown };

struct HypType {
  HypTag tag = HypTag::Unknown;
  std::optional<long> k;     // component index for A (k=0) and B (0<k<p)
  double confidence = 0.0;   // 1.0 for exact decisions, less for grid-based
};

struct ClassifyConfig {
  long orbit_budget = 6000;      // iterations of the free critical orbit
  long cycle_search = 64;        // maximal period scanned for the attractor
  double attract_tol = 1e-9;     // recurrence threshold for cycle detection
  int floodfill_grid = 96;       // grid resolution of the basin flood fill
  long floodfill_iters = 400;    // f^p steps per grid cell probe
};

HypType classify_hyperbolic(const CubicMap& f, const ClassifyConfig& cfg = {},
                            const DynamicsConfig& dyn = {});

// Internal Boettcher position of -a inside the component of a_k; 0 exactly
// at the center (-a on the marked cycle).  Requires type A or B.
Complex phi_H(const CubicMap& f, long k, const ClassifyConfig& cfg = {},
              const DynamicsConfig& dyn = {});

}  // namespace cubics
