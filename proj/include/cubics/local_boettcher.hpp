#pragma once

// Local Boettcher coordinate at a point a_k of the superattracting marked
// cycle: the conformal coordinate w with w(f^p(z)) = w(z)^2, normalized so
// that w'(a_k) equals half the second derivative of f^p at a_k.

#include "cubics/cubic_map.hpp"

namespace cubics {

struct LocalBoettcherConfig {
  int budget = 20000;        // f^p steps allowed for z to reach the core disk
  double core_scale = 5e-3;  // target |w| at the core disk
};

// Quadratic coefficient of f^p at a_k (nonzero when -a is not on the cycle).
Complex cycle_quadratic_coefficient(const CubicMap& f, long k);

// phi_{f,a_k}(z); throws domain_error when z does not converge to a_k under
// f^p within the budget.  Successive square roots are branch-tracked along
// the orbit against the linearization at a_k.
Complex local_boettcher_cycle(const CubicMap& f, long k, Complex z,
                              const LocalBoettcherConfig& cfg = {},
                              const DynamicsConfig& dyn = {});

}  // namespace cubics
