#include "cubics/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "cubics/errors.hpp"
#include "cubics/local_boettcher.hpp"

namespace cubics {

namespace {

struct Attractor {
  bool found = false;
  std::vector<Complex> cycle;
  long phase_offset = 0;  // index k with f^{np}(-a) -> a_k, when marked
  bool marked = false;
};

Attractor find_attractor(const CubicMap& f, const ClassifyConfig& cfg) {
  Attractor out;
  const long p = f.p();
  std::vector<Complex> marked(p);
  double cycle_scale = 0.0;
  for (long j = 0; j < p; ++j) {
    marked[j] = f.marked_point(j);
    cycle_scale = std::max(cycle_scale, std::abs(marked[j]));
  }

  Complex w = f.free_critical();
  const double r0 = f.escape_radius();
  std::deque<Complex> window;
  const long window_len = 2 * cfg.cycle_search;
  for (long n = 0; n < cfg.orbit_budget; ++n) {
    w = f(w);
    if (std::abs(w) > r0) return out;  // escapes; caller already knows
    window.push_back(w);
    if (static_cast<long>(window.size()) > window_len) window.pop_front();
    if (n < cfg.orbit_budget / 4 || static_cast<long>(window.size()) < window_len) continue;

    const double tol = cfg.attract_tol * (1.0 + cycle_scale);
    for (long q = 1; q <= cfg.cycle_search; ++q) {
      if (std::abs(window[window_len - 1] - window[window_len - 1 - q]) < tol) {
        out.found = true;
        out.cycle.assign(window.end() - q, window.end());
        // marked-cycle match: each attractor point near some marked point
        double worst = 0.0;
        for (const Complex& c : out.cycle) {
          double best = 1e300;
          for (const Complex& m : marked) best = std::min(best, std::abs(c - m));
          worst = std::max(worst, best);
        }
        if (worst < 1e-5 * (1.0 + cycle_scale)) {
          out.marked = true;
          // phase: the final window point sits near a_{(k + n + 1) mod p}
          long idx = 0;
          double best = 1e300;
          for (long j = 0; j < p; ++j) {
            double dd = std::abs(window[window_len - 1] - marked[j]);
            if (dd < best) {
              best = dd;
              idx = j;
            }
          }
          out.phase_offset = ((idx - (n + 1)) % p + p) % p;
        }
        return out;
      }
    }
  }
  return out;
}

// Probes whether -a and a_k are joined inside the sampled basin piece
// {cells whose center converges to a_k under f^p within delta}.
bool basin_flood_fill(const CubicMap& f, long k, const ClassifyConfig& cfg) {
  const long p = f.p();
  const Complex ak = f.marked_point(k);
  const Complex fc = f.free_critical();

  double delta = 1e300;
  for (long i = 0; i < p; ++i)
    for (long j = i + 1; j < p; ++j)
      delta = std::min(delta, std::abs(f.marked_point(i) - f.marked_point(j)));
  delta = (p == 1 || delta > 1e200) ? 0.5 : 0.5 * delta;

  const double margin = 4.0 * std::max(delta, std::abs(fc - ak));
  const Complex lo(std::min(fc.real(), ak.real()) - margin, std::min(fc.imag(), ak.imag()) - margin);
  const Complex hi(std::max(fc.real(), ak.real()) + margin, std::max(fc.imag(), ak.imag()) + margin);

  const int n = cfg.floodfill_grid;
  auto cell_center = [&](int ix, int iy) {
    return Complex(lo.real() + (hi.real() - lo.real()) * (ix + 0.5) / n,
                   lo.imag() + (hi.imag() - lo.imag()) * (iy + 0.5) / n);
  };
  auto in_piece = [&](Complex z) {
    for (long it = 0; it < cfg.floodfill_iters; ++it) {
      if (std::abs(z - ak) < delta) return true;
      if (std::abs(z) > f.escape_radius()) return false;
      z = f.iterate(z, p);
    }
    return false;
  };

  std::vector<uint8_t> mark(static_cast<size_t>(n) * n, 0);
  auto idx_of = [&](Complex z) {
    int ix = static_cast<int>((z.real() - lo.real()) / (hi.real() - lo.real()) * n);
    int iy = static_cast<int>((z.imag() - lo.imag()) / (hi.imag() - lo.imag()) * n);
    ix = std::clamp(ix, 0, n - 1);
    iy = std::clamp(iy, 0, n - 1);
    return std::pair<int, int>{ix, iy};
  };
  auto [sx, sy] = idx_of(ak);
  auto [tx, ty] = idx_of(fc);

  std::deque<std::pair<int, int>> queue;
  auto try_push = [&](int ix, int iy) {
    if (ix < 0 || iy < 0 || ix >= n || iy >= n) return;
    size_t id = static_cast<size_t>(iy) * n + ix;
    if (mark[id]) return;
    mark[id] = 1;
    if (in_piece(cell_center(ix, iy))) {
      mark[id] = 2;
      queue.emplace_back(ix, iy);
    }
  };
  try_push(sx, sy);
  if (mark[static_cast<size_t>(sy) * n + sx] != 2) return false;  // grid too coarse
  while (!queue.empty()) {
    auto [ix, iy] = queue.front();
    queue.pop_front();
    if (ix == tx && iy == ty) return true;
    try_push(ix + 1, iy);
    try_push(ix - 1, iy);
    try_push(ix, iy + 1);
    try_push(ix, iy - 1);
  }
  return false;
}

}  // namespace

HypType classify_hyperbolic(const CubicMap& f, const ClassifyConfig& cfg,
                            const DynamicsConfig& dyn) {
  HypType out;
  EscapeResult esc = green(f, f.free_critical(), dyn);
  if (esc.escaped) {
    out.tag = HypTag::Escape;
    out.confidence = 1.0;
    return out;
  }

  // center case: -a exactly on the marked cycle
  const double scale = 1.0 + std::abs(f.a()) + std::abs(f.v());
  for (long j = 0; j < f.p(); ++j) {
    if (std::abs(f.free_critical() - f.marked_point(j)) < 1e-12 * scale) {
      out.tag = (j == 0) ? HypTag::A : HypTag::B;
      out.k = j;
      out.confidence = 1.0;
      return out;
    }
  }

  Attractor att = find_attractor(f, cfg);
  if (!att.found) {
    out.tag = HypTag::Unknown;
    return out;
  }
  if (!att.marked) {
    out.tag = HypTag::D;
    out.confidence = 0.9;
    return out;
  }

  const long k = att.phase_offset;
  if (basin_flood_fill(f, k, cfg)) {
    out.tag = (k == 0) ? HypTag::A : HypTag::B;
    out.k = k;
    out.confidence = 0.7;  // grid-resolution dependent
  } else {
    out.tag = HypTag::C;
    out.k = k;
    out.confidence = 0.6;
  }
  return out;
}

Complex phi_H(const CubicMap& f, long k, const ClassifyConfig& cfg, const DynamicsConfig& dyn) {
  const Complex ak = f.marked_point(k);
  const Complex fc = f.free_critical();
  const double scale = 1.0 + std::abs(f.a()) + std::abs(f.v());
  if (std::abs(fc - ak) < 1e-12 * scale) return 0.0;  // center

  // The value at -a is the limit of the coordinate along the internal ray
  // terminating there; the orbit of -a converges to a_k for types A and B,
  // so the coordinate is evaluated at -a directly.
  Complex value;
  try {
    value = local_boettcher_cycle(f, k, fc, LocalBoettcherConfig{}, dyn);
  } catch (const std::domain_error&) {
    throw std::domain_error("phi_H: -a not in the basin piece of a_k");
  }
  if (std::abs(value) >= 1.0)
    throw numerical_error("phi_H: coordinate left the unit disk");
  (void)cfg;
  return value;
}

}  // namespace cubics
