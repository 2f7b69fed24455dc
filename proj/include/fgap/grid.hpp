#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fgap/gluing.hpp"

namespace fgap {

/// Rectangular sample grid; node (i, j) has index i * ny + j (x outer).
struct Grid {
  double x_min = -1.0, x_max = 1.0;
  double y_min = -1.0, y_max = 1.0;
  int nx = 1, ny = 1;

  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  double x(int i) const;
  double y(int j) const;
  Position at(std::size_t index) const;
};

/// Per-node outcome of a grid computation; failed nodes carry the reason.
struct NodeStatus {
  bool ok = true;
  std::string error;
};

/// Thread count from FGAP_THREADS, else hardware concurrency.
unsigned worker_count();

/// Runs fn(i) for i in [0, n). Each index is handled exactly once; callers
/// write into preallocated slots so the result does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Wirtinger derivatives d/dz = (d/dx - i d/dy)/2, d/dzbar = (d/dx + i d/dy)/2
/// by Richardson-extrapolated central differences with base step h.
struct Wirtinger {
  cplx dz;
  cplx dzbar;
};

Wirtinger richardson_wirtinger(const std::function<cplx(Position)>& f,
                               Position p, double h);

}  // namespace fgap
