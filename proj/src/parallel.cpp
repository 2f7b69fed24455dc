#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

#include "fgap/grid.hpp"

namespace fgap {

double Grid::x(int i) const {
  return nx <= 1 ? x_min : x_min + (x_max - x_min) * i / (nx - 1);
}

double Grid::y(int j) const {
  return ny <= 1 ? y_min : y_min + (y_max - y_min) * j / (ny - 1);
}

Position Grid::at(std::size_t index) const {
  const int i = static_cast<int>(index / static_cast<std::size_t>(ny));
  const int j = static_cast<int>(index % static_cast<std::size_t>(ny));
  return {x(i), y(j)};
}

unsigned worker_count() {
  if (const char* env = std::getenv("FGAP_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

Wirtinger richardson_wirtinger(const std::function<cplx(Position)>& f,
                               Position p, double h) {
  auto central = [&](double step, bool along_x) {
    Position a = p, b = p;
    if (along_x) {
      a.x += step;
      b.x -= step;
    } else {
      a.y += step;
      b.y -= step;
    }
    return (f(a) - f(b)) / (2.0 * step);
  };
  auto extrapolated = [&](bool along_x) {
    return (4.0 * central(h / 2, along_x) - central(h, along_x)) / 3.0;
  };
  const cplx fx = extrapolated(true);
  const cplx fy = extrapolated(false);
  const cplx i{0.0, 1.0};
  return {(fx - i * fy) / 2.0, (fx + i * fy) / 2.0};
}

}  // namespace fgap
