#pragma once

#include <vector>

#include "mop/scalar.hpp"

namespace mop {

// Rectangular index window [0,N] x [0,M] on the lattice.
struct Window {
  int N = 0;
  int M = 0;
  int sites() const { return (N + 1) * (M + 1); }
  bool contains(int n, int m) const { return n >= 0 && n <= N && m >= 0 && m <= M; }
};

inline bool operator==(const Window& a, const Window& b) { return a.N == b.N && a.M == b.M; }

// Dense array over a window, flat index m*(N+1)+n (n fastest).
template <class S>
struct Grid {
  Window window;
  std::vector<S> values;

  Grid() = default;
  explicit Grid(Window w, const S& fill = S(0)) : window(w), values(w.sites(), fill) {}

  int flat(int n, int m) const { return m * (window.N + 1) + n; }
  S& at(int n, int m) { return values[flat(n, m)]; }
  const S& at(int n, int m) const { return values[flat(n, m)]; }
};

template <class S>
Grid<double> grid_to_double(const Grid<S>& g) {
  Grid<double> out(g.window);
  for (std::size_t i = 0; i < g.values.size(); ++i) out.values[i] = to_double(g.values[i]);
  return out;
}

}  // namespace mop
