#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mop/common.hpp"
#include "mop/errors.hpp"
#include "mop/linalg.hpp"
#include "mop/moments.hpp"
#include "mop/polynomial.hpp"

namespace mop {

// Monic type II MOP table over a window; entry (n,m) has degree n+m.
template <class S>
struct PolyTable {
  Window window;
  std::vector<Poly<S>> entries;

  PolyTable() = default;
  explicit PolyTable(Window w) : window(w), entries(w.sites()) {}

  Poly<S>& at(int n, int m) { return entries[static_cast<std::size_t>(m * (window.N + 1) + n)]; }
  const Poly<S>& at(int n, int m) const {
    return entries[static_cast<std::size_t>(m * (window.N + 1) + n)];
  }
};

template <class S>
struct NormalityReport {
  Window window;
  Grid<S> determinants;       // S_{n,m}
  Grid<S> scales;             // largest |entry| of the moment matrix
  std::vector<char> normal;   // flat layout as Grid
  double threshold = 1e-10;

  bool is_normal(int n, int m) const {
    return normal[static_cast<std::size_t>(m * (window.N + 1) + n)] != 0;
  }
  std::vector<std::pair<int, int>> offending() const {
    std::vector<std::pair<int, int>> bad;
    for (int m = 0; m <= window.M; ++m)
      for (int n = 0; n <= window.N; ++n)
        if (!is_normal(n, m)) bad.emplace_back(n, m);
    return bad;
  }
};

inline constexpr double kDefaultNormalityThreshold = 1e-10;

// Window caps: Hankel-type moment systems beyond these sizes are
// numerically meaningless in the respective precision.
inline constexpr int kWindowCapDouble = 12;
inline constexpr int kWindowCapExtended = 24;

// Moment matrix of size (n+m): the first n columns are shifted
// mu1-moment columns s^{(1)}_{i+k}, the last m columns shifted
// mu2-moment columns.
template <class S>
SquareMatrix<S> moment_matrix(const MomentPair<S>& moments, int n, int m) {
  if (n < 0 || m < 0 || n + m < 1) throw DomainError("moment_matrix: need n+m >= 1");
  const int size = n + m;
  if (n >= 1 && moments.mu1.max_order() < 2 * n + m - 2)
    throw InsufficientMoments("moment_matrix: mu1 moments up to order " +
                              std::to_string(2 * n + m - 2) + " required");
  if (m >= 1 && moments.mu2.max_order() < n + 2 * m - 2)
    throw InsufficientMoments("moment_matrix: mu2 moments up to order " +
                              std::to_string(n + 2 * m - 2) + " required");
  SquareMatrix<S> a(size);
  for (int i = 0; i < size; ++i) {
    for (int k = 0; k < n; ++k) a.at(i, k) = moments.mu1.at(i + k);
    for (int k = 0; k < m; ++k) a.at(i, n + k) = moments.mu2.at(i + k);
  }
  return a;
}

// S_{n,m} by pivoted LU for every index in the window; S_{0,0} := 1.
// An index is normal when |S| exceeds threshold times the largest
// absolute matrix entry (floored at 1).  Structural zeros (identical
// columns, e.g. c1 = c2) cancel exactly under pivoted elimination, so
// this separates them from roundoff without punishing well-conditioned
// windows whose Hadamard-type row products explode.
template <class S>
NormalityReport<S> normality_scan(const MomentPair<S>& moments, Window window,
                                  double threshold = kDefaultNormalityThreshold) {
  NormalityReport<S> rep;
  rep.window = window;
  rep.threshold = threshold;
  rep.determinants = Grid<S>(window, S(0));
  rep.scales = Grid<S>(window, S(1));
  rep.normal.assign(static_cast<std::size_t>(window.sites()), 1);
  for (int m = 0; m <= window.M; ++m) {
    for (int n = 0; n <= window.N; ++n) {
      if (n + m == 0) {
        rep.determinants.at(0, 0) = S(1);
        continue;
      }
      SquareMatrix<S> a = moment_matrix(moments, n, m);
      S scale(1);
      for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) scale = max_val(scale, abs_val(a.at(i, j)));
      S det = determinant(a);
      rep.determinants.at(n, m) = det;
      rep.scales.at(n, m) = scale;
      if (!(abs_val(det) > S(threshold) * scale))
        rep.normal[static_cast<std::size_t>(m * (window.N + 1) + n)] = 0;
    }
  }
  return rep;
}

// Monic P_{n,m} by solving the orthogonality conditions
//   sum_k p_k s^{(1)}_{k+j} = 0, j < n     (and the mu2 analogue, j < m)
// with p_{n+m} = 1.  The system matrix is moment_matrix(n,m) transposed.
template <class S>
Poly<S> determinantal_poly(const MomentPair<S>& moments, int n, int m) {
  const int size = n + m;
  if (size == 0) return poly_one<S>();
  if (n >= 1 && moments.mu1.max_order() < 2 * n + m - 1)
    throw InsufficientMoments("determinantal_poly: mu1 moments up to order " +
                              std::to_string(2 * n + m - 1) + " required");
  if (m >= 1 && moments.mu2.max_order() < n + 2 * m - 1)
    throw InsufficientMoments("determinantal_poly: mu2 moments up to order " +
                              std::to_string(n + 2 * m - 1) + " required");
  SquareMatrix<S> a(size);
  std::vector<S> rhs(static_cast<std::size_t>(size));
  int row = 0;
  for (int j = 0; j < n; ++j, ++row) {
    for (int k = 0; k < size; ++k) a.at(row, k) = moments.mu1.at(k + j);
    rhs[static_cast<std::size_t>(row)] = -moments.mu1.at(size + j);
  }
  for (int j = 0; j < m; ++j, ++row) {
    for (int k = 0; k < size; ++k) a.at(row, k) = moments.mu2.at(k + j);
    rhs[static_cast<std::size_t>(row)] = -moments.mu2.at(size + j);
  }
  std::vector<S> low = solve(a, rhs);
  low.push_back(S(1));
  return Poly<S>(std::move(low));
}

template <class S>
int precision_window_cap() {
  return sizeof(S) == sizeof(double) ? kWindowCapDouble : kWindowCapExtended;
}

// Full table over a window; aborts with NotNormal (carrying the index
// set) when any required S_{n,m} is below threshold.
template <class S>
PolyTable<S> determinantal_table(const MomentPair<S>& moments, Window window,
                                 double threshold = kDefaultNormalityThreshold) {
  if (window.N + window.M > precision_window_cap<S>())
    throw DomainError("determinantal_table: window exceeds the precision cap N+M <= " +
                      std::to_string(precision_window_cap<S>()));
  NormalityReport<S> scan = normality_scan(moments, window, threshold);
  auto bad = scan.offending();
  if (!bad.empty()) {
    std::string msg = "determinantal_table: " + std::to_string(bad.size()) +
                      " non-normal indices, first (" + std::to_string(bad[0].first) + "," +
                      std::to_string(bad[0].second) + ")";
    throw NotNormal(msg, std::move(bad));
  }
  PolyTable<S> table(window);
  for (int m = 0; m <= window.M; ++m)
    for (int n = 0; n <= window.N; ++n) table.at(n, m) = determinantal_poly(moments, n, m);
  return table;
}

// Max orthogonality residual of one entry, relative to its largest
// coefficient: max_j |sum_k p_k s_{k+j}| / max_k |p_k|.
template <class S>
S orthogonality_residual(const MomentPair<S>& moments, const Poly<S>& p, int n, int m) {
  S worst(0);
  for (int i = 0; i < 2; ++i) {
    const auto& mu = i == 0 ? moments.mu1 : moments.mu2;
    const int jmax = i == 0 ? n : m;
    for (int j = 0; j < jmax; ++j) {
      S acc(0);
      for (int k = 0; k <= p.degree(); ++k) acc += p.coeff(k) * mu.at(k + j);
      worst = max_val(worst, abs_val(acc));
    }
  }
  return worst / max_val(S(1), max_abs_coeff(p));
}

}  // namespace mop
