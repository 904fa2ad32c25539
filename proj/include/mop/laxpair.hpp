#pragma once

#include <array>
#include <string>
#include <vector>

#include "mop/common.hpp"
#include "mop/errors.hpp"
#include "mop/recurrence.hpp"

namespace mop {

// 3x3 transition matrix with entries affine in z; only entry (0,0)
// carries a linear part, with coefficient 1.
template <class S>
struct TransferMatrix {
  enum class Kind { L, M };
  Kind kind;
  int n = 0, m = 0;
  std::array<std::array<S, 3>, 3> constant{};
  std::array<std::array<S, 3>, 3> linear{};

  std::array<std::array<S, 3>, 3> eval(const S& z) const {
    auto out = constant;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[i][j] += linear[i][j] * z;
    return out;
  }
};

// L_{n,m} advances east: rows reproduce Eq. 2.6, the shift of the
// second component, and the difference identity
// P_{n+1,m-1} = P_{n,m} + (d-c)_{n,m-1} P_{n,m-1}.
// At m = 0 the (3,3) entry uses the convention (d-c)_{n,-1} = 0.
template <class S>
TransferMatrix<S> build_transfer_l(const CoeffField<S>& field, int n, int m) {
  if (!field.window.contains(n, m)) throw DomainError("build_transfer_l: site outside window");
  TransferMatrix<S> t;
  t.kind = TransferMatrix<S>::Kind::L;
  t.n = n;
  t.m = m;
  t.linear[0][0] = S(1);
  t.constant[0][0] = -field.c.at(n, m);
  t.constant[0][1] = -field.a.at(n, m);
  t.constant[0][2] = -field.b.at(n, m);
  t.constant[1][0] = S(1);
  t.constant[2][0] = S(1);
  t.constant[2][2] = m >= 1 ? field.d.at(n, m - 1) - field.c.at(n, m - 1) : S(0);
  return t;
}

// M_{n,m} advances north; mirrored conventions at n = 0.
template <class S>
TransferMatrix<S> build_transfer_m(const CoeffField<S>& field, int n, int m) {
  if (!field.window.contains(n, m)) throw DomainError("build_transfer_m: site outside window");
  TransferMatrix<S> t;
  t.kind = TransferMatrix<S>::Kind::M;
  t.n = n;
  t.m = m;
  t.linear[0][0] = S(1);
  t.constant[0][0] = -field.d.at(n, m);
  t.constant[0][1] = -field.a.at(n, m);
  t.constant[0][2] = -field.b.at(n, m);
  t.constant[1][0] = S(1);
  t.constant[1][1] = n >= 1 ? field.c.at(n - 1, m) - field.d.at(n - 1, m) : S(0);
  t.constant[2][0] = S(1);
  return t;
}

enum class PathPolicy { row_major, column_major, both };

// Wave vectors Psi_{n,m}(z) = (P_{n,m}, P_{n-1,m}, P_{n,m-1}) from the
// initial state (1, 0, 0).
template <class S>
struct WaveTable {
  S z{};
  Window window;
  std::vector<std::array<S, 3>> psi;
  S path_discrepancy = S(0);  // only populated by PathPolicy::both

  std::array<S, 3>& at(int n, int m) {
    return psi[static_cast<std::size_t>(m * (window.N + 1) + n)];
  }
  const std::array<S, 3>& at(int n, int m) const {
    return psi[static_cast<std::size_t>(m * (window.N + 1) + n)];
  }
};

namespace detail {

template <class S>
std::array<S, 3> mat_vec(const std::array<std::array<S, 3>, 3>& a, const std::array<S, 3>& v) {
  std::array<S, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
  return out;
}

}  // namespace detail

template <class S>
WaveTable<S> propagate(const CoeffField<S>& field, const S& z, Window window,
                       PathPolicy policy = PathPolicy::row_major, double path_tolerance = 1e-9) {
  if (window.N > field.window.N || window.M > field.window.M)
    throw DomainError("propagate: field window does not cover the requested window");
  WaveTable<S> wave;
  wave.z = z;
  wave.window = window;
  wave.psi.resize(static_cast<std::size_t>(window.sites()));
  wave.at(0, 0) = {S(1), S(0), S(0)};

  for (int s = 1; s <= window.N + window.M; ++s) {
    for (int n = std::max(0, s - window.M); n <= std::min(window.N, s); ++n) {
      const int m = s - n;
      const bool has_east = n >= 1, has_north = m >= 1;
      std::array<S, 3> east{}, north{};
      if (has_east)
        east = detail::mat_vec(build_transfer_l(field, n - 1, m).eval(z), wave.at(n - 1, m));
      if (has_north)
        north = detail::mat_vec(build_transfer_m(field, n, m - 1).eval(z), wave.at(n, m - 1));
      if (policy == PathPolicy::both && has_east && has_north) {
        S scale(1);
        for (int i = 0; i < 3; ++i)
          scale = max_val(scale, max_val(abs_val(east[i]), abs_val(north[i])));
        for (int i = 0; i < 3; ++i)
          wave.path_discrepancy =
              max_val(wave.path_discrepancy, abs_val(east[i] - north[i]) / scale);
      }
      if (policy == PathPolicy::column_major)
        wave.at(n, m) = has_north ? north : east;
      else
        wave.at(n, m) = has_east ? east : north;
    }
  }
  if (policy == PathPolicy::both && wave.path_discrepancy > S(path_tolerance))
    throw PathInconsistent("propagate: lattice paths disagree by " +
                           std::to_string(to_double(wave.path_discrepancy)));
  return wave;
}

// Max absolute entry of L_{n,m+1} M_{n,m} - M_{n+1,m} L_{n,m} over all
// cells and sample points.  Entries are degree <= 1 in z, so three
// distinct samples pin the polynomial identity.
template <class S>
S zero_curvature_residual(const CoeffField<S>& field, Window window,
                          const std::vector<S>& z_samples) {
  if (window.N < 2 || window.M < 2)
    throw DomainError("zero_curvature_residual: window must be at least (2,2)");
  if (window.N > field.window.N || window.M > field.window.M)
    throw DomainError("zero_curvature_residual: field window too small");
  S worst(0);
  for (const S& z : z_samples) {
    for (int m = 0; m < window.M; ++m) {
      for (int n = 0; n < window.N; ++n) {
        auto l0 = build_transfer_l(field, n, m).eval(z);
        auto l1 = build_transfer_l(field, n, m + 1).eval(z);
        auto m0 = build_transfer_m(field, n, m).eval(z);
        auto m1 = build_transfer_m(field, n + 1, m).eval(z);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            S lhs(0), rhs(0);
            for (int k = 0; k < 3; ++k) {
              lhs += l1[i][k] * m0[k][j];
              rhs += m1[i][k] * l0[k][j];
            }
            worst = max_val(worst, abs_val(lhs - rhs));
          }
      }
    }
  }
  return worst;
}

// det L is affine in z; evaluated directly for bookkeeping checks.
template <class S>
S transfer_determinant(const TransferMatrix<S>& t, const S& z) {
  auto a = t.eval(z);
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

}  // namespace mop
