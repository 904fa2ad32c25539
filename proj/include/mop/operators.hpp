#pragma once

#include <string>
#include <vector>

#include "mop/common.hpp"
#include "mop/curvature.hpp"
#include "mop/errors.hpp"
#include "mop/linalg.hpp"
#include "mop/moments.hpp"
#include "mop/mop_table.hpp"
#include "mop/recurrence.hpp"

namespace mop {

enum class OperatorKind { H1, H2, Delta, Cross, DeltaS, J1, J2 };

inline const char* operator_kind_name(OperatorKind k) {
  switch (k) {
    case OperatorKind::H1: return "h1";
    case OperatorKind::H2: return "h2";
    case OperatorKind::Delta: return "delta";
    case OperatorKind::Cross: return "cross";
    case OperatorKind::DeltaS: return "deltas";
    case OperatorKind::J1: return "j1";
    case OperatorKind::J2: return "j2";
  }
  return "?";
}

// Five-point-stencil operator on a window.  East/north couplings that
// would leave the window are stored as zero; the finite section only
// uses in-window links.
template <class S>
struct LatticeOperator {
  OperatorKind kind;
  Window window;
  Grid<S> east, north, center, west, south;

  explicit LatticeOperator(OperatorKind k, Window w)
      : kind(k), window(w), east(w), north(w), center(w), west(w), south(w) {}
};

template <class S>
LatticeOperator<S> build_h1(const CoeffField<S>& field) {
  LatticeOperator<S> op(OperatorKind::H1, field.window);
  for (int m = 0; m <= field.window.M; ++m)
    for (int n = 0; n <= field.window.N; ++n) {
      if (n < field.window.N) op.east.at(n, m) = S(1);
      op.center.at(n, m) = field.c.at(n, m);
      op.west.at(n, m) = field.a.at(n, m);
      op.south.at(n, m) = field.b.at(n, m);
    }
  return op;
}

template <class S>
LatticeOperator<S> build_h2(const CoeffField<S>& field) {
  LatticeOperator<S> op(OperatorKind::H2, field.window);
  for (int m = 0; m <= field.window.M; ++m)
    for (int n = 0; n <= field.window.N; ++n) {
      if (m < field.window.M) op.north.at(n, m) = S(1);
      op.center.at(n, m) = field.d.at(n, m);
      op.west.at(n, m) = field.a.at(n, m);
      op.south.at(n, m) = field.b.at(n, m);
    }
  return op;
}

// Delta = (H1 + H2)/2: stencil (1/2, 1/2, (c+d)/2, a, b).
template <class S>
LatticeOperator<S> build_delta(const CoeffField<S>& field) {
  LatticeOperator<S> op(OperatorKind::Delta, field.window);
  for (int m = 0; m <= field.window.M; ++m)
    for (int n = 0; n <= field.window.N; ++n) {
      if (n < field.window.N) op.east.at(n, m) = S(1) / 2;
      if (m < field.window.M) op.north.at(n, m) = S(1) / 2;
      op.center.at(n, m) = field.q(n, m);
      op.west.at(n, m) = field.a.at(n, m);
      op.south.at(n, m) = field.b.at(n, m);
    }
  return op;
}

// General cross operator with a free potential q.
template <class S>
LatticeOperator<S> build_cross(const Grid<S>& q, const Grid<S>& a, const Grid<S>& b) {
  Window w = q.window;
  LatticeOperator<S> op(OperatorKind::Cross, w);
  for (int m = 0; m <= w.M; ++m)
    for (int n = 0; n <= w.N; ++n) {
      if (n < w.N) op.east.at(n, m) = S(1) / 2;
      if (m < w.M) op.north.at(n, m) = S(1) / 2;
      op.center.at(n, m) = q.at(n, m);
      op.west.at(n, m) = a.at(n, m);
      op.south.at(n, m) = b.at(n, m);
    }
  return op;
}

template <class S>
struct TridiagonalMatrix {
  // Monic Jacobi matrix: unit superdiagonal, diag[i], sub[i] couples
  // row i+1 to row i.
  std::vector<S> diag;
  std::vector<S> sub;
  int size() const { return static_cast<int>(diag.size()); }
};

// Restriction of H1 to the axis m = 0 (axis 1) or of H2 to n = 0.
template <class S>
TridiagonalMatrix<S> boundary_jacobi(const CoeffField<S>& field, int axis) {
  if (axis != 1 && axis != 2) throw DomainError("boundary_jacobi: axis must be 1 or 2");
  const int extent = axis == 1 ? field.window.N : field.window.M;
  if (extent < 1) throw DomainError("boundary_jacobi: window extent must be >= 2 along the axis");
  TridiagonalMatrix<S> t;
  t.diag.resize(static_cast<std::size_t>(extent) + 1);
  t.sub.resize(static_cast<std::size_t>(extent));
  for (int k = 0; k <= extent; ++k)
    t.diag[static_cast<std::size_t>(k)] = axis == 1 ? field.c.at(k, 0) : field.d.at(0, k);
  for (int k = 1; k <= extent; ++k)
    t.sub[static_cast<std::size_t>(k - 1)] = axis == 1 ? field.a.at(k, 0) : field.b.at(0, k);
  return t;
}

// Normalized moments s_j = (T^j)_{0,0}; exact under truncation only for
// j <= 2*size - 2.
template <class S>
MomentSequence<S> boundary_moments(const TridiagonalMatrix<S>& jacobi, int max_order) {
  if (max_order < 0) throw DomainError("boundary_moments: max order must be >= 0");
  const int size = jacobi.size();
  if (max_order > 2 * size - 2)
    throw DomainError("boundary_moments: order " + std::to_string(max_order) +
                      " exceeds the exact range 2*size-2 = " + std::to_string(2 * size - 2));
  MomentSequence<S> seq;
  seq.provenance = MomentProvenance::raw;
  std::vector<S> v(static_cast<std::size_t>(size), S(0));
  v[0] = S(1);
  seq.values.push_back(S(1));
  for (int j = 1; j <= max_order; ++j) {
    std::vector<S> w(static_cast<std::size_t>(size), S(0));
    for (int i = 0; i < size; ++i) {
      S acc = jacobi.diag[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
      if (i + 1 < size) acc += v[static_cast<std::size_t>(i + 1)];  // unit superdiagonal
      if (i >= 1) acc += jacobi.sub[static_cast<std::size_t>(i - 1)] * v[static_cast<std::size_t>(i - 1)];
      w[static_cast<std::size_t>(i)] = acc;
    }
    v = std::move(w);
    seq.values.push_back(v[0]);
  }
  return seq;
}

// Positive diagonal family h with h_{0,0} = 1 and
// h_{n+1,m}^2 = 2 a_{n+1,m} h_{n,m}^2,  h_{n,m+1}^2 = 2 b_{n,m+1} h_{n,m}^2.
template <class S>
struct Symmetrizer {
  Window window;
  Grid<S> h;
};

template <class S>
Symmetrizer<S> build_symmetrizer(const CoeffField<S>& field, double tolerance = 1e-10) {
  auto sym = check_symmetrizable(field, tolerance);
  if (!sym.symmetrizable)
    throw NotSymmetrizable("build_symmetrizer: symmetrizability residual " +
                           std::to_string(to_double(sym.max_residual)) + " exceeds tolerance");
  const Window w = field.window;
  for (int m = 0; m <= w.M; ++m)
    for (int n = 0; n <= w.N; ++n) {
      if (n >= 1 && !(field.a.at(n, m) > S(0)))
        throw DomainError("build_symmetrizer: a must be positive on the interior");
      if (m >= 1 && !(field.b.at(n, m) > S(0)))
        throw DomainError("build_symmetrizer: b must be positive on the interior");
    }

  // Fill by rows (east steps first) and by columns; both must agree.
  Grid<S> rows(w), cols(w);
  rows.at(0, 0) = cols.at(0, 0) = S(1);
  for (int m = 0; m <= w.M; ++m)
    for (int n = 0; n <= w.N; ++n) {
      if (n + m == 0) continue;
      if (n >= 1)
        rows.at(n, m) = sqrt_val(2 * field.a.at(n, m)) * rows.at(n - 1, m);
      else
        rows.at(n, m) = sqrt_val(2 * field.b.at(n, m)) * rows.at(n, m - 1);
      if (m >= 1)
        cols.at(n, m) = sqrt_val(2 * field.b.at(n, m)) * cols.at(n, m - 1);
      else
        cols.at(n, m) = sqrt_val(2 * field.a.at(n, m)) * cols.at(n - 1, m);
    }
  S worst(0);
  for (int m = 0; m <= w.M; ++m)
    for (int n = 0; n <= w.N; ++n)
      worst = max_val(worst, abs_val(rows.at(n, m) - cols.at(n, m)) / abs_val(cols.at(n, m)));
  if (worst > S(1e-10))
    throw PathInconsistent("build_symmetrizer: row/column fills disagree by " +
                           std::to_string(to_double(worst)));
  return Symmetrizer<S>{w, std::move(rows)};
}

template <class S>
struct SymmetricDecomposition {
  LatticeOperator<S> delta_s;
  LatticeOperator<S> j1;
  LatticeOperator<S> j2;
  Symmetrizer<S> symmetrizer;
};

// Delta_s stencil (sqrt(a_{n+1,m}/2), sqrt(b_{n,m+1}/2), (c+d)/2,
// sqrt(a_{n,m}/2), sqrt(b_{n,m}/2)), with the J1 + J2 split.
template <class S>
SymmetricDecomposition<S> build_delta_s(const CoeffField<S>& field, double tolerance = 1e-10) {
  Symmetrizer<S> sym = build_symmetrizer(field, tolerance);
  const Window w = field.window;
  SymmetricDecomposition<S> out{LatticeOperator<S>(OperatorKind::DeltaS, w),
                                LatticeOperator<S>(OperatorKind::J1, w),
                                LatticeOperator<S>(OperatorKind::J2, w), std::move(sym)};
  for (int m = 0; m <= w.M; ++m)
    for (int n = 0; n <= w.N; ++n) {
      const S east = n < w.N ? sqrt_val(field.a.at(n + 1, m) / 2) : S(0);
      const S north = m < w.M ? sqrt_val(field.b.at(n, m + 1) / 2) : S(0);
      const S west = sqrt_val(field.a.at(n, m) / 2);
      const S south = sqrt_val(field.b.at(n, m) / 2);
      out.delta_s.east.at(n, m) = east;
      out.delta_s.north.at(n, m) = north;
      out.delta_s.center.at(n, m) = field.q(n, m);
      out.delta_s.west.at(n, m) = west;
      out.delta_s.south.at(n, m) = south;
      out.j1.east.at(n, m) = east;
      out.j1.center.at(n, m) = field.c.at(n, m) / 2;
      out.j1.west.at(n, m) = west;
      out.j2.north.at(n, m) = north;
      out.j2.center.at(n, m) = field.d.at(n, m) / 2;
      out.j2.south.at(n, m) = south;
    }
  return out;
}

// Finite-section matrix, row-major over (n,m) with n fastest.
template <class S>
SquareMatrix<S> to_matrix(const LatticeOperator<S>& op) {
  const Window w = op.window;
  SquareMatrix<S> a(w.sites());
  auto idx = [&](int n, int m) { return m * (w.N + 1) + n; };
  for (int m = 0; m <= w.M; ++m)
    for (int n = 0; n <= w.N; ++n) {
      const int i = idx(n, m);
      a.at(i, i) = op.center.at(n, m);
      if (n < w.N) a.at(i, idx(n + 1, m)) = op.east.at(n, m);
      if (m < w.M) a.at(i, idx(n, m + 1)) = op.north.at(n, m);
      if (n > 0) a.at(i, idx(n - 1, m)) = op.west.at(n, m);
      if (m > 0) a.at(i, idx(n, m - 1)) = op.south.at(n, m);
    }
  return a;
}

// Stencil application at sites whose full stencil stays in the window:
// the interior [1, N-1] x [1, M-1].
template <class S>
Grid<S> apply(const LatticeOperator<S>& op, const Grid<S>& table) {
  if (!(table.window == op.window)) throw DomainError("apply: table window mismatch");
  const Window w = op.window;
  Window interior{w.N - 2 < 0 ? -1 : w.N - 2, w.M - 2 < 0 ? -1 : w.M - 2};
  if (interior.N < 0 || interior.M < 0) return Grid<S>(Window{0, 0});  // empty interior
  Grid<S> out(interior);
  for (int m = 1; m <= w.M - 1; ++m)
    for (int n = 1; n <= w.N - 1; ++n)
      out.at(n - 1, m - 1) = op.east.at(n, m) * table.at(n + 1, m) +
                             op.north.at(n, m) * table.at(n, m + 1) +
                             op.center.at(n, m) * table.at(n, m) +
                             op.west.at(n, m) * table.at(n - 1, m) +
                             op.south.at(n, m) * table.at(n, m - 1);
  return out;
}

template <class S>
struct EigencheckReport {
  std::vector<S> samples;
  std::vector<S> residuals;  // per sample, relative to max |pi(z)|
  Window interior;           // sites [1, N-1] x [1, M-1]
  S max_residual = S(0);
};

// Residual of (Op pi)(z) = z pi(z) on the interior; with scaled = true
// the table values are divided by the symmetrizer h first.
template <class S>
EigencheckReport<S> eigencheck(const LatticeOperator<S>& op, const PolyTable<S>& table,
                               const std::vector<S>& samples, bool scaled = false,
                               const Symmetrizer<S>* symmetrizer = nullptr) {
  if (!(table.window == op.window)) throw DomainError("eigencheck: table window mismatch");
  if (scaled && symmetrizer == nullptr)
    throw DomainError("eigencheck: scaled check requires a symmetrizer");
  const Window w = op.window;
  EigencheckReport<S> rep;
  rep.samples = samples;
  rep.interior = Window{w.N - 2, w.M - 2};
  for (const S& z : samples) {
    Grid<S> values(w);
    S scale(0);
    for (int m = 0; m <= w.M; ++m)
      for (int n = 0; n <= w.N; ++n) {
        S v = table.at(n, m).eval(z);
        if (scaled) v /= symmetrizer->h.at(n, m);
        values.at(n, m) = v;
        scale = max_val(scale, abs_val(v));
      }
    Grid<S> image = apply(op, values);
    S worst(0);
    for (int m = 1; m <= w.M - 1; ++m)
      for (int n = 1; n <= w.N - 1; ++n)
        worst = max_val(worst, abs_val(image.at(n - 1, m - 1) - z * values.at(n, m)));
    worst /= max_val(S(1), scale);
    rep.residuals.push_back(worst);
    rep.max_residual = max_val(rep.max_residual, worst);
  }
  return rep;
}

}  // namespace mop
