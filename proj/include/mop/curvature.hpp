#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mop/common.hpp"
#include "mop/errors.hpp"
#include "mop/linalg.hpp"
#include "mop/recurrence.hpp"

namespace mop {

// Per-index residuals of the four consistency conditions.  The d-update
// residual is checked in the form d_{n+1,m} - d_{n,m} - corr (the form
// matching row four of the local 6x6 system); the ratio conditions are
// checked cross-multiplied to avoid dividing by small (c - d).
template <class S>
struct CurvatureReport {
  Window window;  // cell window (N-1, M-1) relative to the field
  Grid<S> residual_31, residual_32, residual_33, residual_34;
  S max_residual = S(0);
  bool pass = false;
  double tolerance = 0;
};

template <class S>
struct DegeneracyField {
  Window window;  // cell window
  Grid<S> values;               // D_{n,m}
  std::vector<char> nondegenerate;
  std::vector<char> defined;

  bool is_nondegenerate(int n, int m) const {
    return nondegenerate[static_cast<std::size_t>(m * (window.N + 1) + n)] != 0;
  }
  bool is_defined(int n, int m) const {
    return defined[static_cast<std::size_t>(m * (window.N + 1) + n)] != 0;
  }
};

template <class S>
struct SymmetrizabilityReport {
  Window window;  // cell window
  Grid<S> residuals;  // (c-d)_{n+1,m} - (c-d)_{n,m+1}
  S max_residual = S(0);
  bool symmetrizable = false;
};

template <class S>
CurvatureReport<S> check_curvature(const CoeffField<S>& field, double tolerance = 1e-10) {
  const int N = field.window.N, M = field.window.M;
  if (N < 2 || M < 2) throw DomainError("check_curvature: field window must be at least (2,2)");
  Window cells{N - 1, M - 1};
  CurvatureReport<S> rep;
  rep.window = cells;
  rep.tolerance = tolerance;
  rep.residual_31 = Grid<S>(cells);
  rep.residual_32 = Grid<S>(cells);
  rep.residual_33 = Grid<S>(cells);
  rep.residual_34 = Grid<S>(cells);

  std::vector<std::pair<int, int>> degenerate;
  auto cd = [&](int n, int m) { return field.c.at(n, m) - field.d.at(n, m); };

  for (int m = 0; m <= cells.M; ++m) {
    for (int n = 0; n <= cells.N; ++n) {
      const S denom = cd(n, m);
      if (abs_val(denom) <= S(tolerance)) {
        degenerate.emplace_back(n, m);
        continue;
      }
      const S corr = ((field.a.at(n + 1, m) + field.b.at(n + 1, m)) -
                      (field.a.at(n, m + 1) + field.b.at(n, m + 1))) /
                     denom;
      rep.residual_31.at(n, m) = field.c.at(n, m + 1) - field.c.at(n, m) - corr;
      rep.residual_32.at(n, m) = field.d.at(n + 1, m) - field.d.at(n, m) - corr;

      // Eq. 3.3 at (n+1, m) and Eq. 3.4 at (n, m+1), cross-multiplied.
      // Residuals stay absolute: relative scaling would wash out small
      // injected inconsistencies on sites with large coefficients.
      rep.residual_33.at(n, m) =
          field.a.at(n + 1, m + 1) * cd(n, m) - field.a.at(n + 1, m) * cd(n + 1, m);
      rep.residual_34.at(n, m) =
          field.b.at(n + 1, m + 1) * cd(n, m) - field.b.at(n, m + 1) * cd(n, m + 1);

      for (const Grid<S>* g :
           {&rep.residual_31, &rep.residual_32, &rep.residual_33, &rep.residual_34})
        rep.max_residual = max_val(rep.max_residual, abs_val(g->at(n, m)));
    }
  }
  if (!degenerate.empty()) {
    std::string msg = "check_curvature: |c - d| below tolerance at " +
                      std::to_string(degenerate.size()) + " indices";
    throw DegenerateDenominator(msg, std::move(degenerate));
  }
  rep.pass = !(rep.max_residual > S(tolerance));
  return rep;
}

// D_{n,m} = -4 (a_{n+1,m+1}/a_{n+1,m} + b_{n+1,m+1}/b_{n,m+1}) + 8,
// wherever the ratios are defined.
template <class S>
DegeneracyField<S> degeneracy_scan(const CoeffField<S>& field, double tolerance = 1e-8) {
  const int N = field.window.N, M = field.window.M;
  if (N < 1 || M < 1) throw DomainError("degeneracy_scan: field window must be at least (1,1)");
  Window cells{N - 1, M - 1};
  DegeneracyField<S> out;
  out.window = cells;
  out.values = Grid<S>(cells);
  out.nondegenerate.assign(static_cast<std::size_t>(cells.sites()), 0);
  out.defined.assign(static_cast<std::size_t>(cells.sites()), 0);
  for (int m = 0; m <= cells.M; ++m) {
    for (int n = 0; n <= cells.N; ++n) {
      const S ae = field.a.at(n + 1, m), bn = field.b.at(n, m + 1);
      if (ae == S(0) || bn == S(0)) continue;
      const S d = S(-4) * (field.a.at(n + 1, m + 1) / ae + field.b.at(n + 1, m + 1) / bn) + S(8);
      const std::size_t idx = static_cast<std::size_t>(m * (cells.N + 1) + n);
      out.values.at(n, m) = d;
      out.defined[idx] = 1;
      if (abs_val(d) > S(tolerance)) out.nondegenerate[idx] = 1;
    }
  }
  return out;
}

template <class S>
struct ReconstructedField {
  Window window;
  Grid<S> c, d;
  std::vector<char> known;  // the (N,M) corner is not covered by any cell
  S consistency = S(0);     // max pairwise disagreement across overlapping cells
};

// Per-cell 6x6 system: {c+d = 2q at (n,m), (n+1,m), (n,m+1)} plus the
// three linear consistency rows.  Overlapping estimates of the same
// unknown are compared; values come from the lexicographically first
// cell containing the index.
template <class S>
ReconstructedField<S> reconstruct_cd(const Grid<S>& q, const Grid<S>& a, const Grid<S>& b,
                                     Window window, double degeneracy_tolerance = 1e-8,
                                     double overlap_tolerance = 1e-8) {
  if (!(q.window == window) || !(a.window == window) || !(b.window == window))
    throw DomainError("reconstruct_cd: q, a, b must share the requested window");
  if (window.N < 1 || window.M < 1)
    throw DomainError("reconstruct_cd: window must be at least (1,1)");

  ReconstructedField<S> out;
  out.window = window;
  out.c = Grid<S>(window);
  out.d = Grid<S>(window);
  out.known.assign(static_cast<std::size_t>(window.sites()), 0);

  auto record = [&](int n, int m, const S& cv, const S& dv) {
    const std::size_t idx = static_cast<std::size_t>(m * (window.N + 1) + n);
    if (!out.known[idx]) {
      out.c.at(n, m) = cv;
      out.d.at(n, m) = dv;
      out.known[idx] = 1;
    } else {
      const S scale = max_val(S(1), max_val(abs_val(cv), abs_val(dv)));
      out.consistency = max_val(out.consistency, abs_val(cv - out.c.at(n, m)) / scale);
      out.consistency = max_val(out.consistency, abs_val(dv - out.d.at(n, m)) / scale);
    }
  };

  // Lexicographic cell order: n major, m minor.
  for (int n = 0; n < window.N; ++n) {
    for (int m = 0; m < window.M; ++m) {
      const S ae = a.at(n + 1, m), bn = b.at(n, m + 1);
      if (ae == S(0) || bn == S(0))
        throw DegenerateSystem("reconstruct_cd: vanishing a/b ratio denominator at cell (" +
                                   std::to_string(n) + "," + std::to_string(m) + ")",
                               n, m);
      const S ra = a.at(n + 1, m + 1) / ae;
      const S rb = b.at(n + 1, m + 1) / bn;
      // Unknowns: c_{n,m}, d_{n,m}, c_{n+1,m}, d_{n+1,m}, c_{n,m+1}, d_{n,m+1}.
      SquareMatrix<S> sys(6);
      std::vector<S> rhs(6, S(0));
      sys.at(0, 0) = S(1); sys.at(0, 1) = S(1); rhs[0] = 2 * q.at(n, m);
      sys.at(1, 2) = S(1); sys.at(1, 3) = S(1); rhs[1] = 2 * q.at(n + 1, m);
      sys.at(2, 4) = S(1); sys.at(2, 5) = S(1); rhs[2] = 2 * q.at(n, m + 1);
      sys.at(3, 0) = S(1); sys.at(3, 1) = S(-1); sys.at(3, 3) = S(1); sys.at(3, 4) = S(-1);
      sys.at(4, 0) = ra; sys.at(4, 1) = -ra; sys.at(4, 2) = S(-1); sys.at(4, 3) = S(1);
      sys.at(5, 0) = rb; sys.at(5, 1) = -rb; sys.at(5, 4) = S(-1); sys.at(5, 5) = S(1);

      LuFactors<S> f = lu_factor(sys);
      const S det = lu_determinant(f);
      if (!(abs_val(det) > S(degeneracy_tolerance)))
        throw DegenerateSystem("reconstruct_cd: singular local system at cell (" +
                                   std::to_string(n) + "," + std::to_string(m) +
                                   "), determinant " + std::to_string(to_double(det)),
                               n, m);
      std::vector<S> x = lu_solve(f, rhs);
      record(n, m, x[0], x[1]);
      record(n + 1, m, x[2], x[3]);
      record(n, m + 1, x[4], x[5]);
    }
  }
  if (out.consistency > S(overlap_tolerance))
    throw InconsistentOverlap("reconstruct_cd: overlapping cells disagree by " +
                              std::to_string(to_double(out.consistency)));
  return out;
}

// Determinant of the local 6x6 system for given neighbor ratios; equals
// the closed form -4(ra + rb) + 8.
template <class S>
S reconstruction_determinant(const S& ra, const S& rb) {
  SquareMatrix<S> sys(6);
  sys.at(0, 0) = S(1); sys.at(0, 1) = S(1);
  sys.at(1, 2) = S(1); sys.at(1, 3) = S(1);
  sys.at(2, 4) = S(1); sys.at(2, 5) = S(1);
  sys.at(3, 0) = S(1); sys.at(3, 1) = S(-1); sys.at(3, 3) = S(1); sys.at(3, 4) = S(-1);
  sys.at(4, 0) = ra; sys.at(4, 1) = -ra; sys.at(4, 2) = S(-1); sys.at(4, 3) = S(1);
  sys.at(5, 0) = rb; sys.at(5, 1) = -rb; sys.at(5, 4) = S(-1); sys.at(5, 5) = S(1);
  return determinant(sys);
}

// Residual r_{n,m} = (c-d)_{n+1,m} - (c-d)_{n,m+1}.
template <class S>
SymmetrizabilityReport<S> check_symmetrizable(const CoeffField<S>& field,
                                              double tolerance = 1e-10) {
  const int N = field.window.N, M = field.window.M;
  if (N < 2 || M < 2)
    throw DomainError("check_symmetrizable: field window must be at least (2,2)");
  Window cells{N - 1, M - 1};
  SymmetrizabilityReport<S> rep;
  rep.window = cells;
  rep.residuals = Grid<S>(cells);
  for (int m = 0; m <= cells.M; ++m) {
    for (int n = 0; n <= cells.N; ++n) {
      const S r = (field.c.at(n + 1, m) - field.d.at(n + 1, m)) -
                  (field.c.at(n, m + 1) - field.d.at(n, m + 1));
      rep.residuals.at(n, m) = r;
      rep.max_residual = max_val(rep.max_residual, abs_val(r));
    }
  }
  rep.symmetrizable = !(rep.max_residual > S(tolerance));
  return rep;
}

}  // namespace mop
