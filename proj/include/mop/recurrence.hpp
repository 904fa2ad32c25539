#pragma once

#include <string>
#include <vector>

#include "mop/common.hpp"
#include "mop/errors.hpp"
#include "mop/linalg.hpp"
#include "mop/mop_table.hpp"
#include "mop/polynomial.hpp"

namespace mop {

// Nearest-neighbor recurrence coefficients a, b, c, d on a window.
// Boundary structure: a_{0,m} = b_{n,0} = 0 always.
template <class S>
struct CoeffField {
  Window window;
  Grid<S> a, b, c, d;

  CoeffField() = default;
  explicit CoeffField(Window w) : window(w), a(w), b(w), c(w), d(w) {}

  S q(int n, int m) const { return (c.at(n, m) + d.at(n, m)) / 2; }

  void enforce_boundary_zeros() {
    for (int m = 0; m <= window.M; ++m) a.at(0, m) = S(0);
    for (int n = 0; n <= window.N; ++n) b.at(n, 0) = S(0);
  }
};

template <class S>
CoeffField<double> field_to_double(const CoeffField<S>& f) {
  CoeffField<double> out(f.window);
  out.a = grid_to_double(f.a);
  out.b = grid_to_double(f.b);
  out.c = grid_to_double(f.c);
  out.d = grid_to_double(f.d);
  return out;
}

template <class S>
struct GeneratedTable {
  PolyTable<S> table;
  // Max relative coefficient discrepancy between the east (2.6) and
  // north (2.7) routes over doubly reachable entries.
  S route_discrepancy = S(0);
};

namespace detail {

// One recurrence step: (x - gamma) P - alpha Pw - beta Ps.
template <class S>
Poly<S> step(const Poly<S>& p, const S& gamma, const S& alpha, const Poly<S>& pw, const S& beta,
             const Poly<S>& ps) {
  Poly<S> r = shift_up(p);
  axpy(r, -gamma, p);
  axpy(r, -alpha, pw);
  axpy(r, -beta, ps);
  return r;
}

}  // namespace detail

// Dynamic programming from P_{0,0} = 1 with P_{-1,m} = P_{n,-1} = 0.
// Interior entries reachable both ways are computed by both routes; the
// east route is the stored value.
template <class S>
GeneratedTable<S> generate_table(const CoeffField<S>& field, Window window,
                                 double route_tolerance = 1e-8) {
  if (window.N > field.window.N || window.M > field.window.M)
    throw DomainError("generate_table: field window does not cover the table window");
  GeneratedTable<S> out;
  out.table = PolyTable<S>(window);
  out.table.at(0, 0) = poly_one<S>();
  const Poly<S> zero;

  auto get = [&](int n, int m) -> const Poly<S>& {
    if (n < 0 || m < 0) return zero;
    return out.table.at(n, m);
  };

  for (int s = 1; s <= window.N + window.M; ++s) {
    for (int n = std::max(0, s - window.M); n <= std::min(window.N, s); ++n) {
      const int m = s - n;
      Poly<S> east, north;
      bool has_east = n >= 1, has_north = m >= 1;
      if (has_east)
        east = detail::step(get(n - 1, m), field.c.at(n - 1, m), field.a.at(n - 1, m),
                            get(n - 2, m), field.b.at(n - 1, m), get(n - 1, m - 1));
      if (has_north)
        north = detail::step(get(n, m - 1), field.d.at(n, m - 1), field.a.at(n, m - 1),
                             get(n - 1, m - 1), field.b.at(n, m - 1), get(n, m - 2));
      if (has_east && has_north) {
        S diff = max_coeff_difference(east, north);
        S scale = max_val(S(1), max_val(max_abs_coeff(east), max_abs_coeff(north)));
        out.route_discrepancy = max_val(out.route_discrepancy, diff / scale);
      }
      out.table.at(n, m) = has_east ? std::move(east) : std::move(north);
    }
  }
  if (out.route_discrepancy > S(route_tolerance))
    throw InconsistentField("generate_table: east/north route discrepancy " +
                            std::to_string(to_double(out.route_discrepancy)) +
                            " exceeds tolerance");
  return out;
}

namespace detail {

struct SiteFit {
  bool has_a = false, has_b = false;
};

// Match R = P_next - x P against -g P - alpha P_{n-1,m} - beta P_{n,m-1}
// using the top coefficient equations; remaining equations are residuals.
template <class S>
void fit_step(const Poly<S>& pnext, const Poly<S>& p, const Poly<S>& pw, const Poly<S>& ps, int n,
              int m, S& gamma, S& alpha, S& beta, S& residual) {
  const int deg = n + m;
  Poly<S> r = pnext;
  axpy(r, S(-1), shift_up(p));

  std::vector<const Poly<S>*> basis{&p};
  if (n >= 1) basis.push_back(&pw);
  if (m >= 1) basis.push_back(&ps);
  const int k = static_cast<int>(basis.size());

  SquareMatrix<S> a(k);
  std::vector<S> rhs(static_cast<std::size_t>(k));
  for (int row = 0; row < k; ++row) {
    const int power = deg - row;
    for (int col = 0; col < k; ++col) a.at(row, col) = -basis[static_cast<std::size_t>(col)]->coeff(power);
    rhs[static_cast<std::size_t>(row)] = r.coeff(power);
  }
  std::vector<S> sol = solve(a, rhs);
  gamma = sol[0];
  alpha = n >= 1 ? sol[1] : S(0);
  beta = m >= 1 ? sol[static_cast<std::size_t>(n >= 1 ? 2 : 1)] : S(0);

  // Validation residual over the remaining powers.
  S scale = max_val(S(1), max_abs_coeff(p));
  for (int power = deg - k; power >= 0; --power) {
    S acc = r.coeff(power) + gamma * p.coeff(power) + alpha * pw.coeff(power) +
            beta * ps.coeff(power);
    residual = max_val(residual, abs_val(acc) / scale);
  }
}

}  // namespace detail

// Recover the coefficient field from a polynomial table.  The result
// window is (N-1, M-1): every site needs its east and north neighbors.
template <class S>
CoeffField<S> extract_coeffs(const PolyTable<S>& table, double fit_tolerance = 1e-8,
                             S* residual_out = nullptr) {
  if (table.window.N < 1 || table.window.M < 1)
    throw DomainError("extract_coeffs: table window must be at least (1,1)");
  Window w{table.window.N - 1, table.window.M - 1};
  CoeffField<S> field(w);
  const Poly<S> zero;
  S worst(0);

  for (int m = 0; m <= w.M; ++m) {
    for (int n = 0; n <= w.N; ++n) {
      const Poly<S>& p = table.at(n, m);
      const Poly<S>& pw = n >= 1 ? table.at(n - 1, m) : zero;
      const Poly<S>& ps = m >= 1 ? table.at(n, m - 1) : zero;
      S c{}, a1{}, b1{}, d{}, a2{}, b2{};
      detail::fit_step(table.at(n + 1, m), p, pw, ps, n, m, c, a1, b1, worst);
      detail::fit_step(table.at(n, m + 1), p, pw, ps, n, m, d, a2, b2, worst);
      // Both routes see the same a, b; the disagreement is a fit residual.
      if (n >= 1) worst = max_val(worst, abs_val(a1 - a2) / max_val(S(1), abs_val(a1)));
      if (m >= 1) worst = max_val(worst, abs_val(b1 - b2) / max_val(S(1), abs_val(b1)));
      field.c.at(n, m) = c;
      field.d.at(n, m) = d;
      field.a.at(n, m) = n >= 1 ? a1 : S(0);
      field.b.at(n, m) = m >= 1 ? b1 : S(0);
    }
  }
  if (residual_out) *residual_out = worst;
  if (worst > S(fit_tolerance))
    throw FitError("extract_coeffs: fit residual " + std::to_string(to_double(worst)) +
                   " exceeds tolerance; table is not generated by a NN recurrence");
  return field;
}

}  // namespace mop
