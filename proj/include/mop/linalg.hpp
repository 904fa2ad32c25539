#pragma once

#include <vector>

#include "mop/errors.hpp"
#include "mop/scalar.hpp"

namespace mop {

// Small dense square matrix, row-major.  Sizes here never exceed a few
// dozen rows, so a scalar-templated pivoted LU keeps double and
// extended precision on the same code path.
template <class S>
struct SquareMatrix {
  int n = 0;
  std::vector<S> values;

  SquareMatrix() = default;
  explicit SquareMatrix(int size) : n(size), values(static_cast<std::size_t>(size) * size, S(0)) {}

  S& at(int i, int j) { return values[static_cast<std::size_t>(i) * n + j]; }
  const S& at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
};

template <class S>
struct LuFactors {
  SquareMatrix<S> lu;
  std::vector<int> perm;
  bool singular = false;
  int sign = 1;
};

template <class S>
LuFactors<S> lu_factor(SquareMatrix<S> a) {
  const int n = a.n;
  LuFactors<S> f;
  f.perm.resize(n);
  for (int i = 0; i < n; ++i) f.perm[i] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    S best = abs_val(a.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      S v = abs_val(a.at(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == S(0)) {
      f.singular = true;
      continue;
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    for (int i = k + 1; i < n; ++i) {
      S factor = a.at(i, k) / a.at(k, k);
      a.at(i, k) = factor;
      for (int j = k + 1; j < n; ++j) a.at(i, j) -= factor * a.at(k, j);
    }
  }
  f.lu = std::move(a);
  return f;
}

template <class S>
S lu_determinant(const LuFactors<S>& f) {
  if (f.singular) return S(0);
  S det(f.sign);
  for (int i = 0; i < f.lu.n; ++i) det *= f.lu.at(i, i);
  return det;
}

template <class S>
std::vector<S> lu_solve(const LuFactors<S>& f, const std::vector<S>& b) {
  if (f.singular) throw DomainError("lu_solve: singular matrix");
  const int n = f.lu.n;
  std::vector<S> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= f.lu.at(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= f.lu.at(i, j) * x[j];
    x[i] /= f.lu.at(i, i);
  }
  return x;
}

template <class S>
std::vector<S> solve(const SquareMatrix<S>& a, const std::vector<S>& b) {
  return lu_solve(lu_factor(a), b);
}

template <class S>
S determinant(const SquareMatrix<S>& a) {
  return lu_determinant(lu_factor(a));
}

}  // namespace mop
