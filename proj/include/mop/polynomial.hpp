#pragma once

#include <vector>

#include "mop/scalar.hpp"

namespace mop {

// Coefficients in ascending power order; empty means the zero polynomial.
template <class S>
struct Poly {
  std::vector<S> coeffs;

  Poly() = default;
  explicit Poly(std::vector<S> c) : coeffs(std::move(c)) {}

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  S coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs.size())) return S(0);
    return coeffs[static_cast<std::size_t>(k)];
  }

  S eval(const S& z) const {
    S v(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + *it;
    return v;
  }
};

template <class S>
Poly<S> poly_one() {
  return Poly<S>({S(1)});
}

// p(x) * x
template <class S>
Poly<S> shift_up(const Poly<S>& p) {
  if (p.coeffs.empty()) return p;
  std::vector<S> c(p.coeffs.size() + 1, S(0));
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) c[i + 1] = p.coeffs[i];
  return Poly<S>(std::move(c));
}

template <class S>
void axpy(Poly<S>& acc, const S& alpha, const Poly<S>& p) {
  if (p.coeffs.size() > acc.coeffs.size()) acc.coeffs.resize(p.coeffs.size(), S(0));
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) acc.coeffs[i] += alpha * p.coeffs[i];
}

template <class S>
S max_abs_coeff(const Poly<S>& p) {
  S m(0);
  for (const auto& c : p.coeffs) m = max_val(m, abs_val(c));
  return m;
}

template <class S>
S max_coeff_difference(const Poly<S>& p, const Poly<S>& q) {
  std::size_t len = std::max(p.coeffs.size(), q.coeffs.size());
  S m(0);
  for (std::size_t i = 0; i < len; ++i)
    m = max_val(m, abs_val(p.coeff(static_cast<int>(i)) - q.coeff(static_cast<int>(i))));
  return m;
}

template <class S>
Poly<double> poly_to_double(const Poly<S>& p) {
  std::vector<double> c(p.coeffs.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = to_double(p.coeffs[i]);
  return Poly<double>(std::move(c));
}

}  // namespace mop
