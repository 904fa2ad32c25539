#pragma once

#include <cmath>
#include <string>

#include "mop/common.hpp"
#include "mop/errors.hpp"
#include "mop/moments.hpp"
#include "mop/mop_table.hpp"
#include "mop/recurrence.hpp"

namespace mop {

enum class FamilyKind { hermite, laguerre1, meixner1, constant_toy };

inline const char* family_kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::hermite: return "hermite";
    case FamilyKind::laguerre1: return "laguerre1";
    case FamilyKind::meixner1: return "meixner1";
    case FamilyKind::constant_toy: return "constant_toy";
  }
  return "?";
}

struct FamilySpec {
  FamilyKind kind = FamilyKind::hermite;
  double c1 = 0, c2 = 1;        // hermite shifts / meixner ratios
  double alpha1 = 0, alpha2 = 0.5;  // laguerre1
  double beta = 1;              // meixner1
  double u0 = 0, v0 = 1;        // constant_toy

  // Range constraints needed for the single-measure moment
  // constructors.  Equal parameters are legal here: they produce a
  // non-normal system, which the normality scan reports as such.
  void validate_ranges() const {
    switch (kind) {
      case FamilyKind::hermite:
      case FamilyKind::constant_toy:
        break;
      case FamilyKind::laguerre1:
        if (!(alpha1 > -1) || !(alpha2 > -1))
          throw InvalidParams("laguerre1: alpha1, alpha2 must be > -1");
        break;
      case FamilyKind::meixner1:
        if (!(beta > 0)) throw InvalidParams("meixner1: beta must be > 0");
        if (!(c1 > 0 && c1 < 1 && c2 > 0 && c2 < 1))
          throw InvalidParams("meixner1: c1, c2 must be in (0,1)");
        break;
    }
  }

  // Full constraints, including the distinctness of the two measures
  // that the closed-form coefficient fields assume.
  void validate() const {
    validate_ranges();
    switch (kind) {
      case FamilyKind::hermite:
        if (c1 == c2) throw InvalidParams("hermite: c1 must differ from c2");
        break;
      case FamilyKind::laguerre1: {
        const double diff = alpha1 - alpha2;
        if (std::abs(diff - std::round(diff)) < 1e-12)
          throw InvalidParams("laguerre1: alpha1 - alpha2 must not be an integer");
        break;
      }
      case FamilyKind::meixner1:
        if (c1 == c2) throw InvalidParams("meixner1: c1 must differ from c2");
        break;
      case FamilyKind::constant_toy:
        if (u0 == v0) throw InvalidParams("constant_toy: u0 must differ from v0");
        break;
    }
  }
};

namespace detail {

// Laguerre-I a, b are not given in closed form; they are recovered from
// a determinantal table.  The table is always built in extended
// precision: the required moment orders make double-precision Hankel
// systems useless already at mid-size windows.
template <class S>
void fill_laguerre_ab(const FamilySpec& spec, CoeffField<S>& field) {
  const Window w = field.window;
  const Window tw{w.N + 1, w.M + 1};
  const Extended a1(spec.alpha1), a2(spec.alpha2);
  auto pair = make_pair(laguerre_moments<Extended>(a1, 2 * tw.N + tw.M),
                        laguerre_moments<Extended>(a2, tw.N + 2 * tw.M));
  PolyTable<Extended> table = determinantal_table(pair, tw);
  CoeffField<Extended> numeric = extract_coeffs(table, 1e-20);
  for (int m = 0; m <= w.M; ++m)
    for (int n = 0; n <= w.N; ++n) {
      field.a.at(n, m) = static_cast<S>(numeric.a.at(n, m));
      field.b.at(n, m) = static_cast<S>(numeric.b.at(n, m));
    }
}

}  // namespace detail

// Closed-form coefficient field of a built-in family on a window.
template <class S>
CoeffField<S> family_field(const FamilySpec& spec, Window window) {
  spec.validate();
  CoeffField<S> field(window);
  const S c1(spec.c1), c2(spec.c2), beta(spec.beta);
  for (int m = 0; m <= window.M; ++m) {
    for (int n = 0; n <= window.N; ++n) {
      const S sn(n), sm(m);
      switch (spec.kind) {
        case FamilyKind::hermite:
          field.a.at(n, m) = sn / 2;
          field.b.at(n, m) = sm / 2;
          field.c.at(n, m) = c1 / 2;
          field.d.at(n, m) = c2 / 2;
          break;
        case FamilyKind::laguerre1:
          field.c.at(n, m) = 2 * sn + sm + S(spec.alpha1) + 1;
          field.d.at(n, m) = sn + 2 * sm + S(spec.alpha2) + 1;
          break;
        case FamilyKind::meixner1: {
          const S total = beta + sn + sm;
          field.a.at(n, m) = c1 * sn * (total - 1) / ((1 - c1) * (1 - c1));
          field.b.at(n, m) = c2 * sm * (total - 1) / ((1 - c2) * (1 - c2));
          const S shared = sn / (1 - c1) + sm / (1 - c2);
          field.c.at(n, m) = total * c1 / (1 - c1) + shared;
          field.d.at(n, m) = total * c2 / (1 - c2) + shared;
          break;
        }
        case FamilyKind::constant_toy:
          field.a.at(n, m) = n >= 1 ? S(1) : S(0);
          field.b.at(n, m) = m >= 1 ? S(1) : S(0);
          field.c.at(n, m) = S(spec.u0);
          field.d.at(n, m) = S(spec.v0);
          break;
      }
    }
  }
  if (spec.kind == FamilyKind::laguerre1) detail::fill_laguerre_ab(spec, field);
  field.enforce_boundary_zeros();
  return field;
}

// Moment pair of the family's two measures up to the given order.
template <class S>
MomentPair<S> family_moment_pair(const FamilySpec& spec, int max_order,
                                 const MeixnerOptions& opt = {}) {
  spec.validate_ranges();
  switch (spec.kind) {
    case FamilyKind::hermite:
      return make_pair(hermite_moments<S>(S(spec.c1), max_order),
                       hermite_moments<S>(S(spec.c2), max_order));
    case FamilyKind::laguerre1:
      return make_pair(laguerre_moments<S>(S(spec.alpha1), max_order),
                       laguerre_moments<S>(S(spec.alpha2), max_order));
    case FamilyKind::meixner1:
      return make_pair(meixner_moments<S>(S(spec.beta), S(spec.c1), max_order, opt),
                       meixner_moments<S>(S(spec.beta), S(spec.c2), max_order, opt));
    case FamilyKind::constant_toy:
      throw DomainError("constant_toy: degenerate fixture, no measure pair is constructed");
  }
  throw DomainError("family_moment_pair: unknown family");
}

}  // namespace mop
