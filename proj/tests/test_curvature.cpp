#include <doctest.h>

#include <random>

#include "mop/curvature.hpp"
#include "mop/families.hpp"

using mop::Window;

namespace {

mop::FamilySpec meixner_spec() {
  mop::FamilySpec s;
  s.kind = mop::FamilyKind::meixner1;
  s.beta = 1;
  s.c1 = 0.5;
  s.c2 = 1.0 / 3;
  return s;
}

}  // namespace

TEST_CASE("closed-form families satisfy the consistency conditions") {
  for (auto kind : {mop::FamilyKind::hermite, mop::FamilyKind::laguerre1,
                    mop::FamilyKind::meixner1}) {
    mop::FamilySpec spec = meixner_spec();
    spec.kind = kind;
    if (kind == mop::FamilyKind::hermite) {
      spec.c1 = 0;
      spec.c2 = 2;
    } else if (kind == mop::FamilyKind::laguerre1) {
      spec.alpha1 = 0;
      spec.alpha2 = 0.4;
    }
    auto field = mop::family_field<double>(spec, Window{5, 5});
    auto rep = mop::check_curvature(field);
    CHECK(rep.pass);
    CHECK(mop::to_double(rep.max_residual) < 1e-12);
  }
}

TEST_CASE("fields from extracted determinantal tables pass curvature") {
  mop::FamilySpec spec;
  spec.c1 = 1;
  spec.c2 = 3;
  auto pair = mop::family_moment_pair<double>(spec, 16);
  auto table = mop::determinantal_table(pair, Window{4, 4});
  auto field = mop::extract_coeffs(table);
  auto rep = mop::check_curvature(field, 1e-8);
  CHECK(rep.pass);
}

TEST_CASE("single-coefficient perturbations are detected") {
  auto field = mop::family_field<double>(meixner_spec(), Window{5, 5});
  for (mop::Grid<double>* g : {&field.a, &field.b, &field.c, &field.d}) {
    double saved = g->at(2, 2);
    g->at(2, 2) += 1e-3;
    auto rep = mop::check_curvature(field);
    CHECK(!rep.pass);
    CHECK(mop::to_double(rep.max_residual) > 1e-4);
    g->at(2, 2) = saved;
  }
}

TEST_CASE("vanishing c-d denominator is flagged") {
  auto field = mop::family_field<double>(meixner_spec(), Window{3, 3});
  field.d.at(1, 1) = field.c.at(1, 1);
  CHECK_THROWS_AS(mop::check_curvature(field), mop::DegenerateDenominator);
}

TEST_CASE("degeneracy scan: meixner D = -8/(beta+n+m), hermite D = 0") {
  auto mx = mop::degeneracy_scan(mop::family_field<double>(meixner_spec(), Window{4, 4}));
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) {
      CHECK(mx.is_defined(n, m));
      CHECK(mx.is_nondegenerate(n, m));
      CHECK(mx.values.at(n, m) == doctest::Approx(-8.0 / (1 + n + m)).epsilon(1e-12));
    }

  mop::FamilySpec h;
  h.c1 = 0;
  h.c2 = 2;
  auto hd = mop::degeneracy_scan(mop::family_field<double>(h, Window{4, 4}));
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) {
      CHECK(hd.is_defined(n, m));
      CHECK(!hd.is_nondegenerate(n, m));
      CHECK(hd.values.at(n, m) == doctest::Approx(0.0));
    }
}

TEST_CASE("local system determinant equals the closed-form D") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    double ra = unif(rng), rb = unif(rng);
    CHECK(mop::reconstruction_determinant(ra, rb) ==
          doctest::Approx(-4 * (ra + rb) + 8).epsilon(1e-10));
  }
}

TEST_CASE("reconstruct_cd recovers meixner c,d from (q,a,b)") {
  auto field = mop::family_field<double>(meixner_spec(), Window{4, 4});
  mop::Grid<double> q(field.window);
  for (int n = 0; n <= 4; ++n)
    for (int m = 0; m <= 4; ++m) q.at(n, m) = field.q(n, m);

  auto rec = mop::reconstruct_cd(q, field.a, field.b, field.window);
  CHECK(mop::to_double(rec.consistency) < 1e-12);
  for (int n = 0; n <= 4; ++n)
    for (int m = 0; m <= 4; ++m) {
      const bool corner = (n == 4 && m == 4);
      CHECK(rec.known[static_cast<std::size_t>(m * 5 + n)] == (corner ? 0 : 1));
      if (corner) continue;
      CHECK(rec.c.at(n, m) == doctest::Approx(field.c.at(n, m)).epsilon(1e-10));
      CHECK(rec.d.at(n, m) == doctest::Approx(field.d.at(n, m)).epsilon(1e-10));
    }
}

TEST_CASE("reconstruct_cd fails on degenerate families") {
  for (auto kind : {mop::FamilyKind::hermite, mop::FamilyKind::constant_toy}) {
    mop::FamilySpec spec;
    spec.kind = kind;
    spec.c1 = 0;
    spec.c2 = 2;
    auto field = mop::family_field<double>(spec, Window{3, 3});
    mop::Grid<double> q(field.window);
    for (int n = 0; n <= 3; ++n)
      for (int m = 0; m <= 3; ++m) q.at(n, m) = field.q(n, m);
    CHECK_THROWS_AS(mop::reconstruct_cd(q, field.a, field.b, field.window),
                    mop::DegenerateSystem);
  }
}

TEST_CASE("reconstruct_cd flags inconsistent overlapping data") {
  auto field = mop::family_field<double>(meixner_spec(), Window{4, 4});
  mop::Grid<double> q(field.window);
  for (int n = 0; n <= 4; ++n)
    for (int m = 0; m <= 4; ++m) q.at(n, m) = field.q(n, m);
  q.at(2, 2) += 0.1;  // poisons every cell touching (2,2) differently
  CHECK_THROWS_AS(mop::reconstruct_cd(q, field.a, field.b, field.window),
                  mop::InconsistentOverlap);
}

TEST_CASE("symmetrizability verdicts per family") {
  auto mx = mop::check_symmetrizable(mop::family_field<double>(meixner_spec(), Window{4, 4}));
  CHECK(mx.symmetrizable);

  mop::FamilySpec lag;
  lag.kind = mop::FamilyKind::laguerre1;
  lag.alpha1 = 0;
  lag.alpha2 = 0.4;
  auto lg = mop::check_symmetrizable(mop::family_field<double>(lag, Window{4, 4}));
  CHECK(!lg.symmetrizable);
  // (c-d)_{n+1,m} - (c-d)_{n,m+1} = 2 identically for Laguerre-I.
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) CHECK(lg.residuals.at(n, m) == doctest::Approx(2.0));
}
