#include <doctest.h>

#include <cmath>

#include "mop/families.hpp"
#include "mop/operators.hpp"

using mop::Window;

namespace {

mop::FamilySpec hermite_spec(double c1 = 0, double c2 = 2) {
  mop::FamilySpec s;
  s.c1 = c1;
  s.c2 = c2;
  return s;
}

mop::FamilySpec meixner_spec() {
  mop::FamilySpec s;
  s.kind = mop::FamilyKind::meixner1;
  s.beta = 1;
  s.c1 = 0.5;
  s.c2 = 1.0 / 3;
  return s;
}

}  // namespace

TEST_CASE("H1/H2/Delta stencils carry the recurrence data") {
  auto field = mop::family_field<double>(hermite_spec(), Window{3, 3});
  auto h1 = mop::build_h1(field);
  auto h2 = mop::build_h2(field);
  auto delta = mop::build_delta(field);
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) {
      if (n < 3) CHECK(h1.east.at(n, m) == 1.0);
      CHECK(h1.center.at(n, m) == field.c.at(n, m));
      CHECK(h2.center.at(n, m) == field.d.at(n, m));
      CHECK(delta.center.at(n, m) ==
            doctest::Approx((field.c.at(n, m) + field.d.at(n, m)) / 2));
      // Delta = (H1 + H2)/2 entrywise.
      CHECK(delta.west.at(n, m) == field.a.at(n, m));
      CHECK(delta.south.at(n, m) == field.b.at(n, m));
    }
}

TEST_CASE("finite sections: layout and matrix shape") {
  auto field = mop::family_field<double>(hermite_spec(), Window{2, 2});
  auto a = mop::to_matrix(mop::build_h1(field));
  REQUIRE(a.n == 9);
  // Site (1,1) has flat index 4: east neighbor (2,1) index 5, west (0,1)
  // index 3, north (1,2) index 7, south (1,0) index 1.
  CHECK(a.at(4, 5) == 1.0);
  CHECK(a.at(4, 3) == field.a.at(1, 1));
  CHECK(a.at(4, 1) == field.b.at(1, 1));
  CHECK(a.at(4, 7) == 0.0);  // H1 has no north coupling
  CHECK(a.at(4, 4) == field.c.at(1, 1));
}

TEST_CASE("eigencheck: recurrence operators reproduce z pi(z)") {
  for (auto spec : {hermite_spec(), meixner_spec()}) {
    auto field = mop::family_field<double>(spec, Window{5, 5});
    auto table = mop::generate_table(field, Window{5, 5}).table;
    std::vector<double> zs{0.0, 1.0, -1.0, 0.5, 2.0};
    for (auto builder : {&mop::build_h1<double>, &mop::build_h2<double>, &mop::build_delta<double>}) {
      auto rep = mop::eigencheck(builder(field), table, zs);
      CHECK(mop::to_double(rep.max_residual) < 1e-10);
    }
  }
}

TEST_CASE("boundary jacobi and its moments (hermite axis 1)") {
  auto field = mop::family_field<double>(hermite_spec(1.0, 3.0), Window{5, 5});
  auto t = mop::boundary_jacobi(field, 1);
  REQUIRE(t.size() == 6);
  for (int k = 0; k <= 5; ++k) CHECK(t.diag[static_cast<std::size_t>(k)] == 0.5);  // c1/2
  for (int k = 1; k <= 5; ++k) CHECK(t.sub[static_cast<std::size_t>(k - 1)] == k / 2.0);

  auto s = mop::boundary_moments(t, 8);
  auto ref = mop::hermite_moments<double>(1.0, 8);
  for (int j = 0; j <= 8; ++j)
    CHECK(s.at(j) == doctest::Approx(ref.at(j)).epsilon(1e-12));

  CHECK_THROWS_AS(mop::boundary_moments(t, 11), mop::DomainError);  // beyond 2*size-2
  CHECK_THROWS_AS(mop::boundary_jacobi(field, 3), mop::DomainError);
}

TEST_CASE("boundary jacobi axis 2 encodes the second measure") {
  auto field = mop::family_field<double>(meixner_spec(), Window{4, 4});
  auto t = mop::boundary_jacobi(field, 2);
  auto s = mop::boundary_moments(t, 6);
  auto ref = mop::meixner_moments<double>(1.0, 1.0 / 3, 6);
  for (int j = 0; j <= 6; ++j)
    CHECK(s.at(j) == doctest::Approx(ref.at(j)).epsilon(1e-10));
}

TEST_CASE("symmetrizer: hermite h = sqrt(n! m!)") {
  auto field = mop::family_field<double>(hermite_spec(), Window{4, 4});
  auto sym = mop::build_symmetrizer(field);
  double fact[6] = {1, 1, 2, 6, 24, 120};
  for (int n = 0; n <= 4; ++n)
    for (int m = 0; m <= 4; ++m)
      CHECK(sym.h.at(n, m) == doctest::Approx(std::sqrt(fact[n] * fact[m])).epsilon(1e-13));
}

TEST_CASE("delta_s: hermite stencil closed form and symmetry") {
  auto field = mop::family_field<double>(hermite_spec(), Window{4, 4});
  auto dec = mop::build_delta_s(field);
  for (int n = 0; n <= 4; ++n)
    for (int m = 0; m <= 4; ++m) {
      if (n < 4)
        CHECK(dec.delta_s.east.at(n, m) == doctest::Approx(std::sqrt(n + 1.0) / 2));
      CHECK(dec.delta_s.center.at(n, m) == doctest::Approx((0.0 + 2.0) / 4));
      // J1 + J2 recomposes Delta_s.
      CHECK(dec.j1.center.at(n, m) + dec.j2.center.at(n, m) ==
            doctest::Approx(dec.delta_s.center.at(n, m)));
    }
  auto a = mop::to_matrix(dec.delta_s);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) CHECK(std::abs(a.at(i, j) - a.at(j, i)) < 1e-14);
}

TEST_CASE("delta_s: meixner east coefficient closed form") {
  auto field = mop::family_field<double>(meixner_spec(), Window{4, 4});
  auto dec = mop::build_delta_s(field);
  const double c1 = 0.5, beta = 1;
  for (int n = 0; n < 4; ++n)
    for (int m = 0; m <= 4; ++m) {
      const double expect =
          std::sqrt(c1 * (n + 1) * (n + m + beta)) / (std::sqrt(2.0) * (1 - c1));
      CHECK(dec.delta_s.east.at(n, m) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("laguerre cannot be symmetrized") {
  mop::FamilySpec lag;
  lag.kind = mop::FamilyKind::laguerre1;
  lag.alpha1 = 0;
  lag.alpha2 = 0.4;
  auto field = mop::family_field<double>(lag, Window{3, 3});
  CHECK_THROWS_AS(mop::build_symmetrizer(field), mop::NotSymmetrizable);
  CHECK_THROWS_AS(mop::build_delta_s(field), mop::NotSymmetrizable);
}

TEST_CASE("scaled eigencheck through the symmetrizer") {
  auto field = mop::family_field<double>(meixner_spec(), Window{5, 5});
  auto table = mop::generate_table(field, Window{5, 5}).table;
  auto dec = mop::build_delta_s(field);
  std::vector<double> zs{0.0, 1.0, 2.0};
  auto rep = mop::eigencheck(dec.delta_s, table, zs, true, &dec.symmetrizer);
  CHECK(mop::to_double(rep.max_residual) < 1e-9);
  const mop::Symmetrizer<double>* missing = nullptr;
  CHECK_THROWS_AS(mop::eigencheck(dec.delta_s, table, zs, true, missing), mop::DomainError);
}
