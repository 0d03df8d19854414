#include "doctest.h"
#include "helpers.hpp"

using namespace zsfast;

namespace {

Rational r(long long p, long long q = 1) { return Rational(p) / Rational(q); }

void check_row_sums(const ButcherTableau& t) {
  Rational sb = 0;
  for (auto& b : t.b_exact) sb += b;
  CHECK(sb == 1);
  for (std::size_t i = 0; i < t.A_exact.size(); ++i) {
    Rational s = 0;
    for (auto& a : t.A_exact[i]) s += a;
    CHECK(s == t.c_exact[i]);
  }
}

}  // namespace

TEST_CASE("midpoint tableau") {
  ButcherTableau t = tableau(RkMethod::IM);
  CHECK(t.A_exact[0][0] == r(1, 2));
  CHECK(t.b_exact[0] == 1);
  CHECK(t.c_exact[0] == r(1, 2));
  CHECK(t.nu == 2);
  CHECK(t.n[0] == 1);
  CHECK(t.order == 2);
}

TEST_CASE("classical RK4 tableau") {
  ButcherTableau t = tableau(RkMethod::RK4);
  const Rational b[] = {r(1, 6), r(1, 3), r(1, 3), r(1, 6)};
  const Rational c[] = {0, r(1, 2), r(1, 2), 1};
  for (int i = 0; i < 4; ++i) {
    CHECK(t.b_exact[i] == b[i]);
    CHECK(t.c_exact[i] == c[i]);
  }
  CHECK(t.explicit_method());
  CHECK(t.nu == 2);
}

TEST_CASE("Kutta order 5 tableau") {
  ButcherTableau t = tableau(RkMethod::RK6);
  const Rational b[] = {r(7, 90), 0, r(16, 45), r(2, 15), r(16, 45), r(7, 90)};
  for (int i = 0; i < 6; ++i) CHECK(t.b_exact[i] == b[i]);
  CHECK(t.nu == 4);
  CHECK(t.order == 5);
  CHECK(t.explicit_method());
}

TEST_CASE("collocation tableaux") {
  ButcherTableau c5 = collocation_tableau(5);
  const Rational last[] = {r(7, 90), r(16, 45), r(2, 15), r(16, 45), r(7, 90)};
  for (int k = 0; k < 5; ++k) {
    CHECK(c5.A_exact[4][k] == last[k]);
    CHECK(c5.b_exact[k] == last[k]);
    CHECK(c5.A_exact[0][k] == 0);
  }
  CHECK(c5.order == 6);
  CHECK(c5.nu == 4);

  ButcherTableau c2 = collocation_tableau(2), l2 = tableau(RkMethod::LobattoIIIA2);
  CHECK(c2.A_exact == l2.A_exact);
  CHECK(c2.b_exact == l2.b_exact);
  CHECK(c2.A_exact[1][0] == r(1, 2));

  ButcherTableau c3 = collocation_tableau(3), l4 = tableau(RkMethod::LobattoIIIA4);
  CHECK(c3.A_exact == l4.A_exact);
  CHECK(c3.b_exact == l4.b_exact);
  CHECK(c3.order == 4);

  for (int s = 2; s <= 8; ++s) check_row_sums(collocation_tableau(s));
  CHECK_THROWS_AS(collocation_tableau(1), CatalogError);
}

TEST_CASE("catalog consistency") {
  for (RkMethod m : {RkMethod::IM, RkMethod::LobattoIIIA2, RkMethod::LobattoIIIB2, RkMethod::RK3,
                     RkMethod::LobattoIIIA4, RkMethod::LobattoIIIB4, RkMethod::RK4, RkMethod::RK6}) {
    ButcherTableau t = tableau(m);
    Rational sb = 0;
    for (auto& b : t.b_exact) sb += b;
    CHECK(sb == 1);
    for (std::size_t k = 0; k < t.c_exact.size(); ++k) CHECK(t.c_exact[k] * t.nu == t.n[k]);
  }
  CHECK_THROWS_AS(make_tableau("bad", {{r(1, 2)}}, {r(1, 2)}, {r(1, 2)}, 1), CatalogError);
  CHECK_THROWS_AS(make_tableau("bad", {{0}}, {1}, {2}, 1), CatalogError);
}

TEST_CASE("multistep coefficient tables") {
  LmmCoefficients bdf2 = lmm_coefficients(LmmFamily::BDF, 2);
  CHECK(bdf2.alpha[0] == doctest::Approx(1.0 / 3));
  CHECK(bdf2.alpha[1] == doctest::Approx(-4.0 / 3));
  CHECK(bdf2.alpha[2] == 1.0);
  CHECK(bdf2.beta[2] == doctest::Approx(2.0 / 3));
  CHECK(bdf2.beta[0] == 0.0);

  LmmCoefficients ea1 = lmm_coefficients(LmmFamily::ExplicitAdams, 1);
  CHECK(ea1.beta[0] == 1.0);
  CHECK(ea1.beta[1] == 0.0);
  CHECK_FALSE(ea1.implicit_method());

  LmmCoefficients ia1 = lmm_coefficients(LmmFamily::ImplicitAdams, 1);
  CHECK(ia1.beta[0] == 0.5);
  CHECK(ia1.beta[1] == 0.5);
  CHECK(ia1.order == 2);

  for (auto [f, lo, hi] : {std::tuple{LmmFamily::ExplicitAdams, 1, 5}, std::tuple{LmmFamily::ImplicitAdams, 1, 4},
                           std::tuple{LmmFamily::BDF, 1, 6}}) {
    for (int m = lo; m <= hi; ++m) {
      LmmCoefficients c = lmm_coefficients(f, m);
      CHECK(c.steps() == m);
      CHECK(c.alpha.back() == 1.0);
      CHECK(satisfies_root_condition(c.alpha));
      double sa = 0, sb = 0, sda = 0;
      for (int s = 0; s <= m; ++s) {
        sa += c.alpha[s];
        sb += c.beta[s];
        sda += s * c.alpha[s];
      }
      // Consistency: rho(1) = 0, rho'(1) = sigma(1).
      CHECK(std::abs(sa) < 1e-13);
      CHECK(std::abs(sda - sb) < 1e-13);
    }
  }
  CHECK_THROWS(lmm_coefficients(LmmFamily::BDF, 7));
  CHECK_THROWS(lmm_coefficients(LmmFamily::ExplicitAdams, 0));
}

TEST_CASE("root condition") {
  CHECK(satisfies_root_condition({-1.0, 1.0}));
  CHECK_FALSE(satisfies_root_condition({-2.0, 1.0}));
  CHECK_FALSE(satisfies_root_condition({1.0, -2.0, 1.0}));
  CHECK(satisfies_root_condition({0.25, 0.0, 1.0}));
}
