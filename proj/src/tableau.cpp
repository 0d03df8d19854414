#include "zsfast/tableau.hpp"

#include <cmath>

#include "zsfast/errors.hpp"
#include "zsfast/roots.hpp"

namespace zsfast {

namespace {

Rational R(long long p, long long q = 1) { return Rational(p) / Rational(q); }

double to_d(const Rational& r) { return r.convert_to<double>(); }

long long to_ll(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) != 1) throw CatalogError("non-integral node index");
  return numerator(r).convert_to<long long>();
}

}  // namespace

bool ButcherTableau::explicit_method() const {
  for (int i = 0; i < stages(); ++i)
    for (int j = i; j < stages(); ++j)
      if (A_exact[i][j] != 0) return false;
  return true;
}

ButcherTableau make_tableau(std::string name, std::vector<std::vector<Rational>> A, std::vector<Rational> b,
                            std::vector<Rational> c, int order) {
  const std::size_t s = b.size();
  if (s == 0 || A.size() != s || c.size() != s) throw CatalogError(name + ": inconsistent tableau shape");
  for (auto& row : A)
    if (row.size() != s) throw CatalogError(name + ": A must be square");
  Rational sb = 0;
  for (auto& x : b) sb += x;
  if (sb != 1) throw CatalogError(name + ": weights do not sum to 1");
  ButcherTableau t;
  t.name = std::move(name);
  t.order = order;
  t.A.assign(s, std::vector<double>(s));
  t.b.resize(s);
  t.c.resize(s);
  using boost::multiprecision::denominator;
  boost::multiprecision::cpp_int lcm = 1;
  for (std::size_t i = 0; i < s; ++i) {
    if (c[i] < 0 || c[i] > 1) throw CatalogError(t.name + ": nodes must lie in [0,1]");
    lcm = boost::multiprecision::lcm(lcm, denominator(c[i]));
    for (std::size_t j = 0; j < s; ++j) t.A[i][j] = to_d(A[i][j]);
    t.b[i] = to_d(b[i]);
    t.c[i] = to_d(c[i]);
  }
  t.nu = lcm.convert_to<int>();
  for (std::size_t i = 0; i < s; ++i) t.n.push_back(static_cast<int>(to_ll(c[i] * Rational(t.nu))));
  t.A_exact = std::move(A);
  t.b_exact = std::move(b);
  t.c_exact = std::move(c);
  return t;
}

ButcherTableau collocation_tableau(int s) {
  if (s < 2) throw CatalogError("collocation needs at least 2 stages");
  std::vector<Rational> c(static_cast<std::size_t>(s));
  for (int k = 0; k < s; ++k) c[static_cast<std::size_t>(k)] = R(k, s - 1);
  std::vector<std::vector<Rational>> A(static_cast<std::size_t>(s), std::vector<Rational>(static_cast<std::size_t>(s)));
  for (int k = 0; k < s; ++k) {
    // Monomial coefficients of the Lagrange basis polynomial L_k.
    std::vector<Rational> L{Rational(1)};
    for (int m = 0; m < s; ++m) {
      if (m == k) continue;
      Rational d = c[k] - c[m];
      std::vector<Rational> next(L.size() + 1, Rational(0));
      for (std::size_t p = 0; p < L.size(); ++p) {
        next[p + 1] += L[p] / d;
        next[p] -= L[p] * c[m] / d;
      }
      L = std::move(next);
    }
    for (int j = 0; j < s; ++j) {
      Rational x = c[j], xp = x, acc = 0;
      for (std::size_t p = 0; p < L.size(); ++p) {
        acc += L[p] * xp / Rational(static_cast<long long>(p + 1));
        xp *= x;
      }
      A[j][k] = acc;
    }
  }
  std::vector<Rational> b = A.back();
  int order = s % 2 == 0 ? s : s + 1;
  return make_tableau("colloc" + std::to_string(s), std::move(A), std::move(b), std::move(c), order);
}

ButcherTableau tableau(RkMethod m, int stages) {
  switch (m) {
    case RkMethod::IM:
      return make_tableau("im", {{R(1, 2)}}, {R(1)}, {R(1, 2)}, 2);
    case RkMethod::LobattoIIIA2:
      return make_tableau("lobatto3a2", {{R(0), R(0)}, {R(1, 2), R(1, 2)}}, {R(1, 2), R(1, 2)}, {R(0), R(1)}, 2);
    case RkMethod::LobattoIIIB2:
      return make_tableau("lobatto3b2", {{R(1, 2), R(0)}, {R(1, 2), R(0)}}, {R(1, 2), R(1, 2)}, {R(0), R(1)}, 2);
    case RkMethod::RK3:
      return make_tableau("rk3", {{R(0), R(0), R(0)}, {R(1, 2), R(0), R(0)}, {R(-1), R(2), R(0)}},
                          {R(1, 6), R(2, 3), R(1, 6)}, {R(0), R(1, 2), R(1)}, 3);
    case RkMethod::LobattoIIIA4:
      return make_tableau("lobatto3a4",
                          {{R(0), R(0), R(0)}, {R(5, 24), R(1, 3), R(-1, 24)}, {R(1, 6), R(2, 3), R(1, 6)}},
                          {R(1, 6), R(2, 3), R(1, 6)}, {R(0), R(1, 2), R(1)}, 4);
    case RkMethod::LobattoIIIB4:
      return make_tableau("lobatto3b4",
                          {{R(1, 6), R(-1, 6), R(0)}, {R(1, 6), R(1, 3), R(0)}, {R(1, 6), R(5, 6), R(0)}},
                          {R(1, 6), R(2, 3), R(1, 6)}, {R(0), R(1, 2), R(1)}, 4);
    case RkMethod::RK4:
      return make_tableau("rk4",
                          {{R(0), R(0), R(0), R(0)},
                           {R(1, 2), R(0), R(0), R(0)},
                           {R(0), R(1, 2), R(0), R(0)},
                           {R(0), R(0), R(1), R(0)}},
                          {R(1, 6), R(1, 3), R(1, 3), R(1, 6)}, {R(0), R(1, 2), R(1, 2), R(1)}, 4);
    case RkMethod::RK6: {
      Rational z = 0;
      return make_tableau("rk6",
                          {{z, z, z, z, z, z},
                           {R(1, 4), z, z, z, z, z},
                           {R(1, 8), R(1, 8), z, z, z, z},
                           {z, z, R(1, 2), z, z, z},
                           {R(3, 16), R(-3, 8), R(3, 8), R(9, 16), z, z},
                           {R(-3, 7), R(8, 7), R(6, 7), R(-12, 7), R(8, 7), z}},
                          {R(7, 90), z, R(16, 45), R(2, 15), R(16, 45), R(7, 90)},
                          {z, R(1, 4), R(1, 4), R(1, 2), R(3, 4), R(1)}, 5);
    }
    case RkMethod::Collocation:
      return collocation_tableau(stages);
  }
  throw CatalogError("unknown Runge-Kutta method");
}

// ---------------------------------------------------------------------------

bool satisfies_root_condition(const std::vector<double>& alpha, double tol) {
  std::vector<cplx> c(alpha.begin(), alpha.end());
  std::vector<cplx> r = poly_roots(c);
  for (std::size_t i = 0; i < r.size(); ++i) {
    double m = std::abs(r[i]);
    if (m > 1.0 + tol) return false;
    if (m < 1.0 - 1e-6) continue;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (j != i && std::abs(r[i] - r[j]) < 1e-6) return false;
  }
  return true;
}

LmmCoefficients lmm_coefficients(LmmFamily f, int m) {
  LmmCoefficients L;
  L.family = f;
  auto scaled = [](std::vector<double> v, double d) {
    for (auto& x : v) x /= d;
    return v;
  };
  auto adams_alpha = [](int steps) {
    std::vector<double> a(static_cast<std::size_t>(steps + 1), 0.0);
    a[static_cast<std::size_t>(steps)] = 1.0;
    a[static_cast<std::size_t>(steps - 1)] = -1.0;
    return a;
  };
  switch (f) {
    case LmmFamily::ExplicitAdams: {
      static const std::vector<std::vector<double>> num = {
          {1, 0}, {-1, 3, 0}, {5, -16, 23, 0}, {-9, 37, -59, 55, 0}, {251, -1274, 2616, -2774, 1901, 0}};
      static const double den[] = {1, 2, 12, 24, 720};
      if (m < 1 || m > 5) throw CatalogError("explicit Adams is tabulated for m = 1..5");
      L.name = "ea" + std::to_string(m);
      L.alpha = adams_alpha(m);
      L.beta = scaled(num[static_cast<std::size_t>(m - 1)], den[m - 1]);
      L.order = m;
      break;
    }
    case LmmFamily::ImplicitAdams: {
      static const std::vector<std::vector<double>> num = {
          {1, 1}, {-1, 8, 5}, {1, -5, 19, 9}, {-19, 106, -264, 646, 251}};
      static const double den[] = {2, 12, 24, 720};
      if (m < 1 || m > 4) throw CatalogError("implicit Adams is tabulated for m = 1..4");
      L.name = "ia" + std::to_string(m);
      L.alpha = adams_alpha(m);
      L.beta = scaled(num[static_cast<std::size_t>(m - 1)], den[m - 1]);
      L.order = m + 1;
      break;
    }
    case LmmFamily::BDF: {
      static const std::vector<std::vector<double>> num = {{-1, 1},
                                                          {1, -4, 3},
                                                          {-2, 9, -18, 11},
                                                          {3, -16, 36, -48, 25},
                                                          {-12, 75, -200, 300, -300, 137},
                                                          {10, -72, 225, -400, 450, -360, 147}};
      static const double beta_m[] = {1.0, 2.0 / 3.0, 6.0 / 11.0, 12.0 / 25.0, 60.0 / 137.0, 60.0 / 147.0};
      if (m < 1 || m > 6) throw CatalogError("BDF is tabulated for m = 1..6");
      L.name = "bdf" + std::to_string(m);
      const auto& a = num[static_cast<std::size_t>(m - 1)];
      L.alpha = scaled(a, a.back());
      L.beta.assign(static_cast<std::size_t>(m + 1), 0.0);
      L.beta.back() = beta_m[m - 1];
      L.order = m;
      break;
    }
  }
  if (!satisfies_root_condition(L.alpha)) throw CatalogError(L.name + " violates the root condition");
  return L;
}

}  // namespace zsfast
