#include <numbers>
#include <string>

#include "doctest.h"
#include "helpers.hpp"

using namespace zsfast;
using th::rand_c;
using th::rand_vec;

namespace {

const cplx I(0.0, 1.0);

const char* kRkNames[] = {"im", "lobatto3a2", "lobatto3b2", "rk3", "lobatto3a4", "lobatto3b4", "rk4", "rk6", "colloc4",
                          "colloc5"};

std::vector<cplx> partner(const std::vector<cplx>& Q, int kappa) {
  std::vector<cplx> R(Q.size());
  for (std::size_t i = 0; i < Q.size(); ++i) R[i] = static_cast<double>(kappa) * std::conj(Q[i]);
  return R;
}

cplx coeff(const StepTM& t, int i, int j, int p) { return t.M.get(i, j).coeff(p); }

// sigma2 conj(M(conj ζ)) sigma2 for kappa = -1, sigma1 version for +1.
Mat2 reflect(const Mat2& m, int kappa) {
  Mat2 c{std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])};
  if (kappa == -1) return {c[3], -c[2], -c[1], c[0]};
  return {c[3], c[2], c[1], c[0]};
}

// Numerator at ζ in the frame the scheme is written in.
Mat2 numerator(const StepTM& t, cplx zeta, double h) {
  cplx w = std::exp(2.0 * I * zeta * h / static_cast<double>(t.nu));
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[2 * i + j] = eval_poly(t.M.get(i, j), w);
  return r;
}

cplx denom(const StepTM& t, cplx zeta, double h) {
  return eval_poly(t.denom, std::exp(2.0 * I * zeta * h / static_cast<double>(t.nu)));
}

}  // namespace

TEST_CASE("midpoint step") {
  StepTM z = step_tm_im(0.0, -1);
  CHECK(th::mat_diff(z.ratio(2.0), Mat2{1.0, 0.0, 0.0, 2.0}) == 0.0);
  CHECK(z.zpow == -1);

  StepTM t = step_tm_im(1.0, -1);
  CHECK(std::abs(eval_poly(t.denom, 1.0) - 1.25) < 1e-15);
  Mat2 r = t.ratio(1.0);
  CHECK(std::abs(r[0] - 0.6) < 1e-15);
  CHECK(std::abs(r[1] - 0.8) < 1e-15);
  CHECK(std::abs(r[2] + 0.8) < 1e-15);
  CHECK(std::abs(r[3] - 0.6) < 1e-15);
  CHECK(std::abs(coeff(t, 0, 1, 1) / t.denom.coeff(0) - 0.8) < 1e-15);
  for (double th : {0.1, 1.0, 2.5}) {
    Mat2 u = t.ratio(std::polar(1.0, th));
    CHECK(std::abs(std::norm(u[0]) + std::norm(u[2]) - 1.0) < 1e-14);
  }
  CHECK_THROWS_AS(step_tm_im(2.0, 1), StepSizeError);
}

TEST_CASE("two-stage Lobatto steps") {
  for (auto v : {LobattoVariant::IIIA, LobattoVariant::IIIB}) {
    StepTM z = step_tm_two_stage(0.0, 0.0, v, -1);
    CHECK(th::mat_diff(z.ratio(3.0), Mat2{1.0, 0.0, 0.0, 3.0}) == 0.0);
  }
  StepTM a = step_tm_two_stage(1.0, 0.0, LobattoVariant::IIIA, 1);
  StepTM b = step_tm_two_stage(1.0, 0.0, LobattoVariant::IIIB, 1);
  CHECK(a.denom.coeff(0) == cplx(1.0));
  CHECK(std::abs(b.denom.coeff(0) - 0.75) < 1e-15);
  const cplx w = cplx(0.3, 0.7);
  for (auto* t : {&a, &b}) {
    cplx d = t->denom.coeff(0);
    Mat2 m = t->ratio(w);
    CHECK(std::abs(m[0] * d - 1.0) < 1e-15);
    CHECK(std::abs(m[1] * d - 0.5) < 1e-15);
    CHECK(std::abs(m[2] * d - 0.5 * w) < 1e-15);
    CHECK(std::abs(m[3] * d - w) < 1e-15);
  }
  CHECK_THROWS_AS(step_tm_two_stage(0.0, 2.0, LobattoVariant::IIIA, 1), StepSizeError);
  CHECK_NOTHROW(step_tm_two_stage(0.0, 2.0, LobattoVariant::IIIB, 1));
}

TEST_CASE("RK3 and RK4 steps") {
  StepTM z3 = step_tm_rk3(0.0, 0.0, 0.0, -1), z4 = step_tm_rk4(0.0, 0.0, 0.0, -1);
  for (auto* t : {&z3, &z4}) {
    CHECK(t->zpow == -2);
    CHECK(t->nu == 2);
    CHECK(th::mat_diff(t->ratio(1.5), Mat2{1.0, 0.0, 0.0, 2.25}) == 0.0);
  }
  const cplx q(0.3, -0.2);
  const cplx r = -std::conj(q);
  StepTM t = step_tm_rk4(0.0, q, 0.0, -1);
  CHECK(std::abs(coeff(t, 0, 0, 0) - (1.0 + q * r / 6.0)) < 1e-16);
  CHECK(std::abs(coeff(t, 0, 1, 1) - 2.0 / 3.0 * q) < 1e-16);
  CHECK(std::abs(coeff(t, 0, 1, 0)) == 0.0);
  CHECK(std::abs(coeff(t, 0, 1, 2)) == 0.0);
}

TEST_CASE("order-4 Lobatto steps") {
  for (auto v : {LobattoVariant::IIIA, LobattoVariant::IIIB}) {
    StepTM z = step_tm_lobatto4(0.0, 0.0, 0.0, v, -1);
    CHECK(th::mat_diff(z.ratio(0.7), Mat2{1.0, 0.0, 0.0, 0.49}) < 1e-16);
    CHECK(std::abs(eval_poly(z.denom, 0.7) - 1.0) < 1e-16);
  }
  const cplx q(0.4, 0.1);
  const cplx r = -std::conj(q);
  StepTM t = step_tm_lobatto4(0.0, q, 0.0, LobattoVariant::IIIA, -1);
  for (cplx w : {cplx(1.0), cplx(0.2, 0.9), cplx(-2.0, 0.5)})
    CHECK(std::abs(eval_poly(t.denom, w) - (1.0 - q * r / 9.0)) < 1e-15);
}

TEST_CASE("free propagation for every scheme") {
  for (const char* name : kRkNames) {
    Scheme s = make_scheme(name);
    StepTM t = build_step(s, std::vector<cplx>(s.tab.n.size(), 0.0), -1);
    CHECK(t.zpow == -t.nu);
    cplx w(0.6, -0.3);
    Mat2 m = t.ratio(w);
    CHECK(th::mat_diff(m, Mat2{1.0, 0.0, 0.0, std::pow(w, t.nu)}) < 1e-14);
  }
}

TEST_CASE("RK6 uses four substeps") {
  StepTM z = step_tm_rk6(std::vector<cplx>(6, 0.0), -1);
  CHECK(z.nu == 4);
  CHECK(z.zpow == -4);
  CHECK(th::mat_diff(z.ratio(1.1), Mat2{1.0, 0.0, 0.0, std::pow(1.1, 4)}) < 1e-13);
  std::mt19937_64 rng(12);
  ButcherTableau tab = tableau(RkMethod::RK6);
  auto Q = rand_vec(rng, 6, 0.3);
  StepTM t = step_tm_rk6(Q, -1);
  for (int k = 0; k < 16; ++k) {
    double h = 0.1;
    cplx zeta = std::numbers::pi * t.nu / h * k / 16.0;
    CHECK(th::mat_diff(t.eval(zeta, h), th::rk_step_oracle(tab, Q, partner(Q, -1), zeta, h)) < 1e-11);
  }
}

TEST_CASE("every step matches the stage-equation solve") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const char* name : kRkNames) {
    for (const char* prefix : {"", "generic-"}) {
      Scheme s = make_scheme(std::string(prefix) + name);
      for (int kappa : {-1, 1}) {
        for (int trial = 0; trial < 8; ++trial) {
          std::vector<cplx> Qn = rand_vec(rng, static_cast<std::size_t>(s.tab.nu + 1), 0.2);
          std::vector<cplx> Q(s.tab.n.size());
          for (std::size_t k = 0; k < Q.size(); ++k) Q[k] = Qn[static_cast<std::size_t>(s.tab.n[k])];
          const double h = 0.05;
          cplx zeta(20.0 * u(rng), 4.0 * u(rng));
          StepTM t = build_step(s, Q, kappa);
          Mat2 want = th::rk_step_oracle(s.tab, Q, partner(Q, kappa), zeta, h);
          INFO(s.id, " kappa ", kappa);
          CHECK(th::mat_diff(t.eval(zeta, h), want) < 1e-12 * th::mat_norm(want));
        }
      }
    }
  }
}

TEST_CASE("symmetry relations") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const char* name : kRkNames) {
    Scheme s = make_scheme(name);
    for (int kappa : {-1, 1}) {
      auto Q = rand_vec(rng, s.tab.n.size(), 0.2);
      StepTM t = build_step(s, Q, kappa);
      const double h = 0.07;
      for (int k = 0; k < 16; ++k) {
        cplx zeta(10.0 * u(rng), 2.0 * u(rng));
        Mat2 lhs = reflect(numerator(t, std::conj(zeta), h), kappa);
        Mat2 rhs = numerator(t, zeta, h);
        for (auto& x : rhs) x *= std::exp(-2.0 * I * zeta * h);
        INFO(s.id, " kappa ", kappa);
        CHECK(th::mat_diff(lhs, rhs) < 1e-12 * th::mat_norm(rhs));
        CHECK(std::abs(std::conj(denom(t, std::conj(zeta), h)) - denom(t, zeta, h)) <
              1e-12 * std::abs(denom(t, zeta, h)));
      }
    }
  }
}

TEST_CASE("multistep blocks satisfy the symmetry relations") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const char* name : {"ea1", "ea3", "ea5", "ia1", "ia2", "ia4", "bdf2", "bdf6"}) {
    Scheme s = make_scheme(name);
    for (int kappa : {-1, 1}) {
      auto Q = rand_vec(rng, static_cast<std::size_t>(s.lmm.steps() + 1), 0.2);
      LmmBlock blk = lmm_block_tm(s.lmm, Q, kappa);
      CHECK(std::abs(blk.theta.imag()) < 1e-15);
      const double h = 0.07;
      for (int k = 0; k < 16; ++k) {
        cplx zeta(10.0 * u(rng), 2.0 * u(rng));
        cplx w = std::exp(2.0 * I * zeta * h), wc = std::exp(2.0 * I * std::conj(zeta) * h);
        for (int j = 0; j < s.lmm.steps(); ++j) {
          Mat2 a = {}, b = {};
          for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) {
              a[2 * p + q] = eval_poly(blk.blocks[j].get(p, q), wc);
              b[2 * p + q] = eval_poly(blk.blocks[j].get(p, q), w) * std::exp(-2.0 * I * zeta * h * (j + 1.0));
            }
          INFO(name, " kappa ", kappa, " block ", j + 1);
          CHECK(th::mat_diff(reflect(a, kappa), b) < 1e-12 * (1.0 + th::mat_norm(b)));
        }
      }
    }
  }
}

TEST_CASE("Wronskian recurrence and norm identity on the real axis") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const char* name : kRkNames) {
    Scheme s = make_scheme(name);
    for (int kappa : {-1, 1}) {
      auto Q = rand_vec(rng, s.tab.n.size(), 0.2);
      StepTM t = build_step(s, Q, kappa);
      const double h = 0.05;
      for (int k = 0; k < 8; ++k) {
        double xi = 30.0 * u(rng);
        Mat2 m = numerator(t, xi, h);
        cplx d = denom(t, xi, h);
        cplx lhs = (m[0] * m[3] - m[1] * m[2]) * std::exp(-2.0 * I * xi * h) / (d * d);
        cplx rhs = (std::norm(m[0]) - kappa * std::norm(m[1])) / (d * d);
        INFO(name, " kappa ", kappa);
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
        if (kappa == -1) {
          Mat2 T = t.eval(xi, h);
          double fro2 = 0.0;
          for (auto x : T) fro2 += std::norm(x);
          // T is a multiple of a unitary, so both singular values equal sqrt|det T|.
          CHECK(std::abs(fro2 - 2.0 * std::abs(T[0] * T[3] - T[1] * T[2])) < 1e-12 * fro2);
        }
      }
    }
  }
}

TEST_CASE("generic builder reproduces the closed forms") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const char* name : {"im", "lobatto3a2", "lobatto3b2", "rk3", "lobatto3a4", "lobatto3b4", "rk4"}) {
    Scheme c = make_scheme(name), g = make_scheme(std::string("generic-") + name);
    CHECK(c.closed_form);
    CHECK_FALSE(g.closed_form);
    for (int trial = 0; trial < 20; ++trial) {
      int kappa = trial % 2 ? 1 : -1;
      std::vector<cplx> Qn = rand_vec(rng, static_cast<std::size_t>(c.tab.nu + 1), 0.3);
      std::vector<cplx> Q(c.tab.n.size());
      for (std::size_t k = 0; k < Q.size(); ++k) Q[k] = Qn[static_cast<std::size_t>(c.tab.n[k])];
      StepTM a = build_step(c, Q, kappa), b = build_step(g, Q, kappa);
      const double h = 0.1;
      cplx zeta(15.0 * u(rng), 3.0 * u(rng));
      Mat2 ta = a.eval(zeta, h), tb = b.eval(zeta, h);
      INFO(name);
      CHECK(th::mat_diff(ta, tb) < 1e-12 * th::mat_norm(ta));
    }
  }
}

TEST_CASE("transpose symmetry of the determinant entries") {
  std::mt19937_64 rng(18);
  for (RkMethod m : {RkMethod::IM, RkMethod::LobattoIIIA2, RkMethod::RK3, RkMethod::LobattoIIIA4, RkMethod::RK6}) {
    GenericRkBuilder b(tableau(m));
    const int s = b.tableau().stages();
    auto Q = rand_vec(rng, static_cast<std::size_t>(s), 0.3), R = rand_vec(rng, static_cast<std::size_t>(s), 0.3);
    StepTM t = b.build(Q, R), ts = b.build(R, Q);
    const int nu = t.nu;
    for (cplx w : {cplx(0.8, 0.3), cplx(-1.2, 0.4), cplx(0.1, -1.5)}) {
      // Swapping Q and R reverses the orientation: M11(w) = w^nu M22'(1/w), M21(w) = w^nu M12'(1/w).
      cplx wn = std::pow(w, nu);
      Mat2 x = t.ratio(w), y = ts.ratio(1.0 / w);
      cplx d = eval_poly(t.denom, w), ds = eval_poly(ts.denom, 1.0 / w);
      CHECK(std::abs(d - ds) < 1e-12 * std::abs(d));
      CHECK(std::abs(x[0] - wn * y[3]) < 1e-12 * std::abs(x[0]));
      CHECK(std::abs(x[2] - wn * y[1]) < 1e-12 * (1.0 + std::abs(x[2])));
      CHECK(std::abs(x[1] - wn * y[2]) < 1e-12 * (1.0 + std::abs(x[1])));
    }
  }
}

TEST_CASE("multistep block layout") {
  LmmCoefficients ea1 = lmm_coefficients(LmmFamily::ExplicitAdams, 1);
  LmmBlock z = lmm_block_tm(ea1, {0.0, 0.0}, -1);
  CHECK(z.theta == cplx(1.0));
  CHECK(z.Mcal.rows() == 2);
  cplx w(0.4, 0.2);
  auto v = eval_matrix(z.Mcal, w);
  CHECK(std::abs(v[0] - 1.0) < 1e-16);
  CHECK(std::abs(v[1]) < 1e-16);
  CHECK(std::abs(v[2]) < 1e-16);
  CHECK(std::abs(v[3] - w) < 1e-16);

  // Trapezoidal rule, m = 1, substituted by hand.
  LmmCoefficients ia1 = lmm_coefficients(LmmFamily::ImplicitAdams, 1);
  cplx Q0(0.2, 0.1), Q1(-0.3, 0.2);
  cplx R0 = -std::conj(Q0), R1 = -std::conj(Q1);
  LmmBlock t = lmm_block_tm(ia1, {Q0, Q1}, -1);
  CHECK(std::abs(t.theta - (1.0 - 0.25 * Q1 * R1)) < 1e-16);
  const Mat2 want{-1.0 - 0.25 * Q1 * R0 * w, -0.5 * Q0 - 0.5 * Q1 * w, -0.5 * R1 - 0.5 * R0 * w,
                  -0.25 * Q0 * R1 - w};
  Mat2 got;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) got[2 * p + q] = eval_poly(t.blocks[0].get(p, q), w);
  CHECK(th::mat_diff(got, want) < 1e-15);

  // Block companion layout for m = 3.
  LmmCoefficients bdf3 = lmm_coefficients(LmmFamily::BDF, 3);
  std::mt19937_64 rng(19);
  LmmBlock b3 = lmm_block_tm(bdf3, rand_vec(rng, 4, 0.2), 1);
  CHECK(b3.Mcal.rows() == 6);
  auto e = eval_matrix(b3.Mcal, w);
  for (int i = 2; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      cplx want_ij = (j == i - 2) ? b3.theta : cplx(0.0);
      CHECK(std::abs(e[static_cast<std::size_t>(i * 6 + j)] - want_ij) < 1e-16);
    }
  CHECK_THROWS_AS(lmm_block_tm(ia1, {0.0, 2.0}, 1), StepSizeError);
  CHECK_THROWS_AS(lmm_block_tm(ia1, {0.0}, 1), SizeError);
}

TEST_CASE("multistep blocks match the frame-shifted recursion") {
  // M^(k)(w) = z^k Theta (I - beta_m hU_m)^{-1} exp(-i sigma3 ζ h k) (alpha_s I - beta_s hU_s).
  std::mt19937_64 rng(20);
  for (const char* name : {"ea2", "ea4", "ia3", "bdf4"}) {
    Scheme s = make_scheme(name);
    const int m = s.lmm.steps();
    auto Q = rand_vec(rng, static_cast<std::size_t>(m + 1), 0.2);
    auto R = partner(Q, -1);
    LmmBlock blk = lmm_block_tm(s.lmm, Q, -1);
    const double h = 0.05;
    const cplx zeta(3.0, 0.5), z = std::exp(I * zeta * h);
    const double bm = s.lmm.beta[m];
    cplx th = 1.0 - bm * bm * Q[m] * R[m];
    Mat2 inv{1.0 / th, bm * Q[m] / th, bm * R[m] / th, 1.0 / th};
    for (int k = 1; k <= m; ++k) {
      int sidx = m - k;
      double a = s.lmm.alpha[sidx], b = s.lmm.beta[sidx];
      Mat2 right{a, -b * Q[sidx], -b * R[sidx], a};
      cplx e1 = std::pow(z, -k), e2 = std::pow(z, k);
      Mat2 mid{e1 * right[0], e1 * right[1], e2 * right[2], e2 * right[3]};
      Mat2 want{inv[0] * mid[0] + inv[1] * mid[2], inv[0] * mid[1] + inv[1] * mid[3], inv[2] * mid[0] + inv[3] * mid[2],
                inv[2] * mid[1] + inv[3] * mid[3]};
      for (auto& x : want) x *= std::pow(z, k) * th;
      Mat2 got;
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) got[2 * p + q] = eval_poly(blk.blocks[k - 1].get(p, q), z * z);
      INFO(name, " k=", k);
      CHECK(th::mat_diff(got, want) < 1e-14 * (1.0 + th::mat_norm(want)));
    }
  }
}

TEST_CASE("midpoint layer peeling") {
  CHECK(recover_potential_im(0.0, -1) == cplx(0.0));
  for (int kappa : {-1, 1}) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 20; ++i) {
      cplx Q = rand_c(rng, 0.5);
      if (kappa == 1 && std::abs(Q) > 1.5) continue;
      cplx R = static_cast<double>(kappa) * std::conj(Q);
      cplx theta = 1.0 - 0.25 * Q * R;
      cplx G = Q / (2.0 - theta);
      cplx H = static_cast<double>(kappa) * std::conj(G);
      CHECK(std::abs(recover_potential_im(H, kappa) - R) < 1e-14);
    }
  }
  {
    cplx Q = 1.0, R = -1.0, theta = 1.25;
    cplx H = -std::conj(Q / (2.0 - theta));
    CHECK(std::abs(recover_potential_im(H, -1) - R) < 1e-14);
  }
  CHECK(std::abs(recover_potential_im(0.6, 1) - 2.0 / 3.0) < 1e-15);
  CHECK_THROWS_AS(recover_potential_im(1.0, 1), DomainError);
}

TEST_CASE("scheme catalog") {
  for (const char* name : {"im", "rk4", "rk6", "colloc3", "ea5", "ia4", "bdf6", "generic-rk4", "generic-colloc4"})
    CHECK_NOTHROW(make_scheme(name));
  try {
    make_scheme("rk5");
    FAIL("expected CatalogError");
  } catch (const CatalogError& e) {
    std::string msg = e.what();
    CHECK(msg.find("im") != std::string::npos);
    CHECK(msg.find("bdf6") != std::string::npos);
  }
  CHECK_THROWS_AS(make_scheme("colloc1"), CatalogError);
  CHECK_THROWS_AS(make_scheme("ea6"), CatalogError);
  CHECK_THROWS_AS(make_scheme("generic-ea2"), CatalogError);
  CHECK(make_scheme("im").poly_nu == 1);
  CHECK(make_scheme("rk6").poly_nu == 4);
  CHECK(make_scheme("ia2").is_lmm());
}
