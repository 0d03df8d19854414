#include "zsfast/schemes.hpp"

#include <cmath>
#include <sstream>

#include "zsfast/errors.hpp"

namespace zsfast {

namespace {

cplx partner(cplx Q, int kappa) { return static_cast<double>(kappa) * std::conj(Q); }

void check_nonzero(cplx d, const char* what) {
  if (std::abs(d) < 1e-14)
    throw StepSizeError(std::string(what) + " vanishes (|" + what + "| = " + std::to_string(std::abs(d)) +
                        "); reduce the step size h");
}

LaurentPoly lp(std::initializer_list<cplx> c, int base = 0) { return LaurentPoly(std::vector<cplx>(c), base); }

}  // namespace

Mat2 StepTM::ratio(cplx w) const {
  cplx d = eval_poly(denom, w);
  if (std::abs(d) < 1e-300 || !std::isfinite(std::abs(d))) throw StepSizeError("step denominator vanishes at this zeta; reduce h");
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[static_cast<std::size_t>(2 * i + j)] = eval_poly(M.get(i, j), w) / d;
  return r;
}

Mat2 StepTM::eval(cplx zeta, double h) const {
  const cplx I(0.0, 1.0);
  cplx w = std::exp(2.0 * I * zeta * h / static_cast<double>(nu));
  Mat2 r = ratio(w);
  cplx zf = std::exp(I * zeta * h * static_cast<double>(zpow) / static_cast<double>(nu));
  cplx e = std::exp(2.0 * I * zeta * tau * h);
  return {r[0] * zf, r[1] * zf / e, r[2] * zf * e, r[3] * zf};
}

StepTM step_tm_im(cplx Q, int kappa) {
  cplx R = partner(Q, kappa);
  cplx theta = 1.0 - 0.25 * Q * R;
  check_nonzero(theta, "Theta");
  StepTM t;
  t.M = PolyMat2::from_2x2(lp({2.0 - theta}), lp({Q}, 1), lp({R}), lp({2.0 - theta}, 1));
  t.denom = LaurentPoly::constant(theta);
  t.zpow = -1;
  t.nu = 1;
  t.tau = 0.5;
  t.scheme_id = "im";
  return t;
}

StepTM step_tm_two_stage(cplx Q0, cplx Q1, LobattoVariant v, int kappa) {
  cplx R0 = partner(Q0, kappa), R1 = partner(Q1, kappa);
  cplx delta = v == LobattoVariant::IIIA ? 1.0 - 0.25 * Q1 * R1 : 1.0 - 0.25 * Q0 * R0;
  check_nonzero(delta, "Delta");
  StepTM t;
  t.M = PolyMat2::from_2x2(lp({1.0, 0.25 * Q1 * R0}), lp({0.5 * Q0, 0.5 * Q1}), lp({0.5 * R1, 0.5 * R0}),
                           lp({0.25 * Q0 * R1, 1.0}));
  t.denom = LaurentPoly::constant(delta);
  t.zpow = -1;
  t.nu = 1;
  t.scheme_id = v == LobattoVariant::IIIA ? "lobatto3a2" : "lobatto3b2";
  return t;
}

StepTM step_tm_rk3(cplx Q0, cplx Qh, cplx Q1, int kappa) {
  cplx R0 = partner(Q0, kappa), Rh = partner(Qh, kappa), R1 = partner(Q1, kappa);
  StepTM t;
  t.M = PolyMat2::from_2x2(lp({1.0, (Qh * R0 + Q1 * Rh) / 3.0, -Q1 * R0 / 6.0}),
                           lp({Q0 / 6.0, 2.0 / 3.0 * Qh + Q0 * Q1 * Rh / 6.0, Q1 / 6.0}),
                           lp({R1 / 6.0, 2.0 / 3.0 * Rh + Qh * R0 * R1 / 6.0, R0 / 6.0}),
                           lp({-Q0 * R1 / 6.0, (Q0 * Rh + Qh * R1) / 3.0, 1.0}));
  t.zpow = -2;
  t.nu = 2;
  t.scheme_id = "rk3";
  return t;
}

StepTM step_tm_rk4(cplx Q0, cplx Qh, cplx Q1, int kappa) {
  cplx R0 = partner(Q0, kappa), Rh = partner(Qh, kappa), R1 = partner(Q1, kappa);
  cplx xi = 1.0 + 0.5 * Qh * Rh;
  StepTM t;
  t.M = PolyMat2::from_2x2(lp({1.0 + Qh * Rh / 6.0, (Qh * R0 + Q1 * Rh) / 6.0, Qh * Q1 * R0 * Rh / 24.0}),
                           lp({Q0 * xi / 6.0, 2.0 / 3.0 * Qh, Q1 * xi / 6.0}),
                           lp({R1 * xi / 6.0, 2.0 / 3.0 * Rh, R0 * xi / 6.0}),
                           lp({Q0 * Qh * Rh * R1 / 24.0, (Q0 * Rh + Qh * R1) / 6.0, 1.0 + Qh * Rh / 6.0}));
  t.zpow = -2;
  t.nu = 2;
  t.scheme_id = "rk4";
  return t;
}

StepTM step_tm_lobatto4(cplx Q0, cplx Qh, cplx Q1, LobattoVariant v, int kappa) {
  cplx R0 = partner(Q0, kappa), Rh = partner(Qh, kappa), R1 = partner(Q1, kappa);
  PolyMat2 left = PolyMat2::from_2x2(lp({1.0, Q1 * Rh / 12.0}), lp({Qh / 3.0, Q1 / 6.0}), lp({R1 / 6.0, Rh / 3.0}),
                                     lp({R1 * Qh / 12.0, 1.0}));
  PolyMat2 right = PolyMat2::from_2x2(lp({1.0, R0 * Qh / 12.0}), lp({Q0 / 6.0, Qh / 3.0}), lp({Rh / 3.0, R0 / 6.0}),
                                      lp({Q0 * Rh / 12.0, 1.0}));
  StepTM t;
  t.M = polymat_mul_schoolbook(left, right);
  LaurentPoly d;
  if (v == LobattoVariant::IIIA) {
    LaurentPoly f1 = lp({R1 * Qh / 12.0, 1.0}, -1), f2 = lp({1.0, Q1 * Rh / 12.0});
    LaurentPoly g1 = lp({2.0 * Qh, Q1}, -1), g2 = lp({R1, 2.0 * Rh});
    d = poly_mul(f1, f2) - (1.0 / 36.0) * poly_mul(g1, g2);
  } else {
    LaurentPoly f1 = lp({Q0 * Rh / 12.0, 1.0}, -1), f2 = lp({1.0, Qh * R0 / 12.0});
    LaurentPoly g1 = lp({Q0, 2.0 * Qh}), g2 = lp({2.0 * Rh, R0}, -1);
    d = poly_mul(f1, f2) - (1.0 / 36.0) * poly_mul(g1, g2);
  }
  t.denom = d;
  t.zpow = -2;
  t.nu = 2;
  t.scheme_id = v == LobattoVariant::IIIA ? "lobatto3a4" : "lobatto3b4";
  return t;
}

cplx recover_potential_im(cplx H, int kappa) {
  double s = 1.0 - static_cast<double>(kappa) * std::norm(H);
  if (kappa == 1 && std::abs(H) >= 1.0) throw DomainError("|H| must be below 1 for kappa = +1");
  return 2.0 * H / (1.0 + std::sqrt(s));
}

// ---------------------------------------------------------------------------

StepTM step_tm_generic_rk(const ButcherTableau& tab, const std::vector<cplx>& Q, int kappa) {
  return GenericRkBuilder(tab).build(Q, kappa);
}

StepTM step_tm_rk6(const std::vector<cplx>& Q, int kappa) {
  static const GenericRkBuilder b(tableau(RkMethod::RK6));
  StepTM t = b.build(Q, kappa);
  t.scheme_id = "rk6";
  return t;
}

// ---------------------------------------------------------------------------

LmmBlock lmm_block_tm(const LmmCoefficients& C, const std::vector<cplx>& Qwin, int kappa) {
  const int m = C.steps();
  if (static_cast<int>(Qwin.size()) != m + 1) throw SizeError("LMM window needs m+1 samples");
  std::vector<cplx> R(Qwin.size());
  for (std::size_t i = 0; i < Qwin.size(); ++i) R[i] = partner(Qwin[i], kappa);
  const double bm = C.beta[static_cast<std::size_t>(m)];
  const cplx Qm = Qwin[static_cast<std::size_t>(m)], Rm = R[static_cast<std::size_t>(m)];
  LmmBlock out;
  out.theta = 1.0 - bm * bm * Qm * Rm;
  check_nonzero(out.theta, "Theta");

  std::vector<LaurentPoly> e(static_cast<std::size_t>(4 * m * m), LaurentPoly::constant(0.0));
  auto put = [&](int i, int j, const LaurentPoly& p) { e[static_cast<std::size_t>(i * 2 * m + j)] = p; };
  for (int k = 1; k <= m; ++k) {
    const int s = m - k;
    const double as = C.alpha[static_cast<std::size_t>(s)], bs = C.beta[static_cast<std::size_t>(s)];
    const cplx Qs = Qwin[static_cast<std::size_t>(s)], Rs = R[static_cast<std::size_t>(s)];
    LaurentPoly m11 = LaurentPoly::constant(as) + LaurentPoly::monomial(-bm * bs * Qm * Rs, k);
    LaurentPoly m12 = LaurentPoly::constant(-bs * Qs) + LaurentPoly::monomial(bm * as * Qm, k);
    LaurentPoly m21 = LaurentPoly::constant(bm * as * Rm) + LaurentPoly::monomial(-bs * Rs, k);
    LaurentPoly m22 = LaurentPoly::constant(-bm * bs * Qs * Rm) + LaurentPoly::monomial(as, k);
    out.blocks.push_back(PolyMat2::from_2x2(m11, m12, m21, m22));
    const int c = 2 * (k - 1);
    put(0, c, -1.0 * m11);
    put(0, c + 1, -1.0 * m12);
    put(1, c, -1.0 * m21);
    put(1, c + 1, -1.0 * m22);
  }
  for (int b = 1; b < m; ++b) {
    put(2 * b, 2 * (b - 1), LaurentPoly::constant(out.theta));
    put(2 * b + 1, 2 * (b - 1) + 1, LaurentPoly::constant(out.theta));
  }
  out.Mcal = PolyMatrix::from_entries(2 * m, 2 * m, e);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Named {
  const char* name;
  RkMethod method;
};
constexpr Named kRk[] = {{"im", RkMethod::IM},           {"lobatto3a2", RkMethod::LobattoIIIA2},
                         {"lobatto3b2", RkMethod::LobattoIIIB2}, {"rk3", RkMethod::RK3},
                         {"lobatto3a4", RkMethod::LobattoIIIA4}, {"lobatto3b4", RkMethod::LobattoIIIB4},
                         {"rk4", RkMethod::RK4},         {"rk6", RkMethod::RK6}};

bool parse_suffix(const std::string& name, const std::string& prefix, int& k) {
  if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return false;
  std::string rest = name.substr(prefix.size());
  for (char ch : rest)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  k = std::stoi(rest);
  return true;
}

}  // namespace

std::vector<std::string> scheme_catalog() {
  std::vector<std::string> out;
  for (auto& n : kRk) out.emplace_back(n.name);
  out.emplace_back("collocN (N>=2)");
  for (int m = 1; m <= 5; ++m) out.push_back("ea" + std::to_string(m));
  for (int m = 1; m <= 4; ++m) out.push_back("ia" + std::to_string(m));
  for (int m = 1; m <= 6; ++m) out.push_back("bdf" + std::to_string(m));
  out.emplace_back("generic-<rk name>");
  return out;
}

std::string scheme_catalog_text() {
  std::ostringstream os;
  bool first = true;
  for (auto& n : scheme_catalog()) {
    os << (first ? "" : ", ") << n;
    first = false;
  }
  return os.str();
}

Scheme make_scheme(const std::string& name) {
  Scheme s;
  s.id = name;
  int k = 0;
  std::string base = name;
  bool force_generic = false;
  if (base.rfind("generic-", 0) == 0) {
    base = base.substr(8);
    force_generic = true;
  }
  auto rk_setup = [&](ButcherTableau tab, RkMethod m, bool closed) {
    s.kind = SchemeKind::RungeKutta;
    s.method = m;
    s.tab = std::move(tab);
    s.order = s.tab.order;
    s.sample_nu = s.tab.nu;
    s.closed_form = closed && !force_generic;
    if (s.closed_form) {
      s.poly_nu = (m == RkMethod::IM || m == RkMethod::LobattoIIIA2 || m == RkMethod::LobattoIIIB2) ? 1 : 2;
      s.tau = m == RkMethod::IM ? 0.5 : 0.0;
    } else {
      s.builder = std::make_shared<GenericRkBuilder>(s.tab);
      s.poly_nu = s.tab.nu;
    }
  };
  for (auto& n : kRk) {
    if (base == n.name) {
      rk_setup(tableau(n.method), n.method, n.method != RkMethod::RK6);
      return s;
    }
  }
  if (parse_suffix(base, "colloc", k)) {
    if (k < 2) throw CatalogError("collocation needs at least 2 stages");
    rk_setup(collocation_tableau(k), RkMethod::Collocation, false);
    return s;
  }
  if (!force_generic) {
    LmmFamily fam;
    bool lmm = true;
    if (parse_suffix(base, "ea", k))
      fam = LmmFamily::ExplicitAdams;
    else if (parse_suffix(base, "ia", k))
      fam = LmmFamily::ImplicitAdams;
    else if (parse_suffix(base, "bdf", k))
      fam = LmmFamily::BDF;
    else
      lmm = false;
    if (lmm) {
      s.kind = SchemeKind::Multistep;
      s.lmm = lmm_coefficients(fam, k);
      s.order = s.lmm.order;
      s.poly_nu = 1;
      s.sample_nu = 1;
      return s;
    }
  }
  throw CatalogError("unknown scheme '" + name + "'; available: " + scheme_catalog_text());
}

std::vector<cplx> stage_samples(const SignalGrid& g, const Scheme& s, long long n, long long shift) {
  if (s.is_lmm()) throw UnsupportedError("stage samples are defined for Runge-Kutta schemes only");
  if (g.nu % s.sample_nu != 0)
    throw GridError("scheme " + s.id + " needs grid nu divisible by " + std::to_string(s.sample_nu));
  const long long seg = ((n + shift) % g.N_seg + g.N_seg) % g.N_seg;
  const int mult = g.nu / s.sample_nu;
  std::vector<cplx> Q(s.tab.n.size());
  for (std::size_t k = 0; k < Q.size(); ++k) {
    long long idx = seg * g.nu + static_cast<long long>(s.tab.n[k]) * mult;
    Q[k] = g.h * g.at_index(idx);
  }
  return Q;
}

StepTM build_step(const Scheme& s, const std::vector<cplx>& Q, int kappa) {
  if (s.is_lmm()) throw UnsupportedError("build_step is for Runge-Kutta schemes");
  if (!s.closed_form) {
    StepTM t = s.builder->build(Q, kappa);
    t.scheme_id = s.id;
    return t;
  }
  switch (s.method) {
    case RkMethod::IM:
      return step_tm_im(Q[0], kappa);
    case RkMethod::LobattoIIIA2:
      return step_tm_two_stage(Q[0], Q[1], LobattoVariant::IIIA, kappa);
    case RkMethod::LobattoIIIB2:
      return step_tm_two_stage(Q[0], Q[1], LobattoVariant::IIIB, kappa);
    case RkMethod::RK3:
      return step_tm_rk3(Q[0], Q[1], Q[2], kappa);
    case RkMethod::LobattoIIIA4:
      return step_tm_lobatto4(Q[0], Q[1], Q[2], LobattoVariant::IIIA, kappa);
    case RkMethod::LobattoIIIB4:
      return step_tm_lobatto4(Q[0], Q[1], Q[2], LobattoVariant::IIIB, kappa);
    case RkMethod::RK4:
      return step_tm_rk4(Q[0], Q[1], Q[3], kappa);
    default:
      break;
  }
  throw CatalogError("no closed form for " + s.id);
}

}  // namespace zsfast
