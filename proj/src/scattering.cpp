#include "zsfast/scattering.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "zsfast/errors.hpp"
#include "zsfast/serial.hpp"

namespace zsfast {

namespace {

const cplx I(0.0, 1.0);

struct MultistepSetup {
  std::vector<cplx> Q;  // h*q at segment nodes 0..N
  int pad = 0;
  long long N = 0;
  double T1 = 0.0;
  long long ell_minus = 0;
};

MultistepSetup multistep_setup(const SignalGrid& g, const Scheme& s) {
  MultistepSetup ms;
  ms.pad = multistep_samples(g, s, ms.Q);
  ms.N = g.N_seg + ms.pad;
  ms.T1 = g.T1 - ms.pad * g.h;
  ms.ell_minus = g.ell_minus + ms.pad;
  return ms;
}

std::vector<cplx> window(const std::vector<cplx>& Q, long long k, int m) {
  std::vector<cplx> w(static_cast<std::size_t>(m + 1));
  for (int j = 0; j <= m; ++j) {
    long long idx = k - m + j;
    w[static_cast<std::size_t>(j)] = idx >= 0 ? Q[static_cast<std::size_t>(idx)] : cplx(0.0);
  }
  return w;
}

}  // namespace

cplx ScatteringPoly::z_of(cplx zeta) const { return std::exp(I * zeta * h / static_cast<double>(nu)); }
cplx ScatteringPoly::w_of(cplx zeta) const { return std::exp(2.0 * I * zeta * h / static_cast<double>(nu)); }

cplx ScatteringPoly::a(cplx zeta) const {
  cplx w = w_of(zeta);
  return std::exp(I * zeta * h * static_cast<double>(exp_a) / static_cast<double>(nu)) * eval_poly(P1, w) /
         eval_poly(D, w);
}

cplx ScatteringPoly::b(cplx zeta) const {
  cplx w = w_of(zeta);
  return std::exp(I * zeta * h * static_cast<double>(exp_b) / static_cast<double>(nu)) * eval_poly(P2, w) /
         eval_poly(D, w);
}

cplx ScatteringPoly::a_dot(cplx zeta) const {
  cplx w = w_of(zeta);
  cplx p = eval_poly(P1, w), dp = eval_poly_derivative(P1, w);
  cplx d = eval_poly(D, w), dd = eval_poly_derivative(D, w);
  cplx dw = 2.0 * I * h / static_cast<double>(nu) * w;
  cplx zf = std::exp(I * zeta * h * static_cast<double>(exp_a) / static_cast<double>(nu));
  cplx dz = I * h * static_cast<double>(exp_a) / static_cast<double>(nu);
  return zf * ((dp * d - p * dd) / (d * d) * dw + dz * p / d);
}

double ScatteringPoly::strip_halfwidth() const { return std::numbers::pi / (2.0 * h); }

int multistep_samples(const SignalGrid& g, const Scheme& s, std::vector<cplx>& Q) {
  const int m = s.lmm.steps();
  Q.resize(static_cast<std::size_t>(g.N_seg + 1));
  for (long long j = 0; j <= g.N_seg; ++j) Q[static_cast<std::size_t>(j)] = g.h * g.at(j, 0);
  if (Q[0] == cplx(0.0)) return 0;
  Q.insert(Q.begin(), static_cast<std::size_t>(m), cplx(0.0));
  return m;
}

std::vector<StepTM> build_steps(const SignalGrid& g, const Scheme& s, long long shift) {
  if (g.nu % s.sample_nu != 0)
    throw GridError("scheme " + s.id + " needs grid nu divisible by " + std::to_string(s.sample_nu) + " (got " +
                    std::to_string(g.nu) + ")");
  std::vector<StepTM> steps(static_cast<std::size_t>(g.N_seg));
  std::string err;
  bool failed = false;
#pragma omp parallel for schedule(static)
  for (long long n = 0; n < g.N_seg; ++n) {
    try {
      steps[static_cast<std::size_t>(n)] = build_step(s, stage_samples(g, s, n, shift), g.kappa);
    } catch (const StepSizeError& e) {
#pragma omp critical(zsfast_step_error)
      {
        if (!failed) err = "step " + std::to_string(n) + ": " + e.what();
        failed = true;
      }
    }
  }
  if (failed) throw StepSizeError(err);
  return steps;
}

ScatteringPoly compute_scattering(const SignalGrid& g, const std::string& scheme) {
  return compute_scattering(g, make_scheme(scheme));
}

ScatteringPoly compute_scattering(const SignalGrid& g, const Scheme& s, const ScatterOptions& opt) {
  ScatteringPoly sp;
  sp.h = g.h;
  sp.nu = s.poly_nu;
  sp.kappa = g.kappa;
  sp.scheme_id = s.id;
  sp.T2 = g.T2;
  sp.ell_plus = g.ell_plus;

  if (s.is_lmm()) {
    if (g.boundary == Boundary::Periodic)
      throw UnsupportedError("multistep schemes handle vanishing boundary conditions only");
    const int m = s.lmm.steps();
    MultistepSetup ms = multistep_setup(g, s);
    std::vector<PolyMatrix> F(static_cast<std::size_t>(ms.N));
    std::string err;
    bool failed = false;
#pragma omp parallel for schedule(static)
    for (long long k = 1; k <= ms.N; ++k) {
      try {
        LmmBlock blk = lmm_block_tm(s.lmm, window(ms.Q, k, m), g.kappa);
        F[static_cast<std::size_t>(k - 1)] = std::move(blk.Mcal.scale(1.0 / blk.theta));
      } catch (const StepSizeError& e) {
#pragma omp critical(zsfast_step_error)
        {
          if (!failed) err = "step " + std::to_string(k) + ": " + e.what();
          failed = true;
        }
      }
    }
    if (failed) throw StepSizeError(err);

    std::vector<LaurentPoly> P0(static_cast<std::size_t>(2 * m), LaurentPoly::constant(0.0));
    for (int b = 0; b < m; ++b) P0[static_cast<std::size_t>(2 * b)] = LaurentPoly::constant(1.0);
    if (opt.serial) {
      auto P = serial::chain_vector(F, P0);
      sp.P1 = P[0];
      sp.P2 = P[1];
    } else {
      TreeOptions topt;
      topt.trim = [](PolyMatrix& M, std::size_t span) {
        M.clip([span](int i, int j) { return static_cast<int>(span) + j / 2 - i / 2; });
      };
      PolyMatrix cum = tree_product(F, topt);
      LaurentPoly p1 = LaurentPoly::constant(0.0), p2 = LaurentPoly::constant(0.0);
      for (int b = 0; b < m; ++b) {
        p1 = p1 + cum.get(0, 2 * b);
        p2 = p2 + cum.get(1, 2 * b);
      }
      sp.P1 = p1;
      sp.P2 = p2;
    }
    sp.D = LaurentPoly::constant(1.0);
    sp.N_seg = ms.N;
    sp.T1 = ms.T1;
    sp.ell_minus = ms.ell_minus;
    sp.exp_a = 0;
    sp.exp_b = -2 * g.ell_plus;
    return sp;
  }

  std::vector<StepTM> steps = build_steps(g, s);
  bool const_den = true;
  for (auto& t : steps)
    if (!t.denom.is_constant()) const_den = false;
  std::vector<PolyMatrix> Ms(steps.size());
  std::vector<LaurentPoly> Ds;
  if (!const_den) Ds.resize(steps.size());
  for (std::size_t n = 0; n < steps.size(); ++n) {
    if (steps[n].zpow != -steps[n].nu) throw Error("unexpected z power in step factor");
    Ms[n] = std::move(steps[n].M);
    if (const_den)
      Ms[n].scale(1.0 / steps[n].denom.coeff(0));
    else
      Ds[n] = std::move(steps[n].denom);
  }
  if (opt.serial) {
    auto P = serial::chain_vector(Ms, {LaurentPoly::constant(1.0), LaurentPoly::constant(0.0)});
    sp.P1 = P[0];
    sp.P2 = P[1];
    sp.D = const_den ? LaurentPoly::constant(1.0) : serial::chain_scalar(Ds);
  } else {
    PolyMatrix cum = tree_product(Ms);
    sp.P1 = cum.get(0, 0);
    sp.P2 = cum.get(1, 0);
    sp.D = const_den ? LaurentPoly::constant(1.0) : tree_product(Ds);
  }
  sp.N_seg = g.N_seg;
  sp.T1 = g.T1;
  sp.ell_minus = g.ell_minus;
  sp.exp_a = 0;
  sp.exp_b = std::llround(2.0 * s.tau * s.poly_nu) - 2LL * s.poly_nu * g.ell_plus;
  return sp;
}

ContinuousSpectrum continuous_spectrum(const ScatteringPoly& sp, std::size_t Nprime) {
  if (!is_pow2(Nprime)) throw SizeError("Nprime must be a power of two");
  const std::size_t F = Nprime * static_cast<std::size_t>(sp.nu);
  std::size_t need = std::max({sp.P1.size(), sp.P2.size(), sp.D.size()});
  if (F < need)
    throw SizeError("Nprime=" + std::to_string(Nprime) + " too small: nu*Nprime must cover " + std::to_string(need) +
                    " coefficients");
  auto v1 = eval_unit_circle(sp.P1, F), v2 = eval_unit_circle(sp.P2, F), vd = eval_unit_circle(sp.D, F);
  ContinuousSpectrum cs;
  cs.xi.resize(Nprime);
  cs.a.resize(Nprime);
  cs.b.resize(Nprime);
  cs.rho.resize(Nprime);
  const long long Np = static_cast<long long>(Nprime), FF = static_cast<long long>(F);
  const long long period = 2 * FF;  // z^(2F) = 1 on this grid
  for (long long k = 0; k < Np; ++k) {
    long long off = k - Np / 2;
    std::size_t idx = static_cast<std::size_t>(((off % FF) + FF) % FF);
    cs.xi[static_cast<std::size_t>(k)] = std::numbers::pi / sp.h * (static_cast<double>(k) / Np - 0.5);
    // z = exp(i*pi*off/F); reduce exponents modulo 2F before forming angles.
    auto zp = [&](long long e) {
      long long r = static_cast<long long>((static_cast<__int128>(e) * off) % period);
      return std::polar(1.0, std::numbers::pi * static_cast<double>(r) / static_cast<double>(FF));
    };
    cplx a = zp(sp.exp_a) * v1[idx] / vd[idx];
    cplx b = zp(sp.exp_b) * v2[idx] / vd[idx];
    cs.a[static_cast<std::size_t>(k)] = a;
    cs.b[static_cast<std::size_t>(k)] = b;
    cs.rho[static_cast<std::size_t>(k)] =
        std::abs(a) < 1e-12 ? cplx(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN())
                            : b / a;
  }
  return cs;
}

JostResult sequential_jost(const SignalGrid& g, const Scheme& s, cplx zeta) {
  JostResult r;
  cplx v1, v2;
  if (s.is_lmm()) {
    if (g.boundary == Boundary::Periodic)
      throw UnsupportedError("multistep schemes handle vanishing boundary conditions only");
    const int m = s.lmm.steps();
    MultistepSetup ms = multistep_setup(g, s);
    const cplx w = std::exp(2.0 * I * zeta * g.h);
    // State (v_k, v_{k-1}, ..., v_{k-m+1}) in the co-moving frame.
    std::vector<cplx> P(static_cast<std::size_t>(2 * m), 0.0), next(P.size());
    for (int b = 0; b < m; ++b) P[static_cast<std::size_t>(2 * b)] = 1.0;
    for (long long k = 1; k <= ms.N; ++k) {
      LmmBlock blk = lmm_block_tm(s.lmm, window(ms.Q, k, m), g.kappa);
      cplx x1 = 0.0, x2 = 0.0;
      for (int j = 0; j < m; ++j) {
        Mat2 mk;
        const PolyMat2& B = blk.blocks[static_cast<std::size_t>(j)];
        for (int a = 0; a < 2; ++a)
          for (int c = 0; c < 2; ++c) mk[static_cast<std::size_t>(2 * a + c)] = eval_poly(B.get(a, c), w);
        cplx u1 = P[static_cast<std::size_t>(2 * j)], u2 = P[static_cast<std::size_t>(2 * j + 1)];
        x1 -= mk[0] * u1 + mk[1] * u2;
        x2 -= mk[2] * u1 + mk[3] * u2;
      }
      next[0] = x1 / blk.theta;
      next[1] = x2 / blk.theta;
      for (std::size_t i = 2; i < P.size(); ++i) next[i] = P[i - 2];
      P.swap(next);
    }
    // Undo the frame: v_N = exp(-iζT1) z^{-N} P_N with z = exp(iζh).
    cplx f = std::exp(-I * zeta * ms.T1) * std::exp(-I * zeta * g.h * static_cast<double>(ms.N));
    v1 = f * P[0];
    v2 = f * P[1];
  } else {
    return sequential_jost(g, build_steps(g, s), zeta);
  }
  r.phi1 = v1;
  r.phi2 = v2;
  r.a = v1 * std::exp(I * zeta * g.T2);
  r.b = v2 * std::exp(-I * zeta * g.T2);
  return r;
}

JostResult sequential_jost(const SignalGrid& g, const std::vector<StepTM>& steps, cplx zeta) {
  cplx v1 = std::exp(-I * zeta * g.T1), v2 = 0.0;
  for (auto& t : steps) {
    Mat2 T = t.eval(zeta, g.h);
    cplx n1 = T[0] * v1 + T[1] * v2;
    cplx n2 = T[2] * v1 + T[3] * v2;
    v1 = n1;
    v2 = n2;
  }
  JostResult r;
  r.phi1 = v1;
  r.phi2 = v2;
  r.a = v1 * std::exp(I * zeta * g.T2);
  r.b = v2 * std::exp(-I * zeta * g.T2);
  return r;
}

cplx bidirectional_b(const SignalGrid& g, const std::vector<StepTM>& steps, cplx zeta) {
  const std::size_t N = steps.size();
  std::vector<Mat2> T(N);
  for (std::size_t n = 0; n < N; ++n) T[n] = steps[n].eval(zeta, g.h);
  std::vector<std::array<cplx, 2>> phi(N + 1), psi(N + 1);
  phi[0] = {std::exp(-I * zeta * g.T1), 0.0};
  for (std::size_t n = 0; n < N; ++n) {
    const Mat2& t = T[n];
    phi[n + 1] = {t[0] * phi[n][0] + t[1] * phi[n][1], t[2] * phi[n][0] + t[3] * phi[n][1]};
  }
  psi[N] = {0.0, std::exp(I * zeta * g.T2)};
  for (std::size_t n = N; n-- > 0;) {
    const Mat2& t = T[n];
    cplx det = t[0] * t[3] - t[1] * t[2];
    const auto& v = psi[n + 1];
    psi[n] = {(t[3] * v[0] - t[1] * v[1]) / det, (-t[2] * v[0] + t[0] * v[1]) / det};
  }
  auto nrm = [](const std::array<cplx, 2>& v) { return std::hypot(std::abs(v[0]), std::abs(v[1])); };
  std::vector<double> fmax(N + 1), bmax(N + 1);
  for (std::size_t n = 0; n <= N; ++n) fmax[n] = std::max(n ? fmax[n - 1] : 0.0, nrm(phi[n]));
  for (std::size_t n = N + 1; n-- > 0;) bmax[n] = std::max(n < N ? bmax[n + 1] : 0.0, nrm(psi[n]));
  std::size_t best = N;
  double qbest = -1.0;
  for (std::size_t n = 0; n <= N; ++n) {
    double qn = std::min(nrm(phi[n]) / fmax[n], nrm(psi[n]) / bmax[n]);
    if (qn > qbest) qbest = qn, best = n;
  }
  const auto &f = phi[best], &p = psi[best];
  return (std::conj(p[0]) * f[0] + std::conj(p[1]) * f[1]) / (std::norm(p[0]) + std::norm(p[1]));
}

}  // namespace zsfast
