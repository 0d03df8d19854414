#include "zsfast/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "zsfast/errors.hpp"
#include "zsfast/roots.hpp"

namespace zsfast {

namespace {

const cplx I(0.0, 1.0);

// P1 with the base exponent cleared and exact zeros stripped.
LaurentPoly cleared(const LaurentPoly& p) {
  LaurentPoly q = p;
  q.trim();
  q.base = 0;
  return q;
}

cplx zeta_of_w(cplx w, double h, int nu) { return -I * static_cast<double>(nu) * std::log(w) / (2.0 * h); }

bool in_window(cplx zeta, double h) {
  return zeta.imag() > 0.0 && std::abs(zeta.real()) < std::numbers::pi / (2.0 * h);
}

void sort_zetas(std::vector<cplx>& z) {
  std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    return a.real() < b.real();
  });
}

}  // namespace

double eigen_residual(const ScatteringPoly& sp, cplx zeta) {
  LaurentPoly p = cleared(sp.P1);
  double mx = p.max_abs();
  if (mx == 0.0) return 0.0;
  return std::abs(eval_poly(p, sp.w_of(zeta))) / mx;
}

std::vector<cplx> find_eigenvalues(const ScatteringPoly& sp, const EigenOptions& opt) {
  LaurentPoly p = cleared(sp.P1);
  if (p.size() < 2) return {};
  if (p.size() - 1 > opt.degree_cap)
    throw DegreeCapError("a_N has degree " + std::to_string(p.size() - 1) + " above the cap " +
                         std::to_string(opt.degree_cap));
  const double mx = p.max_abs();
  const double strip = std::numbers::pi / sp.h;
  std::vector<cplx> out;
  for (cplx w : poly_roots(p.c)) {
    if (std::abs(w) < 1e-12) continue;
    cplx z0 = zeta_of_w(w, sp.h, sp.nu);
    if (!in_window(z0, sp.h)) continue;
    cplx dp = eval_poly_derivative(p, w);
    cplx w1 = dp == cplx(0.0) ? w : w - eval_poly(p, w) / dp;
    if (std::abs(w1) < 1e-12) continue;
    cplx z1 = zeta_of_w(w1, sp.h, sp.nu);
    if (std::abs(z1 - z0) > opt.spurious_move * strip) continue;
    if (!in_window(z1, sp.h)) continue;
    if (std::abs(eval_poly(p, w1)) >= opt.residual_tol * mx) continue;
    out.push_back(z1);
  }
  sort_zetas(out);
  return out;
}

std::vector<cplx> refine_eigenvalues(const ScatteringPoly& sp, const std::vector<cplx>& seeds,
                                     const EigenOptions& opt) {
  LaurentPoly p = cleared(sp.P1);
  if (p.size() < 2) return {};
  const double mx = p.max_abs();
  std::vector<cplx> out(seeds.size(), cplx(std::nan(""), 0.0));
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(seeds.size()); ++i) {
    cplx w = sp.w_of(seeds[static_cast<std::size_t>(i)]);
    bool ok = false;
    for (int it = 0; it < opt.newton_max; ++it) {
      cplx dp = eval_poly_derivative(p, w);
      if (dp == cplx(0.0)) break;
      cplx step = eval_poly(p, w) / dp;
      w -= step;
      if (std::abs(step) <= 1e-15 * std::abs(w)) {
        ok = true;
        break;
      }
    }
    if (!(std::abs(w) > 1e-12) || !std::isfinite(std::abs(w))) continue;
    if (!ok && std::abs(eval_poly(p, w)) >= opt.residual_tol * mx) continue;
    if (std::abs(eval_poly(p, w)) >= opt.residual_tol * mx) continue;
    cplx z = zeta_of_w(w, sp.h, sp.nu);
    if (in_window(z, sp.h)) out[static_cast<std::size_t>(i)] = z;
  }
  std::vector<cplx> uniq;
  for (cplx z : out) {
    if (std::isnan(z.real())) continue;
    bool dup = false;
    for (cplx u : uniq)
      if (std::abs(u - z) < 1e-9 * (1.0 + std::abs(z))) dup = true;
    if (!dup) uniq.push_back(z);
  }
  sort_zetas(uniq);
  return uniq;
}

std::vector<cplx> find_eigenvalues(const SignalGrid& g, const Scheme& s, const ScatteringPoly& sp,
                                   const EigenOptions& opt) {
  LaurentPoly p = cleared(sp.P1);
  std::size_t deg = p.size() - 1;
  if (deg <= opt.direct_degree) return find_eigenvalues(sp, opt);

  long long f = 1;
  while (deg / static_cast<std::size_t>(f) > opt.seed_degree) {
    long long nf = f * 2;
    if (g.N_seg % nf != 0 || g.ell_plus % nf != 0 || g.ell_minus % nf != 0) break;
    f = nf;
  }
  if (deg / static_cast<std::size_t>(f) > opt.seed_degree) {
    if (deg <= opt.degree_cap) return find_eigenvalues(sp, opt);
    throw DegreeCapError("a_N has degree " + std::to_string(deg) + " above the cap " +
                         std::to_string(opt.degree_cap) + " and the grid cannot be decimated for seeding");
  }
  std::vector<cplx> coarse(static_cast<std::size_t>(g.nu * (g.N_seg / f) + 1));
  for (std::size_t i = 0; i < coarse.size(); ++i) coarse[i] = g.samples[i * static_cast<std::size_t>(f)];
  SignalGrid cg = make_grid(std::move(coarse), g.T1, g.T2, g.N_seg / f, g.nu, g.kappa, g.boundary);
  ScatteringPoly csp = compute_scattering(cg, s);
  EigenOptions copt = opt;
  copt.degree_cap = std::max(opt.degree_cap, opt.seed_degree * 2);
  std::vector<cplx> seeds = find_eigenvalues(csp, copt);
  return refine_eigenvalues(sp, seeds, opt);
}

DiscreteSpectrum norming_constants(const SignalGrid& g, const Scheme& s, const std::vector<cplx>& zetas) {
  if (zetas.empty()) return {};
  return norming_constants(g, s, compute_scattering(g, s), zetas);
}

DiscreteSpectrum norming_constants(const SignalGrid& g, const Scheme& s, const ScatteringPoly& sp,
                                   const std::vector<cplx>& zetas) {
  DiscreteSpectrum ds;
  if (zetas.empty()) return ds;
  for (cplx z : zetas)
    if (!(z.imag() > 0.0) || std::abs(z.real()) >= sp.strip_halfwidth())
      throw DomainError("eigenvalue outside the upper half of the validity strip");
  std::vector<StepTM> steps;
  if (!s.is_lmm()) steps = build_steps(g, s);
  ds.pairs.resize(zetas.size());
  const double scale = cleared(sp.P1).max_abs() * 2.0 * sp.h / sp.nu;
  std::exception_ptr first;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(zetas.size()); ++i) {
    cplx z = zetas[static_cast<std::size_t>(i)];
    JostResult jr;
    try {
      if (s.is_lmm())
        jr = sequential_jost(g, s, z);
      else
        jr.b = bidirectional_b(g, steps, z);
    } catch (const Error&) {
#pragma omp critical(zsfast_norming)
      if (!first) first = std::current_exception();
      continue;
    }
    cplx ad = sp.a_dot(z);
    DiscretePair& pr = ds.pairs[static_cast<std::size_t>(i)];
    pr.zeta = z;
    pr.b = jr.b;
    pr.residual = eigen_residual(sp, z);
    if (std::abs(ad) <= 1e-13 * scale * std::abs(sp.w_of(z)) / std::abs(eval_poly(sp.D, sp.w_of(z)))) {
#pragma omp critical(zsfast_norming)
      if (!first)
        first = std::make_exception_ptr(MultipleRootError("a'(zeta) vanishes at zeta = (" + std::to_string(z.real()) +
                                                          ", " + std::to_string(z.imag()) + "); multiple root"));
      continue;
    }
    pr.rho = jr.b / ad;
  }
  if (first) std::rethrow_exception(first);
  return ds;
}

}  // namespace zsfast
