#include "zsfast/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zsfast/errors.hpp"
#include "zsfast/roots.hpp"
#include "zsfast/scattering.hpp"

namespace zsfast {

namespace {

const cplx I(0.0, 1.0);

// Plain polynomial in u (ascending), with first and second derivatives.
struct Dense {
  std::vector<cplx> c;

  cplx eval(cplx u) const {
    cplx r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * u + *it;
    return r;
  }
  Dense derivative() const {
    Dense d;
    for (std::size_t j = 1; j < c.size(); ++j) d.c.push_back(static_cast<double>(j) * c[j]);
    if (d.c.empty()) d.c.push_back(0.0);
    return d;
  }
  double max_abs() const {
    double m = 0.0;
    for (auto v : c) m = std::max(m, std::abs(v));
    return m;
  }
};

}  // namespace

Mat2 Monodromy::eval(cplx zeta) const {
  const cplx w = std::exp(2.0 * I * zeta * h / static_cast<double>(nu));
  const cplx d = eval_poly(D, w);
  const cplx zf = std::exp(I * zeta * h * static_cast<double>(zpow) / static_cast<double>(nu)) / d;
  const cplx e = std::exp(2.0 * I * zeta * tau * h);
  Mat2 r;
  r[0] = zf * eval_poly(M.get(0, 0), w);
  r[1] = zf * eval_poly(M.get(0, 1), w) / e;
  r[2] = zf * eval_poly(M.get(1, 0), w) * e;
  r[3] = zf * eval_poly(M.get(1, 1), w);
  return r;
}

cplx Monodromy::trace(cplx zeta) const {
  Mat2 m = eval(zeta);
  return m[0] + m[3];
}

cplx Monodromy::det(cplx zeta) const {
  Mat2 m = eval(zeta);
  return m[0] * m[3] - m[1] * m[2];
}

Monodromy monodromy_poly(const SignalGrid& g, const Scheme& s, const MonodromyOptions& opt) {
  if (s.is_lmm()) throw UnsupportedError("LMM unsupported for periodic: multistep schemes handle vanishing boundaries only");
  std::vector<StepTM> steps = build_steps(g, s, opt.shift);
  bool const_den = std::all_of(steps.begin(), steps.end(), [](const StepTM& t) { return t.denom.is_constant(); });
  if (!const_den && !opt.allow_rational)
    throw UnsupportedError("scheme " + s.id + " has a ζ-dependent step denominator; enable allow_rational");
  std::vector<PolyMatrix> Ms(steps.size());
  std::vector<LaurentPoly> Ds;
  if (!const_den) Ds.resize(steps.size());
  for (std::size_t n = 0; n < steps.size(); ++n) {
    Ms[n] = std::move(steps[n].M);
    if (const_den)
      Ms[n].scale(1.0 / steps[n].denom.coeff(0));
    else
      Ds[n] = std::move(steps[n].denom);
  }
  Monodromy m;
  m.M = tree_product(Ms);
  m.D = const_den ? LaurentPoly::constant(1.0) : tree_product(Ds);
  m.zpow = -static_cast<long long>(s.poly_nu) * g.N_seg;
  m.nu = s.poly_nu;
  m.tau = s.tau;
  m.h = g.h;
  m.N_seg = g.N_seg;
  m.scheme_id = s.id;
  return m;
}

MainSpectrum main_spectrum(const Monodromy& mono, const MainSpectrumOptions& opt) {
  // tr Phi = 2λ  <=>  M11 + M22 - 2λ z^(-zpow) D = 0. When -zpow is even this
  // is a polynomial in w, otherwise one in z.
  const long long K = -mono.zpow;
  const bool in_w = K % 2 == 0;
  const int stride = in_w ? 1 : 2;
  LaurentPoly tr = mono.M.get(0, 0) + mono.M.get(1, 1);
  const long long shiftK = in_w ? K / 2 : K;

  const double halfwidth = std::numbers::pi / (2.0 * mono.h);
  MainSpectrum out;
  for (int lambda : {1, -1}) {
    // Exponents in u (u = w or z).
    long long lo = std::min<long long>(static_cast<long long>(tr.lo()) * stride,
                                       static_cast<long long>(mono.D.lo()) * stride + shiftK);
    long long hi = std::max<long long>(static_cast<long long>(tr.hi()) * stride,
                                       static_cast<long long>(mono.D.hi()) * stride + shiftK);
    Dense F;
    F.c.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (int p = tr.lo(); p <= tr.hi(); ++p) F.c[static_cast<std::size_t>(p * stride - lo)] += tr.coeff(p);
    for (int p = mono.D.lo(); p <= mono.D.hi(); ++p)
      F.c[static_cast<std::size_t>(p * stride + shiftK - lo)] -= 2.0 * static_cast<double>(lambda) * mono.D.coeff(p);
    while (F.c.size() > 1 && F.c.back() == cplx(0.0)) F.c.pop_back();
    std::size_t first = 0;
    while (first + 1 < F.c.size() && F.c[first] == cplx(0.0)) ++first;
    F.c.erase(F.c.begin(), F.c.begin() + static_cast<std::ptrdiff_t>(first));
    if (F.c.size() < 2) continue;
    if (F.c.size() - 1 > opt.degree_cap)
      throw DegreeCapError("trace polynomial has degree " + std::to_string(F.c.size() - 1) + " above the cap " +
                           std::to_string(opt.degree_cap));
    const Dense dF = F.derivative(), ddF = dF.derivative();
    const double mx = F.max_abs();

    std::vector<cplx> roots = poly_roots(F.c);
    std::vector<cplx> polished(roots.size(), cplx(std::nan(""), 0.0));
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(roots.size()); ++i) {
      cplx u = roots[static_cast<std::size_t>(i)];
      double fu = std::abs(F.eval(u));
      // Newton on F, falling back to Newton on F' near double roots; a step
      // is kept only if it lowers |F|.
      for (int it = 0; it < opt.newton_max; ++it) {
        cplx best = u;
        double fbest = fu;
        cplx d1 = dF.eval(u);
        if (d1 != cplx(0.0)) {
          cplx c = u - F.eval(u) / d1;
          double fc = std::abs(F.eval(c));
          if (fc < fbest) best = c, fbest = fc;
        }
        cplx d2 = ddF.eval(u);
        if (d2 != cplx(0.0)) {
          cplx c = u - d1 / d2;
          double fc = std::abs(F.eval(c));
          if (fc < fbest) best = c, fbest = fc;
        }
        if (best == u) break;
        u = best;
        fu = fbest;
      }
      polished[static_cast<std::size_t>(i)] = u;
    }

    std::vector<cplx> uniq;
    for (cplx u : polished) {
      if (!std::isfinite(std::abs(u)) || std::abs(u) < 1e-300) continue;
      bool dup = false;
      for (cplx v : uniq)
        if (std::abs(u - v) <= opt.merge_tol * std::abs(u)) dup = true;
      if (!dup) uniq.push_back(u);
    }
    for (cplx u : uniq) {
      cplx zeta = -I * static_cast<double>(mono.nu) * std::log(u) / (mono.h * (in_w ? 2.0 : 1.0));
      const double edge = std::abs(std::abs(zeta.real()) - halfwidth);
      const bool boundary = edge <= 1e-9 * halfwidth;
      if (std::abs(zeta.real()) > halfwidth && !boundary) continue;
      MainSpectrumPoint pt;
      pt.zeta = zeta;
      pt.label = lambda;
      pt.boundary = boundary;
      pt.residual = std::abs(mono.trace(zeta) - 2.0 * static_cast<double>(lambda));
      // |tr - 2λ| = |F(u)| |z^zpow / D|, so this is the scale of the rounding floor.
      const cplx w = std::exp(2.0 * I * zeta * mono.h / static_cast<double>(mono.nu));
      const double zf = std::exp(-zeta.imag() * mono.h * static_cast<double>(mono.zpow) / mono.nu);
      const double ulo = std::pow(std::abs(u), static_cast<double>(lo + static_cast<long long>(first)));
      pt.scale = mx * ulo * zf / std::abs(eval_poly(mono.D, w));
      out.points.push_back(pt);
    }
  }
  std::sort(out.points.begin(), out.points.end(), [](const MainSpectrumPoint& a, const MainSpectrumPoint& b) {
    if (a.zeta.real() != b.zeta.real()) return a.zeta.real() < b.zeta.real();
    return a.zeta.imag() < b.zeta.imag();
  });
  return out;
}

}  // namespace zsfast
