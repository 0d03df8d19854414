#include "zsfast/oracle.hpp"

#include <cmath>

#include "zsfast/errors.hpp"

namespace zsfast::oracle {

namespace {

const cplx I(0.0, 1.0);

Mat2 mul(const Mat2& A, const Mat2& B) {
  return {A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3], A[2] * B[0] + A[3] * B[2],
          A[2] * B[1] + A[3] * B[3]};
}

}  // namespace

Mat2 exact_tm_constant(cplx q, int kappa, cplx zeta, double dt) {
  cplx r = static_cast<double>(kappa) * std::conj(q);
  cplx g2 = -zeta * zeta + q * r;  // Γ²
  cplx x2 = g2 * dt * dt;
  cplx ch, sh;  // cosh(Γdt), sinh(Γdt)/Γ; both even in Γ
  if (std::abs(x2) < 1e-8) {
    ch = 1.0 + x2 / 2.0 + x2 * x2 / 24.0;
    sh = dt * (1.0 + x2 / 6.0 + x2 * x2 / 120.0);
  } else {
    cplx g = std::sqrt(g2);
    ch = std::cosh(g * dt);
    sh = std::sinh(g * dt) / g;
  }
  return {ch - I * zeta * sh, q * sh, r * sh, ch + I * zeta * sh};
}

PiecewiseConstantOracle midpoint_oracle(const std::function<cplx(double)>& q, double T1, double T2, long long pieces,
                                        int kappa) {
  PiecewiseConstantOracle o;
  o.kappa = kappa;
  o.breaks.resize(static_cast<std::size_t>(pieces + 1));
  o.q.resize(static_cast<std::size_t>(pieces));
  double dt = (T2 - T1) / static_cast<double>(pieces);
  for (long long j = 0; j <= pieces; ++j) o.breaks[static_cast<std::size_t>(j)] = T1 + static_cast<double>(j) * dt;
  o.breaks.back() = T2;
  for (long long j = 0; j < pieces; ++j) o.q[static_cast<std::size_t>(j)] = q(T1 + (static_cast<double>(j) + 0.5) * dt);
  return o;
}

Mat2 chain_matrix(const PiecewiseConstantOracle& o, cplx zeta) {
  Mat2 acc{1.0, 0.0, 0.0, 1.0};
  for (std::size_t j = 0; j < o.q.size(); ++j)
    acc = mul(exact_tm_constant(o.q[j], o.kappa, zeta, o.breaks[j + 1] - o.breaks[j]), acc);
  return acc;
}

std::pair<cplx, cplx> reference_scattering(const PiecewiseConstantOracle& o, cplx zeta) {
  double T1 = o.breaks.front(), T2 = o.breaks.back();
  cplx v1 = std::exp(-I * zeta * T1), v2 = 0.0;
  for (std::size_t j = 0; j < o.q.size(); ++j) {
    Mat2 E = exact_tm_constant(o.q[j], o.kappa, zeta, o.breaks[j + 1] - o.breaks[j]);
    cplx n1 = E[0] * v1 + E[1] * v2, n2 = E[2] * v1 + E[3] * v2;
    v1 = n1;
    v2 = n2;
  }
  return {v1 * std::exp(I * zeta * T2), v2 * std::exp(-I * zeta * T2)};
}

std::vector<std::pair<cplx, cplx>> smooth_reference(const std::function<cplx(double)>& q, double T1, double T2,
                                                    long long pieces, int kappa, const std::vector<cplx>& zetas) {
  if (pieces % 4 != 0 || pieces < 4) throw zsfast::SizeError("smooth_reference needs pieces divisible by 4");
  PiecewiseConstantOracle o1 = midpoint_oracle(q, T1, T2, pieces / 4, kappa);
  PiecewiseConstantOracle o2 = midpoint_oracle(q, T1, T2, pieces / 2, kappa);
  PiecewiseConstantOracle o4 = midpoint_oracle(q, T1, T2, pieces, kappa);
  std::vector<std::pair<cplx, cplx>> out(zetas.size());
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(zetas.size()); ++i) {
    cplx z = zetas[static_cast<std::size_t>(i)];
    auto r1 = reference_scattering(o1, z), r2 = reference_scattering(o2, z), r4 = reference_scattering(o4, z);
    auto rich = [](cplx c1, cplx c2, cplx c4) {
      cplx s1 = (4.0 * c2 - c1) / 3.0, s2 = (4.0 * c4 - c2) / 3.0;
      return (16.0 * s2 - s1) / 15.0;
    };
    out[static_cast<std::size_t>(i)] = {rich(r1.first, r2.first, r4.first), rich(r1.second, r2.second, r4.second)};
  }
  return out;
}

double fit_convergence_order(const std::vector<std::pair<double, double>>& h_err) {
  if (h_err.size() < 3) throw zsfast::FitError("need at least three (h, error) points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [h, e] : h_err) {
    if (!(h > 0)) throw zsfast::FitError("step sizes must be positive");
    if (!(e > 0) || !std::isfinite(e)) throw zsfast::FitError("errors must be positive and finite");
    double x = std::log(h), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(h_err.size());
  double den = n * sxx - sx * sx;
  if (std::abs(den) < 1e-300) throw zsfast::FitError("step sizes must not all coincide");
  return (n * sxy - sx * sy) / den;
}

}  // namespace zsfast::oracle
