#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "zsfast/errors.hpp"
#include "zsfast/schemes.hpp"

namespace zsfast {

namespace {

using MatX = Eigen::MatrixXcd;

// X is a 2x2 selector applied blockwise: (1 b^T (x) X) D.
MatX weighted(const ButcherTableau& t, const MatX& D, int xr, int xc) {
  const int s = t.stages();
  MatX B = MatX::Zero(2 * s, 2 * s);
  for (int j = 0; j < s; ++j)
    for (int k = 0; k < s; ++k)
      for (int beta = 0; beta < 2; ++beta) B(2 * j + xr, 2 * k + beta) = t.b[k] * D(2 * k + xc, 2 * k + beta);
  return B;
}

cplx det(const MatX& X) { return X.partialPivLu().determinant(); }

}  // namespace

std::array<cplx, 5> GenericRkBuilder::cramer_at(const std::vector<cplx>& Q, const std::vector<cplx>& R,
                                                cplx w) const {
  const ButcherTableau& t = tab_;
  const int s = t.stages();
  MatX D = MatX::Zero(2 * s, 2 * s);
  for (int k = 0; k < s; ++k) {
    cplx wn = std::pow(w, t.n[k]);
    D(2 * k, 2 * k + 1) = Q[k] * wn;
    D(2 * k + 1, 2 * k) = R[k] / wn;
  }
  MatX I = MatX::Identity(2 * s, 2 * s);
  MatX AD(2 * s, 2 * s), ABD(2 * s, 2 * s);
  for (int j = 0; j < s; ++j)
    for (int k = 0; k < s; ++k)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          AD(2 * j + a, 2 * k + b) = t.A[j][k] * D(2 * k + a, 2 * k + b);
          ABD(2 * j + a, 2 * k + b) = (t.A[j][k] - t.b[k]) * D(2 * k + a, 2 * k + b);
        }
  MatX Gam = I - ABD;
  cplx wnu = std::pow(w, t.nu);
  cplx dG = det(Gam);
  // diag(0,1) keeps the second row of each block, diag(1,0) the first.
  cplx m11 = det(Gam - weighted(t, D, 1, 1));
  cplx m22 = det(Gam - weighted(t, D, 0, 0)) * wnu;
  cplx m12 = dG - det(Gam - weighted(t, D, 1, 0));
  cplx m21 = wnu * (dG - det(Gam - weighted(t, D, 0, 1)));
  return {m11, m12, m21, m22, det(I - AD)};
}

GenericRkBuilder::GenericRkBuilder(ButcherTableau tab) : tab_(std::move(tab)) {
  const int s = tab_.stages(), nu = tab_.nu;
  const int lo = -s * nu, hi = s * nu + nu;
  const std::size_t L = next_pow2(static_cast<std::size_t>(hi - lo + 1));
  std::mt19937_64 rng(0x5eed2u + static_cast<unsigned>(s * 131 + nu));
  std::uniform_real_distribution<double> mag(0.5, 1.5), ph(0.0, 2.0 * std::numbers::pi);
  std::array<int, 5> slo, shi;
  slo.fill(hi + 1);
  shi.fill(lo - 1);
  for (int probe = 0; probe < 3; ++probe) {
    std::vector<cplx> Q(static_cast<std::size_t>(s)), R(static_cast<std::size_t>(s));
    for (int k = 0; k < s; ++k) {
      Q[static_cast<std::size_t>(k)] = std::polar(mag(rng), ph(rng));
      R[static_cast<std::size_t>(k)] = std::polar(mag(rng), ph(rng));
    }
    std::array<std::vector<cplx>, 5> vals;
    for (auto& v : vals) v.resize(L);
    for (std::size_t i = 0; i < L; ++i) {
      cplx w = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(L));
      auto e = cramer_at(Q, R, w);
      for (int q = 0; q < 5; ++q) vals[static_cast<std::size_t>(q)][i] = e[static_cast<std::size_t>(q)];
    }
    for (int q = 0; q < 5; ++q) {
      auto& v = vals[static_cast<std::size_t>(q)];
      fft(v);
      double mx = 0.0;
      for (auto& x : v) mx = std::max(mx, std::abs(x));
      for (int p = lo; p <= hi; ++p) {
        std::size_t idx = static_cast<std::size_t>(((p % static_cast<int>(L)) + static_cast<int>(L)) % static_cast<int>(L));
        if (std::abs(v[idx]) > 1e-10 * mx) {
          slo[static_cast<std::size_t>(q)] = std::min(slo[static_cast<std::size_t>(q)], p);
          shi[static_cast<std::size_t>(q)] = std::max(shi[static_cast<std::size_t>(q)], p);
        }
      }
    }
  }
  std::size_t width = 1;
  for (int q = 0; q < 5; ++q) {
    if (slo[static_cast<std::size_t>(q)] > shi[static_cast<std::size_t>(q)]) {
      slo[static_cast<std::size_t>(q)] = 0;
      shi[static_cast<std::size_t>(q)] = 0;
    }
    support_[static_cast<std::size_t>(q)] = {slo[static_cast<std::size_t>(q)], shi[static_cast<std::size_t>(q)]};
    width = std::max(width, static_cast<std::size_t>(shi[static_cast<std::size_t>(q)] - slo[static_cast<std::size_t>(q)] + 1));
  }
  L_ = next_pow2(width);
}

StepTM GenericRkBuilder::build(const std::vector<cplx>& Q, int kappa) const {
  std::vector<cplx> R(Q.size());
  for (std::size_t i = 0; i < Q.size(); ++i) R[i] = static_cast<double>(kappa) * std::conj(Q[i]);
  return build(Q, R);
}

StepTM GenericRkBuilder::build(const std::vector<cplx>& Q, const std::vector<cplx>& R) const {
  if (static_cast<int>(Q.size()) != tab_.stages() || R.size() != Q.size())
    throw SizeError("generic builder: need one sample per stage");
  const std::size_t L = L_;
  std::array<std::vector<cplx>, 5> vals;
  for (auto& v : vals) v.resize(L);
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (std::size_t i = 0; i < L; ++i) {
    cplx w = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(L));
    auto e = cramer_at(Q, R, w);
    for (int q = 0; q < 5; ++q) vals[static_cast<std::size_t>(q)][i] = e[static_cast<std::size_t>(q)];
    dmin = std::min(dmin, std::abs(e[4]));
    dmax = std::max(dmax, std::abs(e[4]));
  }
  if (dmin < 1e-12 * std::max(1.0, dmax))
    throw StepSizeError("stage system of " + tab_.name + " is singular on the unit circle; reduce the step size h");
  std::array<LaurentPoly, 5> P;
  for (int q = 0; q < 5; ++q) {
    auto& v = vals[static_cast<std::size_t>(q)];
    fft(v);
    const auto sp = support_[static_cast<std::size_t>(q)];
    std::vector<cplx> c(static_cast<std::size_t>(sp.hi - sp.lo + 1));
    for (int p = sp.lo; p <= sp.hi; ++p) {
      std::size_t idx = static_cast<std::size_t>(((p % static_cast<int>(L)) + static_cast<int>(L)) % static_cast<int>(L));
      c[static_cast<std::size_t>(p - sp.lo)] = v[idx] / static_cast<double>(L);
    }
    P[static_cast<std::size_t>(q)] = LaurentPoly(std::move(c), sp.lo);
  }
  StepTM t;
  t.M = PolyMat2::from_2x2(P[0], P[1], P[2], P[3]);
  t.denom = P[4];
  t.zpow = -tab_.nu;
  t.nu = tab_.nu;
  t.scheme_id = "generic-" + tab_.name;
  return t;
}

}  // namespace zsfast
