#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "zsfast/zsfast.hpp"

namespace th {

using zsfast::cplx;

inline cplx rand_c(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  return {d(rng), d(rng)};
}

inline std::vector<cplx> rand_vec(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = rand_c(rng, scale);
  return v;
}

inline double max_coeff_diff(const zsfast::LaurentPoly& a, const zsfast::LaurentPoly& b) {
  int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  double e = 0.0;
  for (int p = lo; p <= hi; ++p) e = std::max(e, std::abs(a.coeff(p) - b.coeff(p)));
  return e;
}

inline double rel_coeff_diff(const zsfast::LaurentPoly& a, const zsfast::LaurentPoly& b) {
  double s = std::max(a.max_abs(), b.max_abs());
  return s == 0.0 ? 0.0 : max_coeff_diff(a, b) / s;
}

inline double mat_diff(const zsfast::Mat2& a, const zsfast::Mat2& b) {
  double e = 0.0;
  for (int i = 0; i < 4; ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

inline double mat_norm(const zsfast::Mat2& a) {
  double e = 0.0;
  for (auto v : a) e = std::max(e, std::abs(v));
  return e;
}

// Smooth, effectively compactly supported test potential.
inline cplx bump(double t) { return cplx(std::exp(-t * t) * std::cos(3 * t), 0.5 * std::exp(-(t - 1) * (t - 1))); }

}  // namespace th

namespace th {

// Dense complex solve with partial pivoting; B is overwritten with X.
inline void solve(std::vector<std::vector<cplx>> A, std::vector<std::vector<cplx>>& B) {
  const std::size_t n = A.size(), m = B[0].size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(A[i][k]) > std::abs(A[p][k])) p = i;
    std::swap(A[k], A[p]);
    std::swap(B[k], B[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx f = A[i][k] / A[k][k];
      for (std::size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
      for (std::size_t j = 0; j < m; ++j) B[i][j] -= f * B[k][j];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = 0; j < m; ++j) {
      cplx s = B[k][j];
      for (std::size_t i = k + 1; i < n; ++i) s -= A[k][i] * B[i][j];
      B[k][j] = s / A[k][k];
    }
  }
}

// One Runge-Kutta step of the Zakharov-Shabat system in the co-moving frame,
// solved directly from the stage equations at a fixed zeta:
//   T = exp(-i zeta sigma3 h) (I + (b^T x I) D (I - (A x I) D)^{-1} (1 x I)).
inline zsfast::Mat2 rk_step_oracle(const zsfast::ButcherTableau& tab, const std::vector<cplx>& Q,
                                   const std::vector<cplx>& R, cplx zeta, double h) {
  const cplx I(0.0, 1.0);
  const std::size_t s = tab.b.size(), n = 2 * s;
  std::vector<std::array<cplx, 4>> D(s);
  for (std::size_t k = 0; k < s; ++k) {
    cplx ph = std::exp(2.0 * I * zeta * tab.c[k] * h);
    D[k] = {0.0, Q[k] * ph, R[k] / ph, 0.0};
  }
  std::vector<std::vector<cplx>> G(n, std::vector<cplx>(n, 0.0)), Y(n, std::vector<cplx>(2, 0.0));
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t k = 0; k < s; ++k)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) G[2 * j + a][2 * k + b] = -tab.A[j][k] * D[k][2 * a + b];
    G[2 * j][2 * j] += 1.0;
    G[2 * j + 1][2 * j + 1] += 1.0;
    Y[2 * j][0] = 1.0;
    Y[2 * j + 1][1] = 1.0;
  }
  solve(G, Y);
  std::array<cplx, 4> K{1.0, 0.0, 0.0, 1.0};
  for (std::size_t k = 0; k < s; ++k)
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c)
        for (int b = 0; b < 2; ++b) K[2 * a + c] += tab.b[k] * D[k][2 * a + b] * Y[2 * k + b][c];
  cplx e = std::exp(-I * zeta * h);
  return {e * K[0], e * K[1], K[2] / e, K[3] / e};
}

// Winding number of f around the rectangle [x0,x1] x [y0,y1], with the
// contour refined until consecutive phase steps stay below pi/4.
inline int winding(const std::function<cplx(cplx)>& f, double x0, double x1, double y0, double y1) {
  const cplx c[] = {cplx(x0, y0), cplx(x1, y0), cplx(x1, y1), cplx(x0, y1), cplx(x0, y0)};
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    std::function<double(cplx, cplx, cplx, cplx, int)> seg = [&](cplx a, cplx b, cplx fa, cplx fb, int depth) {
      double d = std::arg(fb / fa);
      if (std::abs(d) < std::numbers::pi / 4 || depth > 30) return d;
      cplx m = 0.5 * (a + b), fm = f(m);
      return seg(a, m, fa, fm, depth + 1) + seg(m, b, fm, fb, depth + 1);
    };
    const int pieces = 16;
    cplx a = c[e], fa = f(a);
    for (int k = 1; k <= pieces; ++k) {
      cplx b = c[e] + (c[e + 1] - c[e]) * (static_cast<double>(k) / pieces), fb = f(b);
      total += seg(a, b, fa, fb, 0);
      a = b, fa = fb;
    }
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

// Zeros of f in the box: bisect boxes by winding number, then secant steps.
inline void locate_zeros(const std::function<cplx(cplx)>& f, double x0, double x1, double y0, double y1, std::vector<cplx>& out) {
  int n = winding(f, x0, x1, y0, y1);
  if (n <= 0) return;
  if (std::max(x1 - x0, y1 - y0) < 1e-10) {
    out.insert(out.end(), static_cast<std::size_t>(n), cplx(0.5 * (x0 + x1), 0.5 * (y0 + y1)));
    return;
  }
  if (n == 1 && std::max(x1 - x0, y1 - y0) < 0.1) {
    cplx z0(0.5 * (x0 + x1), 0.5 * (y0 + y1)), z1 = z0 + cplx(1e-4, 1e-4);
    cplx f0 = f(z0), f1 = f(z1);
    for (int it = 0; it < 40 && std::abs(z1 - z0) > 1e-14 && f1 != f0; ++it) {
      cplx z2 = z1 - f1 * (z1 - z0) / (f1 - f0);
      z0 = z1, f0 = f1, z1 = z2, f1 = f(z2);
    }
    out.push_back(z1);
    return;
  }
  // Offsets keep cut lines off symmetric zeros.
  if (x1 - x0 >= y1 - y0) {
    double xm = x0 + 0.4871 * (x1 - x0);
    locate_zeros(f, x0, xm, y0, y1, out);
    locate_zeros(f, xm, x1, y0, y1, out);
  } else {
    double ym = y0 + 0.4871 * (y1 - y0);
    locate_zeros(f, x0, x1, y0, ym, out);
    locate_zeros(f, x0, x1, ym, y1, out);
  }
}

}  // namespace th
