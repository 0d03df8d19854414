#include "zsfast/roots.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "zsfast/errors.hpp"

namespace zsfast {

namespace {

// Parlett-Reinsch style scaling by powers of two; exact in floating point.
// Column-major square matrix.
struct Dense {
  std::ptrdiff_t n;
  std::vector<cplx> a;
  cplx& operator()(std::ptrdiff_t i, std::ptrdiff_t j) { return a[static_cast<std::size_t>(j * n + i)]; }
};

// The companion matrix is upper Hessenberg with a unit subdiagonal, so row i
// touches columns i-1 and n-1 only and column i touches rows i+1 and 0..n-1
// when i = n-1. Diagonal scaling keeps that shape.
void balance(Dense& C) {
  const std::ptrdiff_t n = C.n;
  const double gamma = 0.9;
  bool changed = true;
  int sweeps = 0;
  while (changed && sweeps++ < 100) {
    changed = false;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      if (i > 0) r += std::abs(C(i, i - 1));
      if (i != n - 1) r += std::abs(C(i, n - 1));
      if (i + 1 < n) c += std::abs(C(i + 1, i));
      if (i == n - 1)
        for (std::ptrdiff_t k = 0; k < n - 1; ++k) c += std::abs(C(k, i));
      if (r == 0.0 || c == 0.0) continue;
      int e = 0;
      std::frexp(r / c, &e);
      e /= 2;
      if (e == 0) continue;
      if (std::ldexp(c, e) + std::ldexp(r, -e) < gamma * (r + c)) {
        changed = true;
        const double f = std::ldexp(1.0, e);
        for (std::ptrdiff_t k = 0; k < n; ++k) C(i, k) /= f;
        for (std::ptrdiff_t k = 0; k < n; ++k) C(k, i) *= f;
      }
    }
  }
}

}  // namespace

std::vector<cplx> poly_roots(std::vector<cplx> c) {
  while (!c.empty() && c.back() == cplx(0.0)) c.pop_back();
  std::size_t lead0 = 0;
  while (lead0 < c.size() && c[lead0] == cplx(0.0)) ++lead0;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead0));
  if (c.size() < 2) return {};
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(c.size()) - 1;
  if (n == 1) return {-c[0] / c[1]};
  Dense C{n, std::vector<cplx>(static_cast<std::size_t>(n * n), cplx(0.0))};
  for (std::ptrdiff_t i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) C(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  balance(C);
  std::vector<cplx> r(static_cast<std::size_t>(n));
  cplx zdummy = 0.0;
  const lapack_int ln = static_cast<lapack_int>(n);
  lapack_int info = LAPACKE_zhseqr(LAPACK_COL_MAJOR, 'E', 'N', ln, 1, ln, C.a.data(), ln, r.data(), &zdummy, 1);
  if (info != 0) throw EvalError("companion eigensolver did not converge (info " + std::to_string(info) + ")");
  return r;
}

}  // namespace zsfast
