#include "zsfast/poly.hpp"

#include <algorithm>
#include <cmath>

#include "zsfast/errors.hpp"
#include "zsfast/parallel.hpp"

namespace zsfast {

LaurentPoly::LaurentPoly(std::vector<cplx> coeffs, int base_exp) : c(std::move(coeffs)), base(base_exp) {
  if (c.empty()) c.assign(1, cplx(0.0));
}

LaurentPoly LaurentPoly::constant(cplx v) { return LaurentPoly({v}, 0); }

LaurentPoly LaurentPoly::monomial(cplx v, int power) { return LaurentPoly({v}, power); }

cplx LaurentPoly::coeff(int power) const {
  if (power < lo() || power > hi()) return 0.0;
  return c[static_cast<std::size_t>(power - base)];
}

double LaurentPoly::max_abs() const {
  double m = 0.0;
  for (auto& v : c) m = std::max(m, std::abs(v));
  return m;
}

bool LaurentPoly::is_constant() const {
  for (std::size_t j = 0; j < c.size(); ++j)
    if (static_cast<int>(j) + base != 0 && c[j] != cplx(0.0)) return false;
  return true;
}

LaurentPoly& LaurentPoly::trim() {
  std::size_t first = 0, last = c.size();
  while (first < last && c[first] == cplx(0.0)) ++first;
  while (last > first && c[last - 1] == cplx(0.0)) --last;
  if (first == last) {
    c.assign(1, cplx(0.0));
    base = 0;
    return *this;
  }
  c = std::vector<cplx>(c.begin() + static_cast<std::ptrdiff_t>(first), c.begin() + static_cast<std::ptrdiff_t>(last));
  base += static_cast<int>(first);
  return *this;
}

namespace {

LaurentPoly add_scaled(const LaurentPoly& a, const LaurentPoly& b, double sb) {
  int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::size_t j = 0; j < a.c.size(); ++j) c[static_cast<std::size_t>(a.base - lo) + j] += a.c[j];
  for (std::size_t j = 0; j < b.c.size(); ++j) c[static_cast<std::size_t>(b.base - lo) + j] += sb * b.c[j];
  return LaurentPoly(std::move(c), lo);
}

}  // namespace

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return add_scaled(a, b, 1.0); }
LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return add_scaled(a, b, -1.0); }

LaurentPoly operator*(cplx s, const LaurentPoly& a) {
  LaurentPoly r = a;
  for (auto& v : r.c) v *= s;
  return r;
}

std::vector<cplx> convolve_schoolbook(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<cplx> convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::size_t n = a.size() + b.size() - 1;
  if (n < kFftCrossover || std::min(a.size(), b.size()) < 4) return convolve_schoolbook(a, b);
  std::size_t L = next_pow2(n);
  std::vector<cplx> fa(L, 0.0), fb(L, 0.0);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  fft(fa);
  fft(fb);
  for (std::size_t k = 0; k < L; ++k) fa[k] *= fb[k];
  fft(fa, true);
  fa.resize(n);
  return fa;
}

LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) {
  return LaurentPoly(convolve(a.c, b.c), a.base + b.base);
}

cplx eval_poly(const LaurentPoly& p, cplx w) {
  if (w == cplx(0.0)) {
    if (p.lo() < 0) {
      for (std::size_t j = 0; j < p.c.size() && p.base + static_cast<int>(j) < 0; ++j)
        if (p.c[j] != cplx(0.0)) throw EvalError("negative power evaluated at w = 0");
    }
    return p.coeff(0);
  }
  cplx acc = 0.0;
  for (std::size_t j = p.c.size(); j-- > 0;) acc = acc * w + p.c[j];
  if (p.base != 0) acc *= std::pow(w, p.base);
  return acc;
}

cplx eval_poly_derivative(const LaurentPoly& p, cplx w) {
  std::vector<cplx> d(p.c.size());
  for (std::size_t j = 0; j < p.c.size(); ++j) d[j] = p.c[j] * static_cast<double>(p.base + static_cast<int>(j));
  return eval_poly(LaurentPoly(std::move(d), p.base - 1), w);
}

std::vector<cplx> eval_unit_circle(const LaurentPoly& p, std::size_t Nprime) {
  if (!is_pow2(Nprime)) throw SizeError("Nprime must be a power of two");
  if (Nprime < p.size())
    throw SizeError("Nprime=" + std::to_string(Nprime) + " is smaller than the coefficient count " +
                    std::to_string(p.size()));
  std::vector<cplx> x(Nprime, 0.0);
  long long N = static_cast<long long>(Nprime);
  for (std::size_t j = 0; j < p.c.size(); ++j) {
    long long k = (static_cast<long long>(p.base) + static_cast<long long>(j)) % N;
    if (k < 0) k += N;
    x[static_cast<std::size_t>(k)] += p.c[j];
  }
  fft(x, true);
  for (auto& v : x) v *= static_cast<double>(Nprime);
  return x;
}

// ---------------------------------------------------------------------------

PolyMatrix::PolyMatrix(int rows, int cols, std::size_t len, int base)
    : rows_(rows), cols_(cols), len_(len), base_(base),
      data_(static_cast<std::size_t>(rows) * cols * len, cplx(0.0)) {}

PolyMatrix PolyMatrix::identity(int n) {
  PolyMatrix I(n, n, 1, 0);
  for (int i = 0; i < n; ++i) I.at(i, i, 0) = 1.0;
  return I;
}

PolyMatrix PolyMatrix::from_entries(int rows, int cols, const std::vector<LaurentPoly>& e) {
  int lo = e.at(0).lo(), hi = e.at(0).hi();
  for (auto& p : e) {
    lo = std::min(lo, p.lo());
    hi = std::max(hi, p.hi());
  }
  PolyMatrix M(rows, cols, static_cast<std::size_t>(hi - lo + 1), lo);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const LaurentPoly& p = e[static_cast<std::size_t>(i * cols + j)];
      cplx* d = M.entry(i, j) + (p.base - lo);
      std::copy(p.c.begin(), p.c.end(), d);
    }
  return M;
}

PolyMatrix PolyMatrix::from_2x2(const LaurentPoly& m11, const LaurentPoly& m12, const LaurentPoly& m21,
                                const LaurentPoly& m22) {
  return from_entries(2, 2, {m11, m12, m21, m22});
}

LaurentPoly PolyMatrix::get(int i, int j) const {
  const cplx* d = entry(i, j);
  return LaurentPoly(std::vector<cplx>(d, d + len_), base_);
}

bool PolyMatrix::is_identity() const {
  if (rows_ != cols_ || len_ != 1 || base_ != 0) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j, 0) != cplx(i == j ? 1.0 : 0.0)) return false;
  return true;
}

double PolyMatrix::max_abs() const {
  double m = 0.0;
  for (auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

PolyMatrix& PolyMatrix::scale(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

void PolyMatrix::clip(const std::function<int(int, int)>& bound) {
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      long long first = static_cast<long long>(bound(i, j)) - base_ + 1;
      for (long long k = std::max(0LL, first); k < static_cast<long long>(len_); ++k)
        at(i, j, static_cast<std::size_t>(k)) = 0.0;
    }
}

PolyMatrix polymat_mul_schoolbook(const PolyMatrix& A, const PolyMatrix& B) {
  if (A.cols() != B.rows()) throw SizeError("polymat_mul: inner dimensions differ");
  std::size_t len = A.len() + B.len() - 1;
  PolyMatrix C(A.rows(), B.cols(), len, A.base() + B.base());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < B.cols(); ++j) {
      cplx* c = C.entry(i, j);
      for (int k = 0; k < A.cols(); ++k) {
        const cplx* a = A.entry(i, k);
        const cplx* b = B.entry(k, j);
        for (std::size_t p = 0; p < A.len(); ++p) {
          if (a[p] == cplx(0.0)) continue;
          for (std::size_t q = 0; q < B.len(); ++q) c[p + q] += a[p] * b[q];
        }
      }
    }
  return C;
}

PolyMatrix polymat_mul(const PolyMatrix& A, const PolyMatrix& B) {
  if (A.cols() != B.rows()) throw SizeError("polymat_mul: inner dimensions differ");
  if (A.is_identity()) return B;
  if (B.is_identity()) return A;
  std::size_t len = A.len() + B.len() - 1;
  if (len < kFftCrossover || std::min(A.len(), B.len()) < 4) return polymat_mul_schoolbook(A, B);

  std::size_t L = next_pow2(len);
  const int na = A.rows() * A.cols(), nb = B.rows() * B.cols(), nc = A.rows() * B.cols();
  std::vector<cplx> fa(static_cast<std::size_t>(na) * L), fb(static_cast<std::size_t>(nb) * L),
      fc(static_cast<std::size_t>(nc) * L);
  const bool par = !in_parallel() && L >= 4096;

#pragma omp parallel for schedule(static) if (par)
  for (int e = 0; e < na + nb; ++e) {
    bool isA = e < na;
    const PolyMatrix& S = isA ? A : B;
    int idx = isA ? e : e - na;
    cplx* dst = (isA ? fa.data() : fb.data()) + static_cast<std::size_t>(idx) * L;
    const cplx* src = S.entry(idx / S.cols(), idx % S.cols());
    std::copy(src, src + S.len(), dst);
    std::fill(dst + S.len(), dst + L, cplx(0.0));
    fft(dst, L);
  }

  const int n = A.rows(), m = A.cols(), p = B.cols();
#pragma omp parallel for schedule(static) if (par)
  for (long long k = 0; k < static_cast<long long>(L); ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < p; ++j) {
        cplx s = 0.0;
        for (int t = 0; t < m; ++t)
          s += fa[static_cast<std::size_t>(i * m + t) * L + k] * fb[static_cast<std::size_t>(t * p + j) * L + k];
        fc[static_cast<std::size_t>(i * p + j) * L + k] = s;
      }
  }

  PolyMatrix C(n, p, len, A.base() + B.base());
#pragma omp parallel for schedule(static) if (par)
  for (int e = 0; e < nc; ++e) {
    cplx* d = fc.data() + static_cast<std::size_t>(e) * L;
    fft(d, L, true);
    std::copy(d, d + len, C.entry(e / p, e % p));
  }
  return C;
}

std::vector<cplx> eval_matrix(const PolyMatrix& A, cplx w) {
  std::vector<cplx> out(static_cast<std::size_t>(A.rows() * A.cols()));
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) out[static_cast<std::size_t>(i * A.cols() + j)] = eval_poly(A.get(i, j), w);
  return out;
}

PolyMatrix tree_product(const std::vector<PolyMatrix>& factors, const TreeOptions& opt) {
  if (factors.empty()) throw SizeError("tree_product needs at least one factor");
  std::vector<PolyMatrix> cur = factors;
  std::vector<std::size_t> span(cur.size(), 1);
  if (opt.pad_pow2) {
    std::size_t n = next_pow2(cur.size());
    cur.resize(n, PolyMatrix::identity(factors[0].rows()));
    span.resize(n, 1);
  }
  while (cur.size() > 1) {
    std::size_t half = cur.size() / 2;
    std::vector<PolyMatrix> next(half + cur.size() % 2);
    std::vector<std::size_t> nspan(next.size());
#pragma omp parallel for schedule(dynamic) if (half > 1)
    for (long long i = 0; i < static_cast<long long>(half); ++i) {
      std::size_t k = static_cast<std::size_t>(i);
      next[k] = polymat_mul(cur[2 * k + 1], cur[2 * k]);
      nspan[k] = span[2 * k] + span[2 * k + 1];
      if (opt.trim) opt.trim(next[k], nspan[k]);
    }
    if (cur.size() % 2) {
      next.back() = std::move(cur.back());
      nspan.back() = span.back();
    }
    cur = std::move(next);
    span = std::move(nspan);
  }
  return std::move(cur[0]);
}

LaurentPoly tree_product(const std::vector<LaurentPoly>& factors) {
  if (factors.empty()) throw SizeError("tree_product needs at least one factor");
  std::vector<LaurentPoly> cur = factors;
  while (cur.size() > 1) {
    std::size_t half = cur.size() / 2;
    std::vector<LaurentPoly> next(half + cur.size() % 2);
#pragma omp parallel for schedule(dynamic) if (half > 1)
    for (long long i = 0; i < static_cast<long long>(half); ++i) {
      std::size_t k = static_cast<std::size_t>(i);
      next[k] = poly_mul(cur[2 * k + 1], cur[2 * k]);
    }
    if (cur.size() % 2) next.back() = std::move(cur.back());
    cur = std::move(next);
  }
  return std::move(cur[0]);
}

}  // namespace zsfast
