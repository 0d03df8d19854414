#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "zsfast/fft.hpp"

namespace zsfast {

// p(w) = sum_j c[j] w^(base + j). The variable w stands for z^2 throughout.
struct LaurentPoly {
  std::vector<cplx> c{cplx(0.0)};
  int base = 0;

  LaurentPoly() = default;
  LaurentPoly(std::vector<cplx> coeffs, int base_exp = 0);

  static LaurentPoly constant(cplx v);
  static LaurentPoly monomial(cplx v, int power);

  std::size_t size() const { return c.size(); }
  int lo() const { return base; }
  int hi() const { return base + static_cast<int>(c.size()) - 1; }
  // 0 outside the stored window.
  cplx coeff(int power) const;
  double max_abs() const;
  bool is_constant() const;
  // Strip exact zeros at both ends; the zero polynomial becomes {0} at base 0.
  LaurentPoly& trim();
};

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator*(cplx s, const LaurentPoly& a);

// Below this product length the schoolbook convolution is used.
inline constexpr std::size_t kFftCrossover = 32;

std::vector<cplx> convolve(const std::vector<cplx>& a, const std::vector<cplx>& b);
std::vector<cplx> convolve_schoolbook(const std::vector<cplx>& a, const std::vector<cplx>& b);
LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b);

cplx eval_poly(const LaurentPoly& p, cplx w);
cplx eval_poly_derivative(const LaurentPoly& p, cplx w);
// Values at w_k = exp(2πik/Nprime), k ascending.
std::vector<cplx> eval_unit_circle(const LaurentPoly& p, std::size_t Nprime);

// Dense matrix of Laurent polynomials sharing one base exponent and one
// coefficient length. PolyMat2 is the 2x2 case.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols, std::size_t len, int base = 0);

  static PolyMatrix identity(int n);
  static PolyMatrix from_entries(int rows, int cols, const std::vector<LaurentPoly>& e);
  static PolyMatrix from_2x2(const LaurentPoly& m11, const LaurentPoly& m12, const LaurentPoly& m21,
                             const LaurentPoly& m22);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t len() const { return len_; }
  int base() const { return base_; }
  void set_base(int b) { base_ = b; }

  cplx* entry(int i, int j) { return data_.data() + (static_cast<std::size_t>(i) * cols_ + j) * len_; }
  const cplx* entry(int i, int j) const {
    return data_.data() + (static_cast<std::size_t>(i) * cols_ + j) * len_;
  }
  cplx& at(int i, int j, std::size_t k) { return entry(i, j)[k]; }
  cplx at(int i, int j, std::size_t k) const { return entry(i, j)[k]; }

  LaurentPoly get(int i, int j) const;
  bool is_identity() const;
  double max_abs() const;
  PolyMatrix& scale(cplx s);
  // Zero coefficients of entry (i,j) above power bound(i,j).
  void clip(const std::function<int(int, int)>& bound);

 private:
  int rows_ = 0, cols_ = 0;
  std::size_t len_ = 0;
  int base_ = 0;
  std::vector<cplx> data_;
};

using PolyMat2 = PolyMatrix;

PolyMatrix polymat_mul(const PolyMatrix& A, const PolyMatrix& B);
PolyMatrix polymat_mul_schoolbook(const PolyMatrix& A, const PolyMatrix& B);
std::vector<cplx> eval_matrix(const PolyMatrix& A, cplx w);

struct TreeOptions {
  // Called on every internal node with the number of leaves it spans
  // (identity padding included); may clip structurally zero coefficients.
  std::function<void(PolyMatrix&, std::size_t)> trim;
  bool pad_pow2 = true;
};

// Returns factors[n-1] * ... * factors[0], combined pairwise as a balanced
// binary tree. The combination tree depends only on factors.size().
PolyMatrix tree_product(const std::vector<PolyMatrix>& factors, const TreeOptions& opt = {});
// Scalar counterpart for denominators.
LaurentPoly tree_product(const std::vector<LaurentPoly>& factors);

}  // namespace zsfast
