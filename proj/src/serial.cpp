#include "zsfast/serial.hpp"

#include "zsfast/errors.hpp"

namespace zsfast::serial {

PolyMatrix chain_product(const std::vector<PolyMatrix>& factors) {
  if (factors.empty()) throw SizeError("chain_product needs at least one factor");
  PolyMatrix acc = factors[0];
  for (std::size_t k = 1; k < factors.size(); ++k) acc = polymat_mul_schoolbook(factors[k], acc);
  return acc;
}

std::vector<LaurentPoly> chain_vector(const std::vector<PolyMatrix>& factors, std::vector<LaurentPoly> P) {
  for (const auto& M : factors) {
    if (static_cast<std::size_t>(M.cols()) != P.size()) throw SizeError("chain_vector: dimension mismatch");
    std::vector<LaurentPoly> next(static_cast<std::size_t>(M.rows()), LaurentPoly::constant(0.0));
    for (int i = 0; i < M.rows(); ++i) {
      LaurentPoly acc = LaurentPoly::constant(0.0);
      for (int j = 0; j < M.cols(); ++j) {
        const LaurentPoly& v = P[static_cast<std::size_t>(j)];
        if (v.max_abs() == 0.0) continue;
        LaurentPoly e = M.get(i, j);
        if (e.max_abs() == 0.0) continue;
        acc = acc + LaurentPoly(convolve_schoolbook(e.c, v.c), e.base + v.base);
      }
      next[static_cast<std::size_t>(i)] = std::move(acc);
    }
    P = std::move(next);
  }
  return P;
}

LaurentPoly chain_scalar(const std::vector<LaurentPoly>& factors) {
  if (factors.empty()) throw SizeError("chain_scalar needs at least one factor");
  LaurentPoly acc = factors[0];
  for (std::size_t k = 1; k < factors.size(); ++k)
    acc = LaurentPoly(convolve_schoolbook(factors[k].c, acc.c), factors[k].base + acc.base);
  return acc;
}

}  // namespace zsfast::serial
