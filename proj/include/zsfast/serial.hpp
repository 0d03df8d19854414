#pragma once

#include <vector>

#include "zsfast/poly.hpp"

// Straightforward sequential accumulation kept as the reference for the
// tree-product kernels.
namespace zsfast::serial {

// factors[n-1] * ... * factors[0] by schoolbook products, left to right.
PolyMatrix chain_product(const std::vector<PolyMatrix>& factors);

// P_k = factors[k-1] P_{k-1}, returning P_n.
std::vector<LaurentPoly> chain_vector(const std::vector<PolyMatrix>& factors, std::vector<LaurentPoly> P0);

LaurentPoly chain_scalar(const std::vector<LaurentPoly>& factors);

}  // namespace zsfast::serial
