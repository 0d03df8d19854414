#pragma once

#include <vector>

#include "zsfast/fft.hpp"

namespace zsfast {

// Roots of sum_j c[j] x^j from the eigenvalues of the balanced companion
// matrix. Zero roots coming from vanishing low-order coefficients are not
// reported. Throws EvalError if the eigensolver fails.
std::vector<cplx> poly_roots(std::vector<cplx> c);

}  // namespace zsfast
