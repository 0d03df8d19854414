#pragma once

#include <array>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

// Reference propagation for piecewise-constant potentials. Shares nothing
// with the discretization code beyond std::complex.
namespace zsfast::oracle {

using cplx = std::complex<double>;
using Mat2 = std::array<cplx, 4>;

// exp((-iζσ3 + [[0,q],[r,0]]) dt) with r = kappa*conj(q).
Mat2 exact_tm_constant(cplx q, int kappa, cplx zeta, double dt);

struct PiecewiseConstantOracle {
  std::vector<double> breaks;  // size P+1, increasing
  std::vector<cplx> q;         // size P
  int kappa = -1;
};

// P equal pieces on [T1, T2], each carrying q at its midpoint.
PiecewiseConstantOracle midpoint_oracle(const std::function<cplx(double)>& q, double T1, double T2, long long pieces,
                                        int kappa);

// (a, b) of the piecewise-constant potential.
std::pair<cplx, cplx> reference_scattering(const PiecewiseConstantOracle& o, cplx zeta);

// Midpoint piecewise-constant chains with P/4, P/2 and P pieces combined by
// two Richardson stages (the chain error expands in even powers of the
// piece width). P must be divisible by 4.
std::vector<std::pair<cplx, cplx>> smooth_reference(const std::function<cplx(double)>& q, double T1, double T2,
                                                    long long pieces, int kappa, const std::vector<cplx>& zetas);

// Cumulative matrix over the pieces (monodromy of a periodic potential).
Mat2 chain_matrix(const PiecewiseConstantOracle& o, cplx zeta);

// Least-squares slope of log(err) against log(h).
double fit_convergence_order(const std::vector<std::pair<double, double>>& h_err);

}  // namespace zsfast::oracle
