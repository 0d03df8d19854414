#pragma once

#include <vector>

#include "zsfast/scattering.hpp"

namespace zsfast {

struct EigenOptions {
  std::size_t degree_cap = 4096;
  // The grid-level driver solves the companion matrix directly up to this
  // degree; above it, seeds come from a decimated grid of at most seed_degree.
  std::size_t direct_degree = 1024;
  std::size_t seed_degree = 512;
  // Newton moves larger than this fraction of the strip width pi/h mark a
  // root as spurious.
  double spurious_move = 1e-2;
  double residual_tol = 1e-8;
  int newton_max = 50;
};

// Zeros of a_N in the upper half plane inside the strip |Re ζ| < pi/2h,
// from the companion matrix of P1 plus one Newton step. Sorted by (Im, Re).
// Throws DegreeCapError above opt.degree_cap.
std::vector<cplx> find_eigenvalues(const ScatteringPoly& sp, const EigenOptions& opt = {});

// Newton iteration on P1 from the given seeds; drops seeds that fail to
// converge, leave the strip or coincide with an earlier root.
std::vector<cplx> refine_eigenvalues(const ScatteringPoly& sp, const std::vector<cplx>& seeds,
                                     const EigenOptions& opt = {});

// Grid-level driver: direct path up to opt.direct_degree, otherwise seeds
// from a decimated grid and refines on the full polynomial. Falls back to the
// direct path (still bounded by the cap) when the grid cannot be decimated.
std::vector<cplx> find_eigenvalues(const SignalGrid& grid, const Scheme& scheme, const ScatteringPoly& sp,
                                   const EigenOptions& opt = {});

// |P1(w)| / max|coefficients of P1|.
double eigen_residual(const ScatteringPoly& sp, cplx zeta);

struct DiscretePair {
  cplx zeta, b, rho;
  double residual = 0.0;
};

struct DiscreteSpectrum {
  std::vector<DiscretePair> pairs;
};

// b_k = b(ζ_k) by step-by-step propagation (forward and backward for
// Runge-Kutta schemes, forward only for multistep ones), rho_k = b_k / a'(ζ_k).
DiscreteSpectrum norming_constants(const SignalGrid& grid, const Scheme& scheme, const ScatteringPoly& sp,
                                   const std::vector<cplx>& zetas);
DiscreteSpectrum norming_constants(const SignalGrid& grid, const Scheme& scheme, const std::vector<cplx>& zetas);

}  // namespace zsfast
