#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zsfast/poly.hpp"
#include "zsfast/schemes.hpp"
#include "zsfast/signal.hpp"

namespace zsfast {

// a_N = z^exp_a P1(w)/D(w), b_N = z^exp_b P2(w)/D(w), z = exp(iζh/nu), w = z^2.
struct ScatteringPoly {
  LaurentPoly P1, P2;
  LaurentPoly D = LaurentPoly::constant(1.0);
  int exp_a = 0;
  long long exp_b = 0;
  double h = 0.0;
  int nu = 1;
  long long N_seg = 0;  // steps actually taken (includes multistep padding)
  long long ell_plus = 0, ell_minus = 0;
  double T1 = 0.0, T2 = 0.0;
  int kappa = -1;
  std::string scheme_id;

  cplx z_of(cplx zeta) const;
  cplx w_of(cplx zeta) const;
  cplx a(cplx zeta) const;
  cplx b(cplx zeta) const;
  // d a / d zeta through w(zeta).
  cplx a_dot(cplx zeta) const;
  double strip_halfwidth() const;  // pi / (2h)
};

struct ScatterOptions {
  // Skip the tree and accumulate with the serial chain (reference path).
  bool serial = false;
};

ScatteringPoly compute_scattering(const SignalGrid& grid, const Scheme& scheme, const ScatterOptions& opt = {});
ScatteringPoly compute_scattering(const SignalGrid& grid, const std::string& scheme);

struct ContinuousSpectrum {
  std::vector<double> xi;
  std::vector<cplx> a, b, rho;
};

// xi_k = (pi/h)(k/Nprime - 1/2), k = 0..Nprime-1.
ContinuousSpectrum continuous_spectrum(const ScatteringPoly& sp, std::size_t Nprime);

struct JostResult {
  cplx phi1 = 0.0, phi2 = 0.0;  // phi(T2)
  cplx a = 0.0, b = 0.0;
};

// Step-by-step numeric propagation of phi(T1) = (1,0) exp(-iζT1).
JostResult sequential_jost(const SignalGrid& grid, const Scheme& scheme, cplx zeta);
// Same, reusing prebuilt Runge-Kutta step factors.
JostResult sequential_jost(const SignalGrid& grid, const std::vector<StepTM>& steps, cplx zeta);

// b at an eigenvalue from phi propagated forward from T1 and psi backward
// from T2, matched at the step where both are least affected by growth.
cplx bidirectional_b(const SignalGrid& grid, const std::vector<StepTM>& steps, cplx zeta);

// Per-step factors used by both the tree and the serial paths.
std::vector<StepTM> build_steps(const SignalGrid& grid, const Scheme& scheme, long long shift = 0);

// Samples h*q_j at segment nodes with the multistep start condition applied;
// returns the number of zero samples prepended.
int multistep_samples(const SignalGrid& grid, const Scheme& scheme, std::vector<cplx>& Q);

}  // namespace zsfast
