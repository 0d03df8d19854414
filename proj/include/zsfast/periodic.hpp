#pragma once

#include <string>
#include <vector>

#include "zsfast/poly.hpp"
#include "zsfast/schemes.hpp"
#include "zsfast/signal.hpp"

namespace zsfast {

// Transfer matrix over one period starting at segment `shift`:
//   Phi(ζ) = E(-tau) z^zpow M(w)/D(w) E(tau),  z = exp(iζh/nu), w = z^2.
struct Monodromy {
  PolyMat2 M;
  LaurentPoly D = LaurentPoly::constant(1.0);
  long long zpow = 0;
  int nu = 1;
  double tau = 0.0;
  double h = 0.0;
  long long N_seg = 0;
  std::string scheme_id;

  Mat2 eval(cplx zeta) const;
  cplx trace(cplx zeta) const;
  cplx det(cplx zeta) const;
};

struct MonodromyOptions {
  long long shift = 0;
  // Schemes whose step denominator depends on ζ are refused unless set.
  bool allow_rational = false;
};

Monodromy monodromy_poly(const SignalGrid& grid, const Scheme& scheme, const MonodromyOptions& opt = {});

struct MainSpectrumPoint {
  cplx zeta;
  int label = 1;          // +1 periodic (trace 2), -1 antiperiodic (trace -2)
  double residual = 0.0;  // |tr Phi - 2 label|
  double scale = 1.0;     // coefficient scale of the cleared polynomial at ζ
  bool boundary = false;  // within rounding of |Re ζ| = pi/2h
};

struct MainSpectrum {
  std::vector<MainSpectrumPoint> points;
};

struct MainSpectrumOptions {
  std::size_t degree_cap = 4096;
  int newton_max = 30;
  // Roots closer than this (relative) are merged.
  double merge_tol = 1e-9;
};

// Points with tr Phi = +-2 inside |Re ζ| <= pi/2h, sorted by (Re, Im).
MainSpectrum main_spectrum(const Monodromy& mono, const MainSpectrumOptions& opt = {});

}  // namespace zsfast
