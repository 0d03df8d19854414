#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "zsfast/poly.hpp"
#include "zsfast/signal.hpp"
#include "zsfast/tableau.hpp"

namespace zsfast {

using Mat2 = std::array<cplx, 4>;  // row major

// One-step transfer factor. With z = exp(iζh/nu) and w = z^2 the step maps
//   v_{n+1} = E(-tau) z^zpow M(w)/denom(w) E(tau) v_n,
// E(t) = diag(exp(iζth), exp(-iζth)). tau is 0 except for the midpoint
// scheme, whose closed form lives in a frame shifted by half a step.
struct StepTM {
  PolyMat2 M;
  LaurentPoly denom = LaurentPoly::constant(1.0);
  int zpow = 0;
  int nu = 1;
  double tau = 0.0;
  std::string scheme_id;

  Mat2 eval(cplx zeta, double h) const;
  // Numerator over denominator at a given w, without z^zpow and framing.
  Mat2 ratio(cplx w) const;
};

StepTM step_tm_im(cplx Q_half, int kappa);

enum class LobattoVariant { IIIA, IIIB };
StepTM step_tm_two_stage(cplx Q_n, cplx Q_np1, LobattoVariant v, int kappa);
StepTM step_tm_rk3(cplx Q_n, cplx Q_half, cplx Q_np1, int kappa);
StepTM step_tm_rk4(cplx Q_n, cplx Q_half, cplx Q_np1, int kappa);
StepTM step_tm_lobatto4(cplx Q_n, cplx Q_half, cplx Q_np1, LobattoVariant v, int kappa);

// Determinant-based builder for an arbitrary tableau. The structural support
// of every entry is found once by probing; each build() evaluates the
// Cramer determinants at roots of unity and interpolates by FFT.
class GenericRkBuilder {
 public:
  explicit GenericRkBuilder(ButcherTableau tab);

  const ButcherTableau& tableau() const { return tab_; }
  // Q holds h*q at the stage nodes.
  StepTM build(const std::vector<cplx>& Q, int kappa) const;
  StepTM build(const std::vector<cplx>& Q, const std::vector<cplx>& R) const;
  // M11, M12, M21, M22, Delta at one w, straight from the determinants.
  std::array<cplx, 5> cramer_at(const std::vector<cplx>& Q, const std::vector<cplx>& R, cplx w) const;

  struct Support {
    int lo = 0, hi = 0;
  };
  const std::array<Support, 5>& support() const { return support_; }

 private:
  ButcherTableau tab_;
  std::array<Support, 5> support_;
  std::size_t L_ = 1;
};

StepTM step_tm_generic_rk(const ButcherTableau& tab, const std::vector<cplx>& Q, int kappa);
StepTM step_tm_rk6(const std::vector<cplx>& Q, int kappa);

// Inverse of the midpoint scheme's map R -> H = kappa*conj(G).
cplx recover_potential_im(cplx H, int kappa);

// Multistep block: first block row -M^(1) .. -M^(m), Theta on the block
// subdiagonal. Entries are polynomials in w = exp(2iζh).
struct LmmBlock {
  PolyMatrix Mcal;
  cplx theta = 1.0;
  std::vector<PolyMat2> blocks;  // blocks[k-1] = M^(k)
};
// Qwin = (Q_n, ..., Q_{n+m}).
LmmBlock lmm_block_tm(const LmmCoefficients& coeff, const std::vector<cplx>& Qwin, int kappa);

// ---------------------------------------------------------------------------
// Scheme catalog.

enum class SchemeKind { RungeKutta, Multistep };

struct Scheme {
  std::string id;
  SchemeKind kind = SchemeKind::RungeKutta;
  RkMethod method = RkMethod::IM;
  bool closed_form = false;
  ButcherTableau tab;
  LmmCoefficients lmm;
  std::shared_ptr<const GenericRkBuilder> builder;  // set for generic RK schemes
  int poly_nu = 1;    // nu of the z variable in the step matrices
  int sample_nu = 1;  // grid.nu must be a multiple of this
  double tau = 0.0;
  int order = 0;

  bool is_lmm() const { return kind == SchemeKind::Multistep; }
};

// Names: im, lobatto3a2, lobatto3b2, rk3, lobatto3a4, lobatto3b4, rk4, rk6,
// collocN (N >= 2), ea1..ea5, ia1..ia4, bdf1..bdf6. A "generic-" prefix on
// an RK name forces the determinant builder.
Scheme make_scheme(const std::string& name);
std::vector<std::string> scheme_catalog();
std::string scheme_catalog_text();

// h*q at the stage nodes of segment n (rotated by shift segments).
std::vector<cplx> stage_samples(const SignalGrid& g, const Scheme& s, long long n, long long shift = 0);
StepTM build_step(const Scheme& s, const std::vector<cplx>& Q, int kappa);

}  // namespace zsfast
