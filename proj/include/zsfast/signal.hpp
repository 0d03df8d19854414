#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "zsfast/fft.hpp"

namespace zsfast {

enum class Boundary { Vanishing, Periodic };

// Samples of q on [T1, T2] at every substep node t = T1 + i*h/nu,
// i = 0 .. nu*N_seg (the last one sits on T2).
struct SignalGrid {
  std::vector<cplx> samples;
  double T1 = 0.0, T2 = 0.0, h = 0.0;
  int nu = 1;
  long long N_seg = 0;
  int kappa = -1;
  Boundary boundary = Boundary::Vanishing;
  // h*ell_plus = T2, h*ell_minus = -T1.
  long long ell_plus = 0, ell_minus = 0;

  std::size_t size() const { return samples.size(); }
  double time(long long idx) const;
  // Inverse of time(); throws GridError if t is not a node.
  long long index(double t) const;
  // q(t_n + k h / nu); negative or past-the-end indices read as 0 in
  // vanishing mode and wrap in periodic mode.
  cplx at(long long n, long long k = 0) const;
  cplx at_index(long long idx) const;
};

// Validates geometry and fills the bookkeeping fields.
SignalGrid make_grid(std::vector<cplx> samples, double T1, double T2, long long N_seg, int nu, int kappa = -1,
                     Boundary boundary = Boundary::Vanishing);

SignalGrid sample_function(const std::function<cplx(double)>& q, double T1, double T2, long long N_seg, int nu,
                           int kappa = -1, Boundary boundary = Boundary::Vanishing);

struct SignalSpec {
  enum class Kind { Rectangle, Sech, Samples };
  Kind kind = Kind::Rectangle;
  cplx amplitude = 0.0;
  double support_lo = 0.0, support_hi = 0.0;  // Rectangle: half-open [lo, hi)
  double width = 1.0;                         // Sech: A sech(t / width)
  std::string file;                           // Samples: CSV with header t,re,im

  // Optional defaults carried by a JSON spec; NaN / 0 mean unset.
  double T1 = std::numeric_limits<double>::quiet_NaN();
  double T2 = std::numeric_limits<double>::quiet_NaN();
  long long N_seg = 0;
  int kappa = -1;
  Boundary boundary = Boundary::Vanishing;

  // Analytic value; not available for Samples.
  cplx value(double t) const;
};

SignalGrid sample_signal(const SignalSpec& spec, double T1, double T2, long long N_seg, int nu);
SignalGrid sample_signal(const SignalSpec& spec, double T1, double T2, long long N_seg, int nu, int kappa,
                         Boundary boundary);

// Trapezoidal estimate of the L1 norm of q over [T1, T2].
double l1_norm(const SignalGrid& grid);

struct SampleFile {
  std::vector<double> t;
  std::vector<cplx> q;
};
SampleFile load_samples_csv(const std::string& path);

SignalSpec signal_spec_from_json(const std::string& text, const std::string& base_dir = "");
SignalSpec load_signal_spec(const std::string& path);

const char* boundary_name(Boundary b);

}  // namespace zsfast
