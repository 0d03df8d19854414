#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace zsfast {

using Rational = boost::multiprecision::cpp_rational;

enum class RkMethod {
  IM,
  LobattoIIIA2,
  LobattoIIIB2,
  RK3,
  LobattoIIIA4,
  LobattoIIIB4,
  RK4,
  RK6,
  Collocation
};

struct ButcherTableau {
  std::string name;
  std::vector<std::vector<Rational>> A_exact;
  std::vector<Rational> b_exact, c_exact;
  // Floating copies, converted once.
  std::vector<std::vector<double>> A;
  std::vector<double> b, c;
  int order = 0;
  // Every c_k equals n[k] / nu.
  int nu = 1;
  std::vector<int> n;

  int stages() const { return static_cast<int>(b.size()); }
  bool explicit_method() const;
};

// Fills the floating copies and nu/n from the exact entries, checking the
// structural invariants (row count, c in [0,1], sum b = 1).
ButcherTableau make_tableau(std::string name, std::vector<std::vector<Rational>> A, std::vector<Rational> b,
                            std::vector<Rational> c, int order);

ButcherTableau tableau(RkMethod m, int stages = 0);
ButcherTableau collocation_tableau(int s);

enum class LmmFamily { ExplicitAdams, ImplicitAdams, BDF };

struct LmmCoefficients {
  std::string name;
  LmmFamily family = LmmFamily::ExplicitAdams;
  // alpha[s], beta[s] multiply y_{n+s}, s = 0..m; alpha[m] = 1.
  std::vector<double> alpha, beta;
  int order = 0;

  int steps() const { return static_cast<int>(alpha.size()) - 1; }
  bool implicit_method() const { return beta.back() != 0.0; }
};

// m is the step count. Explicit Adams m = 1..5 (order m), implicit Adams
// m = 1..4 (order m+1), BDF m = 1..6 (order m). Checks the root condition.
LmmCoefficients lmm_coefficients(LmmFamily f, int m);

// Roots of sum_s alpha[s] x^s in the closed unit disk, simple on the circle.
bool satisfies_root_condition(const std::vector<double>& alpha, double tol = 1e-10);

}  // namespace zsfast
