#pragma once

// Wasserstein-1 distance between a finite atomic law and a continuous law
// on the line, computed as the integral of |F_mu - F_nu|, and the two-sided
// bound certificates for the rescaled first-letter law.

#include "firstswap/continuous.hpp"
#include "firstswap/rational.hpp"

#include <vector>

namespace firstswap {

struct Atom {
  double location;
  Rational mass;
};

/// Atoms with strictly increasing locations and positive exact masses
/// summing to one. Throws DomainError otherwise.
class DiscreteAtomLaw {
 public:
  explicit DiscreteAtomLaw(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
};

/// Law of W_n = X/n (scale = 1/n, shift = 0) or of a*X/n + b in general.
DiscreteAtomLaw first_letter_atoms(int n, double scale_numerator = 1.0, double shift = 0.0);

struct WassersteinResult {
  double distance = 0.0;
  double abs_error_bound = 0.0;
};

enum class CdfIntegration {
  ClosedForm,  // antiderivative of F_nu, crossing points by bisection
  Quadrature,  // adaptive Gauss-Kronrod on |c - F_nu| per piece
};

/// d_W(mu, nu) = int |F_mu - F_nu|. For Quadrature, quad_tol is the total
/// absolute tolerance handed to the integrator.
WassersteinResult wasserstein_1d(const DiscreteAtomLaw& mu, const ContinuousLaw& nu,
                                 CdfIntegration method = CdfIntegration::ClosedForm, double quad_tol = 1e-11);

/// d_W between two atomic laws: int |F_mu - F_nu| over the merged atom
/// set, exact up to the final rounding of each stretch.
double wasserstein_1d(const DiscreteAtomLaw& mu, const DiscreteAtomLaw& nu);

struct DistanceReport {
  int n = 0;
  double distance = 0.0;
  double abs_error_bound = 0.0;
  double lower_paper = 0.0;
  double lower_witness = 0.0;
  double upper_paper = 0.0;
  /// lower_paper - tol <= distance <= upper_paper + tol, tol = abs_error_bound + 1e-9.
  bool pass = false;
  /// distance >= lower_witness - 1e-10.
  bool witness_ok = false;
  /// Scaled reports only: 2 d_W(W_n, Z), and whether distance matches it within 2e-10.
  double beta_distance_doubled = 0.0;
  bool scaling_ok = true;

  bool all_ok() const { return pass && witness_ok && scaling_ok; }
};

/// d_W(X/n, Beta(3/2,3/2)) against [1/(32n), 59/(2n)] and the witness (2+n)/(32n^2).
DistanceReport distance_report(int n);

/// d_W(2X/n - 1, semicircle) against [1/(16n), 59/n], with the scaling
/// check against 2 d_W(X/n, Beta(3/2,3/2)).
DistanceReport scaled_distance_report(int n);

/// |E(W^2/2) - E(Z^2/2)| from exact moments, equal to (2+n)/(32n^2).
Rational lower_bound_witness(int n);

/// distance_report for every n in [first, last], ascending, computed on
/// up to `threads` workers (0 = hardware concurrency).
std::vector<DistanceReport> bounds_sweep(int first, int last, unsigned threads = 0, bool scaled = false);

}  // namespace firstswap
