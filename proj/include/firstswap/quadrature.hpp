#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace firstswap {

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double a, double b, double value, double error, double tolerance);

  double a, b, value, error, tolerance;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

/// Adaptive double-exponential (tanh-sinh) quadrature of f over [a, b] to
/// absolute tolerance abs_tol. Endpoint singularities of algebraic type are
/// fine; f is never evaluated at a or b. Throws QuadratureError when the
/// error estimate stays above abs_tol.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol);

/// Adaptive Gauss-Kronrod (15-point) integration with bisection of the
/// interval of largest error, for smooth integrands.
QuadratureResult integrate_gk(const std::function<double(double)>& f, double a, double b, double abs_tol,
                              int max_intervals = 4000);

/// Root of an increasing g on [lo, hi] with g(lo) <= 0 <= g(hi), by
/// bisection. Stops after max_iter halvings or when the bracket collapses.
double bisect_increasing(const std::function<double(double)>& g, double lo, double hi, int max_iter = 200);

}  // namespace firstswap
