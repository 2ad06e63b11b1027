#include "firstswap/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace firstswap {

namespace {

std::string describe(const std::string& what, double a, double b, double value, double error, double tol) {
  std::ostringstream os;
  os.precision(17);
  os << what << " on [" << a << ", " << b << "]: value " << value << ", error estimate " << error
     << " exceeds tolerance " << tol;
  return os.str();
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

QuadratureError::QuadratureError(const std::string& what, double a_, double b_, double value_, double error_,
                                 double tolerance_)
    : std::runtime_error(describe(what, a_, b_, value_, error_, tolerance_)),
      a(a_), b(b_), value(value_), error(error_), tolerance(tolerance_) {}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  if (!(a < b)) return {0.0, 0.0};
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  double error = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  // tanh_sinh's tolerance is relative to the L1 norm; a coarse pass gives
  // the scale, a second pass tightens to the absolute target.
  double value = integrator.integrate(f, a, b, 1e-6, &error, &l1, &levels);
  if (error > abs_tol) {
    const double rel = std::max(abs_tol / std::max(l1, std::numeric_limits<double>::min()), 4 * kEps);
    value = integrator.integrate(f, a, b, rel, &error, &l1, &levels);
  }
  if (!std::isfinite(value)) throw QuadratureError("non-finite integrand", a, b, value, error, abs_tol);
  // Once the estimate is at the rounding floor of the L1 norm it cannot
  // shrink further; accept it.
  const double floor = 64 * kEps * l1;
  if (error > abs_tol && error > floor) throw QuadratureError("tanh-sinh did not converge", a, b, value, error, abs_tol);
  return {value, std::max(error, floor)};
}

QuadratureResult integrate_gk(const std::function<double(double)>& f, double a, double b, double abs_tol,
                              int max_intervals) {
  if (!(a < b)) return {0.0, 0.0};
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  struct Piece {
    double lo, hi, value, error;
  };
  auto eval = [&](double lo, double hi) {
    double err = 0.0;
    const double v = GK::integrate(f, lo, hi, 0, 0.0, &err);
    return Piece{lo, hi, v, err};
  };
  std::vector<Piece> pieces{eval(a, b)};
  auto total = [&] {
    double v = 0.0, e = 0.0;
    for (const auto& p : pieces) {
      v += p.value;
      e += p.error;
    }
    return QuadratureResult{v, e};
  };
  QuadratureResult r = total();
  while (r.error > abs_tol) {
    if (static_cast<int>(pieces.size()) >= max_intervals) {
      throw QuadratureError("Gauss-Kronrod interval budget exhausted", a, b, r.value, r.error, abs_tol);
    }
    auto worst = std::max_element(pieces.begin(), pieces.end(),
                                  [](const Piece& x, const Piece& y) { return x.error < y.error; });
    const double mid = 0.5 * (worst->lo + worst->hi);
    if (!(worst->lo < mid && mid < worst->hi)) break;  // interval at machine resolution
    const Piece left = eval(worst->lo, mid);
    *worst = eval(mid, worst->hi);
    pieces.push_back(left);
    r = total();
  }
  if (!std::isfinite(r.value)) throw QuadratureError("non-finite integrand", a, b, r.value, r.error, abs_tol);
  return r;
}

double bisect_increasing(const std::function<double(double)>& g, double lo, double hi, int max_iter) {
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(lo < mid && mid < hi)) break;
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace firstswap
