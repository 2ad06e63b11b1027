#pragma once

// Semicircle and Beta laws, and the Beta Stein equation
//   w(1-w) f'(w) + (alpha(1-w) - beta w) f(w) = h(w) - E h(Z),  Z ~ Beta(alpha, beta).

#include <functional>
#include <string>
#include <vector>

namespace firstswap {

double semicircle_pdf(double s);
/// 1/2 + (s sqrt(1-s^2) + asin s)/pi on (-1, 1), clipped outside.
double semicircle_cdf(double s);
/// Antiderivative of semicircle_cdf vanishing at -1 (and equal to s for s >= 1).
double semicircle_cdf_integral(double s);

/// Normalized Beta density. Throws DomainError for nonpositive parameters.
double beta_pdf(double z, double alpha, double beta);
/// Regularized incomplete beta I_z(alpha, beta), clipped outside [0, 1].
double beta_cdf(double z, double alpha, double beta);
/// Antiderivative of beta_cdf vanishing at 0: z I_z(a,b) - a/(a+b) I_z(a+1,b).
double beta_cdf_integral(double z, double alpha, double beta);

struct BetaMoments {
  double mean;
  double second_moment;
};
BetaMoments beta_moments(double alpha, double beta);

/// Semicircle on (-1, 1) or Beta(alpha, beta) on (0, 1).
class ContinuousLaw {
 public:
  enum class Kind { Semicircle, Beta };

  static ContinuousLaw semicircle() { return ContinuousLaw(Kind::Semicircle, 0.0, 0.0); }
  /// Throws DomainError for nonpositive parameters.
  static ContinuousLaw beta(double alpha, double beta);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double lower() const { return kind_ == Kind::Semicircle ? -1.0 : 0.0; }
  double upper() const { return 1.0; }

  double pdf(double x) const;
  double cdf(double x) const;
  /// Antiderivative of cdf, zero at lower(). Closed form for both kinds.
  double cdf_integral(double x) const;
  double mean() const;
  double second_moment() const;

  /// {"kind":..., "alpha":..., "beta":...} with this key order.
  std::string to_json() const;
  static ContinuousLaw from_json(const std::string& text);

  friend bool operator==(const ContinuousLaw&, const ContinuousLaw&) = default;

 private:
  ContinuousLaw(Kind kind, double alpha, double beta) : kind_(kind), alpha_(alpha), beta_(beta) {}

  Kind kind_;
  double alpha_;
  double beta_;
};

/// A test function h with its Lipschitz constant sup|h'| on [0, 1].
struct LipschitzFunction {
  std::string name;
  std::function<double(double)> h;
  double lipschitz = 1.0;
};

/// A continuously differentiable function with its derivative.
struct SmoothFunction {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> fprime;
};

struct SteinSolution {
  double alpha = 0.0;
  double beta = 0.0;
  double h_mean = 0.0;  // E h(Z)
  std::vector<double> grid;
  std::vector<double> f;
  std::vector<double> fprime;
  /// |w(1-w) f'_fd + (alpha(1-w) - beta w) f - (h - Eh)| with f'_fd a
  /// finite-difference derivative of independently evaluated f; 0 at w in {0,1}.
  std::vector<double> residual;
  double sup_f = 0.0;
  double sup_fprime = 0.0;  // over interior grid points
  double max_residual = 0.0;
  double lipschitz = 1.0;

  /// w,f,fprime,residual rows with a header line.
  std::string to_csv() const;
};

/// Solves the Beta Stein equation on a uniform grid of [0, 1] with
/// grid_size points via
///   f(w) = int_0^w (h - Eh) rho / (w(1-w) rho(w)),
/// switching to -int_w^1 on the right half. f' comes from the equation
/// itself. Throws DomainError for grid_size < 100 or non-finite h,
/// QuadratureError on non-convergence.
SteinSolution solve_stein_equation(const LipschitzFunction& h, double alpha, double beta, int grid_size = 1001);

/// Pointwise value of the Stein solution at w in [0, 1] given E h(Z).
double stein_solution_at(const std::function<double(double)>& h, double h_mean, double alpha, double beta, double w);

/// E[Z(1-Z) f'(Z) + (alpha(1-Z) - beta Z) f(Z)], zero for admissible f.
double check_beta_stein_characterization(const SmoothFunction& f, double alpha, double beta);

/// E h(Z) for Z ~ Beta(alpha, beta).
double beta_expectation(const std::function<double(double)>& h, double alpha, double beta, double abs_tol = 1e-13);

}  // namespace firstswap
