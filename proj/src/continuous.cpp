#include "firstswap/continuous.hpp"

#include "firstswap/errors.hpp"
#include "firstswap/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace firstswap {

namespace {

constexpr double kPi = std::numbers::pi;
// Within this distance of +-1 the semicircle CDF switches to its endpoint series.
constexpr double kEndpointSeries = 1e-8;

void require_positive(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("Beta parameters must be positive and finite");
  }
}

// (2/pi) int_{1-t}^1 sqrt(1-x^2) dx for small t.
double semicircle_tail_series(double t) {
  const double t32 = t * std::sqrt(t);
  return (2.0 * std::numbers::sqrt2 / kPi) * (2.0 / 3.0 * t32 - 0.1 * t32 * t);
}

double log_beta_pdf(double z, double alpha, double beta) {
  return (alpha - 1.0) * std::log(z) + (beta - 1.0) * std::log1p(-z) - std::log(boost::math::beta(alpha, beta));
}

bool is_three_halves(double alpha, double beta) { return alpha == 1.5 && beta == 1.5; }

}  // namespace

double semicircle_pdf(double s) {
  if (!(s > -1.0 && s < 1.0)) return 0.0;
  return (2.0 / kPi) * std::sqrt((1.0 - s) * (1.0 + s));
}

double semicircle_cdf(double s) {
  if (s <= -1.0) return 0.0;
  if (s >= 1.0) return 1.0;
  if (1.0 - s < kEndpointSeries) return 1.0 - semicircle_tail_series(1.0 - s);
  if (1.0 + s < kEndpointSeries) return semicircle_tail_series(1.0 + s);
  const double root = std::sqrt((1.0 - s) * (1.0 + s));
  return std::clamp(0.5 + (s * root + std::asin(s)) / kPi, 0.0, 1.0);
}

double semicircle_cdf_integral(double s) {
  if (s <= -1.0) return 0.0;
  if (s >= 1.0) return s;
  const double q = (1.0 - s) * (1.0 + s);
  const double root = std::sqrt(q);
  return 0.5 * s + (-q * root / 3.0 + s * std::asin(s) + root) / kPi;
}

double beta_pdf(double z, double alpha, double beta) {
  require_positive(alpha, beta);
  if (!(z > 0.0 && z < 1.0)) return 0.0;
  return std::exp(log_beta_pdf(z, alpha, beta));
}

double beta_cdf(double z, double alpha, double beta) {
  require_positive(alpha, beta);
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  return boost::math::ibeta(alpha, beta, z);
}

double beta_cdf_integral(double z, double alpha, double beta) {
  require_positive(alpha, beta);
  if (z <= 0.0) return 0.0;
  const double mean = alpha / (alpha + beta);
  if (z >= 1.0) return (1.0 - mean) + (z - 1.0);
  if (is_three_halves(alpha, beta)) return 0.5 * semicircle_cdf_integral(2.0 * z - 1.0);
  return z * boost::math::ibeta(alpha, beta, z) - mean * boost::math::ibeta(alpha + 1.0, beta, z);
}

BetaMoments beta_moments(double alpha, double beta) {
  require_positive(alpha, beta);
  const double sum = alpha + beta;
  return {alpha / sum, alpha * (alpha + 1.0) / (sum * (sum + 1.0))};
}

ContinuousLaw ContinuousLaw::beta(double alpha, double beta) {
  require_positive(alpha, beta);
  return ContinuousLaw(Kind::Beta, alpha, beta);
}

double ContinuousLaw::pdf(double x) const {
  return kind_ == Kind::Semicircle ? semicircle_pdf(x) : beta_pdf(x, alpha_, beta_);
}

double ContinuousLaw::cdf(double x) const {
  return kind_ == Kind::Semicircle ? semicircle_cdf(x) : beta_cdf(x, alpha_, beta_);
}

double ContinuousLaw::cdf_integral(double x) const {
  return kind_ == Kind::Semicircle ? semicircle_cdf_integral(x) : beta_cdf_integral(x, alpha_, beta_);
}

double ContinuousLaw::mean() const {
  return kind_ == Kind::Semicircle ? 0.0 : beta_moments(alpha_, beta_).mean;
}

double ContinuousLaw::second_moment() const {
  return kind_ == Kind::Semicircle ? 0.25 : beta_moments(alpha_, beta_).second_moment;
}

std::string ContinuousLaw::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind_ == Kind::Semicircle ? "semicircle" : "beta";
  j["alpha"] = alpha_;
  j["beta"] = beta_;
  return j.dump();
}

ContinuousLaw ContinuousLaw::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "semicircle") return semicircle();
  if (kind == "beta") return beta(j.at("alpha").get<double>(), j.at("beta").get<double>());
  throw DomainError("unknown law kind '" + kind + "'");
}

double beta_expectation(const std::function<double(double)>& h, double alpha, double beta, double abs_tol) {
  require_positive(alpha, beta);
  return integrate([&](double z) { return h(z) * beta_pdf(z, alpha, beta); }, 0.0, 1.0, abs_tol).value;
}

double stein_solution_at(const std::function<double(double)>& h, double h_mean, double alpha, double beta, double w) {
  if (w <= 0.0) return (h(0.0) - h_mean) / alpha;
  if (w >= 1.0) return -(h(1.0) - h_mean) / beta;
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  // Work with rho scaled by B(alpha, beta); the factor cancels in the ratio.
  const double log_norm = std::log(boost::math::beta(alpha, beta));
  auto weight = [&](double t) { return std::exp(log_beta_pdf(t, alpha, beta) + log_norm); };
  auto integrand = [&](double t) { return (h(t) - h_mean) * weight(t); };
  double err = 0.0;
  const double numerator = w <= 0.5 ? integrator.integrate(integrand, 0.0, w, 1e-14, &err)
                                    : -integrator.integrate(integrand, w, 1.0, 1e-14, &err);
  if (!std::isfinite(numerator)) throw QuadratureError("Stein numerator not finite", 0.0, w, numerator, err, 1e-14);
  return numerator / (w * (1.0 - w) * weight(w));
}

SteinSolution solve_stein_equation(const LipschitzFunction& h, double alpha, double beta, int grid_size) {
  require_positive(alpha, beta);
  if (grid_size < 100) throw DomainError("Stein solver grid needs at least 100 points");
  SteinSolution out;
  out.alpha = alpha;
  out.beta = beta;
  out.lipschitz = h.lipschitz;

  const std::size_t m = static_cast<std::size_t>(grid_size);
  out.grid.resize(m);
  std::vector<double> hv(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.grid[i] = static_cast<double>(i) / static_cast<double>(m - 1);
    hv[i] = h.h(out.grid[i]);
    if (!std::isfinite(hv[i])) {
      throw DomainError("test function '" + h.name + "' is not finite at w=" + std::to_string(out.grid[i]));
    }
  }
  out.h_mean = beta_expectation(h.h, alpha, beta);

  auto f_at = [&](double w) { return stein_solution_at(h.h, out.h_mean, alpha, beta, w); };
  out.f.resize(m);
  out.fprime.resize(m);
  out.residual.assign(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) out.f[i] = f_at(out.grid[i]);

  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double w = out.grid[i];
    const double drift = alpha * (1.0 - w) - beta * w;
    const double rhs = hv[i] - out.h_mean;
    const double curv = w * (1.0 - w);
    out.fprime[i] = (rhs - drift * out.f[i]) / curv;

    const double step = std::min({1e-3, w / 4.0, (1.0 - w) / 4.0});
    const double fd = (f_at(w - 2 * step) - 8.0 * f_at(w - step) + 8.0 * f_at(w + step) - f_at(w + 2 * step)) /
                      (12.0 * step);
    out.residual[i] = std::abs(curv * fd + drift * out.f[i] - rhs);
  }
  // One-sided linear extrapolation of f' to the endpoints.
  out.fprime[0] = 2.0 * out.fprime[1] - out.fprime[2];
  out.fprime[m - 1] = 2.0 * out.fprime[m - 2] - out.fprime[m - 3];
  out.residual[0] = std::abs(alpha * out.f[0] - (hv[0] - out.h_mean));
  out.residual[m - 1] = std::abs(-beta * out.f[m - 1] - (hv[m - 1] - out.h_mean));

  for (std::size_t i = 0; i < m; ++i) {
    out.sup_f = std::max(out.sup_f, std::abs(out.f[i]));
    out.max_residual = std::max(out.max_residual, out.residual[i]);
    if (i > 0 && i + 1 < m) out.sup_fprime = std::max(out.sup_fprime, std::abs(out.fprime[i]));
  }
  return out;
}

std::string SteinSolution::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "w,f,fprime,residual\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << grid[i] << ',' << f[i] << ',' << fprime[i] << ',' << residual[i] << '\n';
  }
  return os.str();
}

double check_beta_stein_characterization(const SmoothFunction& f, double alpha, double beta) {
  require_positive(alpha, beta);
  auto integrand = [&](double z) {
    return (z * (1.0 - z) * f.fprime(z) + (alpha * (1.0 - z) - beta * z) * f.f(z)) * beta_pdf(z, alpha, beta);
  };
  return integrate(integrand, 0.0, 1.0, 1e-10).value;
}

}  // namespace firstswap
