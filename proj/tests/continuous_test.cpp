#include "firstswap/acceptance.hpp"
#include "firstswap/continuous.hpp"
#include "firstswap/errors.hpp"
#include "firstswap/quadrature.hpp"
#include "firstswap/random.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace firstswap {
namespace {

using std::numbers::pi;

// Reference integral straight from Boost's tanh-sinh at its default
// tolerance, kept separate from the library's own adaptive wrapper.
template <class F>
double reference_integral(F f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, a, b);
}

TEST(Semicircle, DensityValues) {
  EXPECT_DOUBLE_EQ(semicircle_pdf(0.0), 2.0 / pi);
  EXPECT_DOUBLE_EQ(semicircle_pdf(0.6), 2.0 / pi * 0.8);
  EXPECT_EQ(semicircle_pdf(1.5), 0.0);
  EXPECT_EQ(semicircle_pdf(-1.0), 0.0);
}

TEST(Semicircle, CdfValues) {
  EXPECT_DOUBLE_EQ(semicircle_cdf(0.0), 0.5);
  EXPECT_EQ(semicircle_cdf(-2.0), 0.0);
  EXPECT_EQ(semicircle_cdf(1.0), 1.0);
  // High-precision reference value at s = 1/2.
  EXPECT_NEAR(semicircle_cdf(0.5), 0.80449889052211467904, 2e-16);
  for (double s = -0.95; s < 1.0; s += 0.05) EXPECT_NEAR(semicircle_cdf(s) + semicircle_cdf(-s), 1.0, 4e-16);
}

TEST(Semicircle, NormalizedAndMonotone) {
  EXPECT_NEAR(reference_integral([](double s) { return semicircle_pdf(s); }, -1.0, 1.0), 1.0, 1e-13);
  EXPECT_NEAR(integrate([](double s) { return semicircle_pdf(s); }, -1.0, 1.0, 1e-12).value, 1.0, 1e-12);
  double prev = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double s = -1.0 + i / 2000.0;
    const double F = semicircle_cdf(s);
    ASSERT_GE(F, prev);
    ASSERT_GE(F, 0.0);
    ASSERT_LE(F, 1.0);
    prev = F;
  }
}

TEST(Semicircle, CdfDerivativeIsDensity) {
  const double h = 1e-5;
  for (double s = -0.99; s < 0.99; s += 0.01) {
    const double fd = (semicircle_cdf(s + h) - semicircle_cdf(s - h)) / (2 * h);
    ASSERT_NEAR(fd, semicircle_pdf(s), 1e-6) << s;
  }
}

TEST(Semicircle, CdfMatchesQuadratureOfDensity) {
  for (double s = -0.9; s <= 0.9; s += 0.15) {
    const double q = reference_integral([](double t) { return semicircle_pdf(t); }, -1.0, s);
    EXPECT_NEAR(semicircle_cdf(s), q, 1e-12) << s;
  }
}

TEST(Semicircle, StableNearEndpoints) {
  // F(-1 + t) ~ (2 sqrt 2 / pi)(2/3 t^{3/2} - t^{5/2}/10), and the same for 1 - F(1 - t).
  auto tail = [](double t) { return (2.0 * std::sqrt(2.0) / pi) * (2.0 / 3.0 * std::pow(t, 1.5) - std::pow(t, 2.5) / 10); };
  for (double t : {1e-14, 1e-12, 1e-10, 1e-9, 3e-9}) {
    const double s = -1.0 + t;
    const double exact_t = s + 1.0;  // t after rounding of s
    EXPECT_NEAR(semicircle_cdf(s), tail(exact_t), 1e-12 * tail(exact_t));
    EXPECT_NEAR(1.0 - semicircle_cdf(-s), tail(exact_t), 1e-15);
  }
}

TEST(Semicircle, CdfIntegralMatchesQuadrature) {
  for (double s = -1.0; s <= 1.0; s += 0.125) {
    const double q = s <= -1.0 ? 0.0 : reference_integral([](double t) { return semicircle_cdf(t); }, -1.0, s);
    EXPECT_NEAR(semicircle_cdf_integral(s), q, 1e-12) << s;
  }
  EXPECT_DOUBLE_EQ(semicircle_cdf_integral(1.0), 1.0);
  EXPECT_DOUBLE_EQ(semicircle_cdf_integral(2.5), 2.5);
  EXPECT_EQ(semicircle_cdf_integral(-3.0), 0.0);
}

TEST(Beta, DensityAndCdfValues) {
  // Beta(1,1) is uniform; Beta(2,1) has F(z) = z^2.
  EXPECT_DOUBLE_EQ(beta_pdf(0.3, 1, 1), 1.0);
  EXPECT_NEAR(beta_cdf(0.3, 2, 1), 0.09, 1e-16);
  EXPECT_NEAR(beta_pdf(0.5, 1.5, 1.5), 8.0 / pi * 0.5, 1e-15);  // B(3/2,3/2) = pi/8
  EXPECT_EQ(beta_cdf(-0.1, 2, 3), 0.0);
  EXPECT_EQ(beta_cdf(1.1, 2, 3), 1.0);
  EXPECT_THROW(beta_pdf(0.5, 0.0, 1.0), DomainError);
  EXPECT_THROW(ContinuousLaw::beta(-1.0, 2.0), DomainError);
}

TEST(Beta, NormalizedForAsymmetricParameters) {
  // With z = 1 - u^2 the density in u is 2 (1 - u^2)^{a-1} / B(a, 1/2), free
  // of the (1-z)^{-1/2} singularity. Written out by hand so the rounding of
  // 1 - u^2 near u = 0 does not drop mass.
  const double a = 4.0 / pi, b = 0.5;
  const double norm = std::beta(a, b);
  auto smooth = [&](double u) { return 2 * std::pow(1 - u * u, a - 1) / norm; };
  EXPECT_NEAR(smooth(0.3), 2 * 0.3 * beta_pdf(1 - 0.09, a, b), 1e-13);
  EXPECT_NEAR(reference_integral(smooth, 0.0, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(1.0 - beta_cdf(0.7, a, b), reference_integral(smooth, 0.0, std::sqrt(0.3)), 1e-12);
}

TEST(Beta, ThreeHalvesIsRescaledSemicircle) {
  for (int i = 0; i <= 1000; ++i) {
    const double z = i / 1000.0;
    ASSERT_NEAR(beta_cdf(z, 1.5, 1.5), semicircle_cdf(2 * z - 1), 1e-14) << z;
    ASSERT_NEAR(beta_pdf(z, 1.5, 1.5), 2 * semicircle_pdf(2 * z - 1), 1e-13) << z;
  }
}

TEST(Beta, CdfIntegralMatchesQuadrature) {
  const std::pair<double, double> params[] = {{1.5, 1.5}, {2.0, 3.0}, {0.5, 0.5}, {4.0 / pi, 0.5}, {1.0, 1.0}};
  for (const auto& [a, b] : params) {
    for (double z = 0.05; z <= 1.0; z += 0.1) {
      const double q = reference_integral([&](double t) { return beta_cdf(t, a, b); }, 0.0, z);
      EXPECT_NEAR(beta_cdf_integral(z, a, b), q, 1e-12) << a << "," << b << " z=" << z;
    }
    // int_0^1 F = 1 - mean.
    EXPECT_NEAR(beta_cdf_integral(1.0, a, b), 1.0 - a / (a + b), 1e-14);
  }
}

TEST(Beta, Moments) {
  const auto m = beta_moments(1.5, 1.5);
  EXPECT_DOUBLE_EQ(m.mean, 0.5);
  EXPECT_DOUBLE_EQ(m.second_moment, 5.0 / 16.0);
  const auto m2 = beta_moments(2.0, 3.0);
  EXPECT_DOUBLE_EQ(m2.mean, 0.4);
  EXPECT_DOUBLE_EQ(m2.second_moment, 0.2);
  const auto law = ContinuousLaw::beta(2.0, 5.0);
  EXPECT_NEAR(law.second_moment(), reference_integral([&](double z) { return z * z * law.pdf(z); }, 0.0, 1.0), 1e-13);
  EXPECT_DOUBLE_EQ(ContinuousLaw::semicircle().mean(), 0.0);
  EXPECT_DOUBLE_EQ(ContinuousLaw::semicircle().second_moment(), 0.25);
}

TEST(ContinuousLawJson, RoundTrip) {
  for (const auto& law : {ContinuousLaw::semicircle(), ContinuousLaw::beta(1.5, 1.5), ContinuousLaw::beta(4.0 / pi, 0.1)}) {
    EXPECT_EQ(ContinuousLaw::from_json(law.to_json()), law);
  }
  EXPECT_EQ(ContinuousLaw::beta(2, 3).to_json().find("\"kind\""), 1u);
}

// Exact solutions for Z ~ Beta(3/2, 3/2):
//   h(w) = w      gives f == -1/3,
//   h(w) = w^2/2  gives f(w) = -w/8 - 5/48.
TEST(SteinSolver, ExactPolynomialSolutions) {
  const auto lin = solve_stein_equation({"w", [](double w) { return w; }, 1.0}, 1.5, 1.5);
  for (std::size_t i = 0; i < lin.grid.size(); ++i) {
    ASSERT_NEAR(lin.f[i], -1.0 / 3.0, 1e-10) << lin.grid[i];
    ASSERT_NEAR(lin.fprime[i], 0.0, 1e-8) << lin.grid[i];
  }
  EXPECT_NEAR(lin.sup_f, 1.0 / 3.0, 1e-10);
  EXPECT_NEAR(lin.h_mean, 0.5, 1e-14);

  const auto quad = solve_stein_equation({"w^2/2", [](double w) { return w * w / 2; }, 1.0}, 1.5, 1.5, 501);
  for (std::size_t i = 0; i < quad.grid.size(); ++i) {
    const double w = quad.grid[i];
    ASSERT_NEAR(quad.f[i], -w / 8 - 5.0 / 48.0, 1e-10) << w;
    ASSERT_NEAR(quad.fprime[i], -1.0 / 8.0, 1e-7) << w;
  }
  EXPECT_NEAR(quad.sup_f, 11.0 / 48.0, 1e-10);
  EXPECT_NEAR(quad.sup_fprime, 1.0 / 8.0, 1e-7);
  EXPECT_LT(quad.max_residual, 1e-8);
}

TEST(SteinSolver, ConstantFunctionGivesZero) {
  const auto s = solve_stein_equation({"const", [](double) { return 2.5; }, 0.0}, 1.5, 1.5, 201);
  EXPECT_LT(s.sup_f, 1e-12);
  EXPECT_LT(s.sup_fprime, 1e-10);
}

TEST(SteinSolver, GridAndCsv) {
  const auto s = solve_stein_equation({"sin", [](double w) { return std::sin(w); }, 1.0}, 1.5, 1.5, 101);
  ASSERT_EQ(s.grid.size(), 101u);
  EXPECT_EQ(s.grid.front(), 0.0);
  EXPECT_EQ(s.grid.back(), 1.0);
  const auto csv = s.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "w,f,fprime,residual");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 102);
}

TEST(SteinSolver, RejectsBadInput) {
  const LipschitzFunction h{"w", [](double w) { return w; }, 1.0};
  EXPECT_THROW(solve_stein_equation(h, 1.5, 1.5, 99), DomainError);
  EXPECT_THROW(solve_stein_equation({"nan", [](double) { return std::nan(""); }, 1.0}, 1.5, 1.5), DomainError);
  EXPECT_THROW(solve_stein_equation(h, 0.0, 1.5), DomainError);
}

TEST(SteinSolver, FamilyBoundsHold) {
  for (const auto& h : lipschitz_family()) {
    const auto s = solve_stein_equation(h, 1.5, 1.5, 201);
    EXPECT_LE(s.sup_f, 1.0 + 1e-9) << h.name;
    EXPECT_LE(s.sup_fprime, 1.5 + 1e-9) << h.name;
    EXPECT_LT(s.max_residual, 1e-6) << h.name;
  }
}

TEST(SteinSolver, PointwiseSolutionSatisfiesEquation) {
  // Centered-difference check of f' against the equation at random points.
  auto h = [](double w) { return std::exp(-w) * std::cos(3 * w) / 3; };
  const double eh = beta_expectation(h, 1.5, 1.5);
  SplitMix64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const double w = 0.05 + 0.9 * rng.unit();
    const double d = 1e-4;
    const double fp = (stein_solution_at(h, eh, 1.5, 1.5, w + d) - stein_solution_at(h, eh, 1.5, 1.5, w - d)) / (2 * d);
    const double f = stein_solution_at(h, eh, 1.5, 1.5, w);
    EXPECT_NEAR(w * (1 - w) * fp + 1.5 * (1 - 2 * w) * f, h(w) - eh, 1e-7) << w;
  }
}

TEST(LipschitzFamily, ConstantsAreAtMostOne) {
  const auto family = lipschitz_family();
  EXPECT_EQ(family.size(), 20u);
  for (const auto& h : family) {
    EXPECT_LE(h.lipschitz, 1.0) << h.name;
    double worst = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const double a = i / 20000.0, b = (i + 1) / 20000.0;
      worst = std::max(worst, std::abs(h.h(b) - h.h(a)) / (b - a));
    }
    EXPECT_LE(worst, h.lipschitz + 1e-9) << h.name;
  }
}

TEST(BetaCharacterization, VanishesForRandomSmoothFunctions) {
  SplitMix64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const double c0 = 2 * rng.unit() - 1, c1 = 2 * rng.unit() - 1, c2 = 2 * rng.unit() - 1;
    const double freq = 1 + 5 * rng.unit();
    SmoothFunction f{"random",
                     [=](double w) { return c0 + c1 * w * w + c2 * std::sin(freq * w); },
                     [=](double w) { return 2 * c1 * w + c2 * freq * std::cos(freq * w); }};
    EXPECT_LT(std::abs(check_beta_stein_characterization(f, 1.5, 1.5)), 1e-10);
    EXPECT_LT(std::abs(check_beta_stein_characterization(f, 2.5, 4.0)), 1e-10);
  }
}

TEST(BetaCharacterization, DetectsWrongParameters) {
  SmoothFunction f{"w", [](double w) { return w; }, [](double) { return 1.0; }};
  // E[Z(1-Z) + (a(1-Z) - bZ)Z] under Beta(2,2) with a=b=3/2 is nonzero.
  const double value = reference_integral(
      [](double z) { return beta_pdf(z, 2.0, 2.0) * (z * (1 - z) + (1.5 * (1 - z) - 1.5 * z) * z); }, 0.0, 1.0);
  EXPECT_GT(std::abs(value), 1e-3);
  EXPECT_LT(std::abs(check_beta_stein_characterization(f, 2.0, 2.0)), 1e-12);
}

}  // namespace
}  // namespace firstswap
