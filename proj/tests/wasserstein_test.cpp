#include "firstswap/errors.hpp"
#include "firstswap/exact.hpp"
#include "firstswap/wasserstein.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace firstswap {
namespace {

using std::numbers::pi;

// Quantile-coupling oracle: d_W = int_0^1 |F_mu^{-1}(u) - F_nu^{-1}(u)| du.
// On the stretch of u where F_mu^{-1} = x_k, substituting z = F_nu^{-1}(u)
// gives int_{q_{k-1}}^{q_k} |x_k - z| rho(z) dz with q = quantiles of the
// cumulative masses. Each piece is split at x_k so the integrand is smooth.
double quantile_coupling_beta(int n) {
  const auto law = pmf(n);
  const double a = 1.5, b = 1.5;
  const double norm = boost::math::beta(a, b);
  auto rho = [&](double z) { return std::sqrt(z * (1 - z)) / norm; };
  auto piece = [&](double x, double lo, double hi) {
    if (!(lo < hi)) return 0.0;
    auto g = [&](double z) { return std::abs(x - z) * rho(z); };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    return GK::integrate(g, lo, hi, 15, 1e-15);
  };
  Rational cumulative;
  double q_prev = 0.0;
  double total = 0.0;
  for (long k = 1; k <= n - 1; ++k) {
    cumulative += law.p(k);
    const double q = k == n - 1 ? 1.0 : boost::math::ibeta_inv(a, b, cumulative.to_double());
    const double x = static_cast<double>(k) / n;
    const double mid = std::clamp(x, q_prev, q);
    total += piece(x, q_prev, mid) + piece(x, mid, q);
    q_prev = q;
  }
  return total;
}

TEST(Wasserstein, TwoPointLawHasClosedForm) {
  // n = 2: W = 1/2 almost surely, and E|Z - 1/2| = 2/(3 pi) for Beta(3/2, 3/2).
  const auto r = wasserstein_1d(first_letter_atoms(2), ContinuousLaw::beta(1.5, 1.5));
  EXPECT_NEAR(r.distance, 2.0 / (3.0 * pi), 1e-15);
  EXPECT_LT(r.abs_error_bound, 1e-13);
  const auto s = wasserstein_1d(first_letter_atoms(2, 2.0, -1.0), ContinuousLaw::semicircle());
  EXPECT_NEAR(s.distance, 4.0 / (3.0 * pi), 2e-15);
}

TEST(Wasserstein, SingleAtomIsMeanAbsoluteDeviation) {
  // E|Z - c| for Z uniform on (0, 1) is c^2/2 + (1-c)^2/2.
  for (double c : {0.0, 0.25, 0.5, 0.9, 1.0}) {
    const DiscreteAtomLaw mu({{c, Rational(1)}});
    const auto r = wasserstein_1d(mu, ContinuousLaw::beta(1, 1));
    EXPECT_NEAR(r.distance, c * c / 2 + (1 - c) * (1 - c) / 2, 1e-14) << c;
  }
  // Atom outside the support: distance is |c - mean|.
  const DiscreteAtomLaw far({{3.0, Rational(1)}});
  EXPECT_NEAR(wasserstein_1d(far, ContinuousLaw::beta(2, 5)).distance, 3.0 - 2.0 / 7.0, 1e-14);
}

TEST(Wasserstein, MatchesQuantileCouplingOracle) {
  for (int n = 2; n <= 30; ++n) {
    const auto r = wasserstein_1d(first_letter_atoms(n), ContinuousLaw::beta(1.5, 1.5));
    EXPECT_NEAR(r.distance, quantile_coupling_beta(n), 1e-9) << n;
  }
}

TEST(Wasserstein, QuadratureRouteAgreesWithClosedForm) {
  for (int n : {2, 3, 7, 50, 200}) {
    const auto atoms = first_letter_atoms(n);
    const auto law = ContinuousLaw::beta(1.5, 1.5);
    const auto closed = wasserstein_1d(atoms, law, CdfIntegration::ClosedForm);
    const auto quad = wasserstein_1d(atoms, law, CdfIntegration::Quadrature, 1e-12);
    EXPECT_NEAR(closed.distance, quad.distance, closed.abs_error_bound + quad.abs_error_bound + 1e-12) << n;
  }
}

TEST(Wasserstein, QuadratureStableUnderTolerancePush) {
  const auto atoms = first_letter_atoms(40);
  const auto law = ContinuousLaw::beta(1.5, 1.5);
  const auto coarse = wasserstein_1d(atoms, law, CdfIntegration::Quadrature, 1e-9);
  const auto fine = wasserstein_1d(atoms, law, CdfIntegration::Quadrature, 1e-13);
  EXPECT_NEAR(coarse.distance, fine.distance, 1e-9);
  EXPECT_LE(fine.abs_error_bound, 1e-12);
}

TEST(Wasserstein, AtomicLawsAgainstEachOther) {
  const auto a = first_letter_atoms(9);
  EXPECT_EQ(wasserstein_1d(a, a), 0.0);
  const DiscreteAtomLaw p({{0.0, Rational(1, 2)}, {1.0, Rational(1, 2)}});
  const DiscreteAtomLaw q({{0.5, Rational(1)}});
  EXPECT_DOUBLE_EQ(wasserstein_1d(p, q), 0.5);
  // Translating a law by t moves it by exactly |t|.
  const auto shifted = first_letter_atoms(9, 1.0, 0.25);
  EXPECT_NEAR(wasserstein_1d(a, shifted), 0.25, 1e-15);
}

TEST(Wasserstein, RejectsMalformedAtomicLaws) {
  EXPECT_THROW(DiscreteAtomLaw({}), DomainError);
  EXPECT_THROW(DiscreteAtomLaw({{0.5, Rational(1, 2)}}), DomainError);
  EXPECT_THROW(DiscreteAtomLaw({{0.5, Rational(1, 2)}, {0.2, Rational(1, 2)}}), DomainError);
  EXPECT_THROW(DiscreteAtomLaw({{0.5, Rational(3, 2)}, {0.7, Rational(-1, 2)}}), DomainError);
  EXPECT_THROW(DiscreteAtomLaw({{NAN, Rational(1)}}), DomainError);
  EXPECT_THROW(distance_report(1), DomainError);
  EXPECT_THROW(bounds_sweep(5, 4), DomainError);
}

TEST(DistanceReport, WitnessValues) {
  EXPECT_EQ(lower_bound_witness(2), Rational(1, 32));
  EXPECT_EQ(lower_bound_witness(4), Rational(3, 256));
  for (int n = 2; n <= 100; ++n) EXPECT_EQ(lower_bound_witness(n), Rational(2 + n, 32L * n * n));
}

TEST(DistanceReport, BoundsForTen) {
  const auto r = distance_report(10);
  EXPECT_DOUBLE_EQ(r.lower_paper, 1.0 / 320.0);
  EXPECT_DOUBLE_EQ(r.upper_paper, 59.0 / 20.0);
  EXPECT_DOUBLE_EQ(r.lower_witness, 12.0 / 3200.0);
  EXPECT_TRUE(r.all_ok());
  EXPECT_GE(r.distance, r.lower_witness);
}

TEST(DistanceReport, ScaledBounds) {
  const auto r = scaled_distance_report(16);
  EXPECT_DOUBLE_EQ(r.lower_paper, 1.0 / 256.0);
  EXPECT_DOUBLE_EQ(r.upper_paper, 59.0 / 16.0);
  EXPECT_TRUE(r.all_ok());
  EXPECT_NEAR(scaled_distance_report(2).distance, 4.0 / (3.0 * pi), 2e-15);
}

TEST(DistanceReport, ScalingIsExactlyTwo) {
  for (int n = 2; n <= 300; n += 17) {
    const auto r = scaled_distance_report(n);
    EXPECT_NEAR(r.distance / r.beta_distance_doubled, 1.0, 1e-12) << n;
    EXPECT_TRUE(r.scaling_ok) << n;
  }
}

TEST(DistanceReport, RateIsOrderOneOverN) {
  // n d_W(n) settles: the values at 500 and 1000 agree to a few percent and
  // sit strictly inside the bounds.
  const double a = 500 * distance_report(500).distance;
  const double b = 1000 * distance_report(1000).distance;
  EXPECT_NEAR(a / b, 1.0, 0.05);
  EXPECT_GT(b, 1.0 / 32.0);
  EXPECT_LT(b, 59.0 / 2.0);
}

TEST(BoundsSweep, ThreadedMatchesSequential) {
  const auto seq = bounds_sweep(2, 60, 1);
  const auto par = bounds_sweep(2, 60, 4);
  ASSERT_EQ(seq.size(), 59u);
  ASSERT_EQ(par.size(), seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    EXPECT_EQ(seq[i].n, static_cast<int>(i) + 2);
    EXPECT_EQ(seq[i].n, par[i].n);
    EXPECT_EQ(seq[i].distance, par[i].distance);
    EXPECT_TRUE(seq[i].all_ok()) << seq[i].n;
  }
  const auto scaled = bounds_sweep(2, 20, 2, true);
  for (const auto& r : scaled) EXPECT_TRUE(r.all_ok()) << r.n;
}

}  // namespace
}  // namespace firstswap
