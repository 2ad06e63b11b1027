#include "firstswap/wasserstein.hpp"

#include "firstswap/errors.hpp"
#include "firstswap/exact.hpp"
#include "firstswap/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace firstswap {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kBisectionSteps = 60;
constexpr double kBoundSlack = 1e-9;
constexpr double kWitnessSlack = 1e-10;
constexpr double kScalingSlack = 2e-10;

struct Piece {
  double lo, hi, level;
};

// Constant stretches of F_mu over [L, U], L/U covering both supports.
std::vector<Piece> step_pieces(const DiscreteAtomLaw& mu, const ContinuousLaw& nu) {
  const auto& atoms = mu.atoms();
  const double lower = std::min(nu.lower(), atoms.front().location);
  const double upper = std::max(nu.upper(), atoms.back().location);
  std::vector<Piece> pieces;
  pieces.reserve(atoms.size() + 1);
  pieces.push_back({lower, atoms.front().location, 0.0});
  Rational cumulative;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    cumulative += atoms[i].mass;
    const double next = i + 1 < atoms.size() ? atoms[i + 1].location : upper;
    pieces.push_back({atoms[i].location, next, cumulative.to_double()});
  }
  return pieces;
}

}  // namespace

DiscreteAtomLaw::DiscreteAtomLaw(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw DomainError("atomic law needs at least one atom");
  Rational total;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!std::isfinite(atoms_[i].location)) throw DomainError("atom location must be finite");
    if (i > 0 && !(atoms_[i - 1].location < atoms_[i].location)) {
      throw DomainError("atom locations must be strictly increasing");
    }
    if (atoms_[i].mass.sign() <= 0) throw DomainError("atom masses must be positive");
    total += atoms_[i].mass;
  }
  if (total != Rational(1)) throw DomainError("atom masses sum to " + total.to_string() + ", not 1");
}

DiscreteAtomLaw first_letter_atoms(int n, double scale_numerator, double shift) {
  const auto law = pmf(n);
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(n - 1));
  for (long k = 1; k <= n - 1; ++k) {
    const double location = (scale_numerator * static_cast<double>(k) + shift * n) / n;
    atoms.push_back({location, law.p(k)});
  }
  return DiscreteAtomLaw(std::move(atoms));
}

WassersteinResult wasserstein_1d(const DiscreteAtomLaw& mu, const ContinuousLaw& nu, CdfIntegration method,
                                 double quad_tol) {
  const auto pieces = step_pieces(mu, nu);
  const double span = pieces.back().hi - pieces.front().lo;
  WassersteinResult out;
  // Rounding of exact cumulative masses to double, at most one ulp each.
  out.abs_error_bound = static_cast<double>(mu.atoms().size()) * 0x1.0p-53 * span;

  auto F = [&](double t) { return nu.cdf(t); };
  const double per_piece_tol = quad_tol / static_cast<double>(2 * pieces.size());

  for (const auto& [lo, hi, level] : pieces) {
    if (!(lo < hi)) continue;
    const double f_lo = F(lo);
    const double f_hi = F(hi);
    double crossing = lo;
    if (f_lo < level && level < f_hi) {
      double a = lo, b = hi;
      for (int i = 0; i < kBisectionSteps && a < b; ++i) {
        const double mid = 0.5 * (a + b);
        if (F(mid) < level) {
          a = mid;
        } else {
          b = mid;
        }
      }
      crossing = 0.5 * (a + b);
      // |level - F| <= F(b) - F(a) across the final bracket.
      out.abs_error_bound += (F(b) - F(a)) * (b - a);
    } else if (f_hi <= level) {
      crossing = hi;
    }

    if (method == CdfIntegration::ClosedForm) {
      const double g_lo = nu.cdf_integral(lo);
      const double g_mid = nu.cdf_integral(crossing);
      const double g_hi = nu.cdf_integral(hi);
      const double below = level * (crossing - lo) - (g_mid - g_lo);  // F <= level on [lo, crossing]
      const double above = (g_hi - g_mid) - level * (hi - crossing);  // F >= level on [crossing, hi]
      out.distance += std::max(below, 0.0) + std::max(above, 0.0);
      out.abs_error_bound +=
          8.0 * kEps * (std::abs(g_lo) + 2.0 * std::abs(g_mid) + std::abs(g_hi) + level * (hi - lo) + 1.0);
    } else {
      auto gap = [&](double t) { return std::abs(level - F(t)); };
      const auto left = integrate_gk(gap, lo, crossing, per_piece_tol);
      const auto right = integrate_gk(gap, crossing, hi, per_piece_tol);
      out.distance += left.value + right.value;
      out.abs_error_bound += left.error + right.error;
    }
  }
  return out;
}

double wasserstein_1d(const DiscreteAtomLaw& mu, const DiscreteAtomLaw& nu) {
  const auto& a = mu.atoms();
  const auto& b = nu.atoms();
  std::size_t i = 0, j = 0;
  Rational cdf_a, cdf_b;
  double distance = 0.0;
  double position = std::min(a.front().location, b.front().location);
  while (i < a.size() || j < b.size()) {
    const double next = std::min(i < a.size() ? a[i].location : HUGE_VAL, j < b.size() ? b[j].location : HUGE_VAL);
    distance += abs(cdf_a - cdf_b).to_double() * (next - position);
    position = next;
    if (i < a.size() && a[i].location == next) cdf_a += a[i++].mass;
    if (j < b.size() && b[j].location == next) cdf_b += b[j++].mass;
  }
  return distance;
}

Rational lower_bound_witness(int n) {
  const auto m = moments(n);
  const auto beta_half_second = Rational(5, 32);
  return abs(m.second_moment / 2 - beta_half_second);
}

DistanceReport distance_report(int n) {
  if (n < 2) throw DomainError("distance_report needs n >= 2");
  DistanceReport r;
  r.n = n;
  const auto result = wasserstein_1d(first_letter_atoms(n), ContinuousLaw::beta(1.5, 1.5));
  r.distance = result.distance;
  r.abs_error_bound = result.abs_error_bound;
  r.lower_paper = 1.0 / (32.0 * n);
  r.lower_witness = lower_bound_witness(n).to_double();
  r.upper_paper = 59.0 / (2.0 * n);
  const double tol = r.abs_error_bound + kBoundSlack;
  r.pass = r.lower_paper - tol <= r.distance && r.distance <= r.upper_paper + tol;
  r.witness_ok = r.distance >= r.lower_witness - kWitnessSlack;
  r.beta_distance_doubled = 2.0 * r.distance;
  return r;
}

DistanceReport scaled_distance_report(int n) {
  if (n < 2) throw DomainError("scaled_distance_report needs n >= 2");
  const auto beta_report = distance_report(n);
  DistanceReport r;
  r.n = n;
  const auto result = wasserstein_1d(first_letter_atoms(n, 2.0, -1.0), ContinuousLaw::semicircle());
  r.distance = result.distance;
  r.abs_error_bound = result.abs_error_bound;
  r.lower_paper = 1.0 / (16.0 * n);
  r.lower_witness = 2.0 * beta_report.lower_witness;
  r.upper_paper = 59.0 / n;
  const double tol = r.abs_error_bound + kBoundSlack;
  r.pass = r.lower_paper - tol <= r.distance && r.distance <= r.upper_paper + tol;
  r.witness_ok = r.distance >= r.lower_witness - 2.0 * kWitnessSlack;
  r.beta_distance_doubled = 2.0 * beta_report.distance;
  r.scaling_ok = std::abs(r.distance - r.beta_distance_doubled) <= kScalingSlack;
  return r;
}

std::vector<DistanceReport> bounds_sweep(int first, int last, unsigned threads, bool scaled) {
  if (first < 2 || last < first) throw DomainError("bounds sweep needs 2 <= first <= last");
  const auto count = static_cast<std::size_t>(last - first + 1);
  std::vector<DistanceReport> reports(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        const int n = first + static_cast<int>(i);
        reports[i] = scaled ? scaled_distance_report(n) : distance_report(n);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return reports;
}

}  // namespace firstswap
