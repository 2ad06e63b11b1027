#include "firstswap/acceptance.hpp"

#include "firstswap/exact.hpp"
#include "firstswap/random.hpp"
#include "firstswap/reduced_words.hpp"
#include "firstswap/wasserstein.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

namespace firstswap {

namespace {

using Clock = std::chrono::steady_clock;

template <class Body>
CriterionResult timed(int id, std::string name, Body&& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  const auto start = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

std::string str(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

std::vector<LipschitzFunction> lipschitz_family() {
  using std::numbers::pi;
  return {
      {"w", [](double w) { return w; }, 1.0},
      {"w^2/2", [](double w) { return 0.5 * w * w; }, 1.0},
      {"-w", [](double w) { return -w; }, 1.0},
      {"sin(w)", [](double w) { return std::sin(w); }, 1.0},
      {"cos(w)", [](double w) { return std::cos(w); }, std::sin(1.0)},
      {"sin(pi w)/pi", [](double w) { return std::sin(pi * w) / pi; }, 1.0},
      {"cos(pi w)/pi", [](double w) { return std::cos(pi * w) / pi; }, 1.0},
      {"exp(w-1)", [](double w) { return std::exp(w - 1.0); }, 1.0},
      {"exp(-w)", [](double w) { return std::exp(-w); }, 1.0},
      {"log(1+w)", [](double w) { return std::log1p(w); }, 1.0},
      {"w^3/3", [](double w) { return w * w * w / 3.0; }, 1.0},
      {"(1-w)^2/2", [](double w) { return 0.5 * (1.0 - w) * (1.0 - w); }, 1.0},
      {"sin(2 pi w)/(2 pi)", [](double w) { return std::sin(2 * pi * w) / (2 * pi); }, 1.0},
      {"sqrt(1+w^2)-1", [](double w) { return std::sqrt(1.0 + w * w) - 1.0; }, std::numbers::sqrt2 / 2},
      {"atan(w)", [](double w) { return std::atan(w); }, 1.0},
      {"(w-1/2)^2", [](double w) { return (w - 0.5) * (w - 0.5); }, 1.0},
      {"tanh(3w)/3", [](double w) { return std::tanh(3.0 * w) / 3.0; }, 1.0},
      {"sin(3w)/3", [](double w) { return std::sin(3.0 * w) / 3.0; }, 1.0},
      {"w^4/4", [](double w) { return w * w * w * w / 4.0; }, 1.0},
      {"1/(1+w)", [](double w) { return 1.0 / (1.0 + w); }, 1.0},
  };
}

CriterionResult criterion_pmf_validity(const AcceptanceOptions& opt) {
  return timed(1, "exact pmf validity", [&](CriterionResult& r) {
    int bad = 0;
    for (int n = 2; n <= opt.exact_max_n; ++n) {
      const auto law = pmf(n);
      Rational total;
      for (int k = 1; k <= n - 1; ++k) {
        total += law.p(k);
        if (law.p(k).sign() <= 0 || law.p(k) != law.p(n - k)) ++bad;
      }
      if (total != Rational(1)) ++bad;
    }
    r.passed = bad == 0;
    r.detail = "n=2.." + std::to_string(opt.exact_max_n) + ": sum=1, p(k)=p(n-k), p>0 exactly; violations=" +
               std::to_string(bad);
  });
}

CriterionResult criterion_enumeration_counts(const AcceptanceOptions&) {
  return timed(2, "enumeration matches Stanley count", [&](CriterionResult& r) {
    const long expected[] = {2, 16, 768, 292864};
    r.passed = true;
    for (int n = 3; n <= 6; ++n) {
      long count = 0;
      for_each_word(n, [&](std::span<const std::uint8_t>) { ++count; });
      const BigInt formula = stanley_count(n);
      const bool ok = count == expected[n - 3] && formula == expected[n - 3];
      r.passed = r.passed && ok;
      if (!r.detail.empty()) r.detail += "; ";
      r.detail += "n=" + std::to_string(n) + ": dfs=" + std::to_string(count) + " stanley=" + formula.get_str();
    }
  });
}

CriterionResult criterion_first_letter_oracle(const AcceptanceOptions&) {
  return timed(3, "first-letter histogram equals closed-form pmf", [&](CriterionResult& r) {
    r.passed = true;
    for (int n = 3; n <= 6; ++n) {
      const bool ok = first_letter_histogram(n) == pmf(n);
      r.passed = r.passed && ok;
      r.detail += "n=" + std::to_string(n) + (ok ? " equal; " : " DIFFER; ");
    }
    const auto h4 = first_letter_histogram(4);
    const bool counts_ok = h4.p(1) == Rational(5, 16) && h4.p(2) == Rational(6, 16) && h4.p(3) == Rational(5, 16);
    r.passed = r.passed && counts_ok;
    r.detail += std::string("n=4 counts (5,6,5)/16 ") + (counts_ok ? "ok" : "WRONG");
  });
}

CriterionResult criterion_stein_identities(const AcceptanceOptions& opt) {
  return timed(4, "discrete Stein identities vanish exactly", [&](CriterionResult& r) {
    SplitMix64 rng(opt.seed);
    long nonzero = 0, evaluations = 0;

    for (int n = 3; n <= opt.identity_max_n; ++n) {
      const auto triple = first_letter_triple(n);
      for (int t = 0; t < opt.random_functions; ++t) {
        const auto f = TestFunction::from({0, n - 1}, [&](long) { return random_small_rational(rng); });
        if (!check_identity_prop21(triple, f).is_zero()) ++nonzero;
        ++evaluations;
      }
    }

    for (int t = 0; t < 20; ++t) {
      const long a = rng.between(-6, 6);
      const long length = rng.between(1, 13);
      std::vector<Rational> raw;
      Rational total;
      for (long i = 0; i < length; ++i) {
        raw.emplace_back(rng.between(1, 16), rng.between(1, 16));
        total += raw.back();
      }
      for (auto& m : raw) m /= total;
      const LatticePmf p(a, std::move(raw));
      const auto f = TestFunction::from({a - 1, a + length - 1}, [&](long) { return random_small_rational(rng); });
      if (!check_characterization(p, f).is_zero()) ++nonzero;
      ++evaluations;
    }

    for (int n = 2; n <= opt.identity_max_n; ++n) {
      for (int t = 0; t < 10; ++t) {
        const auto f = GridFunction::from(n, [&](const Rational&) { return random_small_rational(rng); });
        if (!rescaled_identity_residual(n, f).is_zero()) ++nonzero;
        ++evaluations;
      }
    }
    r.passed = nonzero == 0;
    r.detail = std::to_string(evaluations) + " exact evaluations (weighted identity, characterization, rescaled identity); nonzero=" +
               std::to_string(nonzero);
  });
}

CriterionResult criterion_moments(const AcceptanceOptions& opt) {
  return timed(5, "exact moments E W = 1/2, E(W^2/2) = 5/32 - (2+n)/(32n^2)", [&](CriterionResult& r) {
    int bad = 0;
    for (int n = 2; n <= opt.exact_max_n; ++n) {
      const auto m = moments(n);
      if (m.mean != Rational(1, 2)) ++bad;
      if (m.second_moment / 2 != Rational(5, 32) - Rational(2L + n, 32L * n * n)) ++bad;
    }
    const auto h4 = first_letter_histogram(4);
    Rational half_second;
    for (int k = 1; k <= 3; ++k) half_second += Rational(k * k, 32) * h4.p(k);
    const bool enum_ok = half_second == Rational(37, 256);
    r.passed = bad == 0 && enum_ok;
    r.detail = "n=2.." + std::to_string(opt.exact_max_n) + " violations=" + std::to_string(bad) +
               "; enumerated n=4 E(W^2/2)=" + half_second.to_string();
  });
}

CriterionResult criterion_beta_bounds(const AcceptanceOptions& opt) {
  return timed(6, "d_W(W_n, Beta(3/2,3/2)) within [1/(32n), 59/(2n)]", [&](CriterionResult& r) {
    const auto reports = bounds_sweep(2, opt.wasserstein_max_n, opt.threads, false);
    int outside = 0, below_witness = 0;
    double min_scaled = 1e300, max_scaled = 0.0, max_err = 0.0;
    for (const auto& rep : reports) {
      if (!rep.pass) ++outside;
      if (!rep.witness_ok) ++below_witness;
      min_scaled = std::min(min_scaled, rep.n * rep.distance);
      max_scaled = std::max(max_scaled, rep.n * rep.distance);
      max_err = std::max(max_err, rep.abs_error_bound);
    }
    const double spot = reports.front().distance;
    const double expected = 2.0 / (3.0 * std::numbers::pi);
    const bool spot_ok = std::abs(spot - expected) <= 1e-10;
    r.passed = outside == 0 && below_witness == 0 && spot_ok;
    r.detail = "n=2.." + std::to_string(opt.wasserstein_max_n) + ": outside bounds=" + std::to_string(outside) +
               ", below witness=" + std::to_string(below_witness) + ", n*d_W in [" + str(min_scaled) + ", " +
               str(max_scaled) + "], max error bound " + str(max_err) + "; n=2 d_W=" + str(spot) +
               " vs 2/(3pi)=" + str(expected);
  });
}

CriterionResult criterion_semicircle_bounds(const AcceptanceOptions& opt) {
  return timed(7, "d_W(2X/n-1, S) = 2 d_W(W_n, Z) and within [1/(16n), 59/n]", [&](CriterionResult& r) {
    const auto reports = bounds_sweep(2, opt.wasserstein_max_n, opt.threads, true);
    int outside = 0, scaling = 0;
    double max_gap = 0.0;
    for (const auto& rep : reports) {
      if (!rep.pass) ++outside;
      if (!rep.scaling_ok) ++scaling;
      max_gap = std::max(max_gap, std::abs(rep.distance - rep.beta_distance_doubled));
    }
    r.passed = outside == 0 && scaling == 0;
    r.detail = "n=2.." + std::to_string(opt.wasserstein_max_n) + ": outside bounds=" + std::to_string(outside) +
               ", scaling failures=" + std::to_string(scaling) + ", max |d_S - 2 d_Z|=" + str(max_gap);
  });
}

CriterionResult criterion_cdf_identity(const AcceptanceOptions&) {
  return timed(8, "beta_cdf(z;3/2,3/2) = semicircle_cdf(2z-1)", [&](CriterionResult& r) {
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double z = i / 1000.0;
      worst = std::max(worst, std::abs(beta_cdf(z, 1.5, 1.5) - semicircle_cdf(2.0 * z - 1.0)));
    }
    r.passed = worst <= 1e-12;
    r.detail = "1001-point grid, max difference " + str(worst);
  });
}

CriterionResult criterion_stein_solution_bounds(const AcceptanceOptions&) {
  return timed(9, "Stein solution bounds ||f|| <= 2/3, ||f'|| <= 8", [&](CriterionResult& r) {
    double sup_f = 0.0, sup_fp = 0.0, residual = 0.0;
    int violations = 0;
    for (const auto& h : lipschitz_family()) {
      const auto sol = solve_stein_equation(h, 1.5, 1.5, 1001);
      sup_f = std::max(sup_f, sol.sup_f);
      sup_fp = std::max(sup_fp, sol.sup_fprime);
      residual = std::max(residual, sol.max_residual);
      if (sol.sup_f > 2.0 / 3.0 + 1e-6 || sol.sup_fprime > 8.0 + 1e-4 || sol.max_residual > 1e-8) {
        ++violations;
        r.notes.push_back("violation for h=" + h.name);
      }
    }
    r.passed = violations == 0;
    r.detail = "20 test functions: max ||f||=" + str(sup_f) + ", max ||f'||=" + str(sup_fp) +
               ", max residual=" + str(residual);
  });
}

CriterionResult criterion_yang_baxter(const AcceptanceOptions&) {
  return timed(10, "Yang-Baxter mean is exactly 1", [&](CriterionResult& r) {
    r.passed = true;
    for (int n = 3; n <= 6; ++n) {
      const auto s = yb_stats(n);
      r.passed = r.passed && s.mean == Rational(1);
      r.detail += "n=" + std::to_string(n) + " mean=" + s.mean.to_string() + "; ";
      std::string note = "n=" + std::to_string(n) + ": variance=" + s.variance.to_string();
      if (s.conjectured_variance) {
        note += " conjectured=" + s.conjectured_variance->to_string() +
                (s.variance_matches_conjecture ? " (agrees)" : " (disagrees)");
      }
      note += ", TV to Poisson(1)=" + str(s.tv_to_poisson1);
      r.notes.push_back(std::move(note));
    }
  });
}

CriterionResult criterion_sampling(const AcceptanceOptions& opt) {
  return timed(11, "inverse-CDF sampling consistent with pmf and E W = 1/2", [&](CriterionResult& r) {
    const double count = static_cast<double>(opt.samples);
    r.passed = true;

    const auto draws3 = sample_first_letter(3, opt.seed, opt.samples);
    long ones = 0;
    for (int x : draws3) ones += x == 1;
    const double band3 = 4.0 * std::sqrt(0.25 / count);
    const double freq1 = ones / count;
    const bool n3_ok = std::abs(freq1 - 0.5) <= band3 && std::abs((1.0 - freq1) - 0.5) <= band3;
    r.passed = r.passed && n3_ok;
    r.detail = "n=3 freq(1)=" + str(freq1) + " band " + str(band3) + "; ";

    const int n = 50;
    const auto law = pmf(n);
    const auto draws = sample_first_letter(n, opt.seed + 1, opt.samples);
    std::vector<long> hist(n, 0);
    double sum = 0.0, sum2 = 0.0;
    for (int x : draws) {
      ++hist[static_cast<std::size_t>(x)];
      const double w = static_cast<double>(x) / n;
      sum += w;
      sum2 += w * w;
    }
    const double mean = sum / count;
    const double sd = std::sqrt(std::max(0.0, sum2 / count - mean * mean));
    const bool mean_ok = std::abs(mean - 0.5) <= 4.0 * sd / std::sqrt(count);
    int letters_out = 0;
    for (int k = 1; k <= n - 1; ++k) {
      const double p = law.p(k).to_double();
      if (std::abs(hist[static_cast<std::size_t>(k)] / count - p) > 4.0 * std::sqrt(p * (1 - p) / count)) {
        ++letters_out;
      }
    }
    r.passed = r.passed && mean_ok && letters_out == 0;
    r.detail += "n=50 mean(X/n)=" + str(mean) + " band " + str(4.0 * sd / std::sqrt(count)) +
                ", letters outside 4-sigma band: " + std::to_string(letters_out) + " of 49";
  });
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  using Fn = CriterionResult (*)(const AcceptanceOptions&);
  const Fn criteria[] = {criterion_pmf_validity,        criterion_enumeration_counts, criterion_first_letter_oracle,
                         criterion_stein_identities,    criterion_moments,            criterion_beta_bounds,
                         criterion_semicircle_bounds,   criterion_cdf_identity,       criterion_stein_solution_bounds,
                         criterion_yang_baxter,         criterion_sampling};
  std::vector<CriterionResult> results;
  for (const auto fn : criteria) {
    results.push_back(fn(opt));
    if (on_result) on_result(results.back());
  }
  return results;
}

}  // namespace firstswap
