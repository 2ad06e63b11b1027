// firstswap: batch front end for the first-letter law, its Stein
// identities, Wasserstein bounds, and reduced-word enumeration.
//
// Exit status: 0 success, 1 usage error, 2 a mathematical check failed.

#include "firstswap/acceptance.hpp"
#include "firstswap/continuous.hpp"
#include "firstswap/exact.hpp"
#include "firstswap/io.hpp"
#include "firstswap/random.hpp"
#include "firstswap/reduced_words.hpp"
#include "firstswap/wasserstein.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = firstswap;
using Json = fs::io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCheckFailed = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandConfig {
  std::string command;
  std::string n_text;
  std::string n_range_text;
  std::uint64_t seed = 20140503;
  std::size_t samples = 0;
  std::string format = "table";
  std::string out;
  std::optional<double> tolerance;
  std::string function = "w";
  int grid = 1001;
  bool scaled = false;
  bool words = false;
  unsigned threads = 0;
};

struct Range {
  int first;
  int last;
};

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("cannot parse n or range '" + text + "' (expected N or A..B)");
  }
}

Range n_range(const CommandConfig& cfg, int min_n, int max_n = 1 << 20) {
  if (cfg.n_text.empty() && cfg.n_range_text.empty()) throw UsageError(cfg.command + " needs --n or --n-range");
  const Range r = parse_range(cfg.n_range_text.empty() ? cfg.n_text : cfg.n_range_text);
  if (r.first > r.last) throw UsageError("empty range " + std::to_string(r.first) + ".." + std::to_string(r.last));
  if (r.first < min_n) throw UsageError(cfg.command + " needs n >= " + std::to_string(min_n));
  if (r.last > max_n) {
    throw fs::CapacityError(cfg.command + " is capped at n <= " + std::to_string(max_n) +
                            ": exhaustive enumeration beyond n=6 is not desk-scale (n=7 has 1,100,742,656 words). "
                            "Use `pmf` or `sample` for larger n.");
  }
  return r;
}

int single_n(const CommandConfig& cfg, int min_n, int max_n = 1 << 20) {
  const Range r = n_range(cfg, min_n, max_n);
  if (r.first != r.last) throw UsageError(cfg.command + " takes a single --n");
  return r.first;
}

std::filesystem::path output_path(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("FIRSTSWAP_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

void emit(const CommandConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  const auto path = output_path(cfg.out);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

// Whitespace-aligned table from rows of cells.
std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      os << std::left << std::setw(static_cast<int>(width[c])) << cells[c] << (c + 1 < cells.size() ? "  " : "");
    }
    os << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
  return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_pmf(const CommandConfig& cfg) {
  const Range r = n_range(cfg, 2);
  std::vector<fs::FirstLetterLaw> laws;
  for (int n = r.first; n <= r.last; ++n) laws.push_back(fs::pmf(n));
  if (cfg.format == "csv") {
    emit(cfg, fs::io::pmf_csv(laws));
  } else if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& law : laws) arr.push_back(fs::io::to_json(law));
    emit(cfg, dump(arr));
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& law : laws)
      for (int k = 1; k < law.n(); ++k)
        rows.push_back({std::to_string(law.n()), std::to_string(k), law.p(k).to_string(),
                        fs::io::format_double(law.p(k).to_double())});
    emit(cfg, table({"n", "k", "p", "p_float64"}, rows));
  }
  return kOk;
}

int cmd_moments(const CommandConfig& cfg) {
  const Range r = n_range(cfg, 2);
  bool ok = true;
  Json arr = Json::array();
  std::vector<std::vector<std::string>> rows;
  std::string csv = "n,mean,second_moment,half_second_moment,expected_half_second_moment,ok\n";
  for (int n = r.first; n <= r.last; ++n) {
    const auto m = fs::moments(n);
    const auto half = m.second_moment / 2;
    const auto expected = fs::Rational(5, 32) - fs::Rational(2L + n, 32L * n * n);
    const bool row_ok = m.mean == fs::Rational(1, 2) && half == expected;
    ok = ok && row_ok;
    Json j;
    j["n"] = n;
    j["mean"] = m.mean.to_string();
    j["second_moment"] = m.second_moment.to_string();
    j["half_second_moment"] = half.to_string();
    j["expected_half_second_moment"] = expected.to_string();
    j["ok"] = row_ok;
    arr.push_back(j);
    rows.push_back({std::to_string(n), m.mean.to_string(), m.second_moment.to_string(), half.to_string(),
                    row_ok ? "ok" : "FAIL"});
    csv += std::to_string(n) + "," + m.mean.to_string() + "," + m.second_moment.to_string() + "," +
           half.to_string() + "," + expected.to_string() + "," + (row_ok ? "true" : "false") + "\n";
  }
  if (cfg.format == "csv") emit(cfg, csv);
  else if (cfg.format == "json") emit(cfg, dump(arr));
  else emit(cfg, table({"n", "E W", "E W^2", "E(W^2/2)", "check"}, rows));
  return ok ? kOk : kCheckFailed;
}

int cmd_stein_check(const CommandConfig& cfg) {
  const Range r = n_range(cfg, 2);
  const std::size_t trials = cfg.samples ? cfg.samples : 100;
  fs::SplitMix64 rng(cfg.seed);
  bool ok = true;
  Json arr = Json::array();
  std::vector<std::vector<std::string>> rows;
  std::string csv = "n,trials,weighted_identity_nonzero,rescaled_identity_nonzero,linear_coefficient_ok\n";
  for (int n = r.first; n <= r.last; ++n) {
    const auto triple = fs::first_letter_triple(n);
    long weighted_bad = 0, rescaled_bad = 0;
    bool linear_ok = true;
    for (long k = 1; k <= n - 1; ++k) {
      linear_ok = linear_ok && fs::linear_coefficient(n, k) == fs::Rational(3L * n - 6 * k) &&
                  fs::psi(n, k) == triple.psi(k);
    }
    for (std::size_t t = 0; t < trials; ++t) {
      const auto f = fs::TestFunction::from({0, n - 1}, [&](long) { return fs::random_small_rational(rng); });
      if (!fs::check_identity_prop21(triple, f).is_zero()) ++weighted_bad;
      const auto g = fs::GridFunction::from(n, [&](const fs::Rational&) { return fs::random_small_rational(rng); });
      if (!fs::rescaled_identity_residual(n, g).is_zero()) ++rescaled_bad;
    }
    ok = ok && weighted_bad == 0 && rescaled_bad == 0 && linear_ok;
    Json j;
    j["n"] = n;
    j["trials"] = trials;
    j["weighted_identity_nonzero"] = weighted_bad;
    j["rescaled_identity_nonzero"] = rescaled_bad;
    j["linear_coefficient_ok"] = linear_ok;
    arr.push_back(j);
    rows.push_back({std::to_string(n), std::to_string(trials), std::to_string(weighted_bad),
                    std::to_string(rescaled_bad), linear_ok ? "ok" : "FAIL"});
    csv += std::to_string(n) + "," + std::to_string(trials) + "," + std::to_string(weighted_bad) + "," +
           std::to_string(rescaled_bad) + "," + (linear_ok ? "true" : "false") + "\n";
  }
  if (cfg.format == "csv") emit(cfg, csv);
  else if (cfg.format == "json") emit(cfg, dump(arr));
  else emit(cfg, table({"n", "trials", "weighted!=0", "rescaled!=0", "3n-6k"}, rows));
  return ok ? kOk : kCheckFailed;
}

std::vector<fs::DistanceReport> reports_with_tolerance(const CommandConfig& cfg, const Range& r) {
  auto reports = fs::bounds_sweep(r.first, r.last, cfg.threads, cfg.scaled);
  if (cfg.tolerance) {
    for (auto& rep : reports) {
      const double tol = rep.abs_error_bound + *cfg.tolerance;
      rep.pass = rep.lower_paper - tol <= rep.distance && rep.distance <= rep.upper_paper + tol;
    }
  }
  return reports;
}

int emit_reports(const CommandConfig& cfg, const std::vector<fs::DistanceReport>& reports) {
  bool ok = true;
  for (const auto& rep : reports) ok = ok && rep.all_ok();
  if (cfg.format == "csv") {
    emit(cfg, fs::io::sweep_csv(reports));
  } else if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& rep : reports) arr.push_back(fs::io::to_json(rep));
    emit(cfg, dump(arr));
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& rep : reports) {
      rows.push_back({std::to_string(rep.n), fs::io::format_double(rep.distance),
                      fs::io::format_double(rep.abs_error_bound), fs::io::format_double(rep.lower_paper),
                      fs::io::format_double(rep.lower_witness), fs::io::format_double(rep.upper_paper),
                      rep.all_ok() ? "pass" : "FAIL"});
    }
    emit(cfg, table({"n", "d_W", "err", "lower", "witness", "upper", "status"}, rows));
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_wasserstein(const CommandConfig& cfg) { return emit_reports(cfg, reports_with_tolerance(cfg, n_range(cfg, 2))); }

int cmd_bounds_sweep(const CommandConfig& cfg) {
  return emit_reports(cfg, reports_with_tolerance(cfg, n_range(cfg, 2)));
}

int cmd_enumerate(const CommandConfig& cfg) {
  const int n = single_n(cfg, 2, fs::kMaxEnumerationN);
  const auto words = fs::enumerate_words(n);
  bool ok = true;
  for (const auto& w : words) ok = ok && fs::is_reduced_word(w).reduced;
  ok = ok && fs::BigInt(static_cast<unsigned long>(words.size())) == fs::stanley_count(n);
  emit(cfg, fs::io::words_text(words));
  return ok ? kOk : kCheckFailed;
}

int cmd_count(const CommandConfig& cfg) {
  const Range r = n_range(cfg, 2);
  bool ok = true;
  std::vector<std::vector<std::string>> rows;
  Json arr = Json::array();
  std::string csv = "n,stanley_count,enumerated\n";
  for (int n = r.first; n <= r.last; ++n) {
    const auto formula = fs::stanley_count(n);
    std::string enumerated;
    if (n <= fs::kMaxEnumerationN) {
      long count = 0;
      fs::for_each_word(n, [&](std::span<const std::uint8_t>) { ++count; });
      enumerated = std::to_string(count);
      ok = ok && formula == count;
    }
    rows.push_back({std::to_string(n), formula.get_str(), enumerated});
    Json j;
    j["n"] = n;
    j["stanley_count"] = formula.get_str();
    j["enumerated"] = enumerated.empty() ? Json(nullptr) : Json(enumerated);
    arr.push_back(j);
    csv += std::to_string(n) + "," + formula.get_str() + "," + enumerated + "\n";
  }
  if (cfg.format == "csv") emit(cfg, csv);
  else if (cfg.format == "json") emit(cfg, dump(arr));
  else if (r.first == r.last) emit(cfg, rows.front()[1] + "\n");
  else emit(cfg, table({"n", "count", "enumerated"}, rows));
  return ok ? kOk : kCheckFailed;
}

int cmd_first_letter_hist(const CommandConfig& cfg) {
  const Range r = n_range(cfg, 2, fs::kMaxEnumerationN);
  bool ok = true;
  std::vector<fs::FirstLetterLaw> laws;
  for (int n = r.first; n <= r.last; ++n) {
    laws.push_back(fs::first_letter_histogram(n));
    ok = ok && laws.back() == fs::pmf(n);
  }
  if (cfg.format == "csv") {
    emit(cfg, fs::io::pmf_csv(laws));
  } else if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& law : laws) {
      Json j = fs::io::to_json(law);
      j["matches_closed_form"] = law == fs::pmf(law.n());
      arr.push_back(j);
    }
    emit(cfg, dump(arr));
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& law : laws) {
      const auto closed = fs::pmf(law.n());
      for (int k = 1; k < law.n(); ++k)
        rows.push_back({std::to_string(law.n()), std::to_string(k), law.p(k).to_string(), closed.p(k).to_string(),
                        law.p(k) == closed.p(k) ? "equal" : "DIFFER"});
    }
    emit(cfg, table({"n", "k", "enumerated", "closed form", "check"}, rows));
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_yb_stats(const CommandConfig& cfg) {
  const Range r = n_range(cfg, 3, fs::kMaxEnumerationN);
  bool ok = true;
  std::vector<fs::YBStats> all;
  for (int n = r.first; n <= r.last; ++n) {
    all.push_back(fs::yb_stats(n));
    ok = ok && all.back().mean == fs::Rational(1);
  }
  if (cfg.format == "csv") {
    if (all.size() != 1) throw UsageError("yb-stats --format csv exports one histogram; pass a single --n");
    emit(cfg, fs::io::yb_histogram_csv(all.front()));
  } else if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& s : all) arr.push_back(fs::io::to_json(s));
    emit(cfg, dump(arr));
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : all) {
      rows.push_back({std::to_string(s.n), s.mean.to_string(), s.variance.to_string(),
                      s.conjectured_variance ? s.conjectured_variance->to_string() : "-",
                      s.conjectured_variance ? (s.variance_matches_conjecture ? "agrees" : "disagrees") : "-",
                      fs::io::format_double(s.tv_to_poisson1)});
    }
    emit(cfg, table({"n", "mean", "variance", "conjectured", "agreement", "tv_poisson1"}, rows));
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_sample(const CommandConfig& cfg) {
  if (cfg.words) {
    const int n = single_n(cfg, 2, fs::kMaxEnumerationN);
    const std::size_t count = cfg.samples ? cfg.samples : 1;
    std::vector<fs::ReducedWord> words;
    fs::SplitMix64 seeds(cfg.seed);
    for (std::size_t i = 0; i < count; ++i) words.push_back(fs::sample_word(n, i == 0 ? cfg.seed : seeds()));
    emit(cfg, fs::io::words_text(words));
    return kOk;
  }
  const int n = single_n(cfg, 2);
  const std::size_t count = cfg.samples ? cfg.samples : 10;
  const auto draws = fs::sample_first_letter(n, cfg.seed, count);
  if (cfg.format == "json") {
    Json j;
    j["n"] = n;
    j["seed"] = cfg.seed;
    j["draws"] = draws;
    emit(cfg, dump(j));
  } else {
    std::string out = cfg.format == "csv" ? "draw\n" : "";
    for (int x : draws) out += std::to_string(x) + "\n";
    emit(cfg, out);
  }
  return kOk;
}

int cmd_stein_solve(const CommandConfig& cfg) {
  const auto family = fs::lipschitz_family();
  const auto it = std::find_if(family.begin(), family.end(), [&](const auto& h) { return h.name == cfg.function; });
  if (it == family.end()) {
    std::string names;
    for (const auto& h : family) names += " '" + h.name + "'";
    throw UsageError("unknown --function '" + cfg.function + "'; choose one of" + names);
  }
  const auto sol = fs::solve_stein_equation(*it, 1.5, 1.5, cfg.grid);
  const double residual_tol = cfg.tolerance.value_or(1e-8);
  const bool ok = sol.sup_f <= 2.0 / 3.0 * it->lipschitz + 1e-6 && sol.sup_fprime <= 8.0 * it->lipschitz + 1e-4 &&
                  sol.max_residual <= residual_tol;
  if (cfg.format == "csv") {
    emit(cfg, sol.to_csv());
  } else {
    Json j;
    j["function"] = it->name;
    j["lipschitz"] = it->lipschitz;
    j["grid_size"] = cfg.grid;
    j["h_mean"] = sol.h_mean;
    j["sup_f"] = sol.sup_f;
    j["sup_fprime"] = sol.sup_fprime;
    j["max_residual"] = sol.max_residual;
    j["bound_f"] = 2.0 / 3.0 * it->lipschitz;
    j["bound_fprime"] = 8.0 * it->lipschitz;
    j["ok"] = ok;
    if (cfg.format == "json") {
      emit(cfg, dump(j));
    } else {
      std::vector<std::vector<std::string>> rows;
      for (const auto& [k, v] : j.items()) rows.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
      emit(cfg, table({"quantity", "value"}, rows));
    }
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_report(const CommandConfig& cfg) {
  fs::AcceptanceOptions opt;
  opt.seed = cfg.seed;
  opt.threads = cfg.threads;
  if (cfg.samples) opt.samples = cfg.samples;
  if (!cfg.n_text.empty() || !cfg.n_range_text.empty()) opt.wasserstein_max_n = n_range(cfg, 2).last;
  Json summary;
  summary["seed"] = opt.seed;
  summary["wasserstein_max_n"] = opt.wasserstein_max_n;
  Json criteria = Json::array();
  bool all = true;
  fs::run_acceptance(opt, [&](const fs::CriterionResult& r) {
    std::cerr << (r.passed ? "PASS " : "FAIL ") << "[" << r.id << "] " << r.name << " -- " << r.detail << " ("
              << std::fixed << std::setprecision(2) << r.seconds << "s)\n";
    for (const auto& note : r.notes) std::cerr << "     note: " << note << "\n";
    all = all && r.passed;
    Json j;
    j["id"] = r.id;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["detail"] = r.detail;
    j["notes"] = r.notes;
    j["seconds"] = r.seconds;
    criteria.push_back(j);
  });
  summary["criteria"] = std::move(criteria);
  summary["all_passed"] = all;
  CommandConfig out_cfg = cfg;
  if (out_cfg.out.empty()) out_cfg.out = "report.json";
  emit(out_cfg, dump(summary));
  return all ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact first-letter law of random sorting networks, Stein identities, and Wasserstein bounds"};
  app.require_subcommand(1);
  CommandConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n_text, "n, or a range A..B");
    sub->add_option("--n-range", cfg.n_range_text, "range A..B");
    sub->add_option("--seed", cfg.seed, "seed for randomized operations");
    sub->add_option("--samples", cfg.samples, "number of draws / random test functions");
    sub->add_option("--format", cfg.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
    sub->add_option("--out", cfg.out, "output file (relative paths resolve under $FIRSTSWAP_OUTPUT_DIR)");
    sub->add_option("--tolerance", cfg.tolerance, "numeric tolerance override");
    sub->add_option("--threads", cfg.threads, "worker threads for sweeps (0 = all cores)");
    return sub;
  };

  add_common(app.add_subcommand("pmf", "exact first-letter pmf"));
  add_common(app.add_subcommand("moments", "exact E W and E W^2"));
  add_common(app.add_subcommand("stein-check", "randomized exact checks of the discrete Stein identities"));
  add_common(app.add_subcommand("wasserstein", "d_W against Beta(3/2,3/2) (or the semicircle with --scaled)"))
      ->add_flag("--scaled", cfg.scaled, "use 2X/n - 1 against the semicircle law");
  add_common(app.add_subcommand("bounds-sweep", "bound certificates over a range of n"))
      ->add_flag("--scaled", cfg.scaled, "use 2X/n - 1 against the semicircle law");
  add_common(app.add_subcommand("enumerate", "list all reduced words of w0 (n <= 6)"));
  add_common(app.add_subcommand("count", "number of reduced words of w0"));
  add_common(app.add_subcommand("first-letter-hist", "first-letter law by enumeration (n <= 6)"));
  add_common(app.add_subcommand("yb-stats", "Yang-Baxter move statistics (3 <= n <= 6)"));
  add_common(app.add_subcommand("sample", "seeded first-letter draws (or words with --words)"))
      ->add_flag("--words", cfg.words, "sample whole reduced words instead (n <= 6)");
  auto* solve = add_common(app.add_subcommand("stein-solve", "solve the Beta(3/2,3/2) Stein equation"));
  solve->add_option("--function", cfg.function, "test function name");
  solve->add_option("--grid", cfg.grid, "grid points on [0,1]");
  add_common(app.add_subcommand("report", "run every acceptance check and write a JSON summary"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    const std::string& c = cfg.command;
    if (c == "pmf") return cmd_pmf(cfg);
    if (c == "moments") return cmd_moments(cfg);
    if (c == "stein-check") return cmd_stein_check(cfg);
    if (c == "wasserstein") return cmd_wasserstein(cfg);
    if (c == "bounds-sweep") return cmd_bounds_sweep(cfg);
    if (c == "enumerate") return cmd_enumerate(cfg);
    if (c == "count") return cmd_count(cfg);
    if (c == "first-letter-hist") return cmd_first_letter_hist(cfg);
    if (c == "yb-stats") return cmd_yb_stats(cfg);
    if (c == "sample") return cmd_sample(cfg);
    if (c == "stein-solve") return cmd_stein_solve(cfg);
    if (c == "report") return cmd_report(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const fs::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kUsage;
  } catch (const fs::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
