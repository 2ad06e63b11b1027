#pragma once

// CSV / JSON / text exports. CSV: comma separated, one header row, '\n'
// line endings. Rationals are written as "num/den" (or split num,den
// columns), doubles with 17 significant digits so they re-parse bit-exactly.

#include "firstswap/exact.hpp"
#include "firstswap/reduced_words.hpp"
#include "firstswap/wasserstein.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace firstswap::io {

using Json = nlohmann::ordered_json;

std::string format_double(double x);
double parse_double(const std::string& text);

inline constexpr const char* kPmfHeader = "n,k,p_num,p_den,p_float64";
inline constexpr const char* kSweepHeader = "n,distance,lower_paper,lower_witness,upper_paper,n_times_distance,pass";
inline constexpr const char* kYbHeader = "count,prob_num,prob_den";

struct PmfRow {
  int n;
  int k;
  Rational p;
  double p_float64;
  friend bool operator==(const PmfRow&, const PmfRow&) = default;
};

std::string pmf_csv(const std::vector<FirstLetterLaw>& laws);
std::vector<PmfRow> parse_pmf_csv(const std::string& text);

struct SweepRow {
  int n;
  double distance;
  double lower_paper;
  double lower_witness;
  double upper_paper;
  double n_times_distance;
  bool pass;
  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// One row per report. `pass` is written as true/false and reflects
/// DistanceReport::all_ok().
std::string sweep_csv(const std::vector<DistanceReport>& reports);
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

std::string yb_histogram_csv(const YBStats& stats);
std::map<int, Rational> parse_yb_histogram_csv(const std::string& text);

/// One word per line, letters separated by single spaces.
std::string words_text(const std::vector<ReducedWord>& words);
std::vector<ReducedWord> parse_words_text(int n, const std::string& text);

Json to_json(const FirstLetterLaw& law);
Json to_json(const DistanceReport& report);
Json to_json(const YBStats& stats);

}  // namespace firstswap::io
