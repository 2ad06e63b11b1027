#include "firstswap/io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace firstswap::io {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

// Data rows of a CSV document whose first line must equal header.
std::vector<std::vector<std::string>> csv_rows(const std::string& text, const std::string& header,
                                               std::size_t columns) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != header) {
    throw std::invalid_argument("CSV header mismatch: expected '" + header + "', got '" + line + "'");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != columns) throw std::invalid_argument("CSV row has wrong column count: '" + line + "'");
    rows.push_back(std::move(fields));
  }
  return rows;
}

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("expected true/false, got '" + s + "'");
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& text) {
  double x = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (ec != std::errc()) throw std::invalid_argument("not a finite double: '" + text + "'");
  if (ptr != end) throw std::invalid_argument("trailing characters in number '" + text + "'");
  return x;
}

std::string pmf_csv(const std::vector<FirstLetterLaw>& laws) {
  std::string out = std::string(kPmfHeader) + "\n";
  for (const auto& law : laws) {
    for (int k = 1; k <= law.n() - 1; ++k) {
      const auto& p = law.p(k);
      out += std::to_string(law.n()) + "," + std::to_string(k) + "," + p.numerator().get_str() + "," +
             p.denominator().get_str() + "," + format_double(p.to_double()) + "\n";
    }
  }
  return out;
}

std::vector<PmfRow> parse_pmf_csv(const std::string& text) {
  std::vector<PmfRow> rows;
  for (const auto& f : csv_rows(text, kPmfHeader, 5)) {
    rows.push_back({std::stoi(f[0]), std::stoi(f[1]), Rational::parse(f[2] + "/" + f[3]), parse_double(f[4])});
  }
  return rows;
}

std::string sweep_csv(const std::vector<DistanceReport>& reports) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (const auto& r : reports) {
    out += std::to_string(r.n) + "," + format_double(r.distance) + "," + format_double(r.lower_paper) + "," +
           format_double(r.lower_witness) + "," + format_double(r.upper_paper) + "," +
           format_double(r.n * r.distance) + "," + (r.all_ok() ? "true" : "false") + "\n";
  }
  return out;
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::vector<SweepRow> rows;
  for (const auto& f : csv_rows(text, kSweepHeader, 7)) {
    rows.push_back({std::stoi(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3]), parse_double(f[4]),
                    parse_double(f[5]), parse_bool(f[6])});
  }
  return rows;
}

std::string yb_histogram_csv(const YBStats& stats) {
  std::string out = std::string(kYbHeader) + "\n";
  for (const auto& [count, prob] : stats.histogram) {
    out += std::to_string(count) + "," + prob.numerator().get_str() + "," + prob.denominator().get_str() + "\n";
  }
  return out;
}

std::map<int, Rational> parse_yb_histogram_csv(const std::string& text) {
  std::map<int, Rational> out;
  for (const auto& f : csv_rows(text, kYbHeader, 3)) out[std::stoi(f[0])] = Rational::parse(f[1] + "/" + f[2]);
  return out;
}

std::string words_text(const std::vector<ReducedWord>& words) {
  std::string out;
  for (const auto& w : words) out += w.to_string() + "\n";
  return out;
}

std::vector<ReducedWord> parse_words_text(int n, const std::string& text) {
  std::vector<ReducedWord> words;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    ReducedWord w{n, {}};
    for (const auto& tok : split(line, ' ')) {
      const int letter = std::stoi(tok);
      if (letter < 0 || letter > 255) throw std::invalid_argument("letter out of range: '" + tok + "'");
      w.letters.push_back(static_cast<std::uint8_t>(letter));
    }
    words.push_back(std::move(w));
  }
  return words;
}

Json to_json(const FirstLetterLaw& law) {
  Json j;
  j["n"] = law.n();
  Json probs = Json::array();
  for (const auto& p : law.probs()) probs.push_back(p.to_string());
  j["p"] = std::move(probs);
  return j;
}

Json to_json(const DistanceReport& r) {
  Json j;
  j["n"] = r.n;
  j["distance"] = r.distance;
  j["abs_error_bound"] = r.abs_error_bound;
  j["lower_paper"] = r.lower_paper;
  j["lower_witness"] = r.lower_witness;
  j["upper_paper"] = r.upper_paper;
  j["n_times_distance"] = r.n * r.distance;
  j["pass"] = r.pass;
  j["witness_ok"] = r.witness_ok;
  j["scaling_ok"] = r.scaling_ok;
  return j;
}

Json to_json(const YBStats& s) {
  Json j;
  j["n"] = s.n;
  j["mean"] = s.mean.to_string();
  j["variance"] = s.variance.to_string();
  j["conjectured_variance"] = s.conjectured_variance ? Json(s.conjectured_variance->to_string()) : Json(nullptr);
  j["variance_matches_conjecture"] = s.variance_matches_conjecture;
  j["tv_to_poisson1"] = s.tv_to_poisson1;
  Json hist = Json::object();
  for (const auto& [count, prob] : s.histogram) hist[std::to_string(count)] = prob.to_string();
  j["histogram"] = std::move(hist);
  return j;
}

}  // namespace firstswap::io
