#include "firstswap/io.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <limits>

namespace firstswap::io {
namespace {

TEST(Doubles, FormatRoundTripsBitExactly) {
  const double values[] = {0.0, -0.0, 1.0 / 3.0, 2.0 / (3.0 * M_PI), 1e-300, 5e-324, 1.7976931348623157e308, -123.456};
  for (double x : values) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(parse_double(format_double(x))), std::bit_cast<std::uint64_t>(x)) << x;
  }
  EXPECT_THROW(parse_double("1.5x"), std::invalid_argument);
  EXPECT_THROW(parse_double(""), std::invalid_argument);
  EXPECT_THROW(parse_double("1e999"), std::invalid_argument);
}

TEST(PmfCsv, HeaderAndRoundTrip) {
  const std::vector<FirstLetterLaw> laws{pmf(2), pmf(4), pmf(30)};
  const auto text = pmf_csv(laws);
  EXPECT_EQ(text.substr(0, text.find('\n')), "n,k,p_num,p_den,p_float64");
  EXPECT_NE(text.find("\n4,1,5,16,0.3125\n"), std::string::npos);
  const auto rows = parse_pmf_csv(text);
  ASSERT_EQ(rows.size(), 1u + 3u + 29u);
  std::size_t i = 0;
  for (const auto& law : laws) {
    for (int k = 1; k <= law.n() - 1; ++k, ++i) {
      EXPECT_EQ(rows[i].n, law.n());
      EXPECT_EQ(rows[i].k, k);
      EXPECT_EQ(rows[i].p, law.p(k));
      EXPECT_EQ(rows[i].p_float64, law.p(k).to_double());
    }
  }
  EXPECT_EQ(pmf_csv({}), "n,k,p_num,p_den,p_float64\n");
}

TEST(PmfCsv, RejectsMalformedInput) {
  EXPECT_THROW(parse_pmf_csv("n,k,p\n"), std::invalid_argument);
  EXPECT_THROW(parse_pmf_csv("n,k,p_num,p_den,p_float64\n4,1,5,16\n"), std::invalid_argument);
}

TEST(SweepCsv, RoundTrip) {
  const auto reports = bounds_sweep(2, 12, 1);
  const auto text = sweep_csv(reports);
  EXPECT_EQ(text.substr(0, text.find('\n')), kSweepHeader);
  const auto rows = parse_sweep_csv(text);
  ASSERT_EQ(rows.size(), reports.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].n, reports[i].n);
    EXPECT_EQ(rows[i].distance, reports[i].distance);
    EXPECT_EQ(rows[i].lower_paper, reports[i].lower_paper);
    EXPECT_EQ(rows[i].lower_witness, reports[i].lower_witness);
    EXPECT_EQ(rows[i].upper_paper, reports[i].upper_paper);
    EXPECT_EQ(rows[i].n_times_distance, reports[i].n * reports[i].distance);
    EXPECT_EQ(rows[i].pass, reports[i].all_ok());
  }
  EXPECT_EQ(sweep_csv({}), std::string(kSweepHeader) + "\n");
  EXPECT_THROW(parse_sweep_csv(std::string(kSweepHeader) + "\n2,0.1,0.1,0.1,0.1,0.1,maybe\n"), std::invalid_argument);
}

TEST(YbCsv, RoundTrip) {
  for (int n = 3; n <= 6; ++n) {
    const auto stats = yb_stats(n);
    EXPECT_EQ(parse_yb_histogram_csv(yb_histogram_csv(stats)), stats.histogram);
  }
}

TEST(WordsText, RoundTrip) {
  const auto words = enumerate_words(5);
  const auto text = words_text(words);
  EXPECT_EQ(parse_words_text(5, text), words);
  EXPECT_EQ(text.substr(0, text.find('\n')), words.front().to_string());
  EXPECT_TRUE(parse_words_text(4, "").empty());
}

TEST(Json, FirstLetterLaw) {
  const auto j = to_json(pmf(4));
  EXPECT_EQ(j.dump(), R"({"n":4,"p":["5/16","3/8","5/16"]})");
  const auto back = Json::parse(j.dump());
  std::vector<Rational> probs;
  for (const auto& p : back["p"]) probs.push_back(Rational::parse(p.get<std::string>()));
  EXPECT_EQ(FirstLetterLaw(back["n"].get<int>(), probs), pmf(4));
}

TEST(Json, DistanceReportDoublesSurvive) {
  const auto r = distance_report(37);
  const auto back = Json::parse(to_json(r).dump());
  EXPECT_EQ(back["distance"].get<double>(), r.distance);
  EXPECT_EQ(back["lower_witness"].get<double>(), r.lower_witness);
  EXPECT_EQ(back["pass"].get<bool>(), r.pass);
  EXPECT_EQ(back.begin().key(), "n");
}

TEST(Json, YbStats) {
  const auto j = to_json(yb_stats(4));
  EXPECT_EQ(j["mean"], "1/1");
  EXPECT_EQ(j["variance"], "1/2");
  EXPECT_EQ(j["conjectured_variance"], "1/2");
  EXPECT_TRUE(j["variance_matches_conjecture"].get<bool>());
  EXPECT_TRUE(to_json(yb_stats(3))["conjectured_variance"].is_null());
}

}  // namespace
}  // namespace firstswap::io
