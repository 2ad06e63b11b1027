#include "firstswap/reduced_words.hpp"

#include "firstswap/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace firstswap {

namespace {

void require_enumerable(int n) {
  if (n < 2) throw DomainError("n must be at least 2, got " + std::to_string(n));
  if (n > kMaxEnumerationN) {
    throw CapacityError("exhaustive enumeration is capped at n <= " + std::to_string(kMaxEnumerationN) + " (n=" +
                        std::to_string(n) + " requested; n=7 alone has 1,100,742,656 reduced words). " +
                        "Use the closed-form pmf and sample_first_letter for larger n.");
  }
}

std::size_t word_length(int n) { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2; }

void dfs(Permutation& current, std::vector<std::uint8_t>& prefix, std::size_t target,
         const std::function<void(std::span<const std::uint8_t>)>& visit) {
  if (prefix.size() == target) {
    visit(prefix);
    return;
  }
  const int n = current.size();
  for (int s = 1; s < n; ++s) {
    if (!current.has_ascent(s)) continue;
    current.apply_adjacent(s);
    prefix.push_back(static_cast<std::uint8_t>(s));
    dfs(current, prefix, target, visit);
    prefix.pop_back();
    current.apply_adjacent(s);
  }
}

// Word lists for sample_word, built once per n and immutable afterwards.
const std::vector<ReducedWord>& cached_words(int n) {
  static std::array<std::once_flag, kMaxEnumerationN + 1> once;
  static std::array<std::vector<ReducedWord>, kMaxEnumerationN + 1> words;
  const auto i = static_cast<std::size_t>(n);
  std::call_once(once[i], [&] { words[i] = enumerate_words(n); });
  return words[i];
}

}  // namespace

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::longest(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.rbegin(), v.rend(), 1);
  return Permutation(std::move(v));
}

Permutation::Permutation(std::vector<int> one_line) : one_line_(std::move(one_line)) {
  std::vector<bool> seen(one_line_.size() + 1, false);
  for (int v : one_line_) {
    if (v < 1 || v > size() || seen[static_cast<std::size_t>(v)]) {
      throw DomainError("one-line notation is not a permutation of 1..n");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

long Permutation::length() const {
  long inversions = 0;
  for (std::size_t i = 0; i < one_line_.size(); ++i) {
    for (std::size_t j = i + 1; j < one_line_.size(); ++j) {
      if (one_line_[i] > one_line_[j]) ++inversions;
    }
  }
  return inversions;
}

void Permutation::apply_adjacent(int s) {
  if (s < 1 || s >= size()) throw DomainError("adjacent transposition index out of range");
  std::swap(one_line_[static_cast<std::size_t>(s - 1)], one_line_[static_cast<std::size_t>(s)]);
}

std::string ReducedWord::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(letters[i]);
  }
  return out;
}

WordCheck is_reduced_word(const ReducedWord& word) {
  const int n = word.n;
  if (n < 1) return {false, "n must be positive"};
  if (word.letters.size() != word_length(n)) {
    return {false, "word has " + std::to_string(word.letters.size()) + " letters, expected C(n,2) = " +
                       std::to_string(word_length(n))};
  }
  auto current = Permutation::identity(n);
  for (std::size_t t = 0; t < word.letters.size(); ++t) {
    const int s = word.letters[t];
    if (s < 1 || s > n - 1) {
      return {false, "letter " + std::to_string(s) + " at position " + std::to_string(t + 1) + " outside [1, n-1]"};
    }
    if (!current.has_ascent(s)) {
      return {false, "prefix of length " + std::to_string(t + 1) + " is not reduced (no ascent at " +
                         std::to_string(s) + ")"};
    }
    current.apply_adjacent(s);
  }
  // C(n,2) length-increasing steps can only end at w0; checked anyway.
  if (current != Permutation::longest(n)) return {false, "product is not the longest element"};
  return {true, {}};
}

BigInt stanley_count(int n) {
  if (n < 2) throw DomainError("stanley_count needs n >= 2");
  BigInt numerator;
  mpz_fac_ui(numerator.get_mpz_t(), static_cast<unsigned long>(word_length(n)));
  BigInt denominator = 1;
  for (int i = 1; i <= n - 1; ++i) {
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(2 * i - 1), static_cast<unsigned long>(n - i));
    denominator *= power;
  }
  if (!mpz_divisible_p(numerator.get_mpz_t(), denominator.get_mpz_t())) {
    throw std::logic_error("Stanley formula left a remainder for n=" + std::to_string(n));
  }
  return numerator / denominator;
}

void for_each_word(int n, const std::function<void(std::span<const std::uint8_t>)>& visit) {
  require_enumerable(n);
  auto current = Permutation::identity(n);
  std::vector<std::uint8_t> prefix;
  prefix.reserve(word_length(n));
  dfs(current, prefix, word_length(n), visit);
}

std::vector<ReducedWord> enumerate_words(int n) {
  std::vector<ReducedWord> out;
  for_each_word(n, [&](std::span<const std::uint8_t> letters) {
    out.push_back({n, std::vector<std::uint8_t>(letters.begin(), letters.end())});
  });
  return out;
}

FirstLetterLaw first_letter_histogram(int n) {
  std::vector<long> counts(static_cast<std::size_t>(n), 0);
  long total = 0;
  for_each_word(n, [&](std::span<const std::uint8_t> letters) {
    ++counts[letters.front()];
    ++total;
  });
  std::vector<Rational> probs;
  for (int k = 1; k <= n - 1; ++k) probs.emplace_back(counts[static_cast<std::size_t>(k)], total);
  return FirstLetterLaw(n, std::move(probs));
}

int yb_count(std::span<const std::uint8_t> letters) {
  int count = 0;
  for (std::size_t k = 0; k + 2 < letters.size(); ++k) {
    const int a = letters[k], b = letters[k + 1], c = letters[k + 2];
    if (a == c && (b == a + 1 || b == a - 1)) ++count;
  }
  return count;
}

YBStats yb_stats(int n) {
  if (n < 3) throw DomainError("yb_stats needs n >= 3");
  require_enumerable(n);
  std::map<int, long> counts;
  long total = 0;
  for_each_word(n, [&](std::span<const std::uint8_t> letters) {
    ++counts[yb_count(letters)];
    ++total;
  });

  YBStats s;
  s.n = n;
  Rational second;
  for (const auto& [value, count] : counts) {
    const Rational prob(count, total);
    s.histogram[value] = prob;
    s.mean += prob * Rational(value);
    second += prob * Rational(value) * Rational(value);
  }
  s.variance = second - s.mean * s.mean;

  const int top = counts.empty() ? 0 : counts.rbegin()->first;
  double tv = 0.0;
  double poisson = std::exp(-1.0);  // e^-1 / j!
  // Beyond j = 40 the Poisson(1) terms are below 1e-48.
  for (int j = 0; j <= std::max(top, 40); ++j) {
    const auto it = s.histogram.find(j);
    const double p = it == s.histogram.end() ? 0.0 : it->second.to_double();
    tv += std::abs(p - poisson);
    poisson /= (j + 1);
  }
  s.tv_to_poisson1 = 0.5 * tv;

  if (n >= 4) {
    const long pairs = static_cast<long>(word_length(n));
    s.conjectured_variance = Rational(pairs - 4, pairs - 2);
    s.variance_matches_conjecture = s.variance == *s.conjectured_variance;
  }
  return s;
}

std::vector<int> sample_first_letter(int n, std::uint64_t seed, std::size_t count) {
  const auto law = pmf(n);
  // thresholds[k-1] = ceil(2^64 P(X <= k)); for an integer U,
  // U < thresholds[k-1] <=> U/2^64 < P(X <= k).
  std::vector<BigInt> thresholds;
  Rational cumulative;
  for (const auto& p : law.probs()) {
    cumulative += p;
    const BigInt scaled = cumulative.numerator() << 64;
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), cumulative.denominator().get_mpz_t());
    thresholds.push_back(std::move(q));
  }

  SplitMix64 rng(seed);
  std::vector<int> draws;
  draws.reserve(count);
  BigInt u;
  for (std::size_t i = 0; i < count; ++i) {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    u = static_cast<unsigned long>(rng());
    const auto it = std::upper_bound(thresholds.begin(), thresholds.end(), u);
    draws.push_back(static_cast<int>(it - thresholds.begin()) + 1);
  }
  return draws;
}

ReducedWord sample_word(int n, std::uint64_t seed) {
  require_enumerable(n);
  const auto& words = cached_words(n);
  SplitMix64 rng(seed);
  return words[static_cast<std::size_t>(rng.below(words.size()))];
}

}  // namespace firstswap
