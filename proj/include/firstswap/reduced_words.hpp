#pragma once

// Reduced words of the longest permutation w0 = n n-1 ... 1: validation,
// Stanley's count, exhaustive enumeration for n <= 6, first-letter and
// Yang-Baxter statistics, and seeded sampling.

#include "firstswap/errors.hpp"
#include "firstswap/exact.hpp"
#include "firstswap/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace firstswap {

/// Exhaustive enumeration cap; n = 7 already has 1,100,742,656 words.
inline constexpr int kMaxEnumerationN = 6;

/// One-line notation of a bijection of {1..n}.
class Permutation {
 public:
  static Permutation identity(int n);
  static Permutation longest(int n);
  /// Throws DomainError unless one_line is a bijection of {1..n}.
  explicit Permutation(std::vector<int> one_line);

  int size() const { return static_cast<int>(one_line_.size()); }
  /// pi(i), 1-based.
  int operator()(int i) const { return one_line_[static_cast<std::size_t>(i - 1)]; }
  std::span<const int> one_line() const { return one_line_; }

  /// Number of inversions (Coxeter length).
  long length() const;
  /// pi(s) < pi(s+1).
  bool has_ascent(int s) const { return (*this)(s) < (*this)(s + 1); }
  /// Right multiplication by tau_s: swaps positions s and s+1.
  void apply_adjacent(int s);

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> one_line_;
};

/// A candidate word over {1..n-1}; validity is checked by is_reduced_word.
struct ReducedWord {
  int n = 0;
  std::vector<std::uint8_t> letters;

  std::string to_string() const;  // space-separated letters
  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
  friend auto operator<=>(const ReducedWord&, const ReducedWord&) = default;
};

struct WordCheck {
  bool reduced = false;
  std::string diagnostic;  // empty when reduced
  explicit operator bool() const { return reduced; }
};

/// Word has C(n,2) letters in range, every step increases length, and the
/// product is w0.
WordCheck is_reduced_word(const ReducedWord& word);

/// C(n,2)! / (1^{n-1} 3^{n-2} ... (2n-3)^1). Throws std::logic_error if the
/// division leaves a remainder.
BigInt stanley_count(int n);

/// Calls visit on every reduced word of w0 in S_n exactly once, by DFS over
/// ascent positions (lexicographic order). Throws CapacityError for n > 6.
void for_each_word(int n, const std::function<void(std::span<const std::uint8_t>)>& visit);

/// All reduced words, lexicographically ordered.
std::vector<ReducedWord> enumerate_words(int n);

/// Exact frequency of s_1 over all reduced words.
FirstLetterLaw first_letter_histogram(int n);

/// Positions k with (s_k, s_{k+1}, s_{k+2}) = (j, j+1, j) or (j+1, j, j+1);
/// overlapping windows all count.
int yb_count(std::span<const std::uint8_t> letters);
inline int yb_count(const ReducedWord& word) { return yb_count(word.letters); }

struct YBStats {
  int n = 0;
  Rational mean;
  Rational variance;
  std::map<int, Rational> histogram;  // count -> probability
  double tv_to_poisson1 = 0.0;
  /// (C(n,2) - 4)/(C(n,2) - 2), defined for n >= 4.
  std::optional<Rational> conjectured_variance;
  bool variance_matches_conjecture = false;
};

/// Exact Yang-Baxter statistics over the uniform law on reduced words, 3 <= n <= 6.
YBStats yb_stats(int n);

/// Inverse-CDF draws from pmf(n) against exact cumulative sums. Each draw
/// compares a 64-bit uniform U/2^64 exactly with the cumulative masses.
std::vector<int> sample_first_letter(int n, std::uint64_t seed, std::size_t count);

/// Uniform reduced word by index into the cached enumeration, n <= 6.
ReducedWord sample_word(int n, std::uint64_t seed);

}  // namespace firstswap
