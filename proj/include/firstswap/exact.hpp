#pragma once

// Exact first-letter law of a uniform reduced word of the longest
// permutation, its discrete Stein structure, and the zero-mean functional
// identities it satisfies. Everything here is exact rational arithmetic.

#include "firstswap/errors.hpp"
#include "firstswap/rational.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace firstswap {

/// Closed integer interval [first, last].
struct IntegerInterval {
  long first = 0;
  long last = -1;

  long size() const { return last - first + 1; }
  bool contains(long k) const { return first <= k && k <= last; }
  friend bool operator==(const IntegerInterval&, const IntegerInterval&) = default;
};

/// A pmf on an integer interval, all masses strictly positive and summing
/// to exactly one.
class LatticePmf {
 public:
  /// Throws DomainError unless masses are positive and sum to one.
  LatticePmf(long first, std::vector<Rational> masses);

  IntegerInterval support() const { return {first_, first_ + static_cast<long>(masses_.size()) - 1}; }
  /// Mass at k; zero off the support.
  Rational operator()(long k) const;
  std::span<const Rational> masses() const { return masses_; }

  /// E[g(Y)] for an exact-valued g.
  Rational expect(const std::function<Rational(long)>& g) const;

 private:
  long first_;
  std::vector<Rational> masses_;
};

/// Law of the first letter X = s_1, supported on {1, ..., n-1}.
class FirstLetterLaw {
 public:
  FirstLetterLaw(int n, std::vector<Rational> probs);

  int n() const { return n_; }
  /// p(k) for 1 <= k <= n-1; throws DomainError otherwise.
  const Rational& p(long k) const;
  /// probs()[k-1] == p(k).
  std::span<const Rational> probs() const { return probs_; }
  LatticePmf as_lattice() const { return LatticePmf(1, probs_); }

  friend bool operator==(const FirstLetterLaw&, const FirstLetterLaw&) = default;

 private:
  int n_;
  std::vector<Rational> probs_;
};

/// A function on an integer interval with exact values.
class TestFunction {
 public:
  TestFunction(IntegerInterval domain, std::vector<Rational> values);
  static TestFunction from(IntegerInterval domain, const std::function<Rational(long)>& g);

  IntegerInterval domain() const { return domain_; }
  /// Throws DomainError off the domain.
  const Rational& operator()(long k) const;

 private:
  IntegerInterval domain_;
  std::vector<Rational> values_;
};

/// pmf p on [a,b] with psi = (p(k+1) - p(k))/p(k), p(b+1) = 0, and a weight
/// c on [a-1, b] with c(a-1) = 0.
class SteinTriple {
 public:
  /// psi is derived from the pmf; c must be defined on [a-1, b] with c(a-1) = 0.
  SteinTriple(LatticePmf pmf, TestFunction c);

  const LatticePmf& pmf() const { return pmf_; }
  IntegerInterval support() const { return pmf_.support(); }
  const Rational& psi(long k) const;
  const Rational& c(long k) const { return c_(k); }

 private:
  LatticePmf pmf_;
  std::vector<Rational> psi_;
  TestFunction c_;
};

/// p(k) = (1/C(n,2)) prod_{j<k} (2j+1)/(2j) prod_{j<n-k} (2j+1)/(2j).
FirstLetterLaw pmf(int n);

/// Closed form (n - 2k - 1) / (k (2(n-k) - 1)), 1 <= k <= n-1.
Rational psi(int n, long k);

/// k (2(n-k) - 1), 0 <= k <= n-1.
Rational c_weight(int n, long k);

/// c(k) psi(k) + c(k) - c(k-1), which reduces to 3n - 6k.
Rational linear_coefficient(int n, long k);

/// The triple (pmf(n), psi, c) used for the first-letter law.
SteinTriple first_letter_triple(int n);

/// E[c(Y-1) Df(Y-1) + (c(Y) psi(Y) + c(Y) - c(Y-1)) f(Y)], zero for any f.
/// f must be defined on exactly [a-1, b].
Rational check_identity_prop21(const SteinTriple& triple, const TestFunction& f);

/// E[Df(Y-1) + psi(Y) f(Y) + f(a-1) 1(Y = a)], zero for any f on [a-1, b].
Rational check_characterization(const LatticePmf& pmf, const TestFunction& f);

/// Values f(k/n) for k = 0..n-1.
class GridFunction {
 public:
  GridFunction(int n, std::vector<Rational> values);
  static GridFunction from(int n, const std::function<Rational(const Rational&)>& g);

  int n() const { return n_; }
  /// f(k/n); throws DomainError off the grid.
  const Rational& at_index(long k) const;

 private:
  int n_;
  std::vector<Rational> values_;
};

/// E[(nW-1)(1-W+1/(2n)) D_{1/n} f(W-1/n) + (3/2 (1-W) - 3/2 W) f(W)], W = X/n.
Rational rescaled_identity_residual(int n, const GridFunction& f);

struct Moments {
  Rational mean;           // E W
  Rational second_moment;  // E W^2
};

/// Exact E W and E W^2 for W = X/n.
Moments moments(int n);

/// 5/16 - (2+n)/(16 n^2).
Rational second_moment_closed_form(int n);

}  // namespace firstswap
