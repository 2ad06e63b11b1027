#include "firstswap/exact.hpp"

#include <algorithm>
#include <string>

namespace firstswap {

namespace {

void require_n(int n) {
  if (n < 2) throw DomainError("n must be at least 2, got " + std::to_string(n));
}

std::string interval_str(IntegerInterval iv) {
  return "[" + std::to_string(iv.first) + ", " + std::to_string(iv.last) + "]";
}

}  // namespace

LatticePmf::LatticePmf(long first, std::vector<Rational> masses) : first_(first), masses_(std::move(masses)) {
  if (masses_.empty()) throw DomainError("pmf needs at least one atom");
  Rational total;
  for (const auto& m : masses_) {
    if (m.sign() <= 0) throw DomainError("pmf masses must be positive");
    total += m;
  }
  if (total != Rational(1)) throw DomainError("pmf masses sum to " + total.to_string() + ", not 1");
}

Rational LatticePmf::operator()(long k) const {
  if (!support().contains(k)) return Rational();
  return masses_[static_cast<std::size_t>(k - first_)];
}

Rational LatticePmf::expect(const std::function<Rational(long)>& g) const {
  Rational sum;
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    sum += masses_[i] * g(first_ + static_cast<long>(i));
  }
  return sum;
}

FirstLetterLaw::FirstLetterLaw(int n, std::vector<Rational> probs) : n_(n), probs_(std::move(probs)) {
  require_n(n);
  if (probs_.size() != static_cast<std::size_t>(n - 1)) {
    throw DomainError("first-letter law for n=" + std::to_string(n) + " needs n-1 probabilities");
  }
}

const Rational& FirstLetterLaw::p(long k) const {
  if (k < 1 || k > n_ - 1) throw DomainError("k=" + std::to_string(k) + " outside [1, n-1]");
  return probs_[static_cast<std::size_t>(k - 1)];
}

TestFunction::TestFunction(IntegerInterval domain, std::vector<Rational> values)
    : domain_(domain), values_(std::move(values)) {
  if (domain_.size() <= 0 || values_.size() != static_cast<std::size_t>(domain_.size())) {
    throw DomainError("test function values do not match domain " + interval_str(domain_));
  }
}

TestFunction TestFunction::from(IntegerInterval domain, const std::function<Rational(long)>& g) {
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(std::max(0L, domain.size())));
  for (long k = domain.first; k <= domain.last; ++k) values.push_back(g(k));
  return TestFunction(domain, std::move(values));
}

const Rational& TestFunction::operator()(long k) const {
  if (!domain_.contains(k)) {
    throw DomainError("test function evaluated at " + std::to_string(k) + " outside " + interval_str(domain_));
  }
  return values_[static_cast<std::size_t>(k - domain_.first)];
}

SteinTriple::SteinTriple(LatticePmf pmf, TestFunction c) : pmf_(std::move(pmf)), c_(std::move(c)) {
  const auto [a, b] = pmf_.support();
  if (c_.domain() != IntegerInterval{a - 1, b}) {
    throw DomainError("weight c must be defined on " + interval_str({a - 1, b}));
  }
  if (!c_(a - 1).is_zero()) throw DomainError("weight c must vanish at a-1");
  psi_.reserve(static_cast<std::size_t>(b - a + 1));
  for (long k = a; k <= b; ++k) {
    const Rational pk = pmf_(k);
    psi_.push_back((pmf_(k + 1) - pk) / pk);
  }
}

const Rational& SteinTriple::psi(long k) const {
  const auto iv = support();
  if (!iv.contains(k)) throw DomainError("psi evaluated at " + std::to_string(k) + " outside " + interval_str(iv));
  return psi_[static_cast<std::size_t>(k - iv.first)];
}

FirstLetterLaw pmf(int n) {
  require_n(n);
  // ratio[m] = prod_{j=1}^{m-1} (2j+1)/(2j), m = 1..n-1
  std::vector<Rational> ratio(static_cast<std::size_t>(n));
  ratio[1] = Rational(1);
  for (int m = 2; m <= n - 1; ++m) {
    ratio[m] = ratio[m - 1] * Rational(2L * (m - 1) + 1, 2L * (m - 1));
  }
  const Rational inv_pairs(BigInt(1), binomial(static_cast<unsigned long>(n), 2));
  std::vector<Rational> probs;
  probs.reserve(static_cast<std::size_t>(n - 1));
  for (int k = 1; k <= n - 1; ++k) probs.push_back(inv_pairs * ratio[k] * ratio[n - k]);
  return FirstLetterLaw(n, std::move(probs));
}

Rational psi(int n, long k) {
  require_n(n);
  if (k < 1 || k > n - 1) throw DomainError("psi: k=" + std::to_string(k) + " outside [1, n-1]");
  return Rational(n - 2 * k - 1, k * (2 * (n - k) - 1));
}

Rational c_weight(int n, long k) {
  require_n(n);
  if (k < 0 || k > n - 1) throw DomainError("c: k=" + std::to_string(k) + " outside [0, n-1]");
  return Rational(k * (2 * (n - k) - 1));
}

Rational linear_coefficient(int n, long k) {
  const Rational ck = c_weight(n, k);
  return ck * psi(n, k) + ck - c_weight(n, k - 1);
}

SteinTriple first_letter_triple(int n) {
  auto c = TestFunction::from({0, n - 1}, [n](long k) { return c_weight(n, k); });
  return SteinTriple(pmf(n).as_lattice(), std::move(c));
}

Rational check_identity_prop21(const SteinTriple& triple, const TestFunction& f) {
  const auto [a, b] = triple.support();
  if (f.domain() != IntegerInterval{a - 1, b}) {
    throw DomainError("f must be defined on " + interval_str({a - 1, b}) + ", got " + interval_str(f.domain()));
  }
  return triple.pmf().expect([&](long y) {
    const Rational& cy = triple.c(y);
    const Rational& cprev = triple.c(y - 1);
    return cprev * (f(y) - f(y - 1)) + (cy * triple.psi(y) + cy - cprev) * f(y);
  });
}

Rational check_characterization(const LatticePmf& pmf, const TestFunction& f) {
  const auto [a, b] = pmf.support();
  if (f.domain() != IntegerInterval{a - 1, b}) {
    throw DomainError("f must be defined on " + interval_str({a - 1, b}) + ", got " + interval_str(f.domain()));
  }
  return pmf.expect([&](long y) {
    const Rational py = pmf(y);
    const Rational psi_y = (pmf(y + 1) - py) / py;
    Rational term = f(y) - f(y - 1) + psi_y * f(y);
    if (y == a) term += f(a - 1);
    return term;
  });
}

GridFunction::GridFunction(int n, std::vector<Rational> values) : n_(n), values_(std::move(values)) {
  require_n(n);
  if (values_.size() != static_cast<std::size_t>(n)) {
    throw DomainError("grid function needs values at k/n for every k in [0, n-1]");
  }
}

GridFunction GridFunction::from(int n, const std::function<Rational(const Rational&)>& g) {
  require_n(n);
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) values.push_back(g(Rational(k, n)));
  return GridFunction(n, std::move(values));
}

const Rational& GridFunction::at_index(long k) const {
  if (k < 0 || k >= n_) throw DomainError("grid function has no value at " + std::to_string(k) + "/n");
  return values_[static_cast<std::size_t>(k)];
}

Rational rescaled_identity_residual(int n, const GridFunction& f) {
  if (f.n() != n) throw DomainError("grid function is on the wrong grid");
  const auto law = pmf(n);
  const Rational nn(n);
  const Rational half_over_n(1, 2L * n);
  const Rational three_halves(3, 2);
  Rational sum;
  for (long k = 1; k <= n - 1; ++k) {
    const Rational w(k, n);
    const Rational diff = f.at_index(k) - f.at_index(k - 1);
    const Rational term = (nn * w - 1) * (Rational(1) - w + half_over_n) * diff +
                          (three_halves * (Rational(1) - w) - three_halves * w) * f.at_index(k);
    sum += law.p(k) * term;
  }
  return sum;
}

Moments moments(int n) {
  const auto law = pmf(n);
  Moments m;
  for (long k = 1; k <= n - 1; ++k) {
    const Rational w(k, n);
    m.mean += w * law.p(k);
    m.second_moment += w * w * law.p(k);
  }
  return m;
}

Rational second_moment_closed_form(int n) {
  require_n(n);
  return Rational(5, 16) - Rational(2L + n, 16L * n * n);
}

}  // namespace firstswap
