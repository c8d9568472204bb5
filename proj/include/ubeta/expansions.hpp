#pragma once

// Greedy and quasi-greedy beta-expansions, the projection Pi_beta, and the
// lexicographic tests for greedy / quasi-greedy / unique expansions.
//
// Digit recursions run in exact binary-rational arithmetic on the given base
// value, so digits deep into an expansion are those of the base actually
// passed in. A digit decision within 2^-40 (relative; 2^-200 for HighReal
// bases) of an exact tie is a NearTie: either an error or, under
// TiePolicy::Snap, resolved as the exact tie (which reads the base as the
// nearby tie value).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "ubeta/error.hpp"
#include "ubeta/numeric.hpp"
#include "ubeta/words.hpp"

namespace ubeta {

inline constexpr std::size_t kDefaultExpansionDepth = 256;
inline constexpr std::size_t kDefaultCompareDepth = 4096;
/// Relative tie guard for digit decisions and range checks.
inline constexpr long double kTieGuard = 0x1p-40L;
/// Tie guard for digit decisions on bases given in HighReal precision.
inline constexpr long double kHighTieGuard = 0x1p-200L;

/// A base beta > 1 over an alphabet, optionally tagged with the exact period
/// of its quasi-greedy expansion of 1 (a known Parry base such as beta_L).
class Base {
 public:
  Base(Alphabet alphabet, Real beta);
  Base(Alphabet alphabet, const HighReal& beta);

  /// (alpha_i(beta)) = period^infinity, produced symbolically.
  static Base parry(Alphabet alphabet, Real beta, const Word& period);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  Real value() const noexcept { return value_; }
  const HighReal& high_value() const noexcept { return high_; }
  const Dyadic& exact() const noexcept { return exact_; }
  const std::optional<Word>& symbolic_one() const noexcept { return symbolic_one_; }
  /// kTieGuard, or kHighTieGuard when the base was given as a HighReal.
  long double tie_guard() const noexcept { return tie_guard_; }

 private:
  Alphabet alphabet_;
  Real value_;
  HighReal high_;
  Dyadic exact_;
  std::optional<Word> symbolic_one_;
  long double tie_guard_ = kTieGuard;
};

enum class TiePolicy { Throw, Snap };

struct ExpansionOptions {
  std::size_t depth = kDefaultExpansionDepth;
  TiePolicy ties = TiePolicy::Throw;
};

struct ExpansionResult {
  Word digits;
  /// Bound on |x - Pi_beta(digits)|.
  Real residual_bound = 0;
};

/// Partial sum over `depth` digits; the result is the midpoint of
/// [S, S + tail] with tail = (N-1) beta^-depth / (beta-1).
template <class T>
Enclosure<T> project(const DigitStream& digits, const T& beta, std::size_t depth) {
  using std::pow;
  const Word w = digits.prefix(depth);
  T sum = 0;
  T scale = 1;
  for (std::size_t i = 0; i < depth; ++i) {
    scale /= beta;
    sum += T(w[i]) * scale;
  }
  const T tail = T(digits.alphabet().size() - 1) * scale / (beta - 1);
  return {sum + tail / 2, tail / 2};
}

Enclosure<Real> project(const DigitStream& digits, const Base& base, std::size_t depth);

/// First `depth` digits of (alpha_i(beta)), the quasi-greedy expansion of 1.
ExpansionResult quasi_greedy_of_one(const Base& base, ExpansionOptions options = {});
ExpansionResult quasi_greedy_of_x(Real x, const Base& base, ExpansionOptions options = {});
ExpansionResult greedy_of_x(Real x, const Base& base, ExpansionOptions options = {});

/// (alpha_i(beta)) as a lazy stream: periodic when the base carries its
/// symbolic expansion, generated by the exact recursion otherwise.
DigitStream alpha_stream(const Base& base, TiePolicy ties = TiePolicy::Throw);

/// Infinitely many nonzero digits and sigma^k(s) <= s for all k, decided exactly.
bool is_quasi_greedy_sequence(const DigitStream& s);

/// b_{n+1}b_{n+2}... < alpha whenever b_n < N-1.
bool is_greedy_sequence(const DigitStream& b, const Base& base,
                        std::size_t depth = kDefaultCompareDepth);
/// The strengthened form: b_{n+k+1}... < alpha for all k >= 0 whenever b_n < N-1.
bool is_greedy_sequence_strong(const DigitStream& b, const Base& base,
                               std::size_t depth = kDefaultCompareDepth);
/// The paired strict conditions characterizing x in U_{beta,N}.
bool is_unique_expansion(const DigitStream& d, const Base& base,
                         std::size_t depth = kDefaultCompareDepth);
/// reflect(alpha) < d_n d_{n+1}... < alpha for all n >= 1.
bool in_v_set(const DigitStream& d, const Base& base, std::size_t depth = kDefaultCompareDepth);

namespace detail {

/// Sign of Pi_beta(s) - 1 with a certified tail; 0 when |Pi_beta(s) - 1| is
/// below `floor` (beta is then a root to within the caller's tolerance).
template <class T>
int unit_sign(std::vector<Digit>& cache, const DigitStream& s, const T& beta, const T& floor) {
  const T n_minus_1 = T(s.alphabet().size() - 1);
  const T tail_factor = n_minus_1 / (beta - 1);
  constexpr std::size_t kMaxTerms = std::size_t{1} << 22;
  T sum = 0;
  T scale = 1;
  for (std::size_t i = 0; i < kMaxTerms; ++i) {
    if (i >= cache.size()) {
      const std::size_t grow = std::max<std::size_t>(64, 2 * cache.size());
      const Word w = s.prefix(grow);
      cache.assign(w.digits().begin(), w.digits().end());
    }
    scale /= beta;
    sum += T(cache[i]) * scale;
    if (sum > 1) return +1;
    const T tail = tail_factor * scale;
    if (sum + tail < 1) return -1;
    if (tail < floor) return 0;
  }
  return 0;
}

}  // namespace detail

/// The beta in (1, N] with Pi_beta(s) = 1, by bisection on the strictly
/// decreasing map beta -> Pi_beta(s). No validation of s.
template <class T>
Enclosure<T> solve_unit_base(const DigitStream& s, const T& tol) {
  const T n = T(s.alphabet().size());
  T lo = 1;
  T hi = n;
  std::vector<Digit> cache;
  // |d Pi / d beta| >= 1/N^2 near any root, so a residual below this floor
  // pins the root to within tol/8.
  const T floor = tol / (8 * n * n);
  while (hi - lo > tol) {
    const T mid = (lo + hi) / 2;
    const int sign = detail::unit_sign(cache, s, mid, floor);
    if (sign > 0) {
      lo = mid;
    } else if (sign < 0) {
      hi = mid;
    } else {
      return {mid, tol / 2};
    }
  }
  return {(lo + hi) / 2, (hi - lo) / 2};
}

/// Root of Pi_beta(s) = 1 for a quasi-greedy sequence s; NotQuasiGreedy when
/// s fails the exact test (eventually periodic s) or a prefix test (others).
Enclosure<Real> base_from_quasi_greedy(const DigitStream& s, Real tol = kDefaultTol);

}  // namespace ubeta
