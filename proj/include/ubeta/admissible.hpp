#pragma once

// Admissible blocks, their intervals [beta_L, beta_U], the beta_n ladder,
// relations between intervals, and locating the block that governs a base.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ubeta/expansions.hpp"
#include "ubeta/numeric.hpp"
#include "ubeta/words.hpp"

namespace ubeta {

struct AdmissibilityReport {
  bool admissible = false;
  /// Which condition failed, e.g. "reflect(t₁) > t₁"; empty when admissible.
  std::string witness;
};

AdmissibilityReport check_admissible(const Word& t);
inline bool is_admissible_block(const Word& t) { return check_admissible(t).admissible; }

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// All admissible blocks of length <= p_max in (length, lexicographic) order.
/// BudgetExceeded when N^p_max exceeds the budget.
std::vector<Word> enumerate_admissible(Alphabet alphabet, std::size_t p_max,
                                       std::uint64_t budget = kDefaultEnumerationBudget);

struct AdmissibleInterval {
  Word block;
  Enclosure<Real> beta_L;
  Enclosure<Real> beta_U;

  std::size_t p() const noexcept { return block.size(); }
  /// Membership with the certified radii counted in.
  bool contains(Real beta) const { return beta_L.lower() <= beta && beta <= beta_U.upper(); }
  /// Base at the left endpoint, carrying (alpha_i(beta_L)) = block^infinity.
  Base left_base() const { return Base::parry(block.alphabet(), beta_L.value, block); }
};

/// (k + sqrt(k^2 + 4k))/2 for N = 2k, k + 1 for N = 2k + 1.
Real generalized_golden_ratio(Alphabet alphabet);

/// Root in (1, N] of 1 = sum t_i beta^-i + beta^-p (the periodic series of
/// block^infinity), by certified bisection then a Newton polish.
template <class T>
Enclosure<T> parry_root(const Word& block, const T& tol);

/// Endpoints of the admissible interval generated by `block`; NotAdmissible
/// otherwise. Radii are at most tol, tightened further when the interval is
/// narrower than tol. Throws Undecided if the certified enclosures cannot separate
/// beta_L < beta_U or confirm [beta_L, beta_U] within [G_N, N).
AdmissibleInterval interval_endpoints(const Word& block, Real tol = kDefaultTol);

/// High-precision endpoints (beta_L, beta_U) for deep expansion checks.
std::pair<Enclosure<HighReal>, Enclosure<HighReal>> interval_endpoints_precise(const Word& block,
                                                                              const HighReal& tol);

/// beta_1 < beta_2 < ... with alpha(beta_n) = (theta_1..theta_m reflect(theta_1..theta_m))^inf,
/// m = 2^(n-1) p.
template <class T>
std::vector<Enclosure<T>> beta_ladder(const Word& block, std::size_t n_max, const T& tol);

/// The periodic word whose infinite repetition is alpha(beta_n).
Word ladder_period(const Word& block, std::size_t n);

enum class IntervalRelation { Disjoint, SameRightEndpoint, Identical };

std::string_view to_string(IntervalRelation r) noexcept;

/// True when theta(a^+) = theta(b^+) because the longer seed is a doubling
/// prefix of the shorter one's generalized Thue-Morse sequence.
bool shares_right_endpoint_structurally(const Word& a, const Word& b);

/// Undecided when enclosures overlap without a structural reason.
IntervalRelation interval_relation(const AdmissibleInterval& a, const AdmissibleInterval& b);
IntervalRelation interval_relation(const Word& a, const Word& b, Real tol = kDefaultTol);

struct CriticalBases {
  Real golden;                     ///< G_N
  Enclosure<Real> komornik_loreti; ///< beta_c(N)
};

CriticalBases critical_bases(Alphabet alphabet, Real tol = kDefaultTol);

struct Location {
  enum class Kind { Block, InClosureU, BelowCritical, Unresolved };
  Kind kind = Kind::Unresolved;
  std::optional<AdmissibleInterval> interval;
  std::string note;
};

std::string_view to_string(Location::Kind k) noexcept;

/// Scan of alpha(beta) for the least m with alpha_{m+1}... <= reflect(alpha):
/// Block(alpha_1..alpha_m^-) when found and verified, InClosureU when no
/// violation appears within `depth`, Unresolved otherwise.
Location closure_scan(const Base& base, std::size_t depth, Real tol = kDefaultTol);

/// Admissible intervals up to a block length, sorted by beta_L, with a
/// containment query. Immutable once built.
class IntervalCatalog {
 public:
  IntervalCatalog(Alphabet alphabet, std::size_t p_max, Real tol = kDefaultTol,
                  std::uint64_t budget = kDefaultEnumerationBudget);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t p_max() const noexcept { return p_max_; }
  Real tol() const noexcept { return tol_; }
  const std::vector<AdmissibleInterval>& intervals() const noexcept { return intervals_; }
  const CriticalBases& critical() const noexcept { return critical_; }

  /// Outermost enumerated interval containing beta, if any.
  const AdmissibleInterval* find(Real beta) const;

  /// BelowCritical for beta <= beta_c(N) (within radius); then enumerated
  /// containment; then closure_scan.
  Location locate(const Base& base, std::size_t depth = kDefaultExpansionDepth) const;

 private:
  Alphabet alphabet_;
  std::size_t p_max_;
  Real tol_;
  CriticalBases critical_;
  std::vector<AdmissibleInterval> intervals_;
};

Location locate_block(const Base& base, std::size_t depth, std::size_t p_max, Real tol = kDefaultTol);

// ---------------------------------------------------------------------------

template <class T>
Enclosure<T> parry_root(const Word& block, const T& tol) {
  using std::abs;
  const std::size_t p = block.size();
  const T eps = std::numeric_limits<T>::epsilon();
  // g(beta) = 1 - sum t_i beta^-i - beta^-p is strictly increasing on (1, inf);
  // returns g with a rounding bound in `err` and g' in `slope`.
  auto eval = [&](const T& beta, T& err, T& slope) {
    T sum = 0;
    T mag = 1;
    slope = 0;
    T scale = 1;
    for (std::size_t i = 1; i <= p; ++i) {
      scale /= beta;
      const T term = T(block[i - 1]) * scale;
      sum += term;
      mag += term;
      slope += T(i) * term / beta;
    }
    sum += scale;
    mag += scale;
    slope += T(p) * scale / beta;
    err = 4 * T(p + 2) * eps * mag;
    return 1 - sum;
  };
  T lo = 1;
  T hi = T(block.alphabet().size());
  T err{}, slope{};
  while (hi - lo > tol) {
    const T mid = (lo + hi) / 2;
    const T g = eval(mid, err, slope);
    if (abs(g) <= err) {
      lo = hi = mid;
      break;
    }
    (g < 0 ? lo : hi) = mid;
  }
  T x = (lo + hi) / 2;
  T radius = (hi - lo) / 2;
  // Newton polish, kept only if a sign change certifies the smaller radius.
  for (int it = 0; it < 4; ++it) {
    const T g = eval(x, err, slope);
    x -= g / slope;
  }
  eval(x, err, slope);
  const T r = 4 * (err / slope) + 8 * eps * x;
  T err_lo{}, err_hi{}, s{};
  const T g_lo = eval(x - r, err_lo, s);
  const T g_hi = eval(x + r, err_hi, s);
  if (g_lo < -err_lo && g_hi > err_hi) return {x, r};
  return {(lo + hi) / 2, std::max(radius, T(err / slope))};
}

template <class T>
std::vector<Enclosure<T>> beta_ladder(const Word& block, std::size_t n_max, const T& tol) {
  if (!is_admissible_block(block)) {
    throw Error(Errc::NotAdmissible, "'" + block.to_string() + "' is not an admissible block");
  }
  std::vector<Enclosure<T>> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    out.push_back(solve_unit_base<T>(DigitStream::periodic(ladder_period(block, n)), tol));
  }
  return out;
}

}  // namespace ubeta
