#include "ubeta/expansions.hpp"

#include <cmath>
#include <memory>
#include <string>

namespace ubeta {

namespace {

struct Fraction {
  BigInt numerator;
  std::int64_t shift = 0;  // value = numerator / 2^shift, shift >= 0
};

Fraction to_fraction(const Dyadic& d) {
  if (d.exponent >= 0) return {d.mantissa << static_cast<unsigned>(d.exponent), 0};
  return {d.mantissa, -d.exponent};
}

void check_base(const Alphabet& alphabet, Real beta) {
  if (!(beta > 1) || !std::isfinite(beta)) {
    throw Error(Errc::InvalidBase, "base must exceed 1");
  }
  (void)alphabet;
}

/// a / 2^e as a long double, for magnitudes that may exceed the exponent range.
long double ratio(const BigInt& a, std::int64_t e) {
  if (a == 0) return 0.0L;
  const std::int64_t bits = static_cast<std::int64_t>(boost::multiprecision::msb(a < 0 ? BigInt(-a) : a)) + 1;
  const std::int64_t drop = std::max<std::int64_t>(0, bits - 96);
  const BigInt head = a >> static_cast<unsigned>(drop);
  return std::ldexp(head.convert_to<long double>(), static_cast<int>(drop - e));
}

enum class Mode { Greedy, QuasiGreedy };

// The remainder recursion r_n = beta r_{n-1} - a_n with r = R / 2^e kept exact.
class DigitRecursion {
 public:
  DigitRecursion(const Base& base, const Dyadic& x, Mode mode, TiePolicy ties)
      : alphabet_(base.alphabet()),
        mode_(mode),
        ties_(ties),
        beta_(base.value()),
        guard_(base.tie_guard()) {
    const Fraction b = to_fraction(base.exact());
    beta_num_ = b.numerator;
    beta_shift_ = b.shift;
    const Fraction r = to_fraction(x);
    r_ = r.numerator;
    r_shift_ = r.shift;
    if (r_ == 0) zero_ = true;
  }

  void saturate() { saturated_ = true; }

  Real snap_error() const { return snap_error_; }

  Digit next() {
    ++step_;
    const Digit top = alphabet_.max_digit();
    if (saturated_) return top;
    if (zero_) return 0;

    const BigInt product = beta_num_ * r_;
    const std::int64_t e = beta_shift_ + r_shift_;
    const unsigned ue = static_cast<unsigned>(e);

    // Remainder on (or within the guard of) the top of Gamma: (N-1)^infinity.
    const BigInt one = BigInt(1) << static_cast<unsigned>(beta_shift_);
    const BigInt excess = r_ * (beta_num_ - one) - (BigInt(top) << ue);
    if (excess == 0) {
      saturated_ = true;
      return top;
    }
    if (std::fabs(ratio(excess, e)) <= guard_ * top) {
      tie("remainder at the top of the attractor");
      snap_error_ += std::fabs(ratio(excess, e)) * std::pow(beta_, -static_cast<Real>(step_));
      saturated_ = true;
      return top;
    }

    const BigInt whole = product >> ue;
    const BigInt frac_num = product - (whole << ue);
    const bool big = whole > BigInt(top);
    const long long k = big ? static_cast<long long>(top) + 1 : whole.convert_to<long long>();
    const long double frac = ratio(frac_num, e);
    const long double guard = guard_ * std::max(1.0L, static_cast<long double>(k) + frac);

    if (!big && frac_num != 0) {
      // distance to the next integer, exact before rounding so tiny gaps survive
      const long double up = ratio((BigInt(1) << ue) - frac_num, e);
      long long tie_at = -1;
      if (k >= 1 && frac < guard) tie_at = k;
      if (k + 1 >= 1 && k + 1 <= top && up < guard) tie_at = k + 1;
      if (tie_at >= 0) {
        tie("digit decision within the tie guard of an exact tie at " + std::to_string(tie_at));
        const long double dev = tie_at == k ? frac : up;
        snap_error_ += dev * std::pow(beta_, -static_cast<Real>(step_));
        if (mode_ == Mode::Greedy) {
          zero_ = true;
          return static_cast<Digit>(tie_at);
        }
        r_ = 1;
        r_shift_ = 0;
        return static_cast<Digit>(tie_at - 1);
      }
    }

    long long a = k;
    if (mode_ == Mode::QuasiGreedy && frac_num == 0) a = k - 1;
    a = std::min<long long>(a, top);
    BigInt rem = product - (BigInt(a) << ue);
    std::int64_t shift = e;
    if (rem == 0) {
      zero_ = true;
    } else {
      const std::int64_t tz = static_cast<std::int64_t>(boost::multiprecision::lsb(rem));
      const std::int64_t drop = std::min(tz, shift);
      rem >>= static_cast<unsigned>(drop);
      shift -= drop;
    }
    r_ = std::move(rem);
    r_shift_ = shift;
    return static_cast<Digit>(a);
  }

 private:
  void tie(const std::string& what) {
    if (ties_ == TiePolicy::Throw) {
      throw Error(Errc::NearTie, what + " (digit " + std::to_string(step_) + ")");
    }
  }

  Alphabet alphabet_;
  Mode mode_;
  TiePolicy ties_;
  Real beta_;
  long double guard_;
  BigInt beta_num_;
  std::int64_t beta_shift_ = 0;
  BigInt r_;
  std::int64_t r_shift_ = 0;
  bool zero_ = false;
  bool saturated_ = false;
  std::size_t step_ = 0;
  Real snap_error_ = 0;
};

Real tail_bound(const Base& base, std::size_t depth) {
  const Real beta = base.value();
  return Real(base.alphabet().size() - 1) * std::pow(beta, -static_cast<Real>(depth)) / (beta - 1);
}

ExpansionResult expand(Real x, const Base& base, Mode mode, ExpansionOptions options) {
  const Alphabet& alphabet = base.alphabet();
  const Real beta = base.value();
  if (beta > Real(alphabet.size())) {
    throw Error(Errc::InvalidBase, "expansions need 1 < beta <= N");
  }
  const Real x_max = Real(alphabet.max_digit()) / (beta - 1);
  if (!(x >= 0) || x > x_max * (1 + kTieGuard)) {
    throw Error(Errc::XOutOfRange, "x must lie in [0, (N-1)/(beta-1)]");
  }
  DigitRecursion rec(base, Dyadic::from(x), mode, options.ties);
  if (x >= x_max * (1 - kTieGuard)) rec.saturate();
  std::vector<Digit> digits(options.depth);
  for (Digit& d : digits) d = rec.next();
  return {Word(alphabet, std::move(digits)), tail_bound(base, options.depth) + rec.snap_error()};
}

}  // namespace

Base::Base(Alphabet alphabet, Real beta)
    : alphabet_(alphabet), value_(beta), high_(beta), exact_(Dyadic::from(beta)) {
  check_base(alphabet, beta);
}

Base::Base(Alphabet alphabet, const HighReal& beta)
    : alphabet_(alphabet),
      value_(beta.convert_to<Real>()),
      high_(beta),
      exact_(Dyadic::from(beta)),
      tie_guard_(kHighTieGuard) {
  check_base(alphabet, value_);
}

Base Base::parry(Alphabet alphabet, Real beta, const Word& period) {
  Base out(alphabet, beta);
  out.symbolic_one_ = period;
  return out;
}

Enclosure<Real> project(const DigitStream& digits, const Base& base, std::size_t depth) {
  return project<Real>(digits, base.value(), depth);
}

ExpansionResult quasi_greedy_of_one(const Base& base, ExpansionOptions options) {
  if (base.symbolic_one()) {
    const Word w = DigitStream::periodic(*base.symbolic_one()).prefix(options.depth);
    return {w, tail_bound(base, options.depth)};
  }
  return expand(1, base, Mode::QuasiGreedy, options);
}

ExpansionResult quasi_greedy_of_x(Real x, const Base& base, ExpansionOptions options) {
  if (x == 0) {
    // Convention: the quasi-greedy expansion of 0 is 0^infinity.
    return {Word(base.alphabet(), std::vector<Digit>(options.depth, 0)), 0};
  }
  if (x == 1 && base.symbolic_one()) return quasi_greedy_of_one(base, options);
  return expand(x, base, Mode::QuasiGreedy, options);
}

ExpansionResult greedy_of_x(Real x, const Base& base, ExpansionOptions options) {
  return expand(x, base, Mode::Greedy, options);
}

DigitStream alpha_stream(const Base& base, TiePolicy ties) {
  if (base.symbolic_one()) return DigitStream::periodic(*base.symbolic_one());
  if (base.value() > Real(base.alphabet().size())) {
    throw Error(Errc::InvalidBase, "expansions need 1 < beta <= N");
  }
  auto rec = std::make_shared<DigitRecursion>(base, Dyadic::from(1.0L), Mode::QuasiGreedy, ties);
  const Real x_max = Real(base.alphabet().max_digit()) / (base.value() - 1);
  if (1 >= x_max * (1 - kTieGuard)) rec->saturate();
  return DigitStream::generated(base.alphabet(), [rec]() { return rec->next(); });
}

// ---------------------------------------------------------------------------
// Lexicographic characterizations

namespace {

PeriodicForm require_periodic(const DigitStream& s) {
  auto form = s.periodic_form();
  if (!form) throw Error(Errc::NotEventuallyPeriodic, "sequence must be eventually periodic");
  return *form;
}

/// Three-way comparison that is exact when both sides are eventually
/// periodic and depth-limited otherwise (DepthExceeded on a depth tie).
int compare_streams(const DigitStream& a, const DigitStream& b, std::size_t depth) {
  if (a.is_eventually_periodic() && b.is_eventually_periodic()) {
    const auto c = compare_exact(a, b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  switch (lex_cmp(a, b, depth)) {
    case LexOrder::Less: return -1;
    case LexOrder::Greater: return 1;
    case LexOrder::EqualToDepth: break;
  }
  throw Error(Errc::DepthExceeded, "streams agree on the first " + std::to_string(depth) + " digits");
}

/// First 1-based position n <= limit with pred(d_n), or 0.
template <class Pred>
std::size_t first_position(const DigitStream& d, std::size_t limit, Pred pred) {
  for (std::size_t n = 1; n <= limit; ++n) {
    if (pred(d[n - 1])) return n;
  }
  return 0;
}

}  // namespace

bool is_quasi_greedy_sequence(const DigitStream& s) {
  const PeriodicForm form = require_periodic(s);
  const bool infinite = std::any_of(form.period.digits().begin(), form.period.digits().end(),
                                    [](Digit d) { return d != 0; });
  if (!infinite) return false;
  const std::size_t span = form.preperiod.size() + form.period.size();
  for (std::size_t k = 1; k <= span; ++k) {
    if (compare_exact(s.shifted(k), s) > 0) return false;
  }
  return true;
}

bool is_greedy_sequence(const DigitStream& b, const Base& base, std::size_t depth) {
  const PeriodicForm form = require_periodic(b);
  const DigitStream alpha = alpha_stream(base);
  const Digit top = base.alphabet().max_digit();
  const std::size_t span = form.preperiod.size() + form.period.size();
  for (std::size_t n = 1; n <= span; ++n) {
    if (b[n - 1] < top && compare_streams(b.shifted(n), alpha, depth) >= 0) return false;
  }
  return true;
}

bool is_greedy_sequence_strong(const DigitStream& b, const Base& base, std::size_t depth) {
  const PeriodicForm form = require_periodic(b);
  const DigitStream alpha = alpha_stream(base);
  const Digit top = base.alphabet().max_digit();
  const std::size_t span = form.preperiod.size() + form.period.size();
  const std::size_t first = first_position(b, span, [top](Digit x) { return x < top; });
  if (first == 0) return true;
  for (std::size_t j = first; j <= first + span; ++j) {
    if (compare_streams(b.shifted(j), alpha, depth) >= 0) return false;
  }
  return true;
}

bool is_unique_expansion(const DigitStream& d, const Base& base, std::size_t depth) {
  const PeriodicForm form = require_periodic(d);
  const DigitStream alpha = alpha_stream(base);
  const Digit top = base.alphabet().max_digit();
  const std::size_t span = form.preperiod.size() + form.period.size();
  // No such m (resp. n) makes the corresponding family vacuous.
  const std::size_t m = first_position(d, span, [top](Digit x) { return x < top; });
  const std::size_t n = first_position(d, span, [](Digit x) { return x > 0; });
  if (m != 0) {
    for (std::size_t j = m; j <= m + span; ++j) {
      if (compare_streams(d.shifted(j), alpha, depth) >= 0) return false;
    }
  }
  if (n != 0) {
    for (std::size_t j = n; j <= n + span; ++j) {
      if (compare_streams(d.shifted(j).reflected(), alpha, depth) >= 0) return false;
    }
  }
  return true;
}

bool in_v_set(const DigitStream& d, const Base& base, std::size_t depth) {
  const PeriodicForm form = require_periodic(d);
  const DigitStream alpha = alpha_stream(base);
  const DigitStream alpha_bar = alpha.reflected();
  const std::size_t span = form.preperiod.size() + form.period.size();
  for (std::size_t j = 0; j <= span; ++j) {
    const DigitStream tail = d.shifted(j);
    if (compare_streams(tail, alpha, depth) >= 0) return false;
    if (compare_streams(tail, alpha_bar, depth) <= 0) return false;
  }
  return true;
}

Enclosure<Real> base_from_quasi_greedy(const DigitStream& s, Real tol) {
  if (s.is_eventually_periodic()) {
    if (!is_quasi_greedy_sequence(s)) {
      throw Error(Errc::NotQuasiGreedy, "sequence is not the quasi-greedy expansion of 1 for any base");
    }
  } else {
    // Prefix test: a strict violation of sigma^k(s) <= s within the window refutes s.
    constexpr std::size_t kShifts = 64;
    constexpr std::size_t kWindow = 256;
    for (std::size_t k = 1; k <= kShifts; ++k) {
      if (lex_cmp(s.shifted(k), s, kWindow) == LexOrder::Greater) {
        throw Error(Errc::NotQuasiGreedy, "shift by " + std::to_string(k) + " exceeds the sequence");
      }
    }
  }
  return solve_unit_base<Real>(s, tol);
}

}  // namespace ubeta
