#pragma once

// Digit alphabets, finite words, lazily evaluated digit streams and the
// Thue-Morse family of sequences.
//
// Indexing: Word and DigitStream use 0-based positions in code. The
// mathematical sequence d_1 d_2 ... is stored so that stream[0] == d_1.
// The only 1-based entry point is gtm_digit_closed(), which mirrors the
// closed formula for theta_l with l >= 1.

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ubeta {

using Digit = std::uint16_t;

/// The digit set {0, ..., N-1}, 2 <= N <= 2^16.
class Alphabet {
 public:
  static constexpr std::uint32_t kMaxSize = 1u << 16;

  explicit Alphabet(std::uint32_t n);

  std::uint32_t size() const noexcept { return n_; }
  Digit max_digit() const noexcept { return static_cast<Digit>(n_ - 1); }
  Digit reflect(Digit d) const noexcept { return static_cast<Digit>(n_ - 1 - d); }
  bool contains(long long d) const noexcept { return d >= 0 && d < static_cast<long long>(n_); }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::uint32_t n_;
};

/// A finite block c_1...c_p over an alphabet. Empty words are allowed as
/// building blocks (e.g. an empty preperiod); block operations require p >= 1.
class Word {
 public:
  explicit Word(Alphabet alphabet, std::vector<Digit> digits = {});

  /// Accepts "[9,1,0]", "9,1,0", "9-1-0", and the compact "910" when N <= 10.
  static Word parse(Alphabet alphabet, std::string_view text);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  Digit operator[](std::size_t i) const { return digits_[i]; }
  Digit back() const { return digits_.back(); }
  std::span<const Digit> digits() const noexcept { return digits_; }

  Word slice(std::size_t pos, std::size_t len) const;
  Word operator+(const Word& rhs) const;
  Word repeated(std::size_t times) const;

  /// Compact digits for N <= 10, the bracketed list otherwise.
  std::string to_string() const;
  std::string to_list_string() const;
  /// Hyphen-joined digits ("3-1"), unambiguous for any N.
  std::string to_hyphen_string() const;

  /// Plain lexicographic order on the digit vectors. On equal-length blocks
  /// this is the block order used throughout.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
    return a.digits_ <=> b.digits_;
  }
  friend bool operator==(const Word& a, const Word& b) noexcept {
    return a.digits_ == b.digits_;
  }

 private:
  Alphabet alphabet_;
  std::vector<Digit> digits_;
};

Word reflect(const Word& w);
/// c_1...c_{p-1}(c_p - 1); DigitOutOfRange when c_p == 0.
Word minus_one(const Word& w);
/// c_1...c_{p-1}(c_p + 1); DigitOutOfRange when c_p == N-1.
Word plus_one(const Word& w);
/// w_{k+1}...w_p w_1...w_k (0-based k < p).
Word rotate(const Word& w, std::size_t k);

enum class LexOrder { Less, EqualToDepth, Greater };

/// Compares the first min(depth, |a|, |b|) digits.
LexOrder lex_cmp(const Word& a, const Word& b, std::size_t depth);

/// tau_i, the classical Thue-Morse sequence 0110 1001 ..., via binary digit-sum parity.
constexpr int classical_tm(std::uint64_t i) noexcept {
  return static_cast<int>(__builtin_popcountll(i) & 1u);
}

/// theta_l of the generalized Thue-Morse sequence generated by `seed`
/// (= t_1...t_p^+), l >= 1, by the closed formula in terms of tau.
Digit gtm_digit_closed(const Word& seed, std::uint64_t ell);

struct PeriodicForm {
  Word preperiod;
  Word period;
};

namespace detail {
class StreamSource;
}

/// An infinite digit sequence. Cheap to copy; all copies share one
/// immutable (internally memoizing, thread-safe) source.
class DigitStream {
 public:
  enum class Kind { EventuallyPeriodic, GeneralizedTM, Generated };

  static DigitStream periodic(const Word& period);
  static DigitStream eventually_periodic(const Word& preperiod, const Word& period);
  /// InvalidSeed when the seed is empty or its last digit is 0.
  static DigitStream thue_morse(const Word& seed);
  /// `next` is called sequentially, at most once per index, under a lock.
  static DigitStream generated(Alphabet alphabet, std::function<Digit()> next);

  Kind kind() const noexcept;
  const Alphabet& alphabet() const noexcept { return alphabet_; }

  Digit operator[](std::uint64_t i) const;
  Word prefix(std::size_t n) const;

  DigitStream shifted(std::uint64_t k) const;
  DigitStream reflected() const;

  /// Exact (preperiod, period) description when the stream is eventually periodic.
  std::optional<PeriodicForm> periodic_form() const;
  bool is_eventually_periodic() const noexcept { return kind() == Kind::EventuallyPeriodic; }

 private:
  DigitStream(std::shared_ptr<const detail::StreamSource> src, Alphabet alphabet)
      : src_(std::move(src)), alphabet_(alphabet) {}

  std::shared_ptr<const detail::StreamSource> src_;
  Alphabet alphabet_;
  std::uint64_t offset_ = 0;
  bool reflected_ = false;
};

inline DigitStream shift(const DigitStream& s, std::uint64_t k) { return s.shifted(k); }
inline DigitStream reflect(const DigitStream& s) { return s.reflected(); }

/// First index of disagreement decides; EqualToDepth when none within `depth`.
LexOrder lex_cmp(const DigitStream& a, const DigitStream& b, std::size_t depth);

/// Depth-free comparison of two eventually periodic streams.
/// NotEventuallyPeriodic otherwise.
std::strong_ordering compare_exact(const DigitStream& a, const DigitStream& b);

/// Number of leading digits after which two eventually periodic streams
/// that still agree are equal.
std::uint64_t exact_decision_depth(const PeriodicForm& a, const PeriodicForm& b);

DigitStream gtm_stream(const Word& seed);

/// (lambda_i(N)), built from tau; equals gtm_stream(ceil(N/2)).
DigitStream komornik_loreti_stream(Alphabet alphabet);

/// lambda_i(N) for i >= 1.
Digit komornik_loreti_digit(Alphabet alphabet, std::uint64_t i);

}  // namespace ubeta
