#include "ubeta/words.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <numeric>

#include "ubeta/error.hpp"

namespace ubeta {

Alphabet::Alphabet(std::uint32_t n) : n_(n) {
  if (n < 2 || n > kMaxSize) {
    throw Error(Errc::InvalidAlphabet, "alphabet size must lie in [2, 65536], got " + std::to_string(n));
  }
}

// ---------------------------------------------------------------------------
// Word

Word::Word(Alphabet alphabet, std::vector<Digit> digits)
    : alphabet_(alphabet), digits_(std::move(digits)) {
  for (Digit d : digits_) {
    if (!alphabet_.contains(d)) {
      throw Error(Errc::DigitOutOfRange, "digit " + std::to_string(d) + " not below N=" +
                                             std::to_string(alphabet_.size()));
    }
  }
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '"')) s.remove_suffix(1);
  return s;
}

Digit parse_digit(Alphabet alphabet, std::string_view token) {
  token = trim(token);
  long long value = -1;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(Errc::Parse, "not a digit: '" + std::string(token) + "'");
  }
  if (!alphabet.contains(value)) {
    throw Error(Errc::DigitOutOfRange,
                "digit " + std::string(token) + " not below N=" + std::to_string(alphabet.size()));
  }
  return static_cast<Digit>(value);
}

}  // namespace

Word Word::parse(Alphabet alphabet, std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '[' && text.back() == ']') {
    text = text.substr(1, text.size() - 2);
  }
  std::vector<Digit> digits;
  if (text.find_first_of(",-") != std::string_view::npos) {
    const char sep = text.find(',') != std::string_view::npos ? ',' : '-';
    std::size_t start = 0;
    while (true) {
      const auto end = text.find(sep, start);
      digits.push_back(parse_digit(alphabet, text.substr(start, end - start)));
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
  } else if (alphabet.size() <= 10) {
    for (char c : text) digits.push_back(parse_digit(alphabet, std::string_view(&c, 1)));
  } else if (!trim(text).empty()) {
    // A single multi-character token is one digit when N > 10.
    digits.push_back(parse_digit(alphabet, text));
  }
  return Word(alphabet, std::move(digits));
}

Word Word::slice(std::size_t pos, std::size_t len) const {
  pos = std::min(pos, digits_.size());
  len = std::min(len, digits_.size() - pos);
  return Word(alphabet_, std::vector<Digit>(digits_.begin() + pos, digits_.begin() + pos + len));
}

Word Word::operator+(const Word& rhs) const {
  std::vector<Digit> out = digits_;
  out.insert(out.end(), rhs.digits_.begin(), rhs.digits_.end());
  return Word(alphabet_, std::move(out));
}

Word Word::repeated(std::size_t times) const {
  std::vector<Digit> out;
  out.reserve(digits_.size() * times);
  for (std::size_t k = 0; k < times; ++k) out.insert(out.end(), digits_.begin(), digits_.end());
  return Word(alphabet_, std::move(out));
}

std::string Word::to_string() const {
  if (alphabet_.size() > 10) return to_list_string();
  std::string out;
  for (Digit d : digits_) out.push_back(static_cast<char>('0' + d));
  return out;
}

std::string Word::to_list_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(digits_[i]);
  }
  return out + "]";
}

std::string Word::to_hyphen_string() const {
  std::string out;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) out.push_back('-');
    out += std::to_string(digits_[i]);
  }
  return out;
}

Word reflect(const Word& w) {
  std::vector<Digit> out(w.digits().begin(), w.digits().end());
  for (Digit& d : out) d = w.alphabet().reflect(d);
  return Word(w.alphabet(), std::move(out));
}

Word minus_one(const Word& w) {
  if (w.empty() || w.back() == 0) {
    throw Error(Errc::DigitOutOfRange, "minus_one needs a last digit > 0 in '" + w.to_string() + "'");
  }
  std::vector<Digit> out(w.digits().begin(), w.digits().end());
  --out.back();
  return Word(w.alphabet(), std::move(out));
}

Word plus_one(const Word& w) {
  if (w.empty() || w.back() == w.alphabet().max_digit()) {
    throw Error(Errc::DigitOutOfRange, "plus_one needs a last digit < N-1 in '" + w.to_string() + "'");
  }
  std::vector<Digit> out(w.digits().begin(), w.digits().end());
  ++out.back();
  return Word(w.alphabet(), std::move(out));
}

Word rotate(const Word& w, std::size_t k) {
  std::vector<Digit> out(w.digits().begin(), w.digits().end());
  if (!out.empty()) std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % out.size()), out.end());
  return Word(w.alphabet(), std::move(out));
}

LexOrder lex_cmp(const Word& a, const Word& b, std::size_t depth) {
  const std::size_t n = std::min({depth, a.size(), b.size()});
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? LexOrder::Less : LexOrder::Greater;
  }
  return LexOrder::EqualToDepth;
}

// ---------------------------------------------------------------------------
// Thue-Morse family

Digit gtm_digit_closed(const Word& seed, std::uint64_t ell) {
  if (seed.empty() || seed.back() == 0) {
    throw Error(Errc::InvalidSeed, "seed must end in a nonzero digit");
  }
  if (ell == 0) throw Error(Errc::DigitOutOfRange, "theta index starts at 1");
  const std::uint64_t p = seed.size();
  const std::uint64_t i = (ell - 1) / p;
  const std::uint64_t q = (ell - 1) % p + 1;
  const Alphabet& a = seed.alphabet();
  // t_q of the underlying block t_1...t_p (the seed is t_1...t_p^+).
  const long long t_q = seed[q - 1] - (q == p ? 1 : 0);
  long long value = t_q + classical_tm(i) * (static_cast<long long>(a.reflect(static_cast<Digit>(t_q))) - t_q);
  if (q == p) value += classical_tm(i + 1) - classical_tm(i);
  return static_cast<Digit>(value);
}

Digit komornik_loreti_digit(Alphabet alphabet, std::uint64_t i) {
  const std::uint32_t n = alphabet.size();
  const long long k = n / 2;
  if (n % 2 == 0) return static_cast<Digit>(k - 1 + classical_tm(i));
  return static_cast<Digit>(k + classical_tm(i) - classical_tm(i - 1));
}

// ---------------------------------------------------------------------------
// Stream sources

namespace detail {

class StreamSource {
 public:
  explicit StreamSource(Alphabet alphabet) : alphabet_(alphabet) {}
  virtual ~StreamSource() = default;

  virtual DigitStream::Kind kind() const noexcept = 0;
  virtual Digit at(std::uint64_t i) const = 0;
  virtual std::vector<Digit> prefix(std::uint64_t n) const {
    std::vector<Digit> out(n);
    for (std::uint64_t i = 0; i < n; ++i) out[i] = at(i);
    return out;
  }
  virtual std::optional<PeriodicForm> periodic_form() const { return std::nullopt; }

 protected:
  Alphabet alphabet_;
};

namespace {

class PeriodicSource final : public StreamSource {
 public:
  PeriodicSource(Word pre, Word period)
      : StreamSource(period.alphabet()), pre_(std::move(pre)), period_(std::move(period)) {}

  DigitStream::Kind kind() const noexcept override { return DigitStream::Kind::EventuallyPeriodic; }
  Digit at(std::uint64_t i) const override {
    if (i < pre_.size()) return pre_[i];
    return period_[(i - pre_.size()) % period_.size()];
  }
  std::optional<PeriodicForm> periodic_form() const override { return PeriodicForm{pre_, period_}; }

 private:
  Word pre_;
  Word period_;
};

// Random access by the closed formula; sequential prefixes by doubling,
// memoized behind a mutex.
class ThueMorseSource final : public StreamSource {
 public:
  explicit ThueMorseSource(Word seed)
      : StreamSource(seed.alphabet()),
        seed_(std::move(seed)),
        memo_(seed_.digits().begin(), seed_.digits().end()) {}

  DigitStream::Kind kind() const noexcept override { return DigitStream::Kind::GeneralizedTM; }
  Digit at(std::uint64_t i) const override { return gtm_digit_closed(seed_, i + 1); }

  std::vector<Digit> prefix(std::uint64_t n) const override {
    std::lock_guard lock(mutex_);
    while (memo_.size() < n) {
      const std::size_t len = memo_.size();
      memo_.reserve(2 * len);
      for (std::size_t k = 0; k < len; ++k) memo_.push_back(alphabet_.reflect(memo_[k]));
      ++memo_.back();
    }
    return std::vector<Digit>(memo_.begin(), memo_.begin() + static_cast<std::ptrdiff_t>(n));
  }

 private:
  Word seed_;
  mutable std::mutex mutex_;
  mutable std::vector<Digit> memo_;
};

class GeneratedSource final : public StreamSource {
 public:
  GeneratedSource(Alphabet alphabet, std::function<Digit()> next)
      : StreamSource(alphabet), next_(std::move(next)) {}

  DigitStream::Kind kind() const noexcept override { return DigitStream::Kind::Generated; }

  Digit at(std::uint64_t i) const override {
    std::lock_guard lock(mutex_);
    extend(i + 1);
    return memo_[i];
  }

  std::vector<Digit> prefix(std::uint64_t n) const override {
    std::lock_guard lock(mutex_);
    extend(n);
    return std::vector<Digit>(memo_.begin(), memo_.begin() + static_cast<std::ptrdiff_t>(n));
  }

 private:
  void extend(std::uint64_t n) const {
    while (memo_.size() < n) {
      const Digit d = next_();
      if (!alphabet_.contains(d)) {
        throw Error(Errc::DigitOutOfRange, "generated digit " + std::to_string(d) + " not below N");
      }
      memo_.push_back(d);
    }
  }

  mutable std::mutex mutex_;
  mutable std::function<Digit()> next_;
  mutable std::vector<Digit> memo_;
};

}  // namespace
}  // namespace detail

DigitStream DigitStream::periodic(const Word& period) {
  return eventually_periodic(Word(period.alphabet()), period);
}

DigitStream DigitStream::eventually_periodic(const Word& preperiod, const Word& period) {
  if (period.empty()) throw Error(Errc::DigitOutOfRange, "period must be nonempty");
  return DigitStream(std::make_shared<detail::PeriodicSource>(preperiod, period), period.alphabet());
}

DigitStream DigitStream::thue_morse(const Word& seed) {
  if (seed.empty() || seed.back() == 0) {
    throw Error(Errc::InvalidSeed, "generalized Thue-Morse seed must end in a nonzero digit, got '" +
                                       seed.to_string() + "'");
  }
  return DigitStream(std::make_shared<detail::ThueMorseSource>(seed), seed.alphabet());
}

DigitStream DigitStream::generated(Alphabet alphabet, std::function<Digit()> next) {
  return DigitStream(std::make_shared<detail::GeneratedSource>(alphabet, std::move(next)), alphabet);
}

DigitStream::Kind DigitStream::kind() const noexcept { return src_->kind(); }

Digit DigitStream::operator[](std::uint64_t i) const {
  const Digit d = src_->at(offset_ + i);
  return reflected_ ? alphabet_.reflect(d) : d;
}

Word DigitStream::prefix(std::size_t n) const {
  std::vector<Digit> all = src_->prefix(offset_ + n);
  std::vector<Digit> out(all.begin() + static_cast<std::ptrdiff_t>(offset_), all.end());
  if (reflected_) {
    for (Digit& d : out) d = alphabet_.reflect(d);
  }
  return Word(alphabet_, std::move(out));
}

DigitStream DigitStream::shifted(std::uint64_t k) const {
  DigitStream out = *this;
  out.offset_ += k;
  return out;
}

DigitStream DigitStream::reflected() const {
  DigitStream out = *this;
  out.reflected_ = !out.reflected_;
  return out;
}

std::optional<PeriodicForm> DigitStream::periodic_form() const {
  auto form = src_->periodic_form();
  if (!form) return std::nullopt;
  Word pre = form->preperiod;
  Word period = form->period;
  if (offset_ < pre.size()) {
    pre = pre.slice(offset_, pre.size() - offset_);
  } else {
    period = rotate(period, (offset_ - pre.size()) % period.size());
    pre = Word(alphabet_);
  }
  if (reflected_) {
    pre = reflect(pre);
    period = reflect(period);
  }
  return PeriodicForm{std::move(pre), std::move(period)};
}

LexOrder lex_cmp(const DigitStream& a, const DigitStream& b, std::size_t depth) {
  // Block-wise prefixes keep the generalized Thue-Morse path on its memo.
  constexpr std::size_t kChunk = 256;
  for (std::size_t done = 0; done < depth;) {
    const std::size_t n = std::min(depth, std::max<std::size_t>(2 * done, kChunk));
    const Word pa = a.prefix(n);
    const Word pb = b.prefix(n);
    for (std::size_t i = done; i < n; ++i) {
      if (pa[i] != pb[i]) return pa[i] < pb[i] ? LexOrder::Less : LexOrder::Greater;
    }
    done = n;
  }
  return LexOrder::EqualToDepth;
}

std::uint64_t exact_decision_depth(const PeriodicForm& a, const PeriodicForm& b) {
  const std::uint64_t pre = std::max(a.preperiod.size(), b.preperiod.size());
  return pre + std::lcm<std::uint64_t>(a.period.size(), b.period.size());
}

std::strong_ordering compare_exact(const DigitStream& a, const DigitStream& b) {
  const auto fa = a.periodic_form();
  const auto fb = b.periodic_form();
  if (!fa || !fb) {
    throw Error(Errc::NotEventuallyPeriodic, "exact comparison needs eventually periodic streams");
  }
  const std::uint64_t depth = exact_decision_depth(*fa, *fb);
  for (std::uint64_t i = 0; i < depth; ++i) {
    const Digit x = a[i];
    const Digit y = b[i];
    if (x != y) return x <=> y;
  }
  return std::strong_ordering::equal;
}

DigitStream gtm_stream(const Word& seed) { return DigitStream::thue_morse(seed); }

DigitStream komornik_loreti_stream(Alphabet alphabet) {
  auto index = std::make_shared<std::uint64_t>(0);
  return DigitStream::generated(alphabet, [alphabet, index]() {
    return komornik_loreti_digit(alphabet, ++*index);
  });
}

}  // namespace ubeta
