#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "oracles.hpp"
#include "ubeta/error.hpp"
#include "ubeta/expansions.hpp"

using namespace ubeta;
using Big = boost::multiprecision::cpp_bin_float_100;

namespace {

Word W(std::uint32_t n, std::string_view s) { return Word::parse(Alphabet(n), s); }

DigitStream per(std::uint32_t n, std::string_view s) { return DigitStream::periodic(W(n, s)); }

DigitStream evp(std::uint32_t n, std::string_view pre, std::string_view period) {
  return DigitStream::eventually_periodic(W(n, pre), W(n, period));
}

const long double kPhi = (1 + std::sqrt(5.0L)) / 2;

// Digit-by-digit expansion in 100-digit decimal floats. Returns false when a
// digit decision came within 1e-40 of a tie, where the oracle abstains.
bool reference_expansion(long double beta_ld, long double x_ld, int n, bool quasi, std::size_t depth,
                         std::vector<int>& out) {
  const Big beta = beta_ld, guard = Big("1e-40");
  Big r = x_ld;
  out.clear();
  for (std::size_t i = 0; i < depth; ++i) {
    const Big y = beta * r;
    int d = 0;
    for (int c = n - 1; c >= 0; --c) {
      const Big gap = y - c;
      if (abs(gap) < guard) return false;
      if (quasi ? gap > 0 : gap >= 0) {
        d = c;
        break;
      }
    }
    out.push_back(d);
    r = y - d;
  }
  return true;
}

}  // namespace

TEST_CASE("base validation") {
  CHECK_THROWS_AS(Base(Alphabet(2), 1.0L), Error);
  CHECK_THROWS_AS(Base(Alphabet(2), 0.5L), Error);
  CHECK_THROWS_AS(Base(Alphabet(2), std::nanl("")), Error);
  const Base big(Alphabet(2), 3.0L);
  try {
    (void)quasi_greedy_of_one(big);
    FAIL("expected InvalidBase");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidBase);
  }
  try {
    (void)greedy_of_x(2.5L, Base(Alphabet(2), 1.5L));
    FAIL("expected XOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::XOutOfRange);
  }
  CHECK_THROWS_AS(greedy_of_x(-0.1L, Base(Alphabet(2), 1.5L)), Error);
}

TEST_CASE("projection examples") {
  const auto zero = project(per(2, "0"), 2.0L, 64);
  CHECK(zero.contains(0));
  const auto one = project(per(2, "1"), 2.0L, 64);
  CHECK(one.contains(1));
  CHECK(one.radius < 1e-18L);
  const auto golden = project(per(2, "10"), kPhi, 200);
  CHECK(std::abs(golden.value - 1) <= golden.radius + 1e-18L);
  // the periodic series by an independent sum
  CHECK(std::abs(project(per(5, "31"), 3.3L, 300).value - oracle::periodic_value({3, 1}, 3.3L)) <
        1e-17L);
}

TEST_CASE("quasi-greedy expansion of one examples") {
  CHECK(quasi_greedy_of_one(Base(Alphabet(2), 2.0L), {.depth = 64}).digits ==
        W(2, "1").repeated(64));
  const auto g = quasi_greedy_of_one(Base(Alphabet(2), kPhi), {.depth = 40, .ties = TiePolicy::Snap});
  CHECK(g.digits == W(2, "10").repeated(20));
  CHECK_THROWS_AS(quasi_greedy_of_one(Base(Alphabet(2), kPhi), {.depth = 40}), Error);
  const auto parry = quasi_greedy_of_one(Base::parry(Alphabet(2), kPhi, W(2, "10")), {.depth = 40});
  CHECK(parry.digits == W(2, "10").repeated(20));
  CHECK(quasi_greedy_of_one(Base(Alphabet(10), 9.0L)).digits == W(10, "8").repeated(256));
}

TEST_CASE("expansions of the extreme points") {
  for (auto [n, beta] : {std::pair{2u, 1.7L}, std::pair{4u, 3.0L}, std::pair{10u, 6.5L}}) {
    const Base b(Alphabet(n), beta);
    const Word zeros = Word(Alphabet(n), std::vector<Digit>(32, 0));
    CHECK(greedy_of_x(0, b, {.depth = 32}).digits == zeros);
    CHECK(quasi_greedy_of_x(0, b, {.depth = 32}).digits == zeros);
  }
  // (N-1)/(beta-1) exactly representable
  for (auto [n, beta] : {std::pair{2u, 2.0L}, std::pair{4u, 3.0L}, std::pair{4u, 2.5L}}) {
    const Base b(Alphabet(n), beta);
    const long double top = (n - 1) / (beta - 1);
    const Word tops = Word(Alphabet(n), std::vector<Digit>(48, static_cast<Digit>(n - 1)));
    CHECK(greedy_of_x(top, b, {.depth = 48}).digits == tops);
    CHECK(quasi_greedy_of_x(top, b, {.depth = 48}).digits == tops);
  }
}

TEST_CASE("digits agree with a high-precision reference") {
  std::mt19937_64 rng(5);
  int compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::uniform_real_distribution<long double> bd(1.05L, static_cast<long double>(n));
    const long double beta = bd(rng);
    const long double top = (n - 1) / (beta - 1);
    std::uniform_real_distribution<long double> xd(0, top);
    const long double x = trial % 4 == 0 ? 1.0L : xd(rng);
    if (x > top) continue;
    const bool quasi = trial % 2 == 0;
    std::vector<int> ref;
    if (!reference_expansion(beta, x, n, quasi, 48, ref)) continue;
    const Base b(Alphabet(static_cast<std::uint32_t>(n)), beta);
    const auto got = quasi ? quasi_greedy_of_x(x, b, {.depth = 48}) : greedy_of_x(x, b, {.depth = 48});
    CHECK(oracle::Seq(got.digits.digits().begin(), got.digits.digits().end()) == ref);
    ++compared;
  }
  CHECK(compared > 300);
}

TEST_CASE("round trip through the base solver") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 5);
    std::uniform_real_distribution<long double> bd(1.1L, static_cast<long double>(n));
    const Base b(Alphabet(n), bd(rng));
    std::optional<ExpansionResult> res;
    try {
      res = quasi_greedy_of_one(b, {.depth = 64});
    } catch (const Error&) {
      continue;
    }
    const ExpansionResult& r = *res;
    // closure of the prefix when it is exactly periodic with a short period
    for (std::size_t q = 1; q <= 8; ++q) {
      bool ok = true;
      for (std::size_t i = q; i < 64 && ok; ++i) ok = r.digits[i] == r.digits[i - q];
      if (!ok) continue;
      const auto beta = base_from_quasi_greedy(DigitStream::periodic(r.digits.slice(0, q)));
      // a periodic prefix pins the base only to within the depth-64 tail
      CHECK(std::abs(beta.value - b.value()) < 1e-9L);
      break;
    }
    // residual bound against an independent partial sum
    long double s = 0, scale = 1;
    for (std::size_t i = 0; i < 64; ++i) {
      scale /= b.value();
      s += r.digits[i] * scale;
    }
    CHECK(std::abs(1 - s) <= r.residual_bound * (1 + 1e-9L) + 1e-17L);
  }
  // the Parry bases of short periodic words
  for (const char* w : {"10", "110", "1110", "2", "21", "31", "320"}) {
    const std::uint32_t n = w[0] == '1' ? 2 : 4;
    const auto beta = base_from_quasi_greedy(per(n, w), 1e-17L);
    const auto back = quasi_greedy_of_one(Base(Alphabet(n), beta.value), {.depth = 60, .ties = TiePolicy::Snap});
    CHECK(back.digits == DigitStream::periodic(W(n, w)).prefix(60));
  }
}

TEST_CASE("quasi-greedy expansion of one is monotone in the base") {
  std::mt19937_64 rng(13);
  for (std::uint32_t n : {2u, 3u, 4u, 7u}) {
    std::uniform_real_distribution<long double> bd(1.01L, static_cast<long double>(n));
    std::vector<long double> betas(60);
    for (auto& b : betas) b = bd(rng);
    std::sort(betas.begin(), betas.end());
    std::vector<Word> seqs;
    for (long double b : betas) seqs.push_back(quasi_greedy_of_one(Base(Alphabet(n), b), {.depth = 40}).digits);
    for (std::size_t i = 1; i < seqs.size(); ++i) CHECK(seqs[i - 1] <= seqs[i]);
  }
}

TEST_CASE("greedy dominates quasi-greedy and both project back") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 4);
    std::uniform_real_distribution<long double> bd(1.1L, static_cast<long double>(n));
    const Base b(Alphabet(n), bd(rng));
    std::uniform_real_distribution<long double> xd(0, (n - 1) / (b.value() - 1));
    const long double x = xd(rng);
    try {
      const auto g = greedy_of_x(x, b, {.depth = 80});
      const auto q = quasi_greedy_of_x(x, b, {.depth = 80});
      CHECK(g.digits >= q.digits);
      for (const auto* r : {&g, &q}) {
        const auto e = project(DigitStream::eventually_periodic(r->digits, Word(Alphabet(n), {0})), b, 80);
        CHECK(std::abs(e.lower() - x) <= r->residual_bound + 1e-17L);
      }
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NearTie);
    }
  }
}

TEST_CASE("lexicographic characterizations") {
  CHECK(is_quasi_greedy_sequence(per(2, "10")));
  CHECK_FALSE(is_quasi_greedy_sequence(per(2, "01")));
  CHECK(is_quasi_greedy_sequence(per(4, "31")));
  CHECK_FALSE(is_quasi_greedy_sequence(evp(4, "31", "0")));
  CHECK_THROWS_AS(is_quasi_greedy_sequence(gtm_stream(W(2, "11"))), Error);

  const Base golden = Base::parry(Alphabet(2), kPhi, W(2, "10"));
  CHECK(is_greedy_sequence(per(2, "1"), golden));
  CHECK(is_greedy_sequence(per(5, "4"), Base(Alphabet(5), 3.2L)));
  CHECK_FALSE(is_greedy_sequence(per(2, "10"), golden));
  CHECK(is_greedy_sequence(evp(2, "11", "0"), golden));
  CHECK_FALSE(is_greedy_sequence_strong(per(2, "10"), golden));
  CHECK(is_greedy_sequence_strong(evp(2, "11", "0"), golden));

  const Base b19(Alphabet(2), 1.9L);
  CHECK(is_unique_expansion(per(2, "0"), b19));
  CHECK(is_unique_expansion(per(2, "1"), b19));
  CHECK(is_unique_expansion(per(2, "10"), b19));
  CHECK(in_v_set(per(2, "10"), b19));
  CHECK_FALSE(is_unique_expansion(per(2, "10"), golden));
}

TEST_CASE("the two greedy tests agree and V lies inside the unique set") {
  std::mt19937_64 rng(23);
  int v_members = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 3);
    auto rnd = [&](std::size_t len) {
      std::vector<Digit> v(len);
      for (auto& x : v) x = static_cast<Digit>(rng() % n);
      return Word(Alphabet(n), v);
    };
    const auto s = DigitStream::eventually_periodic(rnd(rng() % 4), rnd(1 + rng() % 4));
    std::uniform_real_distribution<long double> bd(1.2L, static_cast<long double>(n));
    const Base b(Alphabet(n), bd(rng));
    try {
      CHECK(is_greedy_sequence(s, b) == is_greedy_sequence_strong(s, b));
      if (in_v_set(s, b)) {
        ++v_members;
        CHECK(is_unique_expansion(s, b));
      }
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NearTie);
    }
  }
  CHECK(v_members > 20);
}

TEST_CASE("base from quasi-greedy sequences") {
  const auto g = base_from_quasi_greedy(per(2, "10"));
  CHECK(g.contains(kPhi));
  CHECK(g.radius <= kDefaultTol);
  CHECK(base_from_quasi_greedy(per(10, "8")).contains(9));
  for (std::uint32_t n : {2u, 3u, 10u}) {
    const auto top = base_from_quasi_greedy(DigitStream::periodic(Word(Alphabet(n), {static_cast<Digit>(n - 1)})));
    CHECK(std::abs(top.value - n) <= top.radius + 1e-15L);
  }
  try {
    (void)base_from_quasi_greedy(per(2, "01"));
    FAIL("expected NotQuasiGreedy");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotQuasiGreedy);
  }
  // a Parry base solves the periodic series
  const auto b = base_from_quasi_greedy(per(4, "31"));
  CHECK(std::abs(oracle::periodic_value({3, 1}, b.value) - 1) < 1e-11L);
}
