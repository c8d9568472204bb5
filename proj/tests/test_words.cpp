#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <thread>

#include "oracles.hpp"
#include "ubeta/admissible.hpp"
#include "ubeta/error.hpp"
#include "ubeta/words.hpp"

using namespace ubeta;

namespace {

Word W(std::uint32_t n, std::string_view s) { return Word::parse(Alphabet(n), s); }

oracle::Seq seq(const Word& w) { return {w.digits().begin(), w.digits().end()}; }

Word word(std::uint32_t n, const oracle::Seq& s) {
  return Word(Alphabet(n), std::vector<Digit>(s.begin(), s.end()));
}

oracle::Seq seed_of(const oracle::Seq& t) {
  auto s = t;
  s.back() += 1;
  return s;
}

}  // namespace

TEST_CASE("alphabet bounds") {
  CHECK_THROWS_AS(Alphabet(1), Error);
  CHECK_THROWS_AS(Alphabet(Alphabet::kMaxSize + 1), Error);
  const Alphabet a(10);
  CHECK(a.max_digit() == 9);
  CHECK(a.reflect(8) == 1);
  CHECK(a.contains(9));
  CHECK_FALSE(a.contains(10));
  CHECK_FALSE(a.contains(-1));
}

TEST_CASE("parse and render") {
  CHECK(W(10, "910").to_string() == "910");
  CHECK(W(10, "[9,1,0]") == W(10, "9-1-0"));
  CHECK(W(10, "9,1,0") == W(10, "910"));
  CHECK(W(12, "[11,0,3]").to_string() == "[11,0,3]");
  CHECK(W(12, "11-0-3").to_hyphen_string() == "11-0-3");
  CHECK(W(4, "31").to_list_string() == "[3,1]");
  CHECK_THROWS_AS(W(4, "9"), Error);
  CHECK_THROWS_AS(W(12, "[12]"), Error);
  CHECK_THROWS_AS(W(4, "3a"), Error);
}

TEST_CASE("reflect examples") {
  CHECK(reflect(W(10, "8")) == W(10, "1"));
  CHECK(reflect(W(4, "31")) == W(4, "02"));
  CHECK(reflect(W(2, "10")) == W(2, "01"));
}

TEST_CASE("plus and minus one") {
  CHECK(plus_one(W(10, "8")) == W(10, "9"));
  CHECK(plus_one(W(4, "31")) == W(4, "32"));
  CHECK(minus_one(W(4, "32")) == W(4, "31"));
  try {
    (void)minus_one(W(2, "10"));
    FAIL("expected DigitOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DigitOutOfRange);
  }
  CHECK_THROWS_AS(plus_one(W(4, "33")), Error);
}

TEST_CASE("rotate and slice") {
  const Word w = W(10, "12345");
  CHECK(rotate(w, 0) == w);
  CHECK(rotate(w, 2) == W(10, "34512"));
  CHECK(w.slice(1, 3) == W(10, "234"));
  CHECK(w.repeated(2) == W(10, "1234512345"));
  CHECK(W(10, "12") + W(10, "3") == W(10, "123"));
}

TEST_CASE("lex_cmp examples") {
  CHECK(lex_cmp(W(4, "02"), W(4, "31"), 8) == LexOrder::Less);
  const auto p = DigitStream::periodic(W(2, "10"));
  CHECK(lex_cmp(p, DigitStream::periodic(W(2, "10")), 64) == LexOrder::EqualToDepth);
  const auto s = DigitStream::eventually_periodic(W(10, "9170"), W(10, "0"));
  CHECK(lex_cmp(s, DigitStream::periodic(W(10, "8")), 64) == LexOrder::Greater);
}

TEST_CASE("reflection is an order-reversing involution") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint32_t n = 2 + rng() % 9;
    const std::size_t len = 1 + rng() % 8;
    std::vector<Digit> a(len), b(len);
    for (auto& d : a) d = static_cast<Digit>(rng() % n);
    for (auto& d : b) d = static_cast<Digit>(rng() % n);
    const Word wa(Alphabet(n), a), wb(Alphabet(n), b);
    CHECK(reflect(reflect(wa)) == wa);
    CHECK((wa <= wb) == (reflect(wb) <= reflect(wa)));
  }
}

TEST_CASE("thue-morse examples and definitions agree") {
  CHECK(classical_tm(0) == 0);
  CHECK(classical_tm(5) == 0);
  for (int k = 0; k <= 10; ++k) CHECK(classical_tm(std::uint64_t{1} << k) == 1);
  for (std::uint64_t i = 0; i < (1u << 16); ++i) {
    if (classical_tm(i) != oracle::tau(i)) {
      FAIL("tau mismatch at " << i);
    }
  }
}

TEST_CASE("generalized thue-morse examples") {
  CHECK(gtm_stream(W(2, "11")).prefix(8) == W(2, "11010011"));
  CHECK(gtm_stream(W(10, "9")).prefix(8) == W(10, "91090891"));
  const Word seed = W(2, "11");
  const std::vector<Digit> expect{1, 1, 0, 1, 0, 0, 1, 1};
  for (std::uint64_t l = 1; l <= 8; ++l) CHECK(gtm_digit_closed(seed, l) == expect[l - 1]);
  CHECK(gtm_digit_closed(W(10, "9"), 6) == 8);
  const Word s3 = W(5, "342");
  for (std::uint64_t q = 1; q <= 3; ++q) CHECK(gtm_digit_closed(s3, q) == s3[q - 1]);
  CHECK_THROWS_AS(gtm_stream(W(4, "30")), Error);
  CHECK_THROWS_AS(gtm_stream(Word(Alphabet(4))), Error);
}

TEST_CASE("komornik-loreti sequence") {
  CHECK(komornik_loreti_stream(Alphabet(2)).prefix(8) == W(2, "11010011"));
  CHECK(komornik_loreti_stream(Alphabet(3)).prefix(7) == W(3, "2102012"));
  for (std::uint32_t n = 2; n <= 30; ++n) {
    const Alphabet a(n);
    const auto kl = komornik_loreti_stream(a);
    const auto th = oracle::theta({static_cast<int>((n + 1) / 2)}, static_cast<int>(n), 1024);
    bool ok = true;
    for (std::uint64_t i = 1; i <= 1024 && ok; ++i) {
      ok = kl[i - 1] == oracle::lambda(static_cast<int>(n), i) &&
           komornik_loreti_digit(a, i) == th[i - 1] && kl[i - 1] == th[i - 1];
    }
    CHECK_MESSAGE(ok, "N=" << n);
  }
}

TEST_CASE("closed formula matches doubling on admissible seeds") {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& t : oracle::admissible_blocks(n, 4)) {
      const auto seed = seed_of(t);
      const std::size_t len = (std::size_t{1} << 10) * t.size();
      const auto ref = oracle::theta(seed, n, len);
      const Word s = word(n, seed);
      const auto stream = gtm_stream(s);
      bool closed_ok = true, stream_ok = true;
      for (std::size_t l = 1; l <= len; ++l) {
        closed_ok = closed_ok && gtm_digit_closed(s, l) == ref[l - 1];
      }
      // random access first, then sequential
      for (std::size_t l = len; l-- > 0;) stream_ok = stream_ok && stream[l] == ref[l];
      stream_ok = stream_ok && seq(stream.prefix(len)) == ref;
      CHECK_MESSAGE(closed_ok, "N=" << n << " seed " << s.to_string());
      CHECK_MESSAGE(stream_ok, "N=" << n << " seed " << s.to_string());
    }
  }
}

TEST_CASE("prefix inequalities of theta") {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& t : oracle::admissible_blocks(n, 4)) {
      const std::size_t p = t.size();
      const auto th = oracle::theta(seed_of(t), n, (std::size_t{1} << 6) * p);
      bool ok = true;
      for (std::size_t k = 0; k <= 6 && ok; ++k) {
        const std::size_t len = (std::size_t{1} << k) * p;
        for (std::size_t i = 1; i <= len && ok; ++i) {
          const oracle::Seq head(th.begin(), th.begin() + static_cast<std::ptrdiff_t>(len - i + 1));
          const oracle::Seq tail(th.begin() + static_cast<std::ptrdiff_t>(i - 1),
                                 th.begin() + static_cast<std::ptrdiff_t>(len));
          ok = oracle::reflect(head, n) < tail && tail <= head;
        }
      }
      CHECK_MESSAGE(ok, "N=" << n << " block " << word(n, t).to_string());
    }
  }
}

TEST_CASE("theta is strictly two-sided under every shift") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& t : oracle::admissible_blocks(n, 3)) {
      const auto th = gtm_stream(word(n, seed_of(t)));
      const auto rth = reflect(th);
      const std::size_t checked = 64 * t.size();
      const std::size_t window = 1024 * t.size();
      bool ok = true;
      for (std::size_t i = 1; i <= checked && ok; ++i) {
        const auto s = shift(th, i);
        ok = lex_cmp(rth, s, window) == LexOrder::Less && lex_cmp(s, th, window) == LexOrder::Less;
      }
      CHECK_MESSAGE(ok, "N=" << n << " block " << word(n, t).to_string());
    }
  }
}

TEST_CASE("shift laws") {
  const auto s = gtm_stream(W(5, "43"));
  CHECK(shift(s, 0).prefix(100) == s.prefix(100));
  CHECK(shift(DigitStream::periodic(W(2, "10")), 1).prefix(16) ==
        DigitStream::periodic(W(2, "01")).prefix(16));
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t a = rng() % 500, b = rng() % 500;
    CHECK(shift(shift(s, a), b).prefix(64) == shift(s, a + b).prefix(64));
    CHECK(reflect(shift(s, a)).prefix(64) == shift(reflect(s), a).prefix(64));
  }
}

TEST_CASE("exact comparison of eventually periodic streams") {
  const auto a = DigitStream::periodic(W(2, "10"));
  const auto b = DigitStream::eventually_periodic(W(2, "1010"), W(2, "10"));
  CHECK(compare_exact(a, b) == std::strong_ordering::equal);
  const auto c = DigitStream::eventually_periodic(W(4, "3"), W(4, "1"));
  const auto d = DigitStream::periodic(W(4, "31"));
  CHECK(compare_exact(c, d) == std::strong_ordering::less);
  CHECK(compare_exact(d, c) == std::strong_ordering::greater);
  // agreement for a long stretch, decided late
  const auto e = DigitStream::eventually_periodic(W(2, "0000000000"), W(2, "1"));
  const auto f = DigitStream::periodic(W(2, "0"));
  CHECK(compare_exact(e, f) == std::strong_ordering::greater);
  CHECK(lex_cmp(e, f, 10) == LexOrder::EqualToDepth);
  CHECK_THROWS_AS(compare_exact(gtm_stream(W(2, "11")), a), Error);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    auto rnd = [&](std::size_t len) {
      std::vector<Digit> v(len);
      for (auto& x : v) x = static_cast<Digit>(rng() % 3);
      return Word(Alphabet(3), v);
    };
    const Word pa = rnd(rng() % 3), qa = rnd(1 + rng() % 4);
    const Word pb = rnd(rng() % 3), qb = rnd(1 + rng() % 4);
    const auto x = DigitStream::eventually_periodic(pa, qa);
    const auto y = DigitStream::eventually_periodic(pb, qb);
    const auto ord = compare_exact(x, y);
    const auto lex = lex_cmp(x, y, 200);
    if (ord == std::strong_ordering::less) CHECK(lex == LexOrder::Less);
    if (ord == std::strong_ordering::greater) CHECK(lex == LexOrder::Greater);
    if (ord == std::strong_ordering::equal) CHECK(lex == LexOrder::EqualToDepth);
  }
}

TEST_CASE("concurrent reads of a shared stream") {
  const Word seed = W(6, "53");
  const auto s = gtm_stream(seed);
  std::vector<std::thread> pool;
  std::vector<int> bad(8, 0);
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([&, t] {
      std::mt19937 rng(static_cast<unsigned>(t));
      for (int k = 0; k < 20000; ++k) {
        const std::uint64_t i = rng() % 50000;
        if (s[i] != gtm_digit_closed(seed, i + 1)) ++bad[t];
      }
    });
  }
  for (auto& th : pool) th.join();
  for (int b : bad) CHECK(b == 0);
}
