#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace ubeta {

/// Working precision for everyday computations (64-bit significand on x86-64).
using Real = long double;

/// ~333-bit binary float, used where digits deep into an expansion must be
/// trusted (e.g. checking 64 digits of the quasi-greedy expansion at an
/// irrational endpoint).
using HighReal = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>,
                                               boost::multiprecision::et_off>;

using BigInt = boost::multiprecision::cpp_int;

inline constexpr Real kDefaultTol = 1e-12L;

/// value +- radius.
template <class T>
struct Enclosure {
  T value{};
  T radius{};

  T lower() const { return value - radius; }
  T upper() const { return value + radius; }
  bool contains(const T& x) const { return lower() <= x && x <= upper(); }
  bool overlaps(const Enclosure& o) const { return !(upper() < o.lower() || o.upper() < lower()); }
};

/// An exact binary rational mantissa * 2^exponent.
struct Dyadic {
  BigInt mantissa;
  std::int64_t exponent = 0;

  /// Exact conversion of any binary floating-point value.
  template <class F>
  static Dyadic from(const F& x) {
    using std::floor;
    using std::frexp;
    using std::ldexp;
    Dyadic out;
    if (x == 0) return out;
    const bool negative = x < 0;
    int e = 0;
    F m = frexp(negative ? F(-x) : x, &e);
    const int chunks = std::numeric_limits<F>::digits / 32 + 2;
    std::int64_t exp = e;
    for (int k = 0; k < chunks && m != 0; ++k) {
      m = ldexp(m, 32);
      const F ip = floor(m);
      out.mantissa = (out.mantissa << 32) + static_cast<std::uint32_t>(ip);
      m -= ip;
      exp -= 32;
    }
    out.exponent = exp;
    if (negative) out.mantissa = -out.mantissa;
    return out;
  }
};

}  // namespace ubeta
