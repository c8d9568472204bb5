#include "ubeta/admissible.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ubeta {

namespace {

std::string index_note(std::size_t i) { return " at i=" + std::to_string(i); }

Word cyclic(const Word& t, std::size_t i) { return rotate(t, i); }

}  // namespace

AdmissibilityReport check_admissible(const Word& t) {
  if (t.empty()) throw Error(Errc::InvalidSeed, "empty block");
  const std::size_t p = t.size();
  const Alphabet& a = t.alphabet();
  if (t.back() == a.max_digit()) return {false, "t_p = N−1"};
  const Word reflected = reflect(t);
  const Word t_plus = plus_one(t);
  for (std::size_t i = 0; i < p; ++i) {
    const Word rot = cyclic(t, i);
    if (reflected > rot) {
      if (p == 1) return {false, "reflect(t₁) > t₁"};
      if (i == 0) return {false, "reflect(t₁⋯t_p) > t₁⋯t_p"};
      return {false, "reflect(t₁⋯t_p) > t_i⋯t_p t₁⋯t_{i−1}" + index_note(i + 1)};
    }
    // t_i...t_p^+ reflect(t_1...t_{i-1})
    const Word head = plus_one(t.slice(i, p - i));
    const Word lhs = head + reflect(t.slice(0, i));
    if (lhs > t_plus) {
      return {false, "t_i⋯t_p⁺ reflect(t₁⋯t_{i−1}) > t₁⋯t_p⁺" + index_note(i + 1)};
    }
  }
  return {true, {}};
}

std::vector<Word> enumerate_admissible(Alphabet alphabet, std::size_t p_max, std::uint64_t budget) {
  if (p_max == 0) throw Error(Errc::InvalidSeed, "p_max must be at least 1");
  const long double candidates = std::pow(static_cast<long double>(alphabet.size()),
                                          static_cast<long double>(p_max));
  if (candidates > static_cast<long double>(budget)) {
    throw Error(Errc::BudgetExceeded, "N^p_max = " + std::to_string(alphabet.size()) + "^" +
                                          std::to_string(p_max) + " exceeds the budget of " +
                                          std::to_string(budget) + " candidates");
  }
  const Digit top = alphabet.max_digit();
  const Digit t1_min = static_cast<Digit>((top + 1) / 2);
  std::vector<Word> out;
  for (std::size_t p = 1; p <= p_max; ++p) {
    for (Digit t1 = t1_min; t1 <= top; ++t1) {
      // every digit of an admissible block lies in [reflect(t_1), t_1]
      const Digit lo = alphabet.reflect(t1);
      std::vector<Digit> d(p, lo);
      d[0] = t1;
      while (true) {
        Word w(alphabet, d);
        if (is_admissible_block(w)) out.push_back(std::move(w));
        std::size_t k = p;
        while (k > 1 && d[k - 1] == t1) d[--k] = lo;
        if (k <= 1) break;
        ++d[k - 1];
      }
    }
  }
  return out;
}

Real generalized_golden_ratio(Alphabet alphabet) {
  const std::uint32_t n = alphabet.size();
  if (n % 2 == 1) return static_cast<Real>(n / 2 + 1);
  const Real k = static_cast<Real>(n / 2);
  return (k + std::sqrt(k * k + 4 * k)) / 2;
}

namespace {

Enclosure<Real> to_real(const Enclosure<HighReal>& e) {
  const Real v = e.value.convert_to<Real>();
  const Real rounding = std::abs(static_cast<Real>((e.value - HighReal(v)).convert_to<Real>()));
  return {v, e.radius.convert_to<Real>() + rounding};
}

// beta_L < beta_U strictly, G_N <= beta_L and beta_U < N, all certified.
bool certified(const AdmissibleInterval& iv) {
  const Real n = static_cast<Real>(iv.block.alphabet().size());
  const Real g = generalized_golden_ratio(iv.block.alphabet());
  const Real slack = 8 * std::numeric_limits<Real>::epsilon() * n;
  return iv.beta_L.upper() < iv.beta_U.lower() && g <= iv.beta_L.upper() + slack &&
         iv.beta_U.lower() < n;
}

// An integer root of beta^p = sum t_i beta^(p-i) + 1 is exact.
void pin_integer_root(const Word& block, Enclosure<Real>& root) {
  const Real r = std::round(root.value);
  if (!root.contains(r) || r < 2) return;
  const BigInt b = static_cast<long long>(r);
  BigInt lhs = 1, rhs = 0;
  for (std::size_t i = 0; i < block.size(); ++i) {
    lhs *= b;
    rhs = rhs * b + block[i];
  }
  if (lhs == rhs + 1) root = {r, 0};
}

}  // namespace

AdmissibleInterval interval_endpoints(const Word& block, Real tol) {
  if (!is_admissible_block(block)) {
    throw Error(Errc::NotAdmissible, "'" + block.to_string() + "' is not an admissible block");
  }
  const DigitStream theta = gtm_stream(plus_one(block));
  // Long blocks have intervals of width about beta^-p; tighten until the
  // endpoints separate, switching to high precision past long double.
  const Real floor = 64 * std::numeric_limits<Real>::epsilon() * block.alphabet().size();
  for (Real t = tol;; t = std::max(t / 4096, floor)) {
    AdmissibleInterval out{block, parry_root<Real>(block, t), solve_unit_base<Real>(theta, t)};
    pin_integer_root(block, out.beta_L);
    if (certified(out)) return out;
    if (t <= floor) break;
  }
  const HighReal fine("1e-60");
  AdmissibleInterval out{block, to_real(parry_root<HighReal>(block, fine)),
                         to_real(solve_unit_base<HighReal>(theta, fine))};
  if (certified(out)) return out;
  throw Error(Errc::Undecided, "endpoints of '" + block.to_string() +
                                   "' cannot be separated or placed within [G_N, N)");
}

std::pair<Enclosure<HighReal>, Enclosure<HighReal>> interval_endpoints_precise(const Word& block,
                                                                              const HighReal& tol) {
  if (!is_admissible_block(block)) {
    throw Error(Errc::NotAdmissible, "'" + block.to_string() + "' is not an admissible block");
  }
  return {parry_root<HighReal>(block, tol),
          solve_unit_base<HighReal>(gtm_stream(plus_one(block)), tol)};
}

Word ladder_period(const Word& block, std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidSeed, "ladder index starts at 1");
  const Word head = gtm_stream(plus_one(block)).prefix(block.size() << (n - 1));
  return head + reflect(head);
}

std::string_view to_string(IntervalRelation r) noexcept {
  switch (r) {
    case IntervalRelation::Disjoint: return "Disjoint";
    case IntervalRelation::SameRightEndpoint: return "SameRightEndpoint";
    case IntervalRelation::Identical: return "Identical";
  }
  return "?";
}

bool shares_right_endpoint_structurally(const Word& a, const Word& b) {
  if (a == b) return true;
  const Word& s = a.size() <= b.size() ? a : b;
  const Word& l = a.size() <= b.size() ? b : a;
  const std::size_t ratio = l.size() / s.size();
  if (l.size() % s.size() != 0 || ratio < 2 || (ratio & (ratio - 1)) != 0) return false;
  if (l.back() == l.alphabet().max_digit() || s.back() == s.alphabet().max_digit()) return false;
  // theta(l^+) = theta(s^+) exactly when l^+ is a doubling prefix of theta(s^+).
  return gtm_stream(plus_one(s)).prefix(l.size()) == plus_one(l);
}

IntervalRelation interval_relation(const AdmissibleInterval& a, const AdmissibleInterval& b) {
  if (a.block == b.block) return IntervalRelation::Identical;
  if (shares_right_endpoint_structurally(a.block, b.block)) {
    if (a.beta_U.overlaps(b.beta_U)) return IntervalRelation::SameRightEndpoint;
    throw Error(Errc::Undecided, "beta_U enclosures of '" + a.block.to_string() + "' and '" +
                                     b.block.to_string() + "' separate despite equal theta");
  }
  if (a.beta_U.upper() < b.beta_L.lower() || b.beta_U.upper() < a.beta_L.lower()) {
    return IntervalRelation::Disjoint;
  }
  throw Error(Errc::Undecided, "intervals of '" + a.block.to_string() + "' and '" +
                                   b.block.to_string() + "' overlap within tolerance");
}

IntervalRelation interval_relation(const Word& a, const Word& b, Real tol) {
  return interval_relation(interval_endpoints(a, tol), interval_endpoints(b, tol));
}

CriticalBases critical_bases(Alphabet alphabet, Real tol) {
  return {generalized_golden_ratio(alphabet),
          base_from_quasi_greedy(komornik_loreti_stream(alphabet), tol)};
}

std::string_view to_string(Location::Kind k) noexcept {
  switch (k) {
    case Location::Kind::Block: return "Block";
    case Location::Kind::InClosureU: return "InClosureU";
    case Location::Kind::BelowCritical: return "BelowCritical";
    case Location::Kind::Unresolved: return "Unresolved";
  }
  return "?";
}

Location closure_scan(const Base& base, std::size_t depth, Real tol) {
  Location out;
  const DigitStream alpha = alpha_stream(base, TiePolicy::Snap);
  const DigitStream mirror = reflect(alpha);
  const bool exact = alpha.is_eventually_periodic();
  const std::size_t horizon = exact ? depth : depth / 2;
  std::size_t m = 0;
  try {
    for (std::size_t q = 1; q <= horizon && m == 0; ++q) {
      const DigitStream tail = alpha.shifted(q);
      if (exact) {
        if (compare_exact(tail, mirror) != std::strong_ordering::greater) m = q;
        continue;
      }
      const LexOrder c = lex_cmp(tail, mirror, depth - q);
      if (c == LexOrder::Less) {
        m = q;
      } else if (c == LexOrder::EqualToDepth) {
        out.note = "comparison at shift " + std::to_string(q) + " undecided within depth";
        return out;
      }
    }
  } catch (const Error& e) {
    out.note = e.what();
    return out;
  }
  if (m == 0) {
    out.kind = Location::Kind::InClosureU;
    return out;
  }
  const Word head = alpha.prefix(m);
  if (head.back() == 0) {
    out.note = "alpha_m = 0 at m = " + std::to_string(m);
    return out;
  }
  const Word block = minus_one(head);
  if (!is_admissible_block(block)) {
    out.note = "block '" + block.to_string() + "' from the scan is not admissible";
    return out;
  }
  try {
    AdmissibleInterval iv = interval_endpoints(block, tol);
    if (!iv.contains(base.value())) {
      out.note = "beta lies outside the interval of '" + block.to_string() + "'";
      return out;
    }
    out.kind = Location::Kind::Block;
    out.interval = std::move(iv);
  } catch (const Error& e) {
    out.note = e.what();
  }
  return out;
}

IntervalCatalog::IntervalCatalog(Alphabet alphabet, std::size_t p_max, Real tol, std::uint64_t budget)
    : alphabet_(alphabet), p_max_(p_max), tol_(tol), critical_(critical_bases(alphabet, tol)) {
  for (const Word& w : enumerate_admissible(alphabet, p_max, budget)) {
    intervals_.push_back(interval_endpoints(w, tol));
  }
  std::sort(intervals_.begin(), intervals_.end(), [](const auto& a, const auto& b) {
    if (a.beta_L.value != b.beta_L.value) return a.beta_L.value < b.beta_L.value;
    return a.block.size() < b.block.size();
  });
}

const AdmissibleInterval* IntervalCatalog::find(Real beta) const {
  // Intervals are disjoint or nested with a common right endpoint, so every
  // interval starting between the outermost container and beta contains beta.
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), beta,
                             [](Real b, const AdmissibleInterval& iv) { return b < iv.beta_L.lower(); });
  if (it == intervals_.begin()) return nullptr;
  --it;
  if (!it->contains(beta)) return nullptr;
  while (it != intervals_.begin() && std::prev(it)->contains(beta)) --it;
  return &*it;
}

Location IntervalCatalog::locate(const Base& base, std::size_t depth) const {
  Location out;
  const Real beta = base.value();
  if (beta <= critical_.komornik_loreti.upper() + tol_) {
    out.kind = Location::Kind::BelowCritical;
    return out;
  }
  if (beta >= static_cast<Real>(alphabet_.size())) {
    out.note = "beta >= N";
    return out;
  }
  if (const AdmissibleInterval* iv = find(beta)) {
    out.kind = Location::Kind::Block;
    out.interval = *iv;
    return out;
  }
  return closure_scan(base, depth, tol_);
}

Location locate_block(const Base& base, std::size_t depth, std::size_t p_max, Real tol) {
  return IntervalCatalog(base.alphabet(), p_max, tol).locate(base, depth);
}

}  // namespace ubeta
