#include "ubeta/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>

#include "ubeta/admissible.hpp"
#include "ubeta/error.hpp"

namespace ubeta {

namespace {

constexpr std::size_t kMaxPowerIterations = 100'000;

void require_admissible(const Word& block) {
  if (!is_admissible_block(block)) {
    throw Error(Errc::NotAdmissible, "'" + block.to_string() + "' is not an admissible block");
  }
}

BigInt value_of(std::span<const Digit> w, std::uint32_t base) {
  BigInt v = 0;
  for (Digit d : w) v = v * base + d;
  return v;
}

// Number of words of length n between reflect(t_1..t_n) and t_1..t_n.
BigInt prefix_count(const Word& t, std::size_t n) {
  const std::uint32_t base = t.alphabet().size();
  const Word hi = t.slice(0, n);
  return value_of(hi.digits(), base) - value_of(reflect(hi).digits(), base) + 1;
}

bool lex_less(std::span<const Digit> a, std::span<const Digit> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Trimmed, decomposed view of a graph: strongly connected components of the
// vertices that lie on some bi-infinite path.
struct Components {
  std::vector<int> comp;  // -1 for removed vertices
  std::vector<std::vector<std::uint32_t>> members;
};

Components decompose(const SftGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<char> alive(n, 1);
  std::vector<std::uint32_t> indeg(n, 0), outdeg(n, 0);
  std::vector<std::vector<std::uint32_t>> preds(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::uint32_t v : g.successors(u)) {
      ++outdeg[u];
      ++indeg[v];
      preds[v].push_back(static_cast<std::uint32_t>(u));
    }
  }
  std::vector<std::uint32_t> queue;
  for (std::size_t u = 0; u < n; ++u) {
    if (indeg[u] == 0 || outdeg[u] == 0) {
      alive[u] = 0;
      queue.push_back(static_cast<std::uint32_t>(u));
    }
  }
  while (!queue.empty()) {
    const std::uint32_t u = queue.back();
    queue.pop_back();
    for (std::uint32_t v : g.successors(u)) {
      if (alive[v] && --indeg[v] == 0) {
        alive[v] = 0;
        queue.push_back(v);
      }
    }
    for (std::uint32_t w : preds[u]) {
      if (alive[w] && --outdeg[w] == 0) {
        alive[w] = 0;
        queue.push_back(w);
      }
    }
  }

  // Iterative Tarjan over the surviving vertices.
  Components out;
  out.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> frames;
  int counter = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (!alive[root] || index[root] >= 0) continue;
    frames.push_back({static_cast<std::uint32_t>(root), 0});
    index[root] = low[root] = counter++;
    stack.push_back(static_cast<std::uint32_t>(root));
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [u, pos] = frames.back();
      const auto succ = g.successors(u);
      if (pos < succ.size()) {
        const std::uint32_t v = succ[pos++];
        if (!alive[v]) continue;
        if (index[v] < 0) {
          index[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = 1;
          frames.push_back({v, 0});
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      const std::uint32_t done = u;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<std::uint32_t> members;
        std::uint32_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          members.push_back(w);
        } while (w != done);
        // trimming leaves no trivial components except isolated loop-free ones
        bool nontrivial = members.size() > 1;
        if (!nontrivial) {
          for (std::uint32_t v : g.successors(done)) nontrivial = nontrivial || v == done;
        }
        if (nontrivial) {
          const int id = static_cast<int>(out.members.size());
          for (std::uint32_t m : members) out.comp[m] = id;
          std::sort(members.begin(), members.end());
          out.members.push_back(std::move(members));
        }
      }
    }
  }
  return out;
}

std::size_t component_period(const SftGraph& g, const Components& c, int id) {
  const auto& members = c.members[static_cast<std::size_t>(id)];
  std::vector<long long> level(g.vertex_count(), -1);
  std::vector<std::uint32_t> frontier{members.front()};
  level[members.front()] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const std::uint32_t u = frontier[head];
    for (std::uint32_t v : g.successors(u)) {
      if (c.comp[v] == id && level[v] < 0) {
        level[v] = level[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  long long period = 0;
  for (std::uint32_t u : members) {
    for (std::uint32_t v : g.successors(u)) {
      if (c.comp[v] == id) period = std::gcd(period, std::llabs(level[u] + 1 - level[v]));
    }
  }
  return static_cast<std::size_t>(std::max(1LL, period));
}

struct ComponentBounds {
  Real lower = 0;
  Real upper = 0;
  bool converged = false;
  bool cycle = false;
  std::size_t iterations = 0;
  std::vector<Real> vector;  // last iterate, for the fallback
};

// Collatz-Wielandt bounds min/max (Ax)_i / x_i, iterating x <- (A + I) x.
ComponentBounds component_bounds(const SftGraph& g, const Components& c, int id, Real tol) {
  const auto& members = c.members[static_cast<std::size_t>(id)];
  ComponentBounds out;
  bool cycle = true;
  for (std::uint32_t u : members) {
    std::size_t internal = 0;
    const auto succ = g.successors(u);
    const auto wts = g.weights(u);
    for (std::size_t k = 0; k < succ.size(); ++k) {
      if (c.comp[succ[k]] == id) internal += wts[k];
    }
    cycle = cycle && internal == 1;
  }
  if (cycle) {
    out.lower = out.upper = 1;
    out.converged = out.cycle = true;
    return out;
  }
  const std::size_t m = members.size();
  std::vector<std::uint32_t> local(g.vertex_count(), 0);
  for (std::size_t i = 0; i < m; ++i) local[members[i]] = static_cast<std::uint32_t>(i);
  std::vector<Real> x(m, Real(1) / static_cast<Real>(m)), y(m);
  out.lower = 0;
  out.upper = std::numeric_limits<Real>::infinity();
  // run past tol while progress is cheap; converged means within tol
  const Real target = std::max(tol / 1024, 64 * std::numeric_limits<Real>::epsilon());
  for (std::size_t it = 1; it <= kMaxPowerIterations; ++it) {
    Real lo = std::numeric_limits<Real>::infinity();
    Real hi = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::uint32_t u = members[i];
      const auto succ = g.successors(u);
      const auto wts = g.weights(u);
      Real s = 0;
      for (std::size_t k = 0; k < succ.size(); ++k) {
        if (c.comp[succ[k]] == id) s += static_cast<Real>(wts[k]) * x[local[succ[k]]];
      }
      y[i] = s;
      const Real q = s / x[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    out.lower = std::max(out.lower, lo);
    out.upper = std::min(out.upper, hi);
    out.iterations = it;
    if (out.upper - out.lower <= target * out.upper) break;
    Real total = 0;
    for (std::size_t i = 0; i < m; ++i) total += (y[i] += x[i]);
    for (std::size_t i = 0; i < m; ++i) x[i] = y[i] / total;
  }
  out.converged = out.upper - out.lower <= tol;
  // rounding in the quotients
  const Real slack = 16 * std::numeric_limits<Real>::epsilon() * out.upper;
  out.lower -= slack;
  out.upper += slack;
  out.vector = std::move(x);
  return out;
}

// Growth of total path weight in a component, averaged over whole periods.
Real component_growth(const SftGraph& g, const Components& c, int id, std::size_t period,
                      std::vector<Real> x) {
  const auto& members = c.members[static_cast<std::size_t>(id)];
  const std::size_t m = members.size();
  std::vector<std::uint32_t> local(g.vertex_count(), 0);
  for (std::size_t i = 0; i < m; ++i) local[members[i]] = static_cast<std::uint32_t>(i);
  std::vector<Real> y(m);
  const std::size_t window = period * 64;
  Real log_growth = 0;
  for (std::size_t it = 0; it < window; ++it) {
    Real total = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto succ = g.successors(members[i]);
      const auto wts = g.weights(members[i]);
      Real s = 0;
      for (std::size_t k = 0; k < succ.size(); ++k) {
        if (c.comp[succ[k]] == id) s += static_cast<Real>(wts[k]) * x[local[succ[k]]];
      }
      y[i] = s;
      total += s;
    }
    Real before = 0;
    for (Real v : x) before += v;
    log_growth += std::log(total / before);
    for (std::size_t i = 0; i < m; ++i) x[i] = y[i] / total;
  }
  return std::exp(log_growth / static_cast<Real>(window));
}

}  // namespace

std::size_t max_vertices() {
  if (const char* env = std::getenv("BUD_MAX_VERTICES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxVertices;
}

Word SftGraph::vertex(std::size_t i) const {
  const std::size_t len = vertex_length();
  if (len == 0) return Word(block_.alphabet());
  const auto first = vertex_digits_.begin() + static_cast<std::ptrdiff_t>(i * len);
  return Word(block_.alphabet(), std::vector<Digit>(first, first + static_cast<std::ptrdiff_t>(len)));
}

std::span<const std::uint32_t> SftGraph::successors(std::size_t u) const {
  return std::span<const std::uint32_t>(targets_).subspan(offsets_[u], offsets_[u + 1] - offsets_[u]);
}

std::span<const std::uint32_t> SftGraph::weights(std::size_t u) const {
  return std::span<const std::uint32_t>(weights_).subspan(offsets_[u], offsets_[u + 1] - offsets_[u]);
}

std::uint32_t SftGraph::entry(std::size_t u, std::size_t v) const {
  const auto succ = successors(u);
  const auto it = std::lower_bound(succ.begin(), succ.end(), static_cast<std::uint32_t>(v));
  if (it == succ.end() || *it != v) return 0;
  return weights(u)[static_cast<std::size_t>(it - succ.begin())];
}

SftGraph build_sft(const Word& block, SftVertices mode) {
  require_admissible(block);
  const Alphabet& a = block.alphabet();
  const std::size_t p = block.size();
  SftGraph g(block);
  if (p == 1) {
    g.offsets_ = {0, 1};
    g.targets_ = {0};
    g.weights_ = {static_cast<std::uint32_t>(block[0] - a.reflect(block[0]) + 1)};
    return g;
  }
  const std::size_t len = p - 1;
  const Word lower = reflect(block);
  const Word lo = lower.slice(0, len);
  const Word hi = block.slice(0, len);
  const std::size_t limit = max_vertices();
  auto too_many = [&](const std::string& count) {
    return Error(Errc::BudgetExceeded, "edge graph of '" + block.to_string() + "' has " + count +
                                           " vertices, above the limit of " + std::to_string(limit));
  };
  if (mode == SftVertices::Full) {
    const BigInt count = prefix_count(block, len);
    if (count > limit) throw too_many(count.str());
    const std::size_t n = count.convert_to<std::size_t>();
    g.vertex_digits_.reserve(n * len);
    std::vector<Digit> cur(lo.digits().begin(), lo.digits().end());
    for (std::size_t i = 0; i < n; ++i) {
      g.vertex_digits_.insert(g.vertex_digits_.end(), cur.begin(), cur.end());
      std::size_t k = len;
      while (k > 0 && cur[k - 1] == a.max_digit()) cur[--k] = 0;
      if (k > 0) ++cur[k - 1];
    }
  } else {
    // Depth-first in lexicographic order over words each of whose suffixes
    // lies within the prefix bounds. A start stays active while its suffix
    // still equals the matching prefix of t (bit 1) or of reflect(t) (bit 2).
    struct Active {
      std::size_t start;
      unsigned tight;
    };
    std::vector<Digit> cur(len);
    std::size_t count = 0;
    std::function<void(std::size_t, const std::vector<Active>&)> descend =
        [&](std::size_t k, const std::vector<Active>& active) {
          if (k == len) {
            if (++count > limit) throw too_many("more than " + std::to_string(limit));
            g.vertex_digits_.insert(g.vertex_digits_.end(), cur.begin(), cur.end());
            return;
          }
          std::vector<Active> all = active;
          all.push_back({k, 3});
          Digit d_lo = 0, d_hi = a.max_digit();
          for (const Active& s : all) {
            if (s.tight & 1) d_hi = std::min(d_hi, block[k - s.start]);
            if (s.tight & 2) d_lo = std::max(d_lo, lower[k - s.start]);
          }
          std::vector<Active> next;
          for (unsigned d = d_lo; d <= d_hi; ++d) {
            cur[k] = static_cast<Digit>(d);
            next.clear();
            for (const Active& s : all) {
              unsigned t = 0;
              if ((s.tight & 1) && d == block[k - s.start]) t |= 1;
              if ((s.tight & 2) && d == lower[k - s.start]) t |= 2;
              if (t) next.push_back({s.start, t});
            }
            descend(k + 1, next);
          }
        };
    descend(0, {});
  }
  const std::size_t n = g.vertex_digits_.size() / len;

  auto vertex_span = [&](std::size_t i) {
    return std::span<const Digit>(g.vertex_digits_).subspan(i * len, len);
  };
  std::vector<Digit> v(len);
  for (std::size_t u = 0; u < n; ++u) {
    const auto us = vertex_span(u);
    const bool at_lo = std::equal(us.begin(), us.end(), lo.digits().begin());
    const bool at_hi = std::equal(us.begin(), us.end(), hi.digits().begin());
    const Digit d_lo = at_lo ? lower[len] : Digit{0};
    const Digit d_hi = at_hi ? block[len] : a.max_digit();
    std::copy(us.begin() + 1, us.end(), v.begin());
    v[len - 1] = d_lo;
    // successors u_2..u_{p-1}d for d in [d_lo, d_hi] are consecutive vertices
    std::size_t first = 0, last = n;
    while (first < last) {
      const std::size_t mid = (first + last) / 2;
      if (lex_less(vertex_span(mid), v)) first = mid + 1; else last = mid;
    }
    for (std::size_t j = first; j < n; ++j) {
      const auto vs = vertex_span(j);
      if (!std::equal(vs.begin(), vs.end() - 1, v.begin()) || vs[len - 1] > d_hi) break;
      g.targets_.push_back(static_cast<std::uint32_t>(j));
      g.weights_.push_back(1);
    }
    g.offsets_.push_back(static_cast<std::uint32_t>(g.targets_.size()));
  }
  return g;
}

SpectralInfo spectral_analysis(const SftGraph& g, Real tol) {
  if (g.vertex_count() == 0) throw Error(Errc::EmptyGraph, "graph has no vertices");
  SpectralInfo info;
  const Components c = decompose(g);
  if (c.members.empty()) throw Error(Errc::EmptyGraph, "graph has no cycle");
  info.components = c.members.size();
  info.all_cycles = true;
  info.converged = true;
  Real lower = 0, upper = 0;
  int best = 0;
  std::vector<ComponentBounds> bounds;
  for (int id = 0; id < static_cast<int>(c.members.size()); ++id) {
    bounds.push_back(component_bounds(g, c, id, tol));
    const ComponentBounds& b = bounds.back();
    info.all_cycles = info.all_cycles && b.cycle;
    info.iterations = std::max(info.iterations, b.iterations);
    if (b.upper > upper) best = id;
    lower = std::max(lower, b.lower);
    upper = std::max(upper, b.upper);
  }
  info.period = component_period(g, c, best);
  const ComponentBounds& top = bounds[static_cast<std::size_t>(best)];
  if (top.converged) {
    info.rho = {(lower + upper) / 2, (upper - lower) / 2};
    return info;
  }
  info.converged = false;
  const Real estimate =
      std::clamp(component_growth(g, c, best, info.period, top.vector), lower, upper);
  info.rho = {estimate, std::max(estimate - lower, upper - estimate)};
  return info;
}

EntropyResult entropy_analysis(const Word& block, Real tol) {
  const SftGraph g = build_sft(block, SftVertices::Essential);
  EntropyResult out;
  out.spectral = spectral_analysis(g, tol);
  if (out.spectral.rho.contains(1)) {
    // polynomial growth: doubling the length multiplies counts by at most
    // a constant depending on the number of components
    const std::vector<BigInt> counts = word_counts(g, 128);
    const BigInt factor = BigInt(4) << out.spectral.components;
    out.zero_certified = counts[127] <= counts[63] * factor;
  }
  out.h = out.zero_certified ? Real(0) : std::max(Real(0), std::log(out.spectral.rho.value));
  return out;
}

Real entropy_closed_p1(Digit t1, Alphabet alphabet) {
  const long long n = alphabet.size();
  if (2 * t1 < n - 1 || t1 > n - 2) {
    throw Error(Errc::NotAdmissible, std::to_string(t1) + " is not an admissible block");
  }
  return std::log(static_cast<Real>(2 * t1 + 2 - n));
}

Real entropy_closed_p2(Digit t1, Digit t2, Alphabet alphabet) {
  require_admissible(Word(alphabet, {t1, t2}));
  const Real n = alphabet.size();
  const Real b = 2 * Real(t1) + 1 - n;
  const Real c = 2 * Real(t2) + 2 - n;
  return std::log((b + std::sqrt(b * b + 4 * c)) / 2);
}

std::vector<BigInt> word_counts(const SftGraph& g, std::size_t n_max) {
  if (n_max > kMaxWordCountLength) {
    throw Error(Errc::BudgetExceeded, "word length " + std::to_string(n_max) + " above " +
                                          std::to_string(kMaxWordCountLength));
  }
  const Word& t = g.block();
  const std::size_t len = g.vertex_length();
  std::vector<BigInt> out;
  out.reserve(n_max);
  if (len == 0) {
    const BigInt m = g.weights(0)[0];
    BigInt c = 1;
    for (std::size_t n = 1; n <= n_max; ++n) out.push_back(c *= m);
    return out;
  }
  for (std::size_t n = 1; n <= std::min(len, n_max); ++n) out.push_back(prefix_count(t, n));
  // The last window's suffix need not be a vertex, so a path is weighted by
  // the number of digits that close a valid window at its end.
  const Word hi = t.slice(0, len), lo = reflect(hi);
  const Digit last = t[len], last_lo = t.alphabet().reflect(last);
  const std::size_t v = g.vertex_count();
  std::vector<BigInt> x(v), y(v);
  for (std::size_t u = 0; u < v; ++u) {
    const Word w = g.vertex(u);
    const int top = w == hi ? last : t.alphabet().max_digit();
    const int bottom = w == lo ? last_lo : 0;
    x[u] = top - bottom + 1;
  }
  for (std::size_t n = len + 1; n <= n_max; ++n) {
    if (n > len + 1) {
      for (std::size_t u = 0; u < v; ++u) {
        BigInt s = 0;
        for (std::uint32_t w : g.successors(u)) s += x[w];
        y[u] = std::move(s);
      }
      x.swap(y);
    }
    BigInt total = 0;
    for (const BigInt& c : x) total += c;
    out.push_back(std::move(total));
  }
  return out;
}

BigInt word_count(const SftGraph& g, std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidSeed, "word length must be positive");
  return word_counts(g, n).back();
}

BigInt word_count(const Word& block, std::size_t n) { return word_count(build_sft(block), n); }

}  // namespace ubeta
