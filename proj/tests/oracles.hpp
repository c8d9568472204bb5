#pragma once

// Independent reference implementations used only by the tests. They work on
// plain integer vectors and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Eigenvalues>

namespace oracle {

using Seq = std::vector<int>;

// tau by the recursive definition: tau_0 = 0, tau_2n = tau_n, tau_2n+1 = 1 - tau_n.
inline int tau(std::uint64_t i) {
  if (i == 0) return 0;
  return i % 2 == 0 ? tau(i / 2) : 1 - tau(i / 2);
}

inline Seq reflect(const Seq& w, int n) {
  Seq out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = n - 1 - w[i];
  return out;
}

// theta(seed) by literal doubling: append reflect(prefix)^+ until long enough.
inline Seq theta(const Seq& seed, int n, std::size_t length) {
  Seq out = seed;
  while (out.size() < length) {
    Seq tail = reflect(out, n);
    tail.back() += 1;
    out.insert(out.end(), tail.begin(), tail.end());
  }
  out.resize(length);
  return out;
}

// lambda_i(N) from the parity formulas, i >= 1.
inline int lambda(int n, std::uint64_t i) {
  const int k = n / 2;
  if (n % 2 == 0) return k - 1 + tau(i);
  return k + tau(i) - tau(i - 1);
}

// Admissibility straight from the definition.
inline bool admissible(const Seq& t, int n) {
  const std::size_t p = t.size();
  if (t.back() >= n - 1) return false;
  const Seq r = reflect(t, n);
  Seq tp = t;
  tp.back() += 1;
  for (std::size_t i = 0; i < p; ++i) {
    Seq rot(t.begin() + i, t.end());
    rot.insert(rot.end(), t.begin(), t.begin() + i);
    if (r > rot) return false;
    Seq lhs(t.begin() + i, t.end());
    lhs.back() += 1;
    const Seq head(r.begin(), r.begin() + i);
    lhs.insert(lhs.end(), head.begin(), head.end());
    if (lhs > tp) return false;
  }
  return true;
}

// Every word of length p over {0..n-1}, lexicographic.
inline void for_each_word(int n, std::size_t p, const std::function<void(const Seq&)>& f) {
  Seq w(p, 0);
  while (true) {
    f(w);
    std::size_t k = p;
    while (k > 0 && w[k - 1] == n - 1) w[--k] = 0;
    if (k == 0) return;
    ++w[k - 1];
  }
}

inline std::vector<Seq> admissible_blocks(int n, std::size_t p_max) {
  std::vector<Seq> out;
  for (std::size_t p = 1; p <= p_max; ++p) {
    for_each_word(n, p, [&](const Seq& w) {
      if (admissible(w, n)) out.push_back(w);
    });
  }
  return out;
}

// Number of length-len words all of whose length-p windows lie in
// [reflect(t), t], by extending valid words one digit at a time.
inline std::uint64_t word_count(const Seq& t, int n, std::size_t len) {
  const std::size_t p = t.size();
  const Seq r = reflect(t, n);
  std::uint64_t count = 0;
  Seq w;
  std::function<void()> grow = [&] {
    if (w.size() >= p) {
      const Seq win(w.end() - static_cast<std::ptrdiff_t>(p), w.end());
      if (win < r || win > t) return;
    }
    if (w.size() == len) {
      // short words: compare against the prefixes of the bounds
      if (len < p) {
        const Seq hi(t.begin(), t.begin() + len), lo(r.begin(), r.begin() + len);
        if (w < lo || w > hi) return;
      }
      ++count;
      return;
    }
    for (int d = 0; d < n; ++d) {
      w.push_back(d);
      grow();
      w.pop_back();
    }
  };
  grow();
  return count;
}

// sum_{i<terms} d_i beta^-(i+1) for a periodic word, in long double.
inline long double periodic_value(const Seq& period, long double beta, std::size_t terms = 4000) {
  long double s = 0, scale = 1;
  for (std::size_t i = 0; i < terms; ++i) {
    scale /= beta;
    if (scale < 1e-40L) break;
    s += period[i % period.size()] * scale;
  }
  return s;
}

// Spectral radius of a small dense nonnegative matrix: the largest
// eigenvalue modulus over its irreducible diagonal blocks, each from a general
// eigensolver. Splitting first avoids the Jordan blocks a reducible matrix can
// have at its Perron root, where eigensolvers lose half their digits or more.
inline double dense_spectral_radius(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) reach[i][j] = a[i][j] > 0;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) reach[i][j] |= reach[k][j];
    }
  }
  std::vector<char> done(n, 0);
  double best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i] || !reach[i][i]) continue;
    std::vector<std::size_t> block;
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j] && reach[j][i]) block.push_back(j);
    }
    const auto m = static_cast<Eigen::Index>(block.size());
    Eigen::MatrixXd sub(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      done[block[static_cast<std::size_t>(r)]] = 1;
      for (Eigen::Index c = 0; c < m; ++c) {
        sub(r, c) = a[block[static_cast<std::size_t>(r)]][block[static_cast<std::size_t>(c)]];
      }
    }
    best = std::max(best, sub.eigenvalues().cwiseAbs().maxCoeff());
  }
  return best;
}

}  // namespace oracle
