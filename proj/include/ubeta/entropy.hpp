#pragma once

// The subshift of finite type Z_t of sequences whose length-p factors lie in
// [reflect(t), t], its edge graph, and its topological entropy.

#include <cstdint>
#include <vector>

#include "ubeta/numeric.hpp"
#include "ubeta/words.hpp"

namespace ubeta {

inline constexpr std::size_t kDefaultMaxVertices = 1'000'000;
inline constexpr std::size_t kMaxWordCountLength = 100'000;

/// 10^6 unless overridden by the BUD_MAX_VERTICES environment variable.
std::size_t max_vertices();

/// Full: every (p-1)-word in the lexicographic range, as in the definition.
/// Essential: only words whose suffixes also respect the prefix bounds; the
/// dropped vertices lie on no bi-infinite path, so the entropy is unchanged
/// while long blocks stay tractable.
enum class SftVertices { Full, Essential };

class SftGraph;

/// NotAdmissible for non-admissible blocks; BudgetExceeded beyond max_vertices().
SftGraph build_sft(const Word& block, SftVertices mode = SftVertices::Full);

/// Edge graph of Z_t. Vertices are the (p-1)-words between reflect(t_1..t_{p-1})
/// and t_1..t_{p-1} in lexicographic order; an edge u -> v spells u v_{p-1}.
/// For p = 1 there is one virtual vertex with a loop of multiplicity
/// t_1 - reflect(t_1) + 1.
class SftGraph {
 public:
  const Word& block() const noexcept { return block_; }
  std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size(); }
  std::size_t vertex_length() const noexcept { return block_.size() - 1; }

  Word vertex(std::size_t i) const;
  std::span<const std::uint32_t> successors(std::size_t u) const;
  std::span<const std::uint32_t> weights(std::size_t u) const;
  /// Multiplicity of u -> v.
  std::uint32_t entry(std::size_t u, std::size_t v) const;

  friend SftGraph build_sft(const Word& block, SftVertices mode);

 private:
  explicit SftGraph(Word block) : block_(std::move(block)) {}

  Word block_;
  std::vector<Digit> vertex_digits_;  // row-major, vertex_length() per vertex
  std::vector<std::uint32_t> offsets_{0};
  std::vector<std::uint32_t> targets_;
  std::vector<std::uint32_t> weights_;
};

struct SpectralInfo {
  Enclosure<Real> rho;
  /// Collatz-Wielandt bounds met the tolerance; otherwise the value comes
  /// from word-count ratios inside the (still valid) bounds.
  bool converged = false;
  std::size_t iterations = 0;
  /// Nontrivial strongly connected components after trimming.
  std::size_t components = 0;
  /// Period (gcd of cycle lengths) of a component attaining rho.
  std::size_t period = 1;
  /// Every nontrivial component is a single cycle, so rho = 1 exactly.
  bool all_cycles = false;
};

/// Perron root of the adjacency matrix. EmptyGraph when the graph has no cycle.
SpectralInfo spectral_analysis(const SftGraph& g, Real tol = kDefaultTol);
inline Enclosure<Real> spectral_radius(const SftGraph& g, Real tol = kDefaultTol) {
  return spectral_analysis(g, tol).rho;
}

struct EntropyResult {
  Real h = 0;
  SpectralInfo spectral;
  /// h = 0 declared from rho containing 1 together with polynomial word counts.
  bool zero_certified = false;
};

EntropyResult entropy_analysis(const Word& block, Real tol = kDefaultTol);
inline Real entropy(const Word& block, Real tol = kDefaultTol) {
  return entropy_analysis(block, tol).h;
}

/// log(2 t_1 + 2 - N). NotAdmissible unless ceil((N-1)/2) <= t_1 <= N-2.
Real entropy_closed_p1(Digit t1, Alphabet alphabet);
/// log((2t_1+1-N + sqrt((2t_1+1-N)^2 + 4(2t_2+2-N)))/2). NotAdmissible unless t_1 t_2 is.
Real entropy_closed_p2(Digit t1, Digit t2, Alphabet alphabet);

/// Exact number of length-n words whose length-p factors lie in
/// [reflect(t), t]; shorter words are counted against the prefix bounds.
/// On an Essential graph only words starting at an essential vertex are
/// counted: a lower bound with the same growth rate.
BigInt word_count(const SftGraph& g, std::size_t n);
BigInt word_count(const Word& block, std::size_t n);

/// Counts for lengths 1..n_max in one pass.
std::vector<BigInt> word_counts(const SftGraph& g, std::size_t n_max);

}  // namespace ubeta
