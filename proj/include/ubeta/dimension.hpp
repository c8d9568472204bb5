#pragma once

// beta -> dim_H U_{beta,N}: regime classification, evaluation and curve sampling.

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ubeta/admissible.hpp"
#include "ubeta/numeric.hpp"
#include "ubeta/words.hpp"

namespace ubeta {

enum class Regime { TrivialZero, AdmissibleInterval, SuperCritical, Unresolved };

std::string_view to_string(Regime r) noexcept;

struct DimensionSample {
  Real beta = 0;
  std::uint32_t n = 0;
  Regime regime = Regime::Unresolved;
  /// NaN when unresolved; the bracket [dim_lower, dim_upper] is always set.
  Real dim = 0;
  Real dim_lower = 0;
  Real dim_upper = 0;
  std::optional<Word> block;
  std::optional<Real> h;
  std::string note;

  bool resolved() const noexcept { return regime != Regime::Unresolved; }
};

/// Evaluates the dimension function for one alphabet. The interval catalog is
/// built once; entropies are cached per block and shared across threads.
class DimensionEngine {
 public:
  DimensionEngine(Alphabet alphabet, std::size_t p_max, Real tol = kDefaultTol,
                  std::size_t depth = kDefaultExpansionDepth);

  const IntervalCatalog& catalog() const noexcept { return catalog_; }
  const Alphabet& alphabet() const noexcept { return catalog_.alphabet(); }

  DimensionSample evaluate(Real beta) const;
  DimensionSample evaluate(const Base& base) const;

  /// `points` samples at the cell midpoints of [lo, hi], ordered by beta.
  /// threads = 0 picks the hardware concurrency.
  std::vector<DimensionSample> sample_curve(Real lo, Real hi, std::size_t points,
                                            unsigned threads = 0) const;

  Real cached_entropy(const Word& block) const;

 private:
  IntervalCatalog catalog_;
  std::size_t depth_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::map<std::vector<Digit>, Real> cache_;
};

DimensionSample dim_unique_set(const Base& base, std::size_t p_max, Real tol = kDefaultTol);

std::vector<DimensionSample> sample_curve(Alphabet alphabet, Real lo, Real hi, std::size_t points,
                                          std::size_t p_max, Real tol = kDefaultTol);

struct CurveSummary {
  std::size_t points = 0;
  std::size_t unresolved = 0;
  Real unresolved_fraction = 0;
};

CurveSummary summarize(const std::vector<DimensionSample>& samples);

/// Header `beta,dim,regime,block,h`; unresolved rows leave dim and h empty.
std::string to_csv(const std::vector<DimensionSample>& samples);

}  // namespace ubeta
