#include "ubeta/dimension.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "ubeta/entropy.hpp"
#include "ubeta/serialize.hpp"

namespace ubeta {

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::TrivialZero: return "trivial_zero";
    case Regime::AdmissibleInterval: return "admissible_interval";
    case Regime::SuperCritical: return "supercritical";
    case Regime::Unresolved: return "unresolved";
  }
  return "?";
}

DimensionEngine::DimensionEngine(Alphabet alphabet, std::size_t p_max, Real tol, std::size_t depth)
    : catalog_(alphabet, p_max, tol), depth_(depth) {}

Real DimensionEngine::cached_entropy(const Word& block) const {
  std::vector<Digit> key(block.digits().begin(), block.digits().end());
  {
    std::shared_lock lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  // computed outside the lock; concurrent inserts store the same value
  const Real h = entropy(block, catalog_.tol());
  std::unique_lock lock(cache_mutex_);
  return cache_.emplace(std::move(key), h).first->second;
}

DimensionSample DimensionEngine::evaluate(Real beta) const {
  if (!(beta > 1) || !std::isfinite(beta)) throw Error(Errc::InvalidBase, "base must exceed 1");
  if (beta >= static_cast<Real>(alphabet().size())) {
    const Real d = std::log(static_cast<Real>(alphabet().size())) / std::log(beta);
    DimensionSample s;
    s.beta = beta;
    s.n = alphabet().size();
    s.regime = Regime::SuperCritical;
    s.dim = s.dim_lower = s.dim_upper = d;
    return s;
  }
  return evaluate(Base(alphabet(), beta));
}

DimensionSample DimensionEngine::evaluate(const Base& base) const {
  DimensionSample s;
  s.beta = base.value();
  s.n = alphabet().size();
  const Real log_beta = std::log(s.beta);
  const Real ceiling = std::log(static_cast<Real>(s.n)) / log_beta;
  if (s.beta >= static_cast<Real>(s.n)) {
    s.regime = Regime::SuperCritical;
    s.dim = s.dim_lower = s.dim_upper = ceiling;
    return s;
  }
  const Location loc = catalog_.locate(base, depth_);
  switch (loc.kind) {
    case Location::Kind::BelowCritical:
      s.regime = Regime::TrivialZero;
      s.dim = s.dim_lower = s.dim_upper = 0;
      return s;
    case Location::Kind::Block:
      try {
        const Real h = cached_entropy(loc.interval->block);
        s.regime = Regime::AdmissibleInterval;
        s.block = loc.interval->block;
        s.h = h;
        s.dim = s.dim_lower = s.dim_upper = h / log_beta;
        return s;
      } catch (const Error& e) {
        if (!is_budget_error(e.code())) throw;
        s.block = loc.interval->block;
        s.note = e.what();
      }
      break;
    case Location::Kind::InClosureU:
      s.note = "beta lies in the closure of U";
      break;
    case Location::Kind::Unresolved:
      s.note = loc.note;
      break;
  }
  s.regime = Regime::Unresolved;
  s.dim = std::numeric_limits<Real>::quiet_NaN();
  s.dim_lower = 0;
  s.dim_upper = ceiling;
  return s;
}

std::vector<DimensionSample> DimensionEngine::sample_curve(Real lo, Real hi, std::size_t points,
                                                           unsigned threads) const {
  if (!(lo >= 1) || !(hi > lo)) throw Error(Errc::InvalidBase, "need 1 <= lo < hi");
  if (points < 2) throw Error(Errc::InvalidBase, "need at least 2 grid points");
  std::vector<DimensionSample> out(points);
  const Real step = (hi - lo) / static_cast<Real>(points);
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < points; i += stride) {
      out[i] = evaluate(lo + step * (static_cast<Real>(i) + Real(0.5)));
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, points));
  if (threads <= 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        work(t, threads);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

DimensionSample dim_unique_set(const Base& base, std::size_t p_max, Real tol) {
  return DimensionEngine(base.alphabet(), p_max, tol).evaluate(base);
}

std::vector<DimensionSample> sample_curve(Alphabet alphabet, Real lo, Real hi, std::size_t points,
                                          std::size_t p_max, Real tol) {
  return DimensionEngine(alphabet, p_max, tol).sample_curve(lo, hi, points);
}

CurveSummary summarize(const std::vector<DimensionSample>& samples) {
  CurveSummary s;
  s.points = samples.size();
  for (const auto& x : samples) s.unresolved += x.resolved() ? 0 : 1;
  if (s.points > 0) s.unresolved_fraction = static_cast<Real>(s.unresolved) / static_cast<Real>(s.points);
  return s;
}

std::string to_csv(const std::vector<DimensionSample>& samples) {
  std::ostringstream os;
  os << "beta,dim,regime,block,h\n";
  for (const auto& s : samples) {
    os << format_real(s.beta) << ',';
    if (s.resolved()) os << format_real(s.dim);
    os << ',' << to_string(s.regime) << ',';
    if (s.block) os << s.block->to_hyphen_string();
    os << ',';
    if (s.h) os << format_real(*s.h);
    os << '\n';
  }
  return os.str();
}

}  // namespace ubeta
