#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ubeta {

enum class Errc {
  InvalidAlphabet,
  DigitOutOfRange,
  InvalidSeed,
  InvalidBase,
  NearTie,
  XOutOfRange,
  NotEventuallyPeriodic,
  DepthExceeded,
  NotQuasiGreedy,
  NotAdmissible,
  BudgetExceeded,
  EmptyGraph,
  Undecided,
  Parse,
};

std::string_view to_string(Errc code) noexcept;

/// Budget-type failures: the computation was cut short, not the input rejected.
constexpr bool is_budget_error(Errc code) noexcept {
  return code == Errc::BudgetExceeded || code == Errc::DepthExceeded ||
         code == Errc::Undecided;
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ubeta
