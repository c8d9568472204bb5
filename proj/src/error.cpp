#include "ubeta/error.hpp"

namespace ubeta {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidAlphabet: return "InvalidAlphabet";
    case Errc::DigitOutOfRange: return "DigitOutOfRange";
    case Errc::InvalidSeed: return "InvalidSeed";
    case Errc::InvalidBase: return "InvalidBase";
    case Errc::NearTie: return "NearTie";
    case Errc::XOutOfRange: return "XOutOfRange";
    case Errc::NotEventuallyPeriodic: return "NotEventuallyPeriodic";
    case Errc::DepthExceeded: return "DepthExceeded";
    case Errc::NotQuasiGreedy: return "NotQuasiGreedy";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::Undecided: return "Undecided";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace ubeta
