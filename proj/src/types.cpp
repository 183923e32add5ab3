#include "c0model/types.hpp"

namespace c0 {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotADivisor: return "NotADivisor";
    case Errc::TooManyDivisors: return "TooManyDivisors";
    case Errc::DegreeZero: return "DegreeZero";
    case Errc::NotARoot: return "NotARoot";
    case Errc::SingularResolvent: return "SingularResolvent";
    case Errc::EigenvalueOnCircle: return "EigenvalueOnCircle";
    case Errc::NotAContraction: return "NotAContraction";
    case Errc::NotMultiplicityFree: return "NotMultiplicityFree";
    case Errc::CyclicSearchFailed: return "CyclicSearchFailed";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::IllConditioned: return "IllConditioned";
    case Errc::EmptySet: return "EmptySet";
    case Errc::MinimalFunctionMismatch: return "MinimalFunctionMismatch";
    case Errc::NotMaximal: return "NotMaximal";
    case Errc::HypothesisFailed: return "HypothesisFailed";
    case Errc::PoleInDisk: return "PoleInDisk";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace c0
