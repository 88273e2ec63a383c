// error.hpp — structured error type shared by every module

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace friedrichs {

enum class ErrorCode {
    // model / configuration
    DegenerateLevels,
    NegativeSpectralDensity,
    EmptyBand,
    UnnormalizedInitialState,
    InvalidModel,
    InvalidArgument,
    // spectral kernels
    EInsideBand,
    NonconvergentEdge,
    DivergentDerivative,
    PoleHit,
    QuadratureFailure,
    // bound states
    EdgeEvaluationFailure,
    RootNotFound,
    NormalizationFailure,
    // dynamics
    QuadratureBudgetExceeded,
    UnsupportedBand,
    // markovian
    NegativeGamma,
    // lattice oracle
    LightConeViolation,
    NormDrift,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for errors caused by the input (bad model, bad flags) rather than by a
// numerical procedure failing on a valid input.
bool is_configuration_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace friedrichs
