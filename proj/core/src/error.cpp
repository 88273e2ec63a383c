#include "friedrichs/error.hpp"

namespace friedrichs {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DegenerateLevels: return "DegenerateLevels";
        case ErrorCode::NegativeSpectralDensity: return "NegativeSpectralDensity";
        case ErrorCode::EmptyBand: return "EmptyBand";
        case ErrorCode::UnnormalizedInitialState: return "UnnormalizedInitialState";
        case ErrorCode::InvalidModel: return "InvalidModel";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EInsideBand: return "EInsideBand";
        case ErrorCode::NonconvergentEdge: return "NonconvergentEdge";
        case ErrorCode::DivergentDerivative: return "DivergentDerivative";
        case ErrorCode::PoleHit: return "PoleHit";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::EdgeEvaluationFailure: return "EdgeEvaluationFailure";
        case ErrorCode::RootNotFound: return "RootNotFound";
        case ErrorCode::NormalizationFailure: return "NormalizationFailure";
        case ErrorCode::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
        case ErrorCode::UnsupportedBand: return "UnsupportedBand";
        case ErrorCode::NegativeGamma: return "NegativeGamma";
        case ErrorCode::LightConeViolation: return "LightConeViolation";
        case ErrorCode::NormDrift: return "NormDrift";
    }
    return "Unknown";
}

bool is_configuration_error(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DegenerateLevels:
        case ErrorCode::NegativeSpectralDensity:
        case ErrorCode::EmptyBand:
        case ErrorCode::UnnormalizedInitialState:
        case ErrorCode::InvalidModel:
        case ErrorCode::InvalidArgument:
        case ErrorCode::NegativeGamma:
        case ErrorCode::UnsupportedBand:
            return true;
        default:
            return false;
    }
}

}  // namespace friedrichs
