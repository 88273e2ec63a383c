// model_io.hpp — JSON model documents accepted and emitted by the command-line tool
//
// A document is either a waveguide description
//   {"waveguide": {"n_atoms": 3, "lambda": 1, "kappa": 0.75, "xi": 0.25, "site": 1 | "inf"},
//    "initial": [...], "derived": {...}}
// or a generic model
//   {"levels": [...], "couplings": [f | [re, im], ...],
//    "band": {"type": "flat", "low": a, "high": b, "density": J}
//          | {"type": "semicircle", "center": c, "radius": r, "weight": w}
//          | {"type": "markov", "density": J},
//    "initial": [c | [re, im], ...]}
// "derived" is informational output and ignored on input.  Unknown keys are rejected.

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "friedrichs/model.hpp"
#include "friedrichs/waveguide.hpp"

namespace friedrichs::cli {

struct LoadedModel {
    ValidatedModel model;
    InitialState initial;
    std::optional<WaveguideParams> waveguide;
    std::string description;   // one-line provenance
};

// throws friedrichs::Error(InvalidModel) on schema violations
LoadedModel load_model(const nlohmann::json& doc);
LoadedModel load_waveguide(const WaveguideParams& params);

nlohmann::json waveguide_document(const WaveguideParams& params);

// flat band J on [low, high]; the edges are logarithmically divergent
FriedrichsModel flat_band_model(std::vector<double> levels, std::vector<cplx> couplings,
                                double low, double high, double density);
// J = w * 2 sqrt(r^2 - (omega - c)^2) / (pi r^2), unit weight for w = 1
FriedrichsModel semicircle_model(std::vector<double> levels, std::vector<cplx> couplings,
                                 double center, double radius, double weight);
// flat J on the whole real line
FriedrichsModel markov_model(std::vector<double> levels, std::vector<cplx> couplings,
                             double density);

}  // namespace friedrichs::cli
