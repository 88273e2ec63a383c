// bound_states.hpp — census, root solving and normalisation of bound states

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "friedrichs/model.hpp"
#include "friedrichs/spectral.hpp"

namespace friedrichs {

enum class BoundStateKind { BelowBand, AboveBand, InContinuum };

std::string to_string(BoundStateKind kind);

struct BoundState {
    double energy = 0.0;
    BoundStateKind kind = BoundStateKind::BelowBand;
    std::vector<cplx> discrete_amplitudes;   // components of Q|Phi> on |n>
    double normalization = 0.0;              // |B|^2
    // continuum amplitude density a(w) with respect to dw; the continuum norm
    // is int |a(w)|^2 dw
    std::function<cplx(double)> continuum_profile;
    // BIC sitting on level `level_index` with Sigma(E) = 0
    bool at_level = false;
    int level_index = -1;
    double sigma = 0.0;
    double sigma_derivative = 0.0;

    double discrete_norm() const;
};

// One row of the edge comparison: energy criterion against the zero of K on
// the branch containing the edge, amplitude criterion K(edge) vs 1/Sigma(edge).
struct EdgeCriterion {
    std::string edge;            // "lower" or "upper"
    double edge_energy = 0.0;
    int levels_beyond = 0;       // N_low or N_up
    double k_zero = 0.0;         // bounding zero of K (+-inf by convention)
    bool energy_criterion = false;
    double k_edge = 0.0;
    double sigma_inverse_edge = 0.0;
    bool sigma_divergent = false;
    bool amplitude_criterion = false;
    bool tie = false;            // K(edge) == 1/Sigma(edge) within rounding
};

struct BoundStateCensus {
    int n_low = 0;
    int n_up = 0;
    int m_below = 0;
    int m_above = 0;
    int m_bic = 0;
    std::vector<EdgeCriterion> criteria_trace;
    std::vector<std::string> notes;

    int outside() const { return m_below + m_above; }
};

BoundStateCensus count_bound_states(const ValidatedModel& model);

// Bound states outside the band, ordered by energy.
std::vector<BoundState> solve_bound_states(const ValidatedModel& model);

// Bound states at declared zeros of J.
std::vector<BoundState> find_bics(const ValidatedModel& model);

// Both lists merged and sorted by energy.
std::vector<BoundState> all_bound_states(const ValidatedModel& model);

// Normalised state for a real E solving K(E) = 1/Sigma(E).
BoundState make_bound_state(const ValidatedModel& model, double e, BoundStateKind kind);

}  // namespace friedrichs
