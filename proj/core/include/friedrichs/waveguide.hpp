// waveguide.hpp — atomic chain side-coupled to a semi-infinite tight-binding waveguide

#pragma once

#include <string>
#include <vector>

#include "friedrichs/bound_states.hpp"
#include "friedrichs/model.hpp"

namespace friedrichs {

// Waveguide site the chain end is attached to; infinite() is the limit of an
// infinitely long waveguide attached in its bulk.
class AttachmentSite {
public:
    AttachmentSite() = default;
    static AttachmentSite at(int l);
    static AttachmentSite infinite();
    // accepts a positive integer or "inf"
    static AttachmentSite parse(const std::string& text);

    bool is_infinite() const { return infinite_; }
    int index() const;
    std::string to_string() const;

    bool operator==(const AttachmentSite&) const = default;

private:
    bool infinite_ = false;
    int l_ = 1;
};

struct WaveguideParams {
    int n_atoms = 1;
    double lambda = 1.0;   // chain hopping
    double kappa = 1.0;    // waveguide hopping
    double xi = 0.0;       // chain-waveguide coupling
    AttachmentSite site;
};

void validate_params(const WaveguideParams& p);

enum class ClosedForms { Use, Omit };

std::vector<double> waveguide_levels(const WaveguideParams& p);
std::vector<cplx> waveguide_couplings(const WaveguideParams& p);
double waveguide_spectral_density(const WaveguideParams& p, double omega);
std::vector<double> waveguide_density_zeros(const WaveguideParams& p);

// Closed forms on the real axis: Sigma outside the band, at the band edges
// (finite site) and at the zeros of J; Sigma' likewise; Delta and Gamma inside.
double waveguide_self_energy(const WaveguideParams& p, double e);
double waveguide_self_energy_derivative(const WaveguideParams& p, double e);
std::pair<double, double> waveguide_shift_width(const WaveguideParams& p, double e);
// Sigma(z) off the real axis
cplx waveguide_self_energy(const WaveguideParams& p, cplx z);

// K and I (for the open-end initial state) in closed form
double waveguide_k(const WaveguideParams& p, double e);
double waveguide_i(const WaveguideParams& p, double e);
cplx waveguide_k(const WaveguideParams& p, cplx z);
cplx waveguide_i(const WaveguideParams& p, cplx z);

FriedrichsModel build_waveguide_model(const WaveguideParams& p, ClosedForms forms = ClosedForms::Use);

// excitation on the open chain end, in the Bloch basis of the chain
InitialState default_initial_state(const WaveguideParams& p);

// Census from the specialised closed-form criteria.
BoundStateCensus waveguide_bound_state_count(const WaveguideParams& p);

// Levels that coincide with a zero of J (finite site >= 2 only).
std::vector<double> waveguide_bic_energies(const WaveguideParams& p);

}  // namespace friedrichs
