// markovian.hpp — energy-independent non-Hermitian effective Hamiltonian and its decay laws

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "friedrichs/dynamics.hpp"
#include "friedrichs/model.hpp"

namespace friedrichs {

// H = diag(eps) - i Gamma f f^dagger
struct EffectiveHamiltonianMarkov {
    Eigen::MatrixXcd matrix;
    double gamma = 0.0;
    std::vector<double> levels;     // empty when built from a bare matrix
    std::vector<cplx> couplings;

    static EffectiveHamiltonianMarkov from_matrix(const Eigen::MatrixXcd& h);
    bool has_model_data() const { return !levels.empty(); }
    int size() const { return static_cast<int>(matrix.rows()); }
};

EffectiveHamiltonianMarkov build_markovian(const std::vector<double>& levels,
                                           const std::vector<cplx>& couplings, double gamma);
EffectiveHamiltonianMarkov build_markovian(const ValidatedModel& model, double gamma);

// Gamma = pi J(e), the Markovian width taken at energy e (band centre by default)
double markovian_gamma(const ValidatedModel& model);
double markovian_gamma(const ValidatedModel& model, double e);

enum class ResonanceKind { Diagonalizable, Defective };

std::string to_string(ResonanceKind kind);

// Chain (H - z) v_1 = 0, (H - z) v_j = v_{j-1}; left chain likewise for H^dagger.
struct JordanBlock {
    cplx eigenvalue;
    Eigen::MatrixXcd right_chain;       // columns v_1..v_k
    Eigen::MatrixXcd left_chain;        // columns w_1..w_k
    Eigen::MatrixXcd overlap;           // S = W^dagger V
    Eigen::MatrixXcd overlap_inverse;
};

struct ResonanceSystem {
    ResonanceKind kind = ResonanceKind::Diagonalizable;
    // sorted by Im z descending, ties by Re z ascending; a defective eigenvalue
    // is repeated with its algebraic multiplicity
    std::vector<cplx> eigenvalues;
    // Diagonalizable: columns are right eigenvectors and the c-product dual
    // basis (W^dagger V = 1).  Defective: eigenvectors of the simple eigenvalues
    // only, in the order of `simple`.
    Eigen::MatrixXcd right_states;
    Eigen::MatrixXcd left_states;
    std::vector<int> simple;            // indices into eigenvalues with 1x1 blocks
    std::vector<JordanBlock> blocks;    // Defective only
    // V_i conj(W_i) with V_i = -i Gamma f^dagger v_i, W_i = i Gamma f^dagger w_i
    std::vector<cplx> normalization_products;
    double eigenvector_condition = 1.0;
};

struct DecompositionOptions {
    enum class Force { Auto, Diagonalizable, Defective };
    Force force = Force::Auto;
    // eigenvalues closer than max(ep_gap_tol, 4 eps^(1/N)) ||H|| are candidates
    // for coalescence; a candidate cluster is an exceptional point when H - z
    // has fewer singular values below singular_tol ||H|| than cluster members
    double ep_gap_tol = 1e-8;
    double singular_tol = 1e-8;
};

ResonanceSystem resonance_decomposition(const EffectiveHamiltonianMarkov& h,
                                        const DecompositionOptions& options = {});

// Closed-form p(t): sum of D_i e^{2 Im z_i t} and U_ii'(t) cross terms when
// diagonalizable, polynomial-times-exponential Jordan terms otherwise.
SurvivalSeries markovian_survival(const EffectiveHamiltonianMarkov& h, const ResonanceSystem& rs,
                                  const InitialState& initial, const std::vector<double>& times);
SurvivalSeries markovian_survival(const EffectiveHamiltonianMarkov& h, const InitialState& initial,
                                  const std::vector<double>& times);

// Direct evaluation of |exp(-i H t) phi(0)|^2.
SurvivalSeries markovian_survival_expm(const EffectiveHamiltonianMarkov& h,
                                       const InitialState& initial, const std::vector<double>& times);

// Decay amplitudes a_ni with phi_n(t) = sum_i a_ni exp(-i z_i t) (diagonalizable case).
Eigen::MatrixXcd markovian_decay_amplitudes(const EffectiveHamiltonianMarkov& h,
                                            const ResonanceSystem& rs, const InitialState& initial);

enum class AntiPtPhase { NotApplicable, Symmetric, Broken, ExceptionalPoint };

std::string to_string(AntiPtPhase phase);

struct AntiPtReport {
    double residual = 0.0;   // || P conj(H) P + H ||_F with P the index reversal
    bool anti_symmetric = false;
    AntiPtPhase phase = AntiPtPhase::NotApplicable;   // classified for N = 2 only
};

AntiPtReport anti_pt_check(const EffectiveHamiltonianMarkov& h);

}  // namespace friedrichs
