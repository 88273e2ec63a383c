#include "friedrichs/markovian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "friedrichs/error.hpp"
#include "friedrichs/spectral.hpp"

namespace friedrichs {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

double scale_of(const MatrixXcd& h) {
    double s = h.norm();
    return s > 0.0 ? s : 1.0;
}

std::vector<cplx> raw_eigenvalues(const MatrixXcd& h) {
    const Eigen::Index n = h.rows();
    if (n == 1) return {h(0, 0)};
    if (n == 2) {
        // z = m +- sqrt(d^2 + h01 h10), exact at coalescence
        const cplx m = 0.5 * (h(0, 0) + h(1, 1));
        const cplx d = 0.5 * (h(0, 0) - h(1, 1));
        const cplx s = std::sqrt(d * d + h(0, 1) * h(1, 0));
        return {m + s, m - s};
    }
    Eigen::ComplexEigenSolver<MatrixXcd> solver(h, false);
    std::vector<cplx> out;
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()[i]);
    return out;
}

void sort_eigenvalues(std::vector<cplx>& z, double tie) {
    std::sort(z.begin(), z.end(), [tie](cplx a, cplx b) {
        if (std::abs(a.imag() - b.imag()) > tie) return a.imag() > b.imag();
        return a.real() < b.real();
    });
}

// right null vector and left null vector of h - z from the smallest singular triplet
std::pair<VectorXcd, VectorXcd> null_vectors(const MatrixXcd& h, cplx z) {
    const Eigen::Index n = h.rows();
    MatrixXcd a = h - z * MatrixXcd::Identity(n, n);
    Eigen::JacobiSVD<MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {svd.matrixV().col(n - 1), svd.matrixU().col(n - 1)};
}

JordanBlock build_block(const MatrixXcd& h, cplx mu, int k) {
    const Eigen::Index n = h.rows();
    MatrixXcd a = h - mu * MatrixXcd::Identity(n, n);
    Eigen::JacobiSVD<MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const MatrixXcd& u = svd.matrixU();
    const MatrixXcd& v = svd.matrixV();
    // minimum-norm pseudo-inverse of rank n - 1 (one Jordan block per eigenvalue)
    MatrixXcd pinv = MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) pinv += v.col(i) * (1.0 / sv[i]) * u.col(i).adjoint();
    JordanBlock b;
    b.eigenvalue = mu;
    b.right_chain.resize(n, k);
    b.left_chain.resize(n, k);
    b.right_chain.col(0) = v.col(n - 1);
    b.left_chain.col(0) = u.col(n - 1);
    const MatrixXcd pinv_adj = pinv.adjoint();
    for (int j = 1; j < k; ++j) {
        b.right_chain.col(j) = pinv * b.right_chain.col(j - 1);
        b.left_chain.col(j) = pinv_adj * b.left_chain.col(j - 1);
    }
    b.overlap = b.left_chain.adjoint() * b.right_chain;
    b.overlap_inverse = b.overlap.inverse();
    return b;
}

struct Cluster {
    std::vector<int> members;
    cplx mean;
};

std::vector<Cluster> cluster(const std::vector<cplx>& z, double tau) {
    const int n = static_cast<int>(z.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(z[i] - z[j]) < tau) parent[find(i)] = find(j);
        }
    }
    std::vector<Cluster> out;
    std::vector<int> index(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (index[r] < 0) {
            index[r] = static_cast<int>(out.size());
            out.push_back({});
        }
        out[index[r]].members.push_back(i);
    }
    for (auto& c : out) {
        cplx s = 0.0;
        for (int i : c.members) s += z[i];
        c.mean = s / static_cast<double>(c.members.size());
    }
    return out;
}

bool formula_route(const EffectiveHamiltonianMarkov& h, const std::vector<cplx>& z) {
    if (!h.has_model_data() || !(h.gamma > 0.0)) return false;
    for (auto f : h.couplings) {
        if (std::norm(f) == 0.0) return false;
    }
    const double tol = 1e-10 * scale_of(h.matrix);
    for (auto zi : z) {
        for (double e : h.levels) {
            if (std::abs(zi - e) < tol) return false;
        }
    }
    return true;
}

cplx k_markov(const EffectiveHamiltonianMarkov& h, cplx z) {
    cplx s = 0.0;
    for (std::size_t n = 0; n < h.levels.size(); ++n) s += std::norm(h.couplings[n]) / (z - h.levels[n]);
    return s;
}

cplx dk_markov(const EffectiveHamiltonianMarkov& h, cplx z) {
    cplx s = 0.0;
    for (std::size_t n = 0; n < h.levels.size(); ++n) {
        cplx d = z - h.levels[n];
        s -= std::norm(h.couplings[n]) / (d * d);
    }
    return s;
}

// polish a resonance on 1 + i Gamma K(z) = 0
cplx newton_polish(const EffectiveHamiltonianMarkov& h, cplx z) {
    const cplx ig(0.0, h.gamma);
    cplx best = z;
    double best_res = std::abs(1.0 + ig * k_markov(h, z));
    for (int it = 0; it < 8; ++it) {
        const cplx f = 1.0 + ig * k_markov(h, z);
        const cplx df = ig * dk_markov(h, z);
        if (df == 0.0) break;
        z -= f / df;
        const double res = std::abs(1.0 + ig * k_markov(h, z));
        if (!(res < best_res)) break;
        best = z, best_res = res;
    }
    return best;
}

SurvivalSeries series_from(const std::vector<double>& times, std::vector<double> p) {
    SurvivalSeries out;
    out.times = times;
    out.p = std::move(p);
    return out;
}

}  // namespace

EffectiveHamiltonianMarkov EffectiveHamiltonianMarkov::from_matrix(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols() || h.rows() == 0)
        throw Error(ErrorCode::InvalidArgument, "effective Hamiltonian must be square and non-empty");
    EffectiveHamiltonianMarkov out;
    out.matrix = h;
    return out;
}

EffectiveHamiltonianMarkov build_markovian(const std::vector<double>& levels,
                                           const std::vector<cplx>& couplings, double gamma) {
    if (!(gamma >= 0.0)) {
        std::ostringstream os;
        os << "Gamma = " << gamma;
        throw Error(ErrorCode::NegativeGamma, os.str());
    }
    if (levels.size() != couplings.size() || levels.empty())
        throw Error(ErrorCode::InvalidModel, "levels and couplings differ in length");
    const Eigen::Index n = static_cast<Eigen::Index>(levels.size());
    EffectiveHamiltonianMarkov out;
    out.gamma = gamma;
    out.levels = levels;
    out.couplings = couplings;
    out.matrix.resize(n, n);
    const cplx ig(0.0, gamma);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out.matrix(i, j) = (i == j ? cplx(levels[i]) : cplx(0.0)) - ig * couplings[i] * std::conj(couplings[j]);
        }
    }
    return out;
}

EffectiveHamiltonianMarkov build_markovian(const ValidatedModel& model, double gamma) {
    return build_markovian(model.levels(), model.couplings(), gamma);
}

double markovian_gamma(const ValidatedModel& model, double e) {
    return M_PI * model.spectral_density(e);
}

double markovian_gamma(const ValidatedModel& model) {
    if (!model.finite_band())
        throw Error(ErrorCode::InvalidArgument, "band centre undefined for an infinite band; pass Gamma");
    return markovian_gamma(model, 0.5 * (model.omega_low() + model.omega_up()));
}

std::string to_string(ResonanceKind kind) {
    return kind == ResonanceKind::Diagonalizable ? "diagonalizable" : "defective";
}

std::string to_string(AntiPtPhase phase) {
    switch (phase) {
        case AntiPtPhase::NotApplicable: return "n/a";
        case AntiPtPhase::Symmetric: return "symmetric";
        case AntiPtPhase::Broken: return "broken";
        case AntiPtPhase::ExceptionalPoint: return "exceptional-point";
    }
    return "unknown";
}

ResonanceSystem resonance_decomposition(const EffectiveHamiltonianMarkov& h,
                                        const DecompositionOptions& options) {
    using Force = DecompositionOptions::Force;
    const MatrixXcd& m = h.matrix;
    const Eigen::Index n = m.rows();
    const double norm = scale_of(m);
    ResonanceSystem rs;
    std::vector<cplx> z = raw_eigenvalues(m);
    sort_eigenvalues(z, 1e-14 * norm);

    std::vector<Cluster> eps;   // exceptional points
    if (options.force != Force::Diagonalizable && n > 1) {
        const double eps_root = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / static_cast<double>(n));
        double tau = std::max(options.ep_gap_tol, 4.0 * eps_root) * norm;
        if (options.force == Force::Defective) tau = std::max(tau, 1e-4 * norm);
        for (auto& c : cluster(z, tau)) {
            const int k = static_cast<int>(c.members.size());
            if (k < 2) continue;
            if (options.force == Force::Defective) {
                eps.push_back(c);
                continue;
            }
            MatrixXcd a = m - c.mean * MatrixXcd::Identity(n, n);
            Eigen::JacobiSVD<MatrixXcd> svd(a);
            int g = 0;
            for (Eigen::Index i = 0; i < n; ++i) g += svd.singularValues()[i] < options.singular_tol * norm;
            if (g == 0 || g == k) continue;   // distinct eigenvalues, or semisimple degeneracy
            if (g > 1) {
                throw Error(ErrorCode::InvalidArgument,
                            "several Jordan blocks share one eigenvalue; not supported");
            }
            eps.push_back(c);
        }
    }

    if (eps.empty()) {
        rs.kind = ResonanceKind::Diagonalizable;
        rs.eigenvalues = z;
        MatrixXcd v(n, n);
        if (n <= 2) {
            for (Eigen::Index i = 0; i < n; ++i) v.col(i) = null_vectors(m, z[i]).first;
        } else {
            Eigen::ComplexEigenSolver<MatrixXcd> solver(m, true);
            std::vector<bool> used(n, false);
            for (Eigen::Index i = 0; i < n; ++i) {
                // match sorted eigenvalue to the solver's column
                Eigen::Index best = -1;
                double dist = std::numeric_limits<double>::infinity();
                for (Eigen::Index j = 0; j < n; ++j) {
                    if (used[j]) continue;
                    double d = std::abs(solver.eigenvalues()[j] - z[i]);
                    if (d < dist) dist = d, best = j;
                }
                used[best] = true;
                v.col(i) = solver.eigenvectors().col(best).normalized();
            }
        }
        rs.right_states = v;
        rs.left_states = v.inverse().adjoint();
        rs.eigenvector_condition = v.norm() * v.inverse().norm();
        for (Eigen::Index i = 0; i < n; ++i) rs.simple.push_back(static_cast<int>(i));
        if (h.has_model_data() && h.gamma > 0.0) {
            const VectorXcd f = to_vector(h.couplings);
            for (Eigen::Index i = 0; i < n; ++i) {
                const cplx vi = cplx(0.0, -h.gamma) * f.dot(rs.right_states.col(i));
                const cplx wi = cplx(0.0, h.gamma) * f.dot(rs.left_states.col(i));
                rs.normalization_products.push_back(vi * std::conj(wi));
            }
        }
        return rs;
    }

    rs.kind = ResonanceKind::Defective;
    std::vector<bool> in_ep(z.size(), false);
    std::vector<cplx> values;
    for (const auto& c : eps) {
        for (int i : c.members) in_ep[i] = true;
        for (std::size_t j = 0; j < c.members.size(); ++j) values.push_back(c.mean);
        rs.blocks.push_back(build_block(m, c.mean, static_cast<int>(c.members.size())));
    }
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!in_ep[i]) values.push_back(z[i]);
    }
    sort_eigenvalues(values, 1e-14 * norm);
    rs.eigenvalues = values;
    std::vector<cplx> singles;
    for (std::size_t i = 0; i < values.size(); ++i) {
        bool ep = false;
        for (const auto& b : rs.blocks) ep = ep || values[i] == b.eigenvalue;
        if (!ep) rs.simple.push_back(static_cast<int>(i)), singles.push_back(values[i]);
    }
    rs.right_states.resize(n, static_cast<Eigen::Index>(singles.size()));
    rs.left_states.resize(n, static_cast<Eigen::Index>(singles.size()));
    for (std::size_t i = 0; i < singles.size(); ++i) {
        auto [v, w] = null_vectors(m, singles[i]);
        const cplx c = w.dot(v);   // w^dagger v
        rs.right_states.col(static_cast<Eigen::Index>(i)) = v;
        rs.left_states.col(static_cast<Eigen::Index>(i)) = w / std::conj(c);
    }
    rs.eigenvector_condition = std::numeric_limits<double>::infinity();
    return rs;
}

Eigen::MatrixXcd markovian_decay_amplitudes(const EffectiveHamiltonianMarkov& h,
                                            const ResonanceSystem& rs, const InitialState& initial) {
    if (rs.kind != ResonanceKind::Diagonalizable)
        throw Error(ErrorCode::InvalidArgument, "decay amplitudes need a diagonalizable system");
    const Eigen::Index n = h.matrix.rows();
    const VectorXcd c = to_vector(initial.amplitudes);
    MatrixXcd a(n, n);
    if (formula_route(h, rs.eigenvalues)) {
        // a_ni = -I(z_i) f_n / ((z_i - eps_n) K'(z_i))
        for (Eigen::Index i = 0; i < n; ++i) {
            const cplx zi = newton_polish(h, rs.eigenvalues[i]);
            cplx ival = 0.0;
            for (Eigen::Index k = 0; k < n; ++k) ival += std::conj(h.couplings[k]) * c[k] / (zi - h.levels[k]);
            const cplx dk = dk_markov(h, zi);
            for (Eigen::Index k = 0; k < n; ++k) a(k, i) = -ival * h.couplings[k] / ((zi - h.levels[k]) * dk);
        }
        return a;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        a.col(i) = rs.right_states.col(i) * rs.left_states.col(i).dot(c);
    }
    return a;
}

SurvivalSeries markovian_survival(const EffectiveHamiltonianMarkov& h, const ResonanceSystem& rs,
                                  const InitialState& initial, const std::vector<double>& times) {
    const Eigen::Index n = h.matrix.rows();
    if (static_cast<Eigen::Index>(initial.amplitudes.size()) != n)
        throw Error(ErrorCode::InvalidArgument, "initial state has wrong dimension");
    std::vector<double> p(times.size());
    if (rs.kind == ResonanceKind::Diagonalizable) {
        const MatrixXcd a = markovian_decay_amplitudes(h, rs, initial);
        std::vector<double> d(n);
        for (Eigen::Index i = 0; i < n; ++i) d[i] = a.col(i).squaredNorm();
        MatrixXcd u0(n, n);   // sum_n a_ni conj(a_ni')
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) u0(i, j) = a.col(j).dot(a.col(i));
        }
        const auto& z = rs.eigenvalues;
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double t = times[k];
            double s = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) s += d[i] * std::exp(2.0 * z[i].imag() * t);
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = i + 1; j < n; ++j) {
                    const cplx ph = std::exp(cplx(0.0, -1.0) * (z[i] - std::conj(z[j])) * t);
                    s += 2.0 * (u0(i, j) * ph).real();
                }
            }
            p[k] = s;
        }
        return series_from(times, std::move(p));
    }
    const VectorXcd c = to_vector(initial.amplitudes);
    std::vector<VectorXcd> coeff;
    for (const auto& b : rs.blocks) coeff.push_back(b.overlap_inverse * (b.left_chain.adjoint() * c));
    VectorXcd simple_coeff(rs.right_states.cols());
    for (Eigen::Index i = 0; i < rs.right_states.cols(); ++i) simple_coeff[i] = rs.left_states.col(i).dot(c);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        VectorXcd psi = VectorXcd::Zero(n);
        for (Eigen::Index i = 0; i < rs.right_states.cols(); ++i) {
            const cplx zi = rs.eigenvalues[rs.simple[i]];
            psi += simple_coeff[i] * std::exp(cplx(0.0, -1.0) * zi * t) * rs.right_states.col(i);
        }
        for (std::size_t bi = 0; bi < rs.blocks.size(); ++bi) {
            const auto& b = rs.blocks[bi];
            const Eigen::Index len = b.right_chain.cols();
            const cplx e = std::exp(cplx(0.0, -1.0) * b.eigenvalue * t);
            for (Eigen::Index j = 0; j < len; ++j) {
                // exp(-iHt) v_j = e^{-i mu t} sum_q (-it)^q / q! v_{j-q}
                cplx term = 1.0;
                for (Eigen::Index q = 0; q <= j; ++q) {
                    psi += coeff[bi][j] * e * term * b.right_chain.col(j - q);
                    term *= cplx(0.0, -t) / static_cast<double>(q + 1);
                }
            }
        }
        p[k] = psi.squaredNorm();
    }
    return series_from(times, std::move(p));
}

SurvivalSeries markovian_survival(const EffectiveHamiltonianMarkov& h, const InitialState& initial,
                                  const std::vector<double>& times) {
    return markovian_survival(h, resonance_decomposition(h), initial, times);
}

SurvivalSeries markovian_survival_expm(const EffectiveHamiltonianMarkov& h,
                                       const InitialState& initial, const std::vector<double>& times) {
    const VectorXcd c = to_vector(initial.amplitudes);
    if (c.size() != h.matrix.rows())
        throw Error(ErrorCode::InvalidArgument, "initial state has wrong dimension");
    std::vector<double> p;
    for (double t : times) {
        const MatrixXcd u = (cplx(0.0, -t) * h.matrix).exp();
        p.push_back((u * c).squaredNorm());
    }
    return series_from(times, std::move(p));
}

AntiPtReport anti_pt_check(const EffectiveHamiltonianMarkov& h) {
    const MatrixXcd& m = h.matrix;
    const Eigen::Index n = m.rows();
    MatrixXcd r(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) r(i, j) = std::conj(m(n - 1 - i, n - 1 - j)) + m(i, j);
    }
    AntiPtReport out;
    out.residual = r.norm();
    const double norm = scale_of(m);
    out.anti_symmetric = out.residual <= 1e-12 * norm;
    if (n == 2 && out.anti_symmetric) {
        const ResonanceSystem rs = resonance_decomposition(h);
        if (rs.kind == ResonanceKind::Defective) {
            out.phase = AntiPtPhase::ExceptionalPoint;
        } else {
            const double re = std::max(std::abs(rs.eigenvalues[0].real()), std::abs(rs.eigenvalues[1].real()));
            out.phase = re <= 1e-12 * norm ? AntiPtPhase::Broken : AntiPtPhase::Symmetric;
        }
    }
    return out;
}

}  // namespace friedrichs
