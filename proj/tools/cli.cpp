// cli.cpp — command-line front end: subcommands, exit codes, artifact writing

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "friedrichs/bound_states.hpp"
#include "friedrichs/dynamics.hpp"
#include "friedrichs/error.hpp"
#include "friedrichs/lattice_oracle.hpp"
#include "friedrichs/markovian.hpp"
#include "friedrichs/spectral.hpp"
#include "friedrichs/waveguide.hpp"
#include "model_io.hpp"
#include "output.hpp"
#include "reproduce.hpp"

namespace friedrichs::cli {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "friedrichs 0.1.0";

struct ModelFlags {
    std::string model_path;
    std::string model_json;
    std::optional<int> n_atoms;
    double lambda = 1.0;
    double kappa = 1.0;
    double xi = 0.0;
    std::string site = "1";
    std::vector<double> initial;
};

void add_waveguide_flags(CLI::App* app, ModelFlags& f) {
    app->add_option("--n-atoms", f.n_atoms, "chain length N");
    app->add_option("--lambda", f.lambda, "chain hopping")->capture_default_str();
    app->add_option("--kappa", f.kappa, "waveguide hopping")->capture_default_str();
    app->add_option("--xi", f.xi, "chain-waveguide coupling")->capture_default_str();
    app->add_option("--site", f.site, "attachment site l (integer or inf)")->capture_default_str();
}

void add_model_flags(CLI::App* app, ModelFlags& f) {
    app->add_option("--model", f.model_path, "model JSON file");
    app->add_option("--model-json", f.model_json, "model JSON document given inline");
    add_waveguide_flags(app, f);
    app->add_option("--initial", f.initial, "real initial amplitudes c_n")->delimiter(',');
}

[[noreturn]] void config_error(const std::string& what) {
    throw Error(ErrorCode::InvalidArgument, what);
}

WaveguideParams waveguide_from(const ModelFlags& f) {
    if (!f.n_atoms) config_error("--n-atoms is required");
    WaveguideParams p;
    p.n_atoms = *f.n_atoms;
    p.lambda = f.lambda;
    p.kappa = f.kappa;
    p.xi = f.xi;
    p.site = AttachmentSite::parse(f.site);
    validate_params(p);
    return p;
}

LoadedModel resolve_model(const ModelFlags& f) {
    int sources = !f.model_path.empty() + !f.model_json.empty() + f.n_atoms.has_value();
    if (sources == 0) config_error("no model given: use --model, --model-json or --n-atoms");
    if (sources > 1) config_error("give exactly one of --model, --model-json and --n-atoms");
    LoadedModel lm;
    try {
        if (!f.model_path.empty()) {
            std::ifstream in(f.model_path);
            if (!in) config_error("cannot read model file '" + f.model_path + "'");
            lm = load_model(json::parse(in));
        } else if (!f.model_json.empty()) {
            lm = load_model(json::parse(f.model_json));
        } else {
            lm = load_waveguide(waveguide_from(f));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidModel, std::string("model JSON: ") + e.what());
    }
    if (!f.initial.empty()) {
        if (static_cast<int>(f.initial.size()) != lm.model.size())
            config_error("--initial needs " + std::to_string(lm.model.size()) + " entries");
        InitialState init;
        for (double c : f.initial) init.amplitudes.push_back(c);
        validate_initial_state(lm.model, init);
        lm.initial = init;
    }
    return lm;
}

std::string amplitudes_text(const std::vector<cplx>& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ' ';
        s += format_number(c[i].real());
        if (c[i].imag() != 0.0) s += (c[i].imag() < 0 ? "" : "+") + format_number(c[i].imag()) + "i";
    }
    return s;
}

std::string provenance(const std::string& command, const LoadedModel& lm) {
    return std::string(kVersion) + " " + command + " | " + lm.description + " | initial=[" +
           amplitudes_text(lm.initial.amplitudes) + "]";
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// output path with its extension replaced by .json
std::string sidecar_path(const std::string& output, const std::string& explicit_path) {
    if (!explicit_path.empty()) return explicit_path;
    if (output.empty() || output == "-") return "";
    auto dot = output.find_last_of('.');
    auto slash = output.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        return output.substr(0, dot) + ".json";
    return output + ".json";
}

// ---------------------------------------------------------------- spectrum

struct SpectrumFlags {
    ModelFlags model;
    std::optional<double> emin, emax;
    int points = 401;
    bool quadrature = false;
    std::string output;
};

bool soft_failure(const Error& e) {
    switch (e.code()) {
        case ErrorCode::PoleHit:
        case ErrorCode::NonconvergentEdge:
        case ErrorCode::DivergentDerivative: return true;
        default: return false;
    }
}

void run_spectrum(const SpectrumFlags& f, std::ostream& out) {
    LoadedModel lm = resolve_model(f.model);
    const ValidatedModel& m = lm.model;
    if (f.points < 2) config_error("--points must be at least 2");
    double lo_default, hi_default;
    {
        double a = m.omega_low(), b = m.omega_up();
        double emin = m.levels().front(), emax = m.levels().back();
        if (std::isfinite(a)) emin = std::min(emin, a);
        if (std::isfinite(b)) emax = std::max(emax, b);
        double pad = 0.25 * std::max(emax - emin, 1.0);
        lo_default = emin - pad;
        hi_default = emax + pad;
    }
    const double lo = f.emin.value_or(lo_default), hi = f.emax.value_or(hi_default);
    if (!(hi > lo)) config_error("--emax must exceed --emin");
    const Evaluation how = f.quadrature ? Evaluation::Quadrature : Evaluation::Auto;

    CsvTable table({"E", "region", "Sigma_or_Delta", "Gamma", "K", "Kprime"});
    table.comment(provenance("spectrum", lm));
    table.comment(std::string("evaluation=") + (f.quadrature ? "quadrature" : "auto") +
                  " emin=" + format_number(lo) + " emax=" + format_number(hi) +
                  " points=" + std::to_string(f.points));
    for (int i = 0; i < f.points; ++i) {
        const double e = lo + (hi - lo) * i / (f.points - 1);
        double s = NAN, g = 0.0, k = NAN, kp = NAN;
        std::string region;
        if (m.inside_band(e)) {
            region = "inside";
            ShiftWidth sw = delta_gamma(m, e, how);
            s = sw.delta;
            g = sw.gamma;
        } else {
            region = e <= m.omega_low() ? "below" : "above";
            try {
                s = self_energy(m, e, how);
            } catch (const Error& err) {
                if (!soft_failure(err)) throw;
            }
        }
        try {
            k = k_function(m, e);
            kp = k_derivative(m, e);
        } catch (const Error& err) {
            if (!soft_failure(err)) throw;
        }
        table.row_text({format_number(e), region, format_number(s), format_number(g),
                        format_number(k), format_number(kp)});
    }
    emit(f.output, out, to_text(table));
}

// ---------------------------------------------------------------- bound-states

struct BoundFlags {
    ModelFlags model;
    std::string output;
};

json census_json(const BoundStateCensus& c) {
    json trace = json::array();
    for (const auto& t : c.criteria_trace) {
        trace.push_back({{"edge", t.edge},
                         {"edge_energy", finite_or_null(t.edge_energy)},
                         {"levels_beyond", t.levels_beyond},
                         {"k_zero", finite_or_null(t.k_zero)},
                         {"energy_criterion", t.energy_criterion},
                         {"k_edge", finite_or_null(t.k_edge)},
                         {"sigma_inverse_edge", finite_or_null(t.sigma_inverse_edge)},
                         {"sigma_divergent", t.sigma_divergent},
                         {"amplitude_criterion", t.amplitude_criterion},
                         {"tie", t.tie}});
    }
    return {{"n_low", c.n_low},   {"n_up", c.n_up},     {"m_below", c.m_below},
            {"m_above", c.m_above}, {"m_bic", c.m_bic}, {"criteria_trace", trace},
            {"notes", c.notes}};
}

json state_json(const BoundState& s) {
    json amps = json::array();
    for (cplx a : s.discrete_amplitudes) amps.push_back(complex_json(a));
    json j = {{"energy", s.energy},
              {"kind", to_string(s.kind)},
              {"normalization", s.normalization},
              {"discrete_norm", s.discrete_norm()},
              {"amplitudes", amps},
              {"at_level", s.at_level}};
    if (s.at_level) j["level_index"] = s.level_index;
    return j;
}

void run_bound_states(const BoundFlags& f, std::ostream& out) {
    LoadedModel lm = resolve_model(f.model);
    BoundStateCensus census = count_bound_states(lm.model);
    std::vector<BoundState> states = all_bound_states(lm.model);
    json doc;
    doc["provenance"] = provenance("bound-states", lm);
    doc["census"] = census_json(census);
    json arr = json::array();
    for (const auto& s : states) arr.push_back(state_json(s));
    doc["states"] = arr;
    if (lm.waveguide) {
        doc["waveguide_census"] = census_json(waveguide_bound_state_count(*lm.waveguide));
        doc["waveguide_bic_energies"] = waveguide_bic_energies(*lm.waveguide);
    }
    emit(f.output, out, to_text(doc));
}

// ---------------------------------------------------------------- dynamics

struct DynamicsFlags {
    ModelFlags model;
    double t_max = 50.0;
    int points = 400;
    std::string output;
    std::string json_path;
};

json long_time_json(const LongTimeLimit& lt) {
    json beats = json::array();
    for (const auto& b : lt.beats) {
        beats.push_back({{"m", b.m},
                         {"m2", b.m2},
                         {"frequency", b.frequency},
                         {"amplitude", b.amplitude},
                         {"phase", b.phase}});
    }
    return {{"C", lt.mean}, {"beats", beats}};
}

void run_dynamics(const DynamicsFlags& f, std::ostream& out) {
    LoadedModel lm = resolve_model(f.model);
    if (f.points < 2 || !(f.t_max > 0.0)) config_error("need --points >= 2 and --t-max > 0");
    std::vector<double> times = time_grid(f.t_max, f.points);
    SurvivalOptions opts;
    opts.threads = thread_count();
    SurvivalSeries series = survival_probability(lm.model, lm.initial, times, opts);
    std::vector<BoundState> states = all_bound_states(lm.model);
    LongTimeLimit lt = long_time_limit(lm.model, lm.initial, states);

    CsvTable table({"t", "p", "p_bound", "p_scatter", "p_cross"});
    table.comment(provenance("dynamics", lm));
    table.comment("t_max=" + format_number(f.t_max) + " points=" + std::to_string(f.points) +
                  " long_time_mean=" + format_number(lt.mean));
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto& p = series.parts[i];
        table.row({times[i], series.p[i], p.bound, p.scattering, p.cross});
    }
    emit(f.output, out, to_text(table));

    const std::string side = sidecar_path(f.output, f.json_path);
    if (!side.empty()) {
        json doc = long_time_json(lt);
        doc["provenance"] = provenance("dynamics", lm);
        doc["max_error_estimate"] = series.max_error_estimate;
        json bs = json::array();
        for (const auto& s : states) bs.push_back({{"energy", s.energy}, {"kind", to_string(s.kind)}});
        doc["bound_states"] = bs;
        write_file(side, to_text(doc));
    }
}

// ---------------------------------------------------------------- markovian

struct MarkovFlags {
    ModelFlags model;
    std::optional<double> gamma;
    std::string sweep;
    std::vector<double> decay_at;
    std::string decay_prefix = "markovian_decay";
    double t_max = 10.0;
    int points = 400;
    std::string output;
    std::string json_path;
};

struct Sweep {
    std::string parameter;
    double start = 0.0, stop = 0.0;
    int steps = 0;
};

Sweep parse_sweep(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 4) config_error("--sweep expects parameter:start:stop:steps");
    Sweep s;
    s.parameter = parts[0];
    try {
        s.start = std::stod(parts[1]);
        s.stop = std::stod(parts[2]);
        s.steps = std::stoi(parts[3]);
    } catch (const std::exception&) {
        config_error("--sweep values are not numbers: '" + text + "'");
    }
    if (s.steps < 1) config_error("--sweep needs at least one step");
    static const std::vector<std::string> known{"xi", "kappa", "lambda", "gamma"};
    if (std::find(known.begin(), known.end(), s.parameter) == known.end())
        config_error("--sweep parameter must be one of xi, kappa, lambda, gamma");
    return s;
}

double default_gamma(const ValidatedModel& m) {
    return m.finite_band() ? markovian_gamma(m) : markovian_gamma(m, 0.0);
}

// Hamiltonian at a sweep value; the model is rebuilt for waveguide parameters
EffectiveHamiltonianMarkov markov_at(const LoadedModel& lm, const std::optional<double>& gamma,
                                     const std::string& parameter, double value,
                                     InitialState* initial) {
    if (parameter == "gamma") {
        if (initial) *initial = lm.initial;
        return build_markovian(lm.model, value);
    }
    if (!lm.waveguide) config_error("sweeping " + parameter + " needs a waveguide model");
    WaveguideParams p = *lm.waveguide;
    if (parameter == "xi") p.xi = value;
    if (parameter == "kappa") p.kappa = value;
    if (parameter == "lambda") p.lambda = value;
    LoadedModel at = load_waveguide(p);
    if (initial) *initial = lm.initial;
    return build_markovian(at.model, gamma ? *gamma : default_gamma(at.model));
}

CsvTable decay_table(const EffectiveHamiltonianMarkov& h, const InitialState& init,
                     const std::vector<double>& times, const std::string& provenance_line) {
    ResonanceSystem rs = resonance_decomposition(h);
    SurvivalSeries closed = markovian_survival(h, rs, init, times);
    SurvivalSeries direct = markovian_survival_expm(h, init, times);
    CsvTable table({"t", "p", "p_expm"});
    table.comment(provenance_line);
    table.comment("gamma=" + format_number(h.gamma) + " kind=" + to_string(rs.kind));
    for (std::size_t i = 0; i < times.size(); ++i) table.row({times[i], closed.p[i], direct.p[i]});
    return table;
}

void run_markovian(const MarkovFlags& f, std::ostream& out) {
    LoadedModel lm = resolve_model(f.model);
    if (f.points < 2 || !(f.t_max > 0.0)) config_error("need --points >= 2 and --t-max > 0");
    const std::vector<double> times = time_grid(f.t_max, f.points);
    const std::string prov = provenance("markovian", lm);

    if (f.sweep.empty()) {
        if (!f.decay_at.empty()) config_error("--decay-at requires --sweep");
        const double gamma = f.gamma ? *f.gamma : default_gamma(lm.model);
        EffectiveHamiltonianMarkov h = build_markovian(lm.model, gamma);
        emit(f.output, out, to_text(decay_table(h, lm.initial, times, prov)));
        const std::string side = sidecar_path(f.output, f.json_path);
        if (!side.empty()) {
            ResonanceSystem rs = resonance_decomposition(h);
            AntiPtReport apt = anti_pt_check(h);
            json ev = json::array();
            for (cplx z : rs.eigenvalues) ev.push_back(complex_json(z));
            json doc = {{"provenance", prov},
                        {"gamma", gamma},
                        {"kind", to_string(rs.kind)},
                        {"eigenvalues", ev},
                        {"eigenvector_condition", rs.eigenvector_condition},
                        {"anti_pt", {{"residual", apt.residual},
                                     {"anti_symmetric", apt.anti_symmetric},
                                     {"phase", to_string(apt.phase)}}}};
            write_file(side, to_text(doc));
        }
        return;
    }

    const Sweep sw = parse_sweep(f.sweep);
    std::vector<std::string> cols{sw.parameter};
    for (int i = 1; i <= lm.model.size(); ++i) {
        cols.push_back("re_z" + std::to_string(i));
        cols.push_back("im_z" + std::to_string(i));
    }
    cols.push_back("kind");
    cols.push_back("anti_pt_phase");
    CsvTable table(cols);
    table.comment(prov);
    table.comment("sweep=" + f.sweep + (f.gamma ? " gamma=" + format_number(*f.gamma) : ""));
    for (int i = 0; i <= sw.steps; ++i) {
        const double v = sw.start + (sw.stop - sw.start) * i / sw.steps;
        EffectiveHamiltonianMarkov h = markov_at(lm, f.gamma, sw.parameter, v, nullptr);
        ResonanceSystem rs = resonance_decomposition(h);
        std::vector<std::string> cells{format_number(v)};
        for (cplx z : rs.eigenvalues) {
            cells.push_back(format_number(z.real()));
            cells.push_back(format_number(z.imag()));
        }
        cells.push_back(to_string(rs.kind));
        cells.push_back(to_string(anti_pt_check(h).phase));
        table.row_text(cells);
    }
    emit(f.output, out, to_text(table));

    for (double v : f.decay_at) {
        InitialState init;
        EffectiveHamiltonianMarkov h = markov_at(lm, f.gamma, sw.parameter, v, &init);
        write_file(f.decay_prefix + "_" + sw.parameter + format_number(v) + ".csv",
                   to_text(decay_table(h, init, times,
                                       prov + " | " + sw.parameter + "=" + format_number(v))));
    }
}

// ---------------------------------------------------------------- waveguide

struct WaveguideFlags {
    ModelFlags model;
    std::string output;
};

void run_waveguide(const WaveguideFlags& f, std::ostream& out) {
    emit(f.output, out, to_text(waveguide_document(waveguide_from(f.model))));
}

// ---------------------------------------------------------------- oracle

struct OracleFlags {
    ModelFlags model;
    double t_max = 50.0;
    int points = 400;
    std::optional<int> initial_site;
    std::optional<int> n_trunc;
    bool no_auto_truncation = false;
    std::optional<double> dt;
    std::vector<double> snapshot_times;
    std::string snapshot_output;
    std::string output;
};

void run_oracle(const OracleFlags& f, std::ostream& out) {
    WaveguideParams p;
    std::string desc;
    if (!f.model.model_path.empty() || !f.model.model_json.empty()) {
        LoadedModel lm = resolve_model(f.model);
        if (!lm.waveguide) config_error("the oracle needs a waveguide model");
        p = *lm.waveguide;
        desc = lm.description;
    } else {
        LoadedModel lm = load_waveguide(waveguide_from(f.model));
        p = *lm.waveguide;
        desc = lm.description;
    }
    if (f.points < 2 || !(f.t_max > 0.0)) config_error("need --points >= 2 and --t-max > 0");
    OracleOptions opts;
    if (f.n_trunc) opts.n_trunc = *f.n_trunc;
    opts.auto_truncation = !f.no_auto_truncation;
    opts.dt = f.dt;
    opts.snapshot_times = f.snapshot_times;
    const int site = f.initial_site.value_or(p.n_atoms);
    const double dt_out = f.t_max / (f.points - 1);
    OracleResult r = evolve(p, site, f.t_max, dt_out, opts);

    CsvTable table({"t", "p"});
    table.comment(std::string(kVersion) + " oracle | " + desc + " | initial_site=" +
                  std::to_string(site));
    table.comment("dt=" + format_number(r.dt) + " n_trunc=" + std::to_string(r.n_trunc) +
                  " max_norm_drift=" + format_number(r.max_norm_drift));
    for (std::size_t i = 0; i < r.series.times.size(); ++i)
        table.row({r.series.times[i], r.series.p[i]});
    emit(f.output, out, to_text(table));

    if (!f.snapshot_times.empty()) {
        if (f.snapshot_output.empty()) config_error("--snapshot-times needs --snapshot-output");
        CsvTable snaps({"t", "part", "index", "population"});
        snaps.comment(std::string(kVersion) + " oracle snapshots | " + desc);
        for (const auto& s : r.snapshots) {
            for (std::size_t i = 0; i < s.chain_population.size(); ++i)
                snaps.row_text({format_number(s.time), "chain", std::to_string(i + 1),
                                format_number(s.chain_population[i])});
            for (std::size_t i = 0; i < s.waveguide_population.size(); ++i)
                snaps.row_text({format_number(s.time), "waveguide", std::to_string(i + 1),
                                format_number(s.waveguide_population[i])});
        }
        write_file(f.snapshot_output, to_text(snaps));
    }
}

// ---------------------------------------------------------------- reproduce

struct ReproduceFlags {
    std::string figure;
    std::string out_dir = ".";
    std::string site = "1";
    bool plot_stub = false;
};

void run_reproduce(const ReproduceFlags& f, std::ostream& out) {
    ReproduceOptions opts;
    opts.out_dir = f.out_dir;
    opts.fig3_site = AttachmentSite::parse(f.site);
    opts.plot_stub = f.plot_stub;
    opts.threads = thread_count();
    std::vector<std::string> files;
    if (f.figure == "fig3") files = reproduce_fig3(opts);
    if (f.figure == "fig4") files = reproduce_fig4(opts);
    if (f.figure == "fig5") files = reproduce_fig5(opts);
    for (const auto& file : files) out << file << '\n';
}

void diagnostic(std::ostream& err, const std::string& code, const std::string& message,
                int exit_code) {
    json d = {{"error", code}, {"message", message}, {"exit_code", exit_code}};
    err << d.dump() << '\n';
}

}  // namespace

unsigned thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FRIEDRICHS_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return std::min(hw, static_cast<unsigned>(v));
    }
    return hw;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Friedrichs-model bound states, decay dynamics and waveguide figures", "friedrichs"};
    app.set_version_flag("--version", kVersion);
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.config_formatter(std::make_shared<JsonConfig>(&app));
    app.set_config("--config", "", "JSON file with option values for the subcommand");
    app.require_subcommand(1);

    SpectrumFlags spectrum;
    auto* sp = app.add_subcommand("spectrum", "tabulate Sigma, Delta, Gamma, K and K' over energy");
    add_model_flags(sp, spectrum.model);
    sp->add_option("--emin", spectrum.emin, "lowest energy");
    sp->add_option("--emax", spectrum.emax, "highest energy");
    sp->add_option("--points", spectrum.points, "grid points")->capture_default_str();
    sp->add_flag("--quadrature", spectrum.quadrature, "ignore closed forms");
    sp->add_option("-o,--output", spectrum.output, "CSV path (default stdout)");

    BoundFlags bound;
    auto* bs = app.add_subcommand("bound-states", "bound-state census, energies and amplitudes");
    add_model_flags(bs, bound.model);
    bs->add_option("-o,--output", bound.output, "JSON path (default stdout)");

    DynamicsFlags dyn;
    auto* dy = app.add_subcommand("dynamics", "exact survival probability p(t)");
    add_model_flags(dy, dyn.model);
    dy->add_option("--t-max", dyn.t_max, "final time")->capture_default_str();
    dy->add_option("--points", dyn.points, "time points")->capture_default_str();
    dy->add_option("-o,--output", dyn.output, "CSV path (default stdout)");
    dy->add_option("--json", dyn.json_path, "JSON sidecar path (default next to the CSV)");

    MarkovFlags mk;
    auto* ma = app.add_subcommand("markovian", "Markovian effective Hamiltonian and decay laws");
    add_model_flags(ma, mk.model);
    ma->add_option("--gamma", mk.gamma, "width Gamma (default pi J at the band centre)");
    ma->add_option("--sweep", mk.sweep, "eigenvalue flow: parameter:start:stop:steps");
    ma->add_option("--decay-at", mk.decay_at, "sweep values with decay CSVs")->delimiter(',');
    ma->add_option("--decay-prefix", mk.decay_prefix, "path prefix of decay CSVs")
        ->capture_default_str();
    ma->add_option("--t-max", mk.t_max, "final time")->capture_default_str();
    ma->add_option("--points", mk.points, "time points")->capture_default_str();
    ma->add_option("-o,--output", mk.output, "CSV path (default stdout)");
    ma->add_option("--json", mk.json_path, "JSON sidecar path (default next to the CSV)");

    WaveguideFlags wg;
    auto* wa = app.add_subcommand("waveguide", "emit the chain-waveguide model as JSON");
    add_waveguide_flags(wa, wg.model);
    wa->add_option("-o,--output", wg.output, "JSON path (default stdout)");

    OracleFlags orc;
    auto* oc = app.add_subcommand("oracle", "direct lattice propagation of the chain-waveguide system");
    oc->add_option("--model", orc.model.model_path, "waveguide model JSON file");
    oc->add_option("--model-json", orc.model.model_json, "waveguide model JSON given inline");
    add_waveguide_flags(oc, orc.model);
    oc->add_option("--t-max", orc.t_max, "final time")->capture_default_str();
    oc->add_option("--points", orc.points, "time points")->capture_default_str();
    oc->add_option("--initial-site", orc.initial_site, "initially excited chain site (default N)");
    oc->add_option("--n-trunc", orc.n_trunc, "minimum waveguide sites");
    oc->add_flag("--no-auto-truncation", orc.no_auto_truncation, "keep --n-trunc fixed");
    oc->add_option("--dt", orc.dt, "RK4 step");
    oc->add_option("--snapshot-times", orc.snapshot_times, "times of full population snapshots")
        ->delimiter(',');
    oc->add_option("--snapshot-output", orc.snapshot_output, "CSV path for snapshots");
    oc->add_option("-o,--output", orc.output, "CSV path (default stdout)");

    ReproduceFlags rep;
    auto* re = app.add_subcommand("reproduce", "write the datasets behind fig3, fig4 or fig5");
    re->add_option("figure", rep.figure, "fig3, fig4 or fig5")
        ->required()
        ->check(CLI::IsMember({"fig3", "fig4", "fig5"}));
    re->add_option("--out-dir", rep.out_dir, "output directory")->capture_default_str();
    re->add_option("--site", rep.site, "attachment site for fig3")->capture_default_str();
    re->add_flag("--plot-stub", rep.plot_stub, "also write a matplotlib script per figure");

    // --config may follow the subcommand; the reader lives on the top-level app
    std::vector<std::string> ordered, rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            ordered.push_back(args[i]);
            ordered.push_back(args[++i]);
        } else if (args[i].rfind("--config=", 0) == 0) {
            ordered.push_back(args[i]);
        } else {
            rest.push_back(args[i]);
        }
    }
    ordered.insert(ordered.end(), rest.begin(), rest.end());
    std::vector<const char*> argv{"friedrichs"};
    for (const auto& a : ordered) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    try {
        if (sp->parsed()) run_spectrum(spectrum, out);
        if (bs->parsed()) run_bound_states(bound, out);
        if (dy->parsed()) run_dynamics(dyn, out);
        if (ma->parsed()) run_markovian(mk, out);
        if (wa->parsed()) run_waveguide(wg, out);
        if (oc->parsed()) run_oracle(orc, out);
        if (re->parsed()) run_reproduce(rep, out);
    } catch (const Error& e) {
        int code = is_configuration_error(e.code()) ? kExitConfig : kExitNumerical;
        diagnostic(err, std::string(to_string(e.code())), e.what(), code);
        return code;
    } catch (const json::exception& e) {
        diagnostic(err, "InvalidModel", e.what(), kExitConfig);
        return kExitConfig;
    } catch (const std::exception& e) {
        diagnostic(err, "InternalError", e.what(), kExitNumerical);
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace friedrichs::cli
