// reproduce.cpp — datasets behind the waveguide figures

#include "reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include <json.hpp>

#include "friedrichs/bound_states.hpp"
#include "friedrichs/dynamics.hpp"
#include "friedrichs/lattice_oracle.hpp"
#include "friedrichs/markovian.hpp"
#include "model_io.hpp"
#include "output.hpp"

namespace friedrichs::cli {

using nlohmann::json;

namespace {

std::string in_dir(const ReproduceOptions& o, const std::string& name) {
    std::filesystem::create_directories(o.out_dir);
    return (std::filesystem::path(o.out_dir) / name).string();
}

std::string params_text(const WaveguideParams& p) {
    return "N=" + std::to_string(p.n_atoms) + " lambda=" + format_number(p.lambda) +
           " kappa=" + format_number(p.kappa) + " xi=" + format_number(p.xi) +
           " site=" + p.site.to_string();
}

void write_stub(const ReproduceOptions& o, std::vector<std::string>& files, const std::string& name,
                const std::string& body) {
    if (!o.plot_stub) return;
    const std::string path = in_dir(o, name);
    write_file(path,
               "import matplotlib.pyplot as plt\nimport pandas as pd\n\n" + body +
                   "plt.tight_layout()\nplt.show()\n");
    files.push_back(path);
}

}  // namespace

std::vector<double> time_grid(double t_max, int points) {
    std::vector<double> t(points);
    const double dt = t_max / (points - 1);
    for (int i = 0; i < points; ++i) t[i] = i * dt;
    return t;
}

std::vector<std::string> reproduce_fig3(const ReproduceOptions& o) {
    CsvTable table({"N", "kappa_over_lambda", "xi_over_lambda", "N_out", "M_out", "M_bic"});
    table.comment("friedrichs reproduce fig3 | lambda=1 site=" + o.fig3_site.to_string() +
                  " | specialized census over kappa in [0.02, 2], xi in [0.02, 2], step 0.02");
    for (int n = 1; n <= 6; ++n) {
        for (int i = 1; i <= 100; ++i) {
            for (int j = 1; j <= 100; ++j) {
                WaveguideParams p;
                p.n_atoms = n;
                p.lambda = 1.0;
                p.kappa = 0.02 * i;
                p.xi = 0.02 * j;
                p.site = o.fig3_site;
                BoundStateCensus c = waveguide_bound_state_count(p);
                table.row({double(n), p.kappa, p.xi, double(c.n_low + c.n_up), double(c.outside()),
                           double(c.m_bic)});
            }
        }
    }
    std::vector<std::string> files{in_dir(o, "fig3.csv")};
    write_file(files[0], to_text(table));
    write_stub(o, files, "fig3_plot.py",
               "d = pd.read_csv('fig3.csv', comment='#')\n"
               "fig, axes = plt.subplots(2, 3, figsize=(12, 7))\n"
               "for ax, (n, g) in zip(axes.flat, d.groupby('N')):\n"
               "    piv = g.pivot(index='xi_over_lambda', columns='kappa_over_lambda', values='M_out')\n"
               "    ax.pcolormesh(piv.columns, piv.index, piv.values, shading='auto')\n"
               "    ax.set_title(f'N = {n}')\n"
               "    ax.set_xlabel('kappa/lambda')\n"
               "    ax.set_ylabel('xi/lambda')\n");
    return files;
}

std::vector<std::string> reproduce_fig4(const ReproduceOptions& o) {
    const double t_max = 50.0;
    const int points = 400;
    const std::vector<double> times = time_grid(t_max, points);
    std::vector<std::string> files;
    json summary = json::object();
    for (AttachmentSite site : {AttachmentSite::at(1), AttachmentSite::at(2), AttachmentSite::infinite()}) {
        WaveguideParams p;
        p.n_atoms = 3;
        p.lambda = 1.0;
        p.kappa = 0.75;
        p.xi = 0.25;
        p.site = site;
        LoadedModel lm = load_waveguide(p);
        SurvivalOptions so;
        so.threads = o.threads;
        SurvivalSeries analytic = survival_probability(lm.model, lm.initial, times, so);
        OracleResult oracle = evolve(p, p.n_atoms, t_max, t_max / (points - 1));
        std::vector<BoundState> states = all_bound_states(lm.model);
        LongTimeLimit lt = long_time_limit(lm.model, lm.initial, states);

        CsvTable table({"t", "p_analytic", "p_oracle"});
        table.comment("friedrichs reproduce fig4 | " + params_text(p) + " | initial=|N>");
        table.comment("long_time_mean=" + format_number(lt.mean) + " oracle_dt=" +
                      format_number(oracle.dt) + " n_trunc=" + std::to_string(oracle.n_trunc));
        double max_diff = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            table.row({times[i], analytic.p[i], oracle.series.p[i]});
            max_diff = std::max(max_diff, std::abs(analytic.p[i] - oracle.series.p[i]));
        }
        const std::string tag = site.is_infinite() ? "linf" : "l" + std::to_string(site.index());
        files.push_back(in_dir(o, "fig4_" + tag + ".csv"));
        write_file(files.back(), to_text(table));

        json energies = json::array(), kinds = json::array();
        for (const auto& s : states) {
            energies.push_back(s.energy);
            kinds.push_back(to_string(s.kind));
        }
        json beats = json::array();
        for (const auto& b : lt.beats)
            beats.push_back({{"frequency", b.frequency}, {"amplitude", b.amplitude}, {"phase", b.phase}});
        summary[tag] = {{"parameters", params_text(p)},
                        {"bound_state_energies", energies},
                        {"bound_state_kinds", kinds},
                        {"C", lt.mean},
                        {"beats", beats},
                        {"p_final_analytic", analytic.p.back()},
                        {"p_final_oracle", oracle.series.p.back()},
                        {"max_abs_difference", max_diff}};
    }
    files.push_back(in_dir(o, "fig4_summary.json"));
    write_file(files.back(), to_text(summary));
    write_stub(o, files, "fig4_plot.py",
               "for tag in ['l1', 'l2', 'linf']:\n"
               "    d = pd.read_csv(f'fig4_{tag}.csv', comment='#')\n"
               "    line, = plt.plot(d.t, d.p_analytic, label=tag)\n"
               "    plt.plot(d.t[::8], d.p_oracle[::8], 'o', mfc='none', color=line.get_color())\n"
               "plt.xlabel('lambda t')\nplt.ylabel('p(t)')\nplt.legend()\n");
    return files;
}

std::vector<std::string> reproduce_fig5(const ReproduceOptions& o) {
    WaveguideParams base;
    base.n_atoms = 2;
    base.lambda = 1.0;
    base.kappa = 4.0;
    base.site = AttachmentSite::infinite();
    std::vector<std::string> files;

    CsvTable flow({"xi_over_lambda", "re_z1", "im_z1", "re_z2", "im_z2", "kind", "anti_pt_phase"});
    flow.comment("friedrichs reproduce fig5 | N=2 lambda=1 kappa=4 site=inf | Markovian, gamma=1/(2 kappa)");
    for (int i = 0; i <= 160; ++i) {
        WaveguideParams p = base;
        p.xi = 0.05 * i;
        LoadedModel lm = load_waveguide(p);
        EffectiveHamiltonianMarkov h = build_markovian(lm.model, markovian_gamma(lm.model));
        ResonanceSystem rs = resonance_decomposition(h);
        flow.row_text({format_number(p.xi), format_number(rs.eigenvalues[0].real()),
                       format_number(rs.eigenvalues[0].imag()), format_number(rs.eigenvalues[1].real()),
                       format_number(rs.eigenvalues[1].imag()), to_string(rs.kind),
                       to_string(anti_pt_check(h).phase)});
    }
    files.push_back(in_dir(o, "fig5_eigenvalues.csv"));
    write_file(files.back(), to_text(flow));

    const double t_max = 10.0;
    const int points = 400;
    const std::vector<double> times = time_grid(t_max, points);
    for (double xi : {2.0, 4.0, 6.0}) {
        WaveguideParams p = base;
        p.xi = xi;
        LoadedModel lm = load_waveguide(p);
        SurvivalOptions so;
        so.threads = o.threads;
        SurvivalSeries exact = survival_probability(lm.model, lm.initial, times, so);
        EffectiveHamiltonianMarkov h = build_markovian(lm.model, markovian_gamma(lm.model));
        SurvivalSeries markov = markovian_survival(h, lm.initial, times);
        OracleResult oracle = evolve(p, p.n_atoms, t_max, t_max / (points - 1));
        CsvTable table({"t", "p_analytic", "p_markov", "p_oracle"});
        table.comment("friedrichs reproduce fig5 | " + params_text(p) + " | initial=|N>");
        table.comment("gamma=" + format_number(h.gamma) + " oracle_dt=" + format_number(oracle.dt));
        for (std::size_t i = 0; i < times.size(); ++i)
            table.row({times[i], exact.p[i], markov.p[i], oracle.series.p[i]});
        files.push_back(in_dir(o, "fig5_decay_xi" + format_number(xi) + ".csv"));
        write_file(files.back(), to_text(table));
    }
    write_stub(o, files, "fig5_plot.py",
               "d = pd.read_csv('fig5_eigenvalues.csv', comment='#')\n"
               "fig, axes = plt.subplots(1, 5, figsize=(18, 3.5))\n"
               "axes[0].plot(d.xi_over_lambda, d.re_z1, d.xi_over_lambda, d.re_z2, '--')\n"
               "axes[1].plot(d.xi_over_lambda, d.im_z1, d.xi_over_lambda, d.im_z2, '--')\n"
               "for ax, xi in zip(axes[2:], ['2', '4', '6']):\n"
               "    c = pd.read_csv(f'fig5_decay_xi{xi}.csv', comment='#')\n"
               "    ax.plot(c.t, c.p_analytic, c.t, c.p_markov, '--')\n"
               "    ax.plot(c.t[::10], c.p_oracle[::10], 'ko', ms=3)\n"
               "    ax.set_title(f'xi/lambda = {xi}')\n");
    return files;
}

}  // namespace friedrichs::cli
