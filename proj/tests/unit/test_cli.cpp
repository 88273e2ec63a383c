// test_cli.cpp — subcommands, exit codes, config handling and reproducibility

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "output.hpp"

namespace fs = std::filesystem;
using friedrichs::cli::run;
using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out, err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Result r;
    r.code = run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("friedrichs_test_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("help exits zero with usage text") {
    Result r = call({"spectrum", "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--emin") != std::string::npos);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("binary prints help through the process boundary") {
    const std::string cmd = std::string(FRIEDRICHS_CLI_PATH) + " spectrum --help > /dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
}

TEST_CASE("configuration errors exit with 2 and a diagnostic") {
    Result unknown = call({"spectrum", "--bogus"});
    CHECK(unknown.code == 2);

    Result degenerate = call({"bound-states", "--model-json",
                              R"({"levels":[0,0],"couplings":[1,1],"band":{"type":"flat","low":-1,"high":1,"density":0.1}})"});
    CHECK(degenerate.code == 2);
    json diag = json::parse(degenerate.err);
    CHECK(diag.at("exit_code") == 2);
    CHECK(diag.at("error") == "DegenerateLevels");

    Result extra = call({"bound-states", "--model-json",
                         R"({"levels":[0],"couplings":[1],"colour":"red","band":{"type":"flat","low":-1,"high":1,"density":0.1}})"});
    CHECK(extra.code == 2);

    Result norm = call({"dynamics", "--n-atoms", "2", "--initial", "1,1", "--t-max", "1", "--points", "3"});
    CHECK(norm.code == 2);
    CHECK(json::parse(norm.err).at("error") == "UnnormalizedInitialState");
}

TEST_CASE("numerical failures exit with 3") {
    Result r = call({"oracle", "--n-atoms", "3", "--kappa", "0.75", "--xi", "0.25",
                     "--no-auto-truncation", "--n-trunc", "10"});
    CHECK(r.code == 3);
    json diag = json::parse(r.err);
    CHECK(diag.at("error") == "LightConeViolation");
    CHECK(diag.at("exit_code") == 3);
}

TEST_CASE("config file feeds subcommand options and rejects unknown keys") {
    fs::path dir = scratch("config");
    const fs::path cfg = dir / "run.json";
    std::ofstream(cfg) << R"({"markovian": {"n-atoms": 2, "kappa": 4, "xi": 4, "site": "inf",
                              "t-max": 2, "points": 5, "output": ")" +
                              (dir / "decay.csv").string() + R"("}})";
    Result ok = call({"markovian", "--config", cfg.string()});
    REQUIRE(ok.code == 0);
    auto rows = lines(slurp(dir / "decay.csv"));
    REQUIRE(!rows.empty());
    CHECK(rows[0].rfind("#", 0) == 0);
    json side = json::parse(slurp(dir / "decay.json"));
    CHECK(side.at("kind") == "defective");

    std::ofstream(dir / "bad.json") << R"({"markovian": {"n-atoms": 2, "bogus": 1}})";
    CHECK(call({"markovian", "--config", (dir / "bad.json").string()}).code == 2);
}

TEST_CASE("spectrum table carries provenance and columns") {
    Result r = call({"spectrum", "--n-atoms", "3", "--kappa", "0.75", "--xi", "0.25", "--site", "2",
                     "--emin", "-3", "--emax", "3", "--points", "13"});
    REQUIRE(r.code == 0);
    auto rows = lines(r.out);
    std::size_t header = 0;
    while (header < rows.size() && rows[header].rfind("#", 0) == 0) ++header;
    CHECK(header >= 1);
    REQUIRE(header < rows.size());
    CHECK(rows[header] == "E,region,Sigma_or_Delta,Gamma,K,Kprime");
    CHECK(rows.size() == header + 14);
}

TEST_CASE("bound-states reports the site-two BIC") {
    Result r = call({"bound-states", "--n-atoms", "3", "--kappa", "0.75", "--xi", "0.25", "--site", "2"});
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc.at("census").at("m_bic") == 1);
    REQUIRE(doc.at("states").size() == 1);
    CHECK(std::abs(doc.at("states")[0].at("energy").get<double>()) < 1e-12);
}

TEST_CASE("waveguide document round-trips through the model loader") {
    Result w = call({"waveguide", "--n-atoms", "2", "--kappa", "4", "--xi", "2", "--site", "inf"});
    REQUIRE(w.code == 0);
    Result b = call({"bound-states", "--model-json", w.out});
    CHECK(b.code == 0);
}

TEST_CASE("dynamics writes CSV and sidecar") {
    fs::path dir = scratch("dynamics");
    Result r = call({"dynamics", "--n-atoms", "3", "--kappa", "0.75", "--xi", "0.25", "--site", "inf",
                     "--t-max", "5", "--points", "11", "-o", (dir / "p.csv").string()});
    REQUIRE(r.code == 0);
    json side = json::parse(slurp(dir / "p.json"));
    CHECK(side.at("bound_states").size() == 2);
    CHECK(side.at("beats").size() == 1);
    auto rows = lines(slurp(dir / "p.csv"));
    CHECK(rows.back().rfind("5,", 0) == 0);
}

TEST_CASE("number formatting is shortest round-trip") {
    using friedrichs::cli::format_number;
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1e-300) == "1e-300");
    CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("reproduce runs are byte-identical") {
    fs::path a = scratch("repro_a"), b = scratch("repro_b");
    for (const char* fig : {"fig4", "fig5"}) {
        REQUIRE(call({"reproduce", fig, "--out-dir", a.string()}).code == 0);
        REQUIRE(call({"reproduce", fig, "--out-dir", b.string(), "--plot-stub"}).code == 0);
    }
    for (const char* name : {"fig4_l1.csv", "fig4_l2.csv", "fig4_linf.csv", "fig4_summary.json",
                             "fig5_eigenvalues.csv", "fig5_decay_xi2.csv", "fig5_decay_xi4.csv",
                             "fig5_decay_xi6.csv"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(a / name));
        CHECK(slurp(a / name) == slurp(b / name));
    }
    CHECK(fs::exists(b / "fig4_plot.py"));
    auto rows = lines(slurp(a / "fig4_l1.csv"));
    CHECK(rows[0].rfind("# friedrichs reproduce fig4", 0) == 0);
    CHECK(rows.size() == 2 + 1 + 400);
    auto flow = lines(slurp(a / "fig5_eigenvalues.csv"));
    CHECK(flow.size() == 1 + 1 + 161);
}
