// model_io.cpp — JSON model documents

#include "model_io.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "friedrichs/error.hpp"

namespace friedrichs::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidModel, what); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) bad(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) bad("unknown key '" + key + "' in " + where);
    }
}

double number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) bad("missing key '" + key + "' in " + where);
    const json& v = obj.at(key);
    if (!v.is_number()) bad("'" + key + "' in " + where + " must be a number");
    return v.get<double>();
}

cplx complex_value(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    bad(where + " entries must be numbers or [re, im] pairs");
}

std::vector<cplx> complex_list(const json& v, const std::string& where) {
    if (!v.is_array()) bad(where + " must be an array");
    std::vector<cplx> out;
    for (const auto& x : v) out.push_back(complex_value(x, where));
    return out;
}

std::vector<double> real_list(const json& v, const std::string& where) {
    if (!v.is_array()) bad(where + " must be an array");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) bad(where + " entries must be numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

WaveguideParams waveguide_params(const json& w) {
    check_keys(w, {"n_atoms", "lambda", "kappa", "xi", "site"}, "waveguide");
    WaveguideParams p;
    if (!w.contains("n_atoms") || !w.at("n_atoms").is_number_integer())
        bad("waveguide.n_atoms must be an integer");
    p.n_atoms = w.at("n_atoms").get<int>();
    p.lambda = number(w, "lambda", "waveguide");
    p.kappa = number(w, "kappa", "waveguide");
    p.xi = number(w, "xi", "waveguide");
    if (!w.contains("site")) bad("missing key 'site' in waveguide");
    const json& s = w.at("site");
    if (s.is_number_integer()) {
        p.site = AttachmentSite::at(s.get<int>());
    } else if (s.is_string()) {
        p.site = AttachmentSite::parse(s.get<std::string>());
    } else {
        bad("waveguide.site must be an integer or \"inf\"");
    }
    return p;
}

InitialState initial_from(const json& doc, const ValidatedModel& m, InitialState fallback) {
    if (!doc.contains("initial")) return fallback;
    InitialState init{complex_list(doc.at("initial"), "initial")};
    if (static_cast<int>(init.amplitudes.size()) != m.size())
        bad("initial has " + std::to_string(init.amplitudes.size()) + " entries, expected " +
            std::to_string(m.size()));
    validate_initial_state(m, init);
    return init;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

FriedrichsModel flat_band_model(std::vector<double> levels, std::vector<cplx> couplings,
                                double low, double high, double density) {
    FriedrichsModel m;
    m.discrete = {std::move(levels), std::move(couplings)};
    auto& b = m.continuum;
    b.omega_low = low;
    b.omega_up = high;
    b.spectral_density = [low, high, density](double w) {
        return w > low && w < high ? density : 0.0;
    };
    b.s_low = std::nullopt;
    b.s_up = std::nullopt;
    return m;
}

FriedrichsModel semicircle_model(std::vector<double> levels, std::vector<cplx> couplings,
                                 double center, double radius, double weight) {
    FriedrichsModel m;
    m.discrete = {std::move(levels), std::move(couplings)};
    auto& b = m.continuum;
    const double a = center - radius, c = center + radius;
    const double norm = 2.0 * weight / (M_PI * radius * radius);
    b.omega_low = a;
    b.omega_up = c;
    b.spectral_density = [=](double w) {
        if (!(w > a && w < c)) return 0.0;
        return norm * std::sqrt((w - a) * (c - w));
    };
    b.s_low = 0.5;
    b.s_up = 0.5;
    Dispersion d;
    d.k_low = 0.0;
    d.k_up = M_PI;
    d.omega = [=](double k) { return center - radius * std::cos(k); };
    d.from_low = [=](double k) {
        double s = std::sin(0.5 * k);
        return 2.0 * radius * s * s;
    };
    d.to_up = [=](double k) {
        double s = std::cos(0.5 * k);
        return 2.0 * radius * s * s;
    };
    d.weight = [=](double k) {
        double s = std::sin(k);
        return 2.0 * weight / M_PI * s * s;
    };
    b.dispersion = std::move(d);
    return m;
}

FriedrichsModel markov_model(std::vector<double> levels, std::vector<cplx> couplings,
                             double density) {
    FriedrichsModel m;
    m.discrete = {std::move(levels), std::move(couplings)};
    auto& b = m.continuum;
    b.omega_low = -std::numeric_limits<double>::infinity();
    b.omega_up = std::numeric_limits<double>::infinity();
    b.spectral_density = [density](double) { return density; };
    return m;
}

LoadedModel load_waveguide(const WaveguideParams& params) {
    validate_params(params);
    LoadedModel out{validate_model(build_waveguide_model(params)), default_initial_state(params),
                    params, ""};
    out.description = "waveguide N=" + std::to_string(params.n_atoms) + " lambda=" +
                      fmt(params.lambda) + " kappa=" + fmt(params.kappa) + " xi=" +
                      fmt(params.xi) + " site=" + params.site.to_string();
    return out;
}

LoadedModel load_model(const json& doc) {
    if (!doc.is_object()) bad("model document must be a JSON object");
    if (doc.contains("waveguide")) {
        check_keys(doc, {"waveguide", "initial", "derived"}, "model");
        LoadedModel out = load_waveguide(waveguide_params(doc.at("waveguide")));
        out.initial = initial_from(doc, out.model, out.initial);
        return out;
    }
    check_keys(doc, {"levels", "couplings", "band", "initial"}, "model");
    for (const char* key : {"levels", "couplings", "band"}) {
        if (!doc.contains(key)) bad(std::string("missing key '") + key + "' in model");
    }
    std::vector<double> levels = real_list(doc.at("levels"), "levels");
    std::vector<cplx> couplings = complex_list(doc.at("couplings"), "couplings");
    if (levels.size() != couplings.size()) bad("levels and couplings differ in length");
    const json& band = doc.at("band");
    if (!band.is_object() || !band.contains("type") || !band.at("type").is_string())
        bad("band.type must be a string");
    const std::string type = band.at("type").get<std::string>();
    FriedrichsModel fm;
    std::ostringstream desc;
    desc << "N=" << levels.size() << " band=" << type;
    if (type == "flat") {
        check_keys(band, {"type", "low", "high", "density"}, "band");
        double lo = number(band, "low", "band"), hi = number(band, "high", "band");
        double j = number(band, "density", "band");
        fm = flat_band_model(levels, couplings, lo, hi, j);
        desc << " low=" << fmt(lo) << " high=" << fmt(hi) << " density=" << fmt(j);
    } else if (type == "semicircle") {
        check_keys(band, {"type", "center", "radius", "weight"}, "band");
        double c = number(band, "center", "band"), r = number(band, "radius", "band");
        double w = band.contains("weight") ? number(band, "weight", "band") : 1.0;
        if (!(r > 0.0)) bad("band.radius must be positive");
        fm = semicircle_model(levels, couplings, c, r, w);
        desc << " center=" << fmt(c) << " radius=" << fmt(r) << " weight=" << fmt(w);
    } else if (type == "markov") {
        check_keys(band, {"type", "density"}, "band");
        double j = number(band, "density", "band");
        fm = markov_model(levels, couplings, j);
        desc << " density=" << fmt(j);
    } else {
        bad("unknown band.type '" + type + "'");
    }
    ValidatedModel vm = validate_model(std::move(fm));
    InitialState fallback;
    fallback.amplitudes.assign(vm.size(), 0.0);
    if (vm.size() > 0) fallback.amplitudes[0] = 1.0;
    InitialState init = initial_from(doc, vm, fallback);
    return {vm, init, std::nullopt, desc.str()};
}

json waveguide_document(const WaveguideParams& params) {
    validate_params(params);
    json w;
    w["n_atoms"] = params.n_atoms;
    w["lambda"] = params.lambda;
    w["kappa"] = params.kappa;
    w["xi"] = params.xi;
    if (params.site.is_infinite()) {
        w["site"] = "inf";
    } else {
        w["site"] = params.site.index();
    }
    json derived;
    derived["levels"] = waveguide_levels(params);
    json f = json::array();
    for (cplx c : waveguide_couplings(params)) f.push_back(c.real());
    derived["couplings"] = f;
    derived["band"] = {-2.0 * params.kappa, 2.0 * params.kappa};
    derived["density_zeros"] = waveguide_density_zeros(params);
    json init = json::array();
    for (cplx c : default_initial_state(params).amplitudes) init.push_back(c.real());
    derived["initial"] = init;
    return json{{"waveguide", w}, {"derived", derived}};
}

}  // namespace friedrichs::cli
