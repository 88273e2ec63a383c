// test_model.cpp — model validation and initial-state checks

#include <doctest.h>

#include <cmath>
#include <limits>

#include "friedrichs/error.hpp"
#include "friedrichs/model.hpp"
#include "oracles.hpp"

using namespace friedrichs;
namespace ft = friedrichs::testing;

namespace {

FriedrichsModel smooth_two_level() {
    return ft::model_from(ft::semicircle_band(0.0, 1.5, 1.0), {-1.0, 1.0}, {0.3, 0.4});
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidModel;
}

}  // namespace

TEST_CASE("well-formed two-level model is accepted") {
    ValidatedModel m = validate_model(smooth_two_level());
    CHECK(m.size() == 2);
    CHECK(m.finite_band());
    CHECK(m.inside_band(0.0));
    CHECK_FALSE(m.inside_band(1.5));
    CHECK(m.spectral_density(2.0) == 0.0);
    CHECK(m.span() == doctest::Approx(3.0));
}

TEST_CASE("validation is idempotent") {
    ValidatedModel m = validate_model(smooth_two_level());
    ValidatedModel again = validate_model(m);
    CHECK(&again.model() == &m.model());
}

TEST_CASE("degenerate levels are rejected") {
    FriedrichsModel m = smooth_two_level();
    m.discrete.levels = {0.0, 0.0};
    CHECK(code_of([&] { validate_model(m); }) == ErrorCode::DegenerateLevels);
    m.discrete.levels = {0.0, 1e-14};
    CHECK(code_of([&] { validate_model(m); }) == ErrorCode::DegenerateLevels);
}

TEST_CASE("unsorted levels, length mismatch and empty input are invalid") {
    FriedrichsModel m = smooth_two_level();
    m.discrete.levels = {1.0, -1.0};
    CHECK(code_of([&] { validate_model(m); }) == ErrorCode::InvalidModel);
    m = smooth_two_level();
    m.discrete.couplings = {1.0};
    CHECK(code_of([&] { validate_model(m); }) == ErrorCode::InvalidModel);
    m = smooth_two_level();
    m.discrete.levels.clear();
    m.discrete.couplings.clear();
    CHECK(code_of([&] { validate_model(m); }) == ErrorCode::InvalidModel);
}

TEST_CASE("empty band is rejected") {
    FriedrichsModel m = smooth_two_level();
    m.continuum.omega_low = 1.0;
    m.continuum.omega_up = 1.0;
    CHECK(code_of([&] { validate_model(m); }) == ErrorCode::EmptyBand);
}

TEST_CASE("negative spectral density is rejected") {
    FriedrichsModel m = smooth_two_level();
    m.continuum.spectral_density = [](double w) { return w; };
    CHECK(code_of([&] { validate_model(m); }) == ErrorCode::NegativeSpectralDensity);
}

TEST_CASE("semi-infinite and infinite bands are sampled") {
    FriedrichsModel m = smooth_two_level();
    m.continuum.omega_low = -std::numeric_limits<double>::infinity();
    m.continuum.omega_up = std::numeric_limits<double>::infinity();
    m.continuum.spectral_density = [](double w) { return w > 50.0 ? -1.0 : 0.1; };
    m.continuum.s_low = m.continuum.s_up = std::nullopt;
    CHECK(code_of([&] { validate_model(m); }) == ErrorCode::NegativeSpectralDensity);
    m.continuum.spectral_density = [](double) { return 0.1; };
    CHECK_FALSE(validate_model(m).finite_band());
}

TEST_CASE("declared zeros must lie inside the band") {
    FriedrichsModel m = smooth_two_level();
    m.continuum.interior_zeros = {2.0};
    CHECK(code_of([&] { validate_model(m); }) == ErrorCode::InvalidModel);
    m.continuum.interior_zeros = {0.5, -0.5};
    ValidatedModel v = validate_model(m);
    CHECK(v.interior_zero_index(-0.5) == 0);
    CHECK(v.interior_zero_index(0.5) == 1);
    CHECK(v.interior_zero_index(0.25) == -1);
}

TEST_CASE("initial state normalisation") {
    ValidatedModel m = validate_model(smooth_two_level());
    InitialState bad{{1.0, 1.0}};
    CHECK(code_of([&] { validate_initial_state(m, bad); }) == ErrorCode::UnnormalizedInitialState);
    InitialState wrong_size{{1.0}};
    CHECK(code_of([&] { validate_initial_state(m, wrong_size); }) == ErrorCode::InvalidModel);
    InitialState good{{cplx(0.6, 0.0), cplx(0.0, 0.8)}};
    CHECK_NOTHROW(validate_initial_state(m, good));
}

TEST_CASE("configuration errors are classified") {
    CHECK(is_configuration_error(ErrorCode::DegenerateLevels));
    CHECK(is_configuration_error(ErrorCode::UnnormalizedInitialState));
    CHECK_FALSE(is_configuration_error(ErrorCode::QuadratureFailure));
    CHECK_FALSE(is_configuration_error(ErrorCode::LightConeViolation));
    Error e(ErrorCode::PoleHit, "at 1");
    CHECK(std::string(e.what()).find("PoleHit") == 0);
}
