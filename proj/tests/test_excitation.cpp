#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "randles/excitation.hpp"

using namespace randles;

namespace {

constexpr double kPi = std::numbers::pi;

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a throw");
    return Errc::InvalidParams;
}

MultiSineSpec study_tones() {
    MultiSineSpec spec;
    std::vector<double> freqs = {0.05, 1.0, 10.0, 60.0};
    std::vector<double> phases = schroeder_phases(4, 1.9775);
    for (int j = 0; j < 4; ++j)
        spec.components.push_back({1e-3, 2.0 * kPi * freqs[j], phases[j]});
    return spec;
}

}  // namespace

TEST_CASE("wrap_phase maps into the half-open interval") {
    CHECK(wrap_phase(0.0) == 0.0);
    CHECK(wrap_phase(kPi) == -kPi);
    CHECK(wrap_phase(-kPi) == -kPi);
    CHECK(wrap_phase(3.0 * kPi / 2.0) == doctest::Approx(-kPi / 2.0).epsilon(1e-14));
    CHECK(wrap_phase(-3.0 * kPi / 2.0) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    CHECK(std::abs(wrap_phase(2.0 * kPi)) <= 1e-15);
    CHECK(wrap_phase(0.5) == 0.5);
}

TEST_CASE("schroeder_phases two-tone zero-start sequence") {
    auto phases = schroeder_phases(2, 0.0);
    REQUIRE(phases.size() == 2);
    CHECK(phases[0] == 0.0);
    CHECK(phases[1] == -kPi);
}

TEST_CASE("schroeder_phases four-tone study sequence") {
    auto phases = schroeder_phases(4, 1.9775);
    REQUIRE(phases.size() == 4);
    CHECK(phases[0] == doctest::Approx(1.9775).epsilon(1e-15));
    CHECK(phases[1] == doctest::Approx(0.40670367320510348).epsilon(1e-14));
    CHECK(phases[2] == doctest::Approx(-2.7348889803846896).epsilon(1e-14));
    CHECK(phases[3] == doctest::Approx(-1.1640926535897931).epsilon(1e-14));
}

TEST_CASE("build_multisine linear band") {
    MultiSineSpec spec = build_multisine(4, 0.002, 0.2, 500.0, Spacing::Linear, 1.9775);
    REQUIRE(spec.tone_count() == 4);
    std::vector<double> expected_hz = {0.2, 166.79999999999998, 333.39999999999998, 500.0};
    for (int j = 0; j < 4; ++j) {
        CHECK(spec.components[j].magnitude == 0.002);
        CHECK(spec.components[j].omega ==
              doctest::Approx(2.0 * kPi * expected_hz[j]).epsilon(1e-14));
    }
    auto phases = schroeder_phases(4, 1.9775);
    for (int j = 0; j < 4; ++j) CHECK(spec.components[j].phase == phases[j]);
    CHECK_NOTHROW(validate(spec));
}

TEST_CASE("build_multisine log band") {
    MultiSineSpec spec = build_multisine(4, 0.002, 0.2, 500.0, Spacing::Log, 0.0);
    std::vector<double> expected_hz = {0.2, 2.7144176165949068, 36.840314986403861, 500.0};
    for (int j = 0; j < 4; ++j)
        CHECK(spec.components[j].omega ==
              doctest::Approx(2.0 * kPi * expected_hz[j]).epsilon(1e-13));
}

TEST_CASE("build_multisine input checks") {
    CHECK(code_of([] { build_multisine(1, 1.0, 0.1, 1.0, Spacing::Linear, 0.0); }) ==
          Errc::InvalidParams);
    CHECK(code_of([] { build_multisine(4, 0.0, 0.1, 1.0, Spacing::Linear, 0.0); }) ==
          Errc::InvalidParams);
    CHECK(code_of([] { build_multisine(4, 1.0, 0.0, 1.0, Spacing::Linear, 0.0); }) ==
          Errc::InvalidBand);
    CHECK(code_of([] { build_multisine(4, 1.0, 2.0, 1.0, Spacing::Linear, 0.0); }) ==
          Errc::InvalidBand);
}

TEST_CASE("validate rejects malformed specs") {
    MultiSineSpec spec = study_tones();
    CHECK_NOTHROW(validate(spec));

    MultiSineSpec empty;
    CHECK(code_of([&] { validate(empty); }) == Errc::InvalidParams);

    MultiSineSpec unsorted = study_tones();
    std::swap(unsorted.components[0], unsorted.components[1]);
    CHECK(code_of([&] { validate(unsorted); }) == Errc::InvalidParams);

    MultiSineSpec bad_phase = study_tones();
    bad_phase.components[2].phase = kPi;  // outside [-pi, pi)
    CHECK(code_of([&] { validate(bad_phase); }) == Errc::InvalidParams);

    MultiSineSpec ok_phase = study_tones();
    ok_phase.components[2].phase = -kPi;
    CHECK_NOTHROW(validate(ok_phase));

    MultiSineSpec zero_mag = study_tones();
    zero_mag.components[1].magnitude = 0.0;
    CHECK(code_of([&] { validate(zero_mag); }) == Errc::InvalidParams);
}

TEST_CASE("sample reproduces a unit cosine table") {
    MultiSineSpec spec;
    spec.components.push_back({1.0, 2.0 * kPi, 0.0});
    TimeSeries u = sample(spec, 8.0, 1.0);
    REQUIRE(u.size() == 8);
    CHECK(u.t0 == 0.0);
    CHECK(u.dt == 0.125);
    std::vector<double> expected = {1.0,
                                    0.70710678118654757,
                                    6.123233995736766e-17,
                                    -0.70710678118654746,
                                    -1.0,
                                    -0.70710678118654768,
                                    -1.8369701987210297e-16,
                                    0.70710678118654735};
    for (int k = 0; k < 8; ++k) CHECK(u.values[k] == doctest::Approx(expected[k]).epsilon(1e-14));
}

TEST_CASE("sample applies the dc offset") {
    MultiSineSpec spec;
    spec.components.push_back({1.0, 2.0 * kPi, 0.0});
    spec.dc_offset = 2.5;
    TimeSeries u = sample(spec, 8.0, 1.0);
    CHECK(u.values[0] == 3.5);
}

TEST_CASE("sample enforces the Nyquist margin") {
    MultiSineSpec spec = study_tones();  // f_max = 60 Hz
    CHECK(code_of([&] { sample(spec, 120.0, 1.0); }) == Errc::NyquistViolation);
    CHECK_NOTHROW(sample(spec, 121.0, 1.0));
}

TEST_CASE("sample rejects empty records") {
    MultiSineSpec spec = study_tones();
    CHECK(code_of([&] { sample(spec, 500.0, 0.0); }) == Errc::InvalidParams);
    CHECK(code_of([&] { sample(spec, 500.0, 0.001); }) == Errc::TooShortRecord);
}

TEST_CASE("parallel and serial sampling agree bitwise") {
    MultiSineSpec spec = study_tones();
    TimeSeries a = sample(spec, 500.0, 3.0);
    TimeSeries b = sample_serial(spec, 500.0, 3.0);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a.values[k] == b.values[k]);
}

TEST_CASE("crest_factor of a full-period cosine") {
    MultiSineSpec spec;
    spec.components.push_back({1.0, 2.0 * kPi, 0.0});
    TimeSeries u = sample(spec, 8.0, 1.0);
    CHECK(crest_factor(u) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("crest_factor rejects degenerate records") {
    TimeSeries empty;
    CHECK(code_of([&] { crest_factor(empty); }) == Errc::ZeroSignal);
    TimeSeries zeros;
    zeros.dt = 1.0;
    zeros.values.assign(16, 0.0);
    CHECK(code_of([&] { crest_factor(zeros); }) == Errc::ZeroSignal);
}

TEST_CASE("schroeder phasing flattens the linear-band crest") {
    MultiSineSpec schroeder = build_multisine(4, 0.002, 0.2, 500.0, Spacing::Linear, 1.9775);
    double crest = crest_factor(sample(schroeder, 8000.0, 5.0));
    CHECK(crest == doctest::Approx(1.999929).epsilon(1e-5));

    MultiSineSpec aligned = schroeder;
    for (auto& c : aligned.components) c.phase = 0.0;
    double aligned_crest = crest_factor(sample(aligned, 8000.0, 5.0));
    CHECK(aligned_crest == doctest::Approx(std::sqrt(8.0)).epsilon(1e-6));
    CHECK(crest < aligned_crest);
}

TEST_CASE("check_pe_order counts spectral lines") {
    MultiSineSpec spec = study_tones();
    ExcitationReport report = check_pe_order(spec, 2);
    CHECK(report.pe_order == 8);
    CHECK(report.required_order == 7);
    CHECK(report.pass);
    CHECK(report.crest_factor == 0.0);

    REQUIRE(report.spectral_lines.size() == 8);
    double weight = 2.0 * kPi * 1e-3 * 1e-3 / 4.0;
    for (int j = 0; j < 4; ++j) {
        CHECK(report.spectral_lines[j].first == -spec.components[3 - j].omega);
        CHECK(report.spectral_lines[4 + j].first == spec.components[j].omega);
        CHECK(report.spectral_lines[j].second == doctest::Approx(weight).epsilon(1e-14));
    }

    ExcitationReport tight = check_pe_order(spec, 3);
    CHECK(tight.pe_order == 8);
    CHECK(tight.required_order == 9);
    CHECK_FALSE(tight.pass);
}
