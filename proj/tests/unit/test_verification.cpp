#include <cmath>

#include <doctest.h>
#include <json.hpp>

#include "property.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/verification.hpp"

using namespace rieszlab;

namespace {
const auto kGauss = TestFunction::gaussian();
}

TEST_CASE("criterion modes") {
    CHECK(criterion_passes(CriterionMode::within, -0.45, -0.5, 0.1));
    CHECK_FALSE(criterion_passes(CriterionMode::within, -0.3, -0.5, 0.1));
    CHECK(criterion_passes(CriterionMode::at_most, 1e-4, 0.0, 1e-3));
    CHECK_FALSE(criterion_passes(CriterionMode::at_most, 2e-3, 0.0, 1e-3));
    CHECK(criterion_passes(CriterionMode::at_least, 0.2, 0.0, 0.05));
    CHECK_FALSE(criterion_passes(CriterionMode::at_least, 0.01, 0.0, 0.05));
    CHECK_FALSE(criterion_passes(CriterionMode::at_most, std::nan(""), 0.0, 1.0));
}

TEST_CASE("passed is a pure function of metric, target and tolerance") {
    for_all(300, 3, [](std::mt19937_64& rng) {
        const auto mode = static_cast<CriterionMode>(rng() % 3);
        const double metric = draw(rng, -2, 2), target = draw(rng, -2, 2), tol = draw(rng, 0, 1);
        const auto r = CheckReport::make("x", mode, metric, target, tol);
        CHECK(r.passed == criterion_passes(mode, metric, target, tol));
        const auto j = nlohmann::json::parse(r.to_json());
        CHECK(j.at("passed") == r.passed);
        CHECK(j.at("metric").get<double>() == metric);
        CHECK(j.at("mode") == to_string(mode));
    });
}

TEST_CASE("report JSON carries metadata and series") {
    auto r = CheckReport::make("scan", CriterionMode::within, 0.5, 0.5, 0.15);
    r.metadata["radii"] = "8,16";
    r.series = {{8.0, 1.0}, {16.0, 1.4}};
    const auto j = nlohmann::json::parse(r.to_json());
    CHECK(j.at("name") == "scan");
    CHECK(j.at("metadata").at("radii") == "8,16");
    CHECK(j.at("series").size() == 2);
    CHECK(r.to_json().find('\n') == std::string::npos);
}

TEST_CASE("operator ids") {
    CHECK(operator_from_string("J") == OperatorId::generalized_riesz);
    CHECK(operator_from_string("U") == OperatorId::integrable_potential);
    CHECK(operator_from_string(to_string(OperatorId::integrable_fourier)) == OperatorId::integrable_fourier);
    CHECK_THROWS_AS(operator_from_string("nope"), ConfigError);
}

TEST_CASE("left inverse") {
    const Grid g(1, 20.0, 4096);
    for (double gamma : {0.5, 2.5}) {
        CAPTURE(gamma);
        const auto r = check_left_inverse(gamma, 1.0, 1, kGauss, g);
        CHECK(r.passed);
        CHECK(r.metric <= 1e-2);
    }
}

TEST_CASE("dilation") {
    const Grid g(1, 32.0, 4096);
    CHECK(check_dilation_invariance(OperatorId::generalized_riesz, 0.5, 1.0, kGauss, g, 1e-3).metric == 0.0);
    CHECK(check_dilation_invariance(OperatorId::generalized_riesz, 0.5, 2.0, kGauss, g, 1e-3).passed);
    CHECK(check_dilation_invariance(OperatorId::integrable_potential, 1.5, 2.0, kGauss, g, 1e-2).passed);
    CHECK_THROWS_AS(check_dilation_invariance(OperatorId::generalized_riesz, 0.5, 3.0, kGauss, g, 1e-3), GridIncompatible);
}

TEST_CASE("translation") {
    const Grid g(1, 32.0, 4096);
    CHECK(check_translation_behavior(OperatorId::generalized_riesz, 0.5, 0.0, kGauss, g).metric == 0.0);
    const auto j = check_translation_behavior(OperatorId::generalized_riesz, 0.5, 1.0, kGauss, g);
    CHECK(j.passed);
    CHECK(j.mode == CriterionMode::at_most);
    const auto u = check_translation_behavior(OperatorId::integrable_potential, 1.5, 1.0, kGauss, g);
    CHECK(u.passed);
    CHECK(u.mode == CriterionMode::at_least);
    CHECK(u.metric >= 0.05);
}

TEST_CASE("fit_decay_slope on an exact power law") {
    const Grid g(1, 256.0, 4096);
    const auto f = SampledField::sample(g, [](std::span<const double> x) {
        return cplx(x[0] == 0.0 ? 0.0 : std::pow(std::abs(x[0]), -0.7));
    });
    const auto r = fit_decay_slope(f, 10.0, 100.0, -0.7, 0.01);
    CHECK(r.metric == doctest::Approx(-0.7).epsilon(1e-12));
    CHECK(r.passed);
    CHECK_THROWS_AS(fit_decay_slope(f, 10.0, 200.0, -0.7, 0.1), RangeError);
    CHECK_THROWS_AS(fit_decay_slope(f, 10.0, 10.01, -0.7, 0.1), EmptyWindow);
}

TEST_CASE("decay suite") {
    for (const auto& r : decay_suite()) {
        CAPTURE(r.to_json());
        CHECK(r.passed);
    }
}

TEST_CASE("integrability scan") {
    const Grid g(1, 1024.0, 4096);
    const auto psi0 = TestFunction::bump_psi(MultiIndex::zero(1));
    CHECK_THROWS_AS(integrability_scan(0.5, 3.0, 1, psi0, {8, 16}, g), RangeError);
    const auto inf = integrability_scan(1.5, kInfinity, 1, psi0, {8, 16, 32, 64}, g);
    CHECK(inf.passed);
    CHECK(inf.series.size() == 4);
    CHECK(integrability_scan(0.75, 4.0, 1, psi0, {64, 128, 256, 512}, g).passed);
}

TEST_CASE("composition") {
    const Grid g(1, 20.0, 4096);
    CHECK(check_composition(0.2, 0.3, 1, kGauss, g).passed);
    CHECK(check_composition(0.0, 0.3, 1, kGauss, g).metric < 1e-12);
    CHECK_THROWS_AS(check_composition(0.3, 0.9, 1, kGauss, g), HypothesisError);
    CHECK_THROWS_AS(check_composition(0.2, 1.2, 1, kGauss, g), HypothesisError);
    CHECK(check_mixed_composition(1.5, kGauss, g).passed);
}

TEST_CASE("cross path and Fourier bound") {
    CHECK(check_cross_path(0.5, kGauss, Grid(1, 20.0, 2048)).passed);
    const auto fb = check_fourier_bound(1.5, kGauss, 20.0, {1024, 2048, 4096});
    CHECK(fb.passed);
    CHECK(fb.metric < 2.0);
}

TEST_CASE("suite registry") {
    const auto names = suite_names();
    CHECK(names.size() == 8);
    CHECK_THROWS_AS(run_suite("nope"), ConfigError);
}

TEST_CASE("cutoff") {
    CHECK(cutoff(0.0) == 1.0);
    CHECK(cutoff(1.0) == 1.0);
    CHECK(cutoff(2.0) == 0.0);
    CHECK(cutoff(1.5) == doctest::Approx(0.5));
    double prev = 1.0;
    for (double r = 1.0; r <= 2.0; r += 0.01) {
        CHECK(cutoff(r) <= prev);
        prev = cutoff(r);
    }
}
