#include <cmath>
#include <numbers>

#include <doctest.h>

#include "property.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/parallel.hpp"
#include "rieszlab/sparse_process.hpp"

using namespace rieszlab;

namespace {

PoissonConfig base_config(double B = 20.0, std::uint64_t seed = 12345) {
    PoissonConfig cfg;
    cfg.lambda = 1.0;
    cfg.B = B;
    cfg.d = 1;
    cfg.seed = seed;
    return cfg;
}

const PotentialSpec kSpec(0.5, 1.0, 1);

const PotentialFunctional& bump_functional() {
    static const PotentialFunctional G(TestFunction::cutoff_bump().sample(Grid(1, 32.0, 4096)), kSpec);
    return G;
}

double box_l1(const PotentialFunctional& G, double B) {
    const auto& f = G.potential().field;
    double acc = 0.0;
    for (std::size_t m = 0; m < f.size(); ++m) {
        const double x = f.grid.node(static_cast<int>(m));
        if (std::abs(x) <= B && std::isfinite(f[m].real())) acc += std::abs(f[m]);
    }
    return acc * f.grid.spacing();
}

}  // namespace

TEST_CASE("amplitude laws") {
    const auto det = AmplitudeDist::deterministic(2.0);
    CHECK(det.mean() == 2.0);
    CHECK(det.mean_abs() == 2.0);
    CHECK(std::abs(det.characteristic(0.3) - std::exp(cplx(0, -0.6))) < 1e-15);

    const auto gs = AmplitudeDist::gaussian(1.5);
    CHECK(gs.mean() == 0.0);
    CHECK(gs.mean_abs() == doctest::Approx(1.5 * std::sqrt(2 / std::numbers::pi)));
    CHECK(std::abs(gs.characteristic(0.4) - std::exp(-0.5 * 0.36)) < 1e-15);

    const auto lp = AmplitudeDist::laplace(0.5);
    CHECK(std::abs(lp.characteristic(2.0) - 1.0 / (1.0 + 1.0)) < 1e-15);

    const auto un = AmplitudeDist::uniform(-1.0, 3.0);
    CHECK(un.mean() == 1.0);

    for (const auto& a : {det, gs, lp, un}) {
        for (double s : {1e-9, 1e-4, 0.7, 5.0}) {
            CAPTURE(a.describe());
            CAPTURE(s);
            const cplx ref = a.characteristic(s) - 1.0;
            CHECK(std::abs(a.characteristic_minus_one(s) - ref) <= 1e-12 * std::abs(ref) + 1e-16);
        }
    }
}

TEST_CASE("Cauchy amplitudes are rejected") {
    try {
        AmplitudeDist::from_name("cauchy", {1.0});
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("mean") != std::string::npos);
    }
    CHECK_THROWS_AS(AmplitudeDist::from_name("uniform", {2.0, 1.0}), ConfigError);
    CHECK(AmplitudeDist::from_name("laplace", {0.5}).kind() == AmplitudeDist::Kind::laplace);
}

TEST_CASE("config validation") {
    auto cfg = base_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.lambda = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = base_config();
    cfg.B = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = base_config();
    cfg.d = 3;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK(base_config(10.0).expected_count() == 20.0);
}

TEST_CASE("realizations") {
    auto cfg = base_config(10.0, 99);
    cfg.lambda = 1e-12;
    CHECK(sample_realization(cfg).size() == 0);

    cfg = base_config(10.0, 99);
    const auto a = sample_realization(cfg, 5), b = sample_realization(cfg, 5);
    CHECK(a.points == b.points);
    CHECK(a.amplitudes == b.amplitudes);
    for (const auto& p : a.points) CHECK(std::abs(p[0]) <= 10.0);

    double mean = 0.0;
    const int n = 10000;
    for (int m = 0; m < n; ++m) mean += static_cast<double>(sample_realization(cfg, static_cast<std::uint64_t>(m)).size());
    mean /= n;
    CHECK(std::abs(mean - 20.0) <= 3.0 * std::sqrt(20.0 / n));

    cfg.d = 2;
    cfg.B = 3.0;
    const auto r2 = sample_realization(cfg, 1);
    for (const auto& p : r2.points) {
        REQUIRE(p.size() == 2);
        CHECK(std::max(std::abs(p[0]), std::abs(p[1])) <= 3.0);
    }
}

TEST_CASE("functional evaluation") {
    const auto& G = bump_functional();
    CHECK(evaluate_functional(PoissonRealization{}, G) == 0.0);
    PoissonRealization one;
    one.points = {{1.37}};
    one.amplitudes = {-2.0};
    const double x[] = {1.37};
    CHECK(evaluate_functional(one, G) == doctest::Approx(-2.0 * G(x)).epsilon(1e-15));
    CHECK_THROWS_AS(PotentialFunctional(TestFunction::cutoff_bump().sample(Grid(1, 32.0, 1024)), PotentialSpec(0.5, 4.0, 1)),
                    SpecError);
}

TEST_CASE("Campbell mean") {
    const auto& G = bump_functional();
    auto cfg = base_config(20.0, 4);
    cfg.amplitude = AmplitudeDist::uniform(0.5, 1.5);
    const int n = 10000;
    double s = 0.0, s2 = 0.0;
    for (int m = 0; m < n; ++m) {
        const double v = evaluate_functional(sample_realization(cfg, static_cast<std::uint64_t>(m)), G);
        s += v;
        s2 += v * v;
    }
    const double mean = s / n;
    const double se = std::sqrt((s2 / n - mean * mean) / (n - 1));
    // lambda E[a] \int_{[-B,B]} I_{gamma,1} f: trapezoid rule on the regular part plus the singular
    // terms c x^i |x|^b integrated exactly.
    const auto& pot = G.potential();
    const auto& u = pot.regular;
    double integral = 0.0;
    for (std::size_t m = 0; m < u.size(); ++m) {
        const double xm = u.grid.node(static_cast<int>(m));
        if (std::abs(xm) > cfg.B + 1e-12) continue;
        integral += (std::abs(std::abs(xm) - cfg.B) < 1e-12 ? 0.5 : 1.0) * u[m].real();
    }
    integral *= u.grid.spacing();
    for (const auto& t : pot.singular.terms()) {
        const int i = t.monomial[0];
        if (i % 2 == 1) continue;  // odd integrand
        const double e = i + t.radial_exponent + 1.0;
        integral += 2.0 * t.coefficient.real() * std::pow(cfg.B, e) / e;
    }
    CHECK(std::abs(mean - integral) <= 3.0 * se);
}

TEST_CASE("windowed functional") {
    const auto& G = bump_functional();
    const auto r = sample_realization(base_config(20.0, 8), 0);
    const double full = evaluate_functional(r, G);
    CHECK(windowed_functional(r, G, 64.0) == doctest::Approx(full).epsilon(1e-14));

    PoissonRealization far;
    far.points = {{9.0}, {-12.0}};
    far.amplitudes = {1.0, 1.0};
    CHECK(windowed_functional(far, G, 4.0) == 0.0);

    double prev = INFINITY;
    for (double N : {1.0, 2.0, 4.0, 8.0}) {
        const double gap = std::abs(windowed_functional(r, G, N) - full);
        CAPTURE(N);
        CHECK(gap <= prev);
        prev = gap;
    }
}

TEST_CASE("closed form limits") {
    const auto& G = bump_functional();
    auto cfg = base_config();
    CHECK(charfun_closed_form(G, 0.0, cfg) == cplx(1.0));
    cfg.lambda = 1e-12;
    CHECK(std::abs(charfun_closed_form(G, 1.0, cfg) - 1.0) < 1e-10);

    // |Z(t) - 1| <= lambda E|a| |t| ||I f||_1 on the box.
    cfg = base_config();
    const double l1 = box_l1(G, cfg.B);
    for (double t : {1e-3, 1e-2, 0.1, 0.5}) {
        CAPTURE(t);
        CHECK(std::abs(charfun_closed_form(G, t, cfg) - 1.0) <= cfg.lambda * t * l1 * (1 + 1e-6));
    }
    cfg.B = 40.0;
    CHECK_THROWS_AS(charfun_closed_form(G, 1.0, cfg), RangeError);
}

TEST_CASE("Monte-Carlo estimator") {
    const auto& G = bump_functional();
    const auto cfg = base_config();
    const auto z = charfun_monte_carlo(G, {0.0, 1.0}, cfg, 500);
    CHECK(z[0].value == cplx(1.0));
    CHECK(z[0].std_error == 0.0);
    CHECK(z[1].n_samples == 500);
    CHECK(std::abs(z[1].value) <= 1.0 + 3.0 * z[1].std_error);
    CHECK_THROWS_AS(charfun_monte_carlo(G, {1.0}, cfg, 10), ConfigError);

    // Bit-identical regardless of the thread count.
    const unsigned saved = thread_count();
    set_thread_count(1);
    const auto one = charfun_monte_carlo(G, {0.7, 2.0}, cfg, 400);
    set_thread_count(4);
    const auto four = charfun_monte_carlo(G, {0.7, 2.0}, cfg, 400);
    set_thread_count(saved);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].value == four[i].value);
        CHECK(one[i].std_error == four[i].std_error);
    }
}

TEST_CASE("closed form matches Monte Carlo for random amplitudes") {
    const auto& G = bump_functional();
    auto cfg = base_config(20.0, 2024);
    cfg.amplitude = AmplitudeDist::laplace(0.8);
    const std::vector<double> ts{0.5, 1.5};
    const auto mc = charfun_monte_carlo(G, ts, cfg, 10000);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        CAPTURE(ts[i]);
        CHECK(std::abs(charfun_closed_form(G, ts[i], cfg) - mc[i].value) <= 3.0 * mc[i].std_error);
    }
}

TEST_CASE("pointwise process") {
    const auto cfg = base_config();
    const HKernel H0({0.0}, 0.5, 1);
    for (double t : {0.5, 1.0, 2.0}) CHECK(pointwise_charfun(H0, t, cfg) == cplx(1.0));
    const HKernel H({1.0}, 0.5, 1);
    CHECK(pointwise_charfun(H, 0.0, cfg) == cplx(1.0));
    CHECK(pointwise_config(cfg).B == 4.0 * cfg.B);
    const auto mc = pointwise_charfun_monte_carlo(H, {1.0}, cfg, 10000);
    CHECK(std::abs(pointwise_charfun(H, 1.0, cfg) - mc[0].value) <= 3.0 * mc[0].std_error);
}

TEST_CASE("delta approximants") {
    const Grid g(1, 16.0, 16384);
    const auto zero = delta_approx_convergence({0.0}, kSpec, {4, 8, 16, 32}, g);
    CHECK(zero.passed);
    const auto one = delta_approx_convergence({1.0}, kSpec, {4, 8, 16, 32}, g);
    CHECK(one.passed);
    CHECK(one.series.size() == 4);
    CHECK(one.metadata.at("resolution_limited") == "false");
    const auto coarse = delta_approx_convergence({1.0}, kSpec, {4, 1000}, Grid(1, 16.0, 1024));
    CHECK(coarse.metadata.at("resolution_limited") == "true");
}

TEST_CASE("rendered fields") {
    const Grid g(1, 8.0, 256);
    CHECK(render_field(PoissonRealization{}, kSpec, g).field.max_abs() == 0.0);

    PoissonRealization at0;
    at0.points = {{0.0}};
    at0.amplitudes = {1.0};
    CHECK(render_field(at0, kSpec, g).field.max_abs() == 0.0);

    PoissonRealization at1;
    at1.points = {{1.0}};
    at1.amplitudes = {1.0};
    const auto rf = render_field(at1, kSpec, g);
    const auto node2 = static_cast<std::size_t>((2.0 + 8.0) / g.spacing());
    CHECK(rf.field[node2].real() == doctest::Approx(0.1168474886).epsilon(1e-8));
    CHECK(std::isnan(rf.field[g.origin_index()].real()));
    CHECK(std::isnan(rf.field[static_cast<std::size_t>(9.0 / g.spacing())].real()));
    CHECK(rf.flagged_nodes.size() == 2);
}

TEST_CASE("self-similarity of the closed form") {
    const auto f = TestFunction::cutoff_bump().sample(Grid(1, 32.0, 4096));
    const auto r = self_similarity_probe(f, kSpec, 1.0, base_config(), 2.0);
    CHECK(r.passed);
    CHECK(r.metric <= 1e-6);
}
