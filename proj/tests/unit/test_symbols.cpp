#include <cmath>
#include <numbers>

#include <doctest.h>

#include "oracle_values.hpp"
#include "property.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/symbols.hpp"

using namespace rieszlab;

TEST_CASE("radial_symbol") {
    const auto one = radial_symbol(0.0, 1);
    const double xi[] = {3.7};
    CHECK(one.degree() == 0.0);
    CHECK(one.eval(xi) == std::complex<double>(1.0));

    const double four[] = {4.0};
    CHECK(std::abs(radial_symbol(0.5, 1).eval(four) - 0.5) < 1e-15);

    const double v[] = {3.0, 4.0};
    CHECK(std::abs(radial_symbol(-2.0, 2).eval(v) - 25.0) < 1e-12);
}

TEST_CASE("weight_symbol") {
    const auto omega = radial_symbol(0.5, 1);
    const auto same = weight_symbol(omega, MultiIndex::zero(1));
    const double two[] = {2.0};
    CHECK(same.eval(two) == omega.eval(two));

    const auto w = weight_symbol(omega, MultiIndex({1}));
    CHECK(std::abs(w.eval(two) - std::complex<double>(0.0, std::sqrt(2.0))) < 1e-14);
    CHECK(w.degree() == omega.degree() + 1);
}

TEST_CASE("symbol_product adds degrees exactly") {
    const auto a = radial_symbol(0.2, 1);
    const auto b = radial_symbol(0.3, 1);
    const auto ab = symbol_product(a, b);
    CHECK(ab.degree() == a.degree() + b.degree());
    CHECK(ab.radial_exponent() == doctest::Approx(-0.5).epsilon(1e-15));
    const auto id = symbol_product(a, radial_symbol(0.0, 1));
    const double x[] = {1.7};
    CHECK(id.eval(x) == a.eval(x));

    for_all(50, 5, [](std::mt19937_64& rng) {
        const int d = 1 + static_cast<int>(rng() % 2);
        const auto s = weight_symbol(radial_symbol(draw(rng, -3, 3), d), MultiIndex::unit(d, 0));
        const auto t = radial_symbol(draw(rng, -3, 3), d);
        CHECK(symbol_product(s, t).degree() == s.degree() + t.degree());
    });
}

TEST_CASE("symbol homogeneity") {
    for_all(100, 9, [](std::mt19937_64& rng) {
        const int d = 1 + static_cast<int>(rng() % 2);
        std::vector<int> j(static_cast<std::size_t>(d));
        for (auto& e : j) e = static_cast<int>(rng() % 3);
        const auto omega = weight_symbol(radial_symbol(draw(rng, -2.5, 2.5), d), MultiIndex(j));
        std::vector<double> xi(static_cast<std::size_t>(d)), txi(xi.size());
        for (auto& v : xi) v = draw(rng, -5, 5);
        const double t = draw(rng, 0.05, 20.0);
        for (std::size_t a = 0; a < xi.size(); ++a) txi[a] = t * xi[a];
        const auto lhs = omega.eval(txi);
        const auto rhs = std::pow(t, omega.degree()) * omega.eval(xi);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    });
}

TEST_CASE("riesz_constant") {
    CHECK(rel_err(riesz_constant(0.5, 1), 1.0 / std::sqrt(2 * std::numbers::pi)) < 1e-14);
    CHECK(rel_err(riesz_constant(1.0, 2), 1.0 / (2 * std::numbers::pi)) < 1e-14);
    CHECK(rel_err(riesz_constant(0.25, 1), oracle::kRieszConst_0p25_d1) < 1e-13);
    CHECK(rel_err(riesz_constant(0.75, 1), oracle::kRieszConst_0p75_d1) < 1e-13);
    CHECK(rel_err(riesz_constant(1.5, 2), oracle::kRieszConst_1p5_d2) < 1e-13);
    CHECK(rel_err(riesz_constant(2.5, 1), oracle::kRieszConst_2p5_d1) < 1e-13);
    CHECK_THROWS_AS(riesz_constant(1.0, 1), PoleError);
    CHECK_THROWS_AS(riesz_constant(4.0, 2), PoleError);
}

TEST_CASE("kernel_from_radial_symbol") {
    const auto K = kernel_from_radial_symbol(0.5, 1);
    const double one[] = {1.0}, four[] = {4.0};
    CHECK(std::abs(K.eval(one) - 0.3989422804014327) < 1e-12);
    CHECK(std::abs(K.eval(four) - 0.19947114020071635) < 1e-12);
    CHECK(K.degree() == doctest::Approx(-0.5));
    const double x[] = {0.37}, x2[] = {0.74};
    CHECK(std::abs(K.eval(x2) - std::pow(2.0, -0.5) * K.eval(x)) < 1e-14);
    CHECK_THROWS_AS(kernel_from_radial_symbol(2.0, 1), Error);
}

TEST_CASE("kernel_derivative") {
    const RadialPolyKernel K(1, {KernelTerm{1.0, MultiIndex({0}), -0.5}});
    const auto same = kernel_derivative(K, MultiIndex::zero(1));
    const double x[] = {1.3};
    CHECK(same.eval(x) == K.eval(x));

    const auto dK = kernel_derivative(K, MultiIndex({1}));
    CHECK(std::abs(dK.eval(x) - (-0.5 * 1.3 * std::pow(1.3, -2.5))) < 1e-14);
    CHECK(dK.degree() == doctest::Approx(K.degree() - 1));
    CHECK_THROWS_AS(kernel_derivative(K, MultiIndex({5})), UnsupportedOrder);
}

TEST_CASE("kernel_eval") {
    const RadialPolyKernel K(1, {KernelTerm{1.0, MultiIndex({0}), -0.5}});
    const double nine[] = {9.0};
    CHECK(std::abs(kernel_eval(K, nine) - 1.0 / 3.0) < 1e-15);
    const RadialPolyKernel empty(1, {});
    CHECK(kernel_eval(empty, nine) == std::complex<double>(0.0));
    const double zero[] = {0.0};
    CHECK_THROWS_AS(kernel_eval(K, zero), SingularPoint);
    const double x[] = {0.7}, x3[] = {2.1};
    CHECK(std::abs(kernel_eval(K, x3) - std::pow(3.0, K.degree()) * kernel_eval(K, x)) < 1e-12 * std::abs(kernel_eval(K, x3)));
}

TEST_CASE("kernel derivatives agree with central differences") {
    for_all(20, 17, [](std::mt19937_64& rng) {
        const int d = 1 + static_cast<int>(rng() % 2);
        double gamma = draw(rng, 0.1, 1.9 + d);
        if (std::abs(gamma - std::round(gamma)) < 0.05) gamma += 0.1;
        const auto K = kernel_from_radial_symbol(gamma, d);
        std::vector<int> j(static_cast<std::size_t>(d), 0);
        const int order = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < order; ++k) ++j[rng() % static_cast<unsigned>(d)];
        int axis = 0;
        while (j[static_cast<std::size_t>(axis)] == 0) ++axis;
        std::vector<int> lower = j;
        --lower[static_cast<std::size_t>(axis)];

        const auto Dj = kernel_derivative(K, MultiIndex(j));
        const auto Dlow = kernel_derivative(K, MultiIndex(lower));
        std::vector<double> x(static_cast<std::size_t>(d));
        double r = 0.0;
        do {
            r = 0.0;
            for (auto& v : x) {
                v = draw(rng, -3, 3);
                r += v * v;
            }
        } while (std::sqrt(r) < 0.5);
        const double h = 1e-5;
        auto xp = x, xm = x;
        xp[static_cast<std::size_t>(axis)] += h;
        xm[static_cast<std::size_t>(axis)] -= h;
        const auto fd = (Dlow.eval(xp) - Dlow.eval(xm)) / (2 * h);
        const auto exact = Dj.eval(x);
        CAPTURE(gamma);
        CAPTURE(order);
        CHECK(std::abs(fd - exact) <= 1e-6 * std::abs(exact));
    });
}
