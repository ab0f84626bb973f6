#include <cmath>
#include <vector>

#include <doctest.h>

#include "rieszlab/errors.hpp"
#include "rieszlab/random.hpp"

using namespace rieszlab;

// Known answers from tests/oracles/philox_kat.py.
TEST_CASE("Philox4x32-10 known answers") {
    using C = std::array<std::uint32_t, 4>;
    using K = std::array<std::uint32_t, 2>;
    CHECK(philox4x32_10(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are deterministic and distinct") {
    Rng a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    std::vector<std::uint64_t> va, vb, vc, vd;
    for (int i = 0; i < 16; ++i) {
        va.push_back(a.next_u64());
        vb.push_back(b.next_u64());
        vc.push_back(c.next_u64());
        vd.push_back(d.next_u64());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != vd);
}

namespace {

struct Moments {
    double mean = 0.0, var = 0.0;
};

template <class Draw>
Moments moments(int n, Draw&& draw) {
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = draw();
        s += x;
        s2 += x * x;
    }
    Moments m;
    m.mean = s / n;
    m.var = s2 / n - m.mean * m.mean;
    return m;
}

}  // namespace

TEST_CASE("uniform stays inside (0, 1) with the right moments") {
    Rng rng(1);
    const int n = 200000;
    double lo = 1.0, hi = 0.0;
    const auto m = moments(n, [&] {
        const double u = rng.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        return u;
    });
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(std::abs(m.mean - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
    CHECK(std::abs(m.var - 1.0 / 12) < 1e-3);
}

TEST_CASE("normal and Laplace moments") {
    Rng rng(2);
    const int n = 200000;
    const auto g = moments(n, [&] { return rng.normal(); });
    CHECK(std::abs(g.mean) < 4 / std::sqrt(n));
    CHECK(std::abs(g.var - 1.0) < 0.02);
    const double b = 1.5;
    const auto l = moments(n, [&] { return rng.laplace(b); });
    CHECK(std::abs(l.mean) < 4 * std::sqrt(2 * b * b / n));
    CHECK(std::abs(l.var - 2 * b * b) < 0.1);
}

TEST_CASE("Poisson mean and variance on both sampling branches") {
    for (double mean : {0.7, 12.0, 29.5, 30.5, 250.0, 4000.0}) {
        CAPTURE(mean);
        Rng rng(7, static_cast<std::uint64_t>(mean * 10));
        const int n = 100000;
        const auto m = moments(n, [&] { return static_cast<double>(rng.poisson(mean)); });
        CHECK(std::abs(m.mean - mean) < 4 * std::sqrt(mean / n));
        CHECK(std::abs(m.var / mean - 1.0) < 0.05);
    }
}

TEST_CASE("Poisson rejects invalid means") {
    Rng rng(0);
    CHECK(rng.poisson(0.0) == 0);
    CHECK_THROWS_AS(rng.poisson(-1.0), RangeError);
    CHECK_THROWS_AS(rng.poisson(std::nan("")), RangeError);
}
