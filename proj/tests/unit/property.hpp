#pragma once

#include <cstdint>
#include <random>
#include <sstream>

#include <doctest.h>

// Minimal property runner: calls body(rng) for `cases` seeded cases and reports the failing case index.
template <class Body>
void for_all(int cases, std::uint64_t seed, Body&& body) {
    std::mt19937_64 rng(seed);
    for (int c = 0; c < cases; ++c) {
        CAPTURE(c);
        body(rng);
    }
}

inline double draw(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
