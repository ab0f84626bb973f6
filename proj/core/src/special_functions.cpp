#include "rieszlab/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "rieszlab/errors.hpp"

namespace rieszlab {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos coefficients for g = 7, n = 9 (Godfrey's set).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

double lanczos_gamma(double x) {
    // Valid for x >= 1/2.
    const double z = x - 1.0;
    double a = kLanczos[0];
    const double t = z + kLanczosG + 0.5;
    for (std::size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (z + static_cast<double>(k));
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma(double x) {
    if (std::isnan(x)) return x;
    if (is_nonpositive_integer(x)) throw PoleError("Gamma has a pole at x = " + std::to_string(x));
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x). sin via the reduced argument keeps
        // the relative accuracy near large negative integers.
        const double s = std::sin(kPi * (x - 2.0 * std::floor(x / 2.0)));
        return kPi / (s * lanczos_gamma(1.0 - x));
    }
    // Positive integers: exact product, avoids Lanczos roundoff in the recursion tests.
    if (x == std::nearbyint(x) && x <= 30.0) {
        double r = 1.0;
        for (int k = 2; k < static_cast<int>(x); ++k) r *= k;
        return r;
    }
    return lanczos_gamma(x);
}

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    return 1.0 / gamma(x);
}

double zeta(double s) {
    if (s == 1.0) throw PoleError("zeta has a pole at s = 1");
    return boost::math::zeta(s);
}

double hurwitz_zeta(double s, double q) {
    if (s == 1.0) throw PoleError("Hurwitz zeta has a pole at s = 1");
    if (q <= 0.0) throw RangeError("Hurwitz zeta requires q > 0");
    // Euler-Maclaurin summation with N direct terms and J Bernoulli corrections.
    constexpr int N = 24;
    constexpr int J = 12;
    double sum = 0.0;
    for (int k = 0; k < N; ++k) sum += std::pow(q + k, -s);
    const double a = q + N;
    sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    double rising = s;  // s (s+1) ... (s+2j-2)
    double apow = std::pow(a, -s - 1.0);
    double fact = 2.0;  // (2j)!
    for (int j = 1; j <= J; ++j) {
        const double b2j = boost::math::bernoulli_b2n<double>(j);
        sum += b2j / fact * rising * apow;
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        apow /= a * a;
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    return sum;
}

double lattice_zeta2(double s) {
    if (s == 2.0) throw PoleError("lattice zeta has a pole at s = 2");
    // sum_{(a,b) != 0} (a^2+b^2)^{-u} = 4 zeta(u) beta(u), beta the Dirichlet beta function.
    const double u = 0.5 * s;
    if (u == 0.0) return -1.0;  // limit: 4 zeta(0) beta(0) = 4 (-1/2)(1/2)
    const double beta = std::pow(4.0, -u) * (hurwitz_zeta(u, 0.25) - hurwitz_zeta(u, 0.75));
    return 4.0 * zeta(u) * beta;
}

double binomial(double a, int k) {
    double r = 1.0;
    for (int j = 0; j < k; ++j) r *= (a - j) / (j + 1.0);
    return r;
}

double falling_factorial(double a, int k) {
    double r = 1.0;
    for (int j = 0; j < k; ++j) r *= (a - j);
    return r;
}

}  // namespace rieszlab
