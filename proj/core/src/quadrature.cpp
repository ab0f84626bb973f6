#include "rieszlab/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "rieszlab/errors.hpp"

namespace rieszlab {

namespace {

template <unsigned N>
QuadratureRule reference_rule() {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    QuadratureRule r;
    // Boost stores the nonnegative half; mirror it (N odd would include 0 once).
    for (std::size_t i = x.size(); i-- > 0;) {
        if (x[i] == 0.0) continue;
        r.nodes.push_back(-x[i]);
        r.weights.push_back(w[i]);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        r.nodes.push_back(x[i]);
        r.weights.push_back(w[i]);
    }
    return r;
}

const QuadratureRule& cached(int n) {
    static const QuadratureRule r8 = reference_rule<8>();
    static const QuadratureRule r16 = reference_rule<16>();
    static const QuadratureRule r32 = reference_rule<32>();
    static const QuadratureRule r64 = reference_rule<64>();
    switch (n) {
        case 8: return r8;
        case 16: return r16;
        case 32: return r32;
        case 64: return r64;
        default: throw RangeError("gauss_legendre: unsupported rule size " + std::to_string(n));
    }
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
    QuadratureRule r = cached(n);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        r.nodes[i] = mid + half * r.nodes[i];
        r.weights[i] *= half;
    }
    return r;
}

double graded_gauss(const std::function<double(double)>& f, double a, double b, int n, double q) {
    const QuadratureRule& ref = cached(n);
    double s = 0.0;
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
        const double u = 0.5 * (ref.nodes[i] + 1.0);  // in (0,1)
        const double w = 0.5 * ref.weights[i];
        const double t = a + (b - a) * std::pow(u, q);
        const double jac = (b - a) * q * std::pow(u, q - 1.0);
        s += w * jac * f(t);
    }
    return s;
}

}  // namespace rieszlab
