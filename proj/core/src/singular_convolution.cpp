#include "rieszlab/singular_convolution.hpp"

#include <array>
#include <cmath>

#include "detail/fft.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/parallel.hpp"
#include "rieszlab/quadrature.hpp"
#include "rieszlab/special_functions.hpp"

namespace rieszlab {

namespace {

// Wrapped index of offset l in (-n, n) on a padded axis of length 2n.
std::size_t wrap(int l, int n) { return static_cast<std::size_t>(l < 0 ? l + 2 * n : l); }

// zeta(-s) that tolerates the trivial zeros and rejects the pole.
double zeta_neg(double s) {
    if (-s == 1.0) throw PoleError("singular cell weight hits the zeta pole");
    return zeta(-s);
}

std::vector<cplx> weights_1d(const Grid& g, const RadialPolyKernel& K) {
    const int n = g.points_per_axis();
    const double h = g.spacing();
    std::vector<cplx> w(2 * static_cast<std::size_t>(n), cplx{});
    const auto terms = power_terms_1d(K);
    for (const auto& t : terms) {
        const cplx c = t.coefficient;
        const double e = t.exponent;
        for (int l = 1; l < n; ++l) {
            const double v = h * std::pow(l * h, e);
            w[wrap(l, n)] += c * v;
            w[wrap(-l, n)] += (t.parity == 0 ? 1.0 : -1.0) * c * v;
        }
        const double he = std::pow(h, 1.0 + e);
        // out[m] = sum_l w_l f_{m-l}: f_{m+1} sits at l = -1, f_{m-1} at l = +1.
        if (t.parity == 0) {
            const cplx a0 = -2.0 * c * zeta_neg(e) * he;
            const cplx b2 = -c * zeta_neg(e + 2.0) * he;  // times (f_{m+1} - 2 f_m + f_{m-1})
            w[wrap(0, n)] += a0 - 2.0 * b2;
            w[wrap(1, n)] += b2;
            w[wrap(-1, n)] += b2;
        } else {
            // First derivative by the fourth-order stencil, third derivative by the second-order one.
            const cplx a1 = c * zeta_neg(e + 1.0) * he / 6.0;
            const cplx a3 = c * zeta_neg(e + 3.0) * he / 6.0;
            w[wrap(-1, n)] += 8.0 * a1 - 2.0 * a3;
            w[wrap(1, n)] += -8.0 * a1 + 2.0 * a3;
            w[wrap(-2, n)] += -a1 + a3;
            w[wrap(2, n)] += a1 - a3;
        }
    }
    return w;
}

std::vector<cplx> weights_2d(const Grid& g, const RadialPolyKernel& K) {
    const int n = g.points_per_axis();
    const double h = g.spacing();
    const std::size_t N = 2 * static_cast<std::size_t>(n);
    std::vector<cplx> w(N * N, cplx{});
    for (int l0 = -n + 1; l0 < n; ++l0)
        for (int l1 = -n + 1; l1 < n; ++l1) {
            if (l0 == 0 && l1 == 0) continue;
            const std::array<double, 2> x{l0 * h, l1 * h};
            w[wrap(l0, n) * N + wrap(l1, n)] = h * h * K.eval(x);
        }
    cplx w0{};
    for (const auto& t : K.terms()) {
        const double b = t.radial_exponent;
        const int i0 = t.monomial[0], i1 = t.monomial[1];
        if (i0 % 2 != 0 || i1 % 2 != 0) continue;
        const int order = i0 + i1;
        if (order == 0)
            w0 -= t.coefficient * lattice_zeta2(-b) * std::pow(h, 2.0 + b);
        else if (order == 2)
            w0 -= t.coefficient * 0.5 * lattice_zeta2(-b - 2.0) * std::pow(h, 4.0 + b);
        // Higher even monomials: their lattice sums are not tabulated; the cell is left at zero.
    }
    w[0] = w0;
    return w;
}

}  // namespace

std::pair<double, double> box_edges_1d(const Grid& g) {
    const double h = g.spacing();
    return {g.half_width() + 0.5 * h, g.half_width() - 0.5 * h};
}

SampledField convolve_box(const SampledField& f, const RadialPolyKernel& K) {
    const Grid& g = f.grid;
    const int d = g.dim();
    if (d != K.dim()) throw RangeError("convolve_box: kernel dimension does not match the grid");
    if (d > 2) throw RangeError("convolve_box supports d = 1 and d = 2");
    const int n = g.points_per_axis();
    const std::size_t N = 2 * static_cast<std::size_t>(n);
    if (K.empty()) return SampledField(g);

    std::vector<cplx> w = (d == 1) ? weights_1d(g, K) : weights_2d(g, K);
    std::vector<cplx> v(w.size(), cplx{});
    if (d == 1) {
        for (int m = 0; m < n; ++m) v[static_cast<std::size_t>(m)] = f.values[static_cast<std::size_t>(m)];
    } else {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                v[static_cast<std::size_t>(a) * N + static_cast<std::size_t>(b)] =
                    f.values[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)];
    }
    detail::fft_inplace(w, d, static_cast<int>(N), -1);
    detail::fft_inplace(v, d, static_cast<int>(N), -1);
    for (std::size_t i = 0; i < w.size(); ++i) v[i] *= w[i];
    detail::fft_inplace(v, d, static_cast<int>(N), +1);
    const double scale = 1.0 / static_cast<double>(v.size());

    SampledField out(g);
    if (d == 1) {
        for (int m = 0; m < n; ++m) out.values[static_cast<std::size_t>(m)] = v[static_cast<std::size_t>(m)] * scale;
    } else {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                out.values[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)] =
                    v[static_cast<std::size_t>(a) * N + static_cast<std::size_t>(b)] * scale;
    }
    return out;
}

namespace {

// \int_a^\infty K(s (y - x)) F_side(y) dy for one side, written in the right-side frame: on the right
// s = -1 (K(x - y)), on the left the caller mirrors x and passes s = +1 with y -> -y.
cplx tail_side(double x, const std::vector<PowerTerm1D>& K, const std::vector<PowerSeries>& series, double scale,
               double a, bool right) {
    if (series.empty()) return {};
    // In the mirrored frame the kernel argument is x - y on the right and x + u (u = -y) on the left.
    auto kernel = [&](double u) {  // u = |y| > a
        const double arg = right ? x - u : x + u;
        const double r = std::abs(arg);
        cplx s{};
        for (const auto& t : K) {
            double v = std::pow(r, t.exponent);
            if (t.parity == 1 && arg < 0) v = -v;
            s += t.coefficient * v;
        }
        return s;
    };
    auto field = [&](double u) {
        const double rel = u / scale;
        const double inv = 1.0 / rel;
        cplx total{};
        for (const auto& s : series) {
            cplx acc{};
            for (std::size_t t = s.coeffs.size(); t-- > 0;) acc = acc * inv + s.coeffs[t];
            total += std::pow(rel, s.base) * acc;
        }
        return total;
    };

    const double xe = right ? x : -x;  // position measured toward the edge
    const double dist = a - xe;
    if (!(dist > 0.0)) throw RangeError("tail convolution point lies outside the box");
    const double R = 16.0 * (std::abs(x) + a);
    static const QuadratureRule ref = gauss_legendre(16);

    cplx sum{};
    double lo = a, width = dist;
    while (lo < R) {
        const double hi = std::min(lo + width, R);
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
            const double u = mid + half * ref.nodes[i];
            sum += ref.weights[i] * half * kernel(u) * field(u);
        }
        lo = hi;
        width *= 2.0;
    }

    // Beyond R: K(arg) with |arg| = u - xe, so |arg|^e = u^e sum_q binom(e,q) (-xe/u)^q;
    // sign(arg) = -1 on the right and +1 on the left.
    const double sgn = right ? -1.0 : 1.0;
    for (const auto& kt : K) {
        const double par_sign = (kt.parity == 1) ? sgn : 1.0;
        double xq = 1.0;  // (-xe/scale)^q
        for (int q = 0; q < 40; ++q) {
            const double bq = binomial(kt.exponent, q);
            if (q > 0) xq *= -xe / scale;
            const double pref = bq * xq;
            if (q > 2 && std::abs(pref) * std::pow(scale / R, q) < 1e-18) break;
            for (const auto& s : series)
                for (std::size_t t = 0; t < s.coeffs.size(); ++t) {
                    if (s.coeffs[t] == cplx{}) continue;
                    const double E = kt.exponent - q + s.base - static_cast<double>(t);
                    if (E >= -1.0) throw DecayError("kernel times far field is not integrable at infinity");
                    // \int_R^inf u^{e-q} (u/s)^{b-t} du = s^{e-q+1} (-(R/s)^{E+1} / (E+1))
                    const double integral = std::pow(scale, kt.exponent + 1.0) * (-std::pow(R / scale, E + 1.0) / (E + 1.0));
                    sum += kt.coefficient * par_sign * pref * s.coeffs[t] * integral;
                }
        }
    }
    return sum;
}

}  // namespace

cplx convolve_tail_1d(double x, const std::vector<PowerTerm1D>& K, const FarField1D& tail, double a_right,
                      double a_left) {
    if (tail.empty()) return {};
    return tail_side(x, K, tail.right(), tail.scale(), a_right, true) +
           tail_side(x, K, tail.left(), tail.scale(), a_left, false);
}

SampledField convolve_tailed_1d(const TailedField& f, const RadialPolyKernel& K) {
    const Grid& g = f.body.grid;
    if (g.dim() != 1) throw RangeError("convolve_tailed_1d requires d = 1");
    SampledField out = convolve_box(f.body, K);
    if (f.tail.empty() || K.empty()) return out;
    const auto terms = power_terms_1d(K);
    const auto [a_left, a_right] = box_edges_1d(g);
    parallel_for(g.size(), [&](std::size_t m) {
        out.values[m] += convolve_tail_1d(g.node(static_cast<int>(m)), terms, f.tail, a_right, a_left);
    });
    return out;
}

}  // namespace rieszlab
