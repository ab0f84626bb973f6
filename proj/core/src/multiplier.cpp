#include "rieszlab/multiplier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "rieszlab/errors.hpp"
#include "rieszlab/fourier.hpp"
#include "rieszlab/special_functions.hpp"

namespace rieszlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxSeriesOrder = 150;

cplx ipow(int k) {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((k % 4) + 4) % 4];
}

// Omega * F with the xi = 0 node set to zero.
SampledField symbol_times(const SampledField& F, const HomogeneousSymbol& omega) {
    const Grid& g = F.grid;
    SampledField G(g, DomainTag::frequency);
    const std::size_t origin = g.origin_index();
    std::array<double, 3> xi{};
    std::span<double> xs(xi.data(), static_cast<std::size_t>(g.dim()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i == origin) continue;
        g.dual_coords(i, xs);
        G.values[i] = omega.eval(xs) * F.values[i];
    }
    return G;
}

// S(x) -= sum_{|a| <= K} (i x)^a / a! * (2 pi)^{-d} dxi^d sum_{xi != 0} xi^a G(xi).
void subtract_polynomial_part(SampledField& S, const SampledField& G, int K) {
    const Grid& g = S.grid;
    const int d = g.dim();
    const double w = std::pow(g.dual_spacing() / kTwoPi, d);
    std::array<double, 3> buf{};
    std::span<double> v(buf.data(), static_cast<std::size_t>(d));
    for (const auto& a : multi_indices(d, K)) {
        cplx P{};
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (G.values[i] == cplx{}) continue;
            g.dual_coords(i, v);
            P += monomial_eval(v, a) * G.values[i];
        }
        P *= w * ipow(a.order()) / a.factorial();
        for (std::size_t i = 0; i < g.size(); ++i) {
            g.coords(i, v);
            S.values[i] -= monomial_eval(v, a) * P;
        }
    }
}

void origin_correction_1d(SampledField& S, const SampledField& f, const HomogeneousSymbol& omega, int K,
                          MultiplierDiagnostics* diag) {
    const Grid& g = f.grid;
    const double dxi = g.dual_spacing();
    const double r = omega.radial_exponent();
    const int k = omega.monomial()[0];
    const int Q = kMaxSeriesOrder;

    // Delta^a f^_a = (-i)^a mu_a with mu_a = \int (dxi y)^a / a! f(y) dy.
    const auto mu = scaled_moments_1d(f, dxi, Q);
    std::vector<cplx> fs(mu.size());
    for (std::size_t a = 0; a < mu.size(); ++a) fs[a] = ipow(-static_cast<int>(a)) * mu[a];

    // E_m = 2 zeta(-r-m) dxi^{1+r+k} for m = k + q even.
    std::vector<double> E(static_cast<std::size_t>(Q) + 1, 0.0);
    const double base = std::pow(dxi, 1.0 + r + k);
    for (int q = 0; q <= Q; ++q) {
        const int m = k + q;
        if (m % 2 != 0) continue;
        const double s = -r - m;
        if (s == 1.0) throw PoleError("origin correction hits the zeta pole (symbol degree is -1)");
        E[static_cast<std::size_t>(q)] = 2.0 * zeta(s) * base;
    }

    double smax = 0.0;
    for (const auto& v : S.values) smax = std::max(smax, std::abs(v));
    const double tol = 1e-17 * smax + std::numeric_limits<double>::min();

    const cplx ik = ipow(k);
    std::vector<cplx> P(static_cast<std::size_t>(Q) + 1);
    double worst = 0.0;
    int most_terms = 0;
    for (int node = 0; node < g.points_per_axis(); ++node) {
        const double x = g.node(node);
        const cplx ixd(0.0, x * dxi);
        P[0] = 1.0;
        for (int j = 1; j <= Q; ++j) P[static_cast<std::size_t>(j)] = P[static_cast<std::size_t>(j - 1)] * ixd / static_cast<double>(j);

        cplx acc{};
        double prev = std::numeric_limits<double>::infinity();
        int tiny = 0, used = 0;
        for (int q = 0; q <= Q; ++q) {
            const double e = E[static_cast<std::size_t>(q)];
            if (e == 0.0) continue;
            // Taylor coefficient of the smooth factor, with the subtracted polynomial part removed.
            cplx c{};
            for (int a = 0; a <= q - K - 1; ++a)
                c += fs[static_cast<std::size_t>(a)] * P[static_cast<std::size_t>(q - a)];
            const cplx term = ik * e * c;
            const double mag = std::abs(term);
            if (mag <= tol) {
                acc += term;
                if (++tiny >= 3) break;
                continue;
            }
            tiny = 0;
            if (used >= 4 && mag > prev) break;  // asymptotic regime: stop at the smallest term
            acc += term;
            prev = mag;
            ++used;
        }
        const cplx corr = -acc / kTwoPi;
        S.values[static_cast<std::size_t>(node)] += corr;
        worst = std::max(worst, std::abs(corr));
        most_terms = std::max(most_terms, used);
    }
    if (diag) {
        diag->origin_correction = worst;
        diag->series_terms = most_terms;
    }
}

void origin_correction_2d(SampledField& S, const SampledField& f, const HomogeneousSymbol& omega, int K,
                          MultiplierDiagnostics* diag) {
    const Grid& g = f.grid;
    const double dxi = g.dual_spacing();
    const double r = omega.radial_exponent();
    const MultiIndex& k = omega.monomial();
    if (diag) *diag = {};
    if (k.order() > 2) return;  // leading lattice terms vanish beyond the supported order

    const auto moments = spatial_moments(f, 2);
    auto fhat = [&](const MultiIndex& b) { return ipow(-b.order()) * moments.at(b) / b.factorial(); };

    // Lattice sums sum_{l != 0} l^e |l|^r for the even exponents e of total order <= 2.
    const double z0 = lattice_zeta2(-r);
    const double z2 = 0.5 * lattice_zeta2(-r - 2.0);

    struct Term {
        MultiIndex alpha;
        double weight;
    };
    std::vector<Term> terms;
    for (const auto& alpha : multi_indices(2, 2 - k.order())) {
        const MultiIndex e = k + alpha;
        if (e[0] % 2 != 0 || e[1] % 2 != 0) continue;
        const double ls = (e.order() == 0) ? z0 : z2;
        terms.push_back({alpha, ls * std::pow(dxi, 2.0 + r + e.order())});
    }

    const cplx ik = ipow(k.order());
    double worst = 0.0;
    std::array<double, 2> x{};
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.coords(i, x);
        cplx acc{};
        for (const auto& t : terms) {
            cplx c{};
            for (const auto& beta : multi_indices(2, t.alpha.order())) {
                if (beta[0] > t.alpha[0] || beta[1] > t.alpha[1]) continue;
                const MultiIndex rest = t.alpha - beta;
                if (rest.order() <= K) continue;
                c += fhat(beta) * ipow(rest.order()) * monomial_eval(x, rest) / rest.factorial();
            }
            acc += t.weight * c;
        }
        const cplx corr = -ik * acc / (kTwoPi * kTwoPi);
        S.values[i] += corr;
        worst = std::max(worst, std::abs(corr));
    }
    if (diag) diag->origin_correction = worst;
}

}  // namespace

SampledField apply_multiplier(const SampledField& f, const HomogeneousSymbol& omega, int subtract_order,
                              MultiplierDiagnostics* diag) {
    if (f.tag != DomainTag::spatial) throw DomainTagError("apply_multiplier expects a spatial field");
    const int d = f.grid.dim();
    if (omega.dim() != d) throw RangeError("apply_multiplier: symbol dimension does not match the grid");
    if (d > 2) throw RangeError("apply_multiplier supports d = 1 and d = 2");

    const SampledField F = continuous_ft(f);
    const SampledField G = symbol_times(F, omega);
    SampledField S = continuous_ift(G);
    if (subtract_order >= 0) subtract_polynomial_part(S, G, subtract_order);

    // A symbol that is a polynomial (even integer r >= 0) is smooth at the origin: nothing to add.
    const double r = omega.radial_exponent();
    const bool smooth = r >= 0.0 && std::fmod(r, 2.0) == 0.0;
    if (smooth) {
        if (diag) *diag = {};
        return S;
    }
    if (d == 1)
        origin_correction_1d(S, f, omega, subtract_order, diag);
    else
        origin_correction_2d(S, f, omega, subtract_order, diag);
    return S;
}

SampledField corrected_spectrum(const SampledField& f, const HomogeneousSymbol& omega, int correction_order) {
    const SampledField F = continuous_ft(f);
    SampledField T = F;
    if (correction_order >= 0) {
        const Grid& g = f.grid;
        std::vector<std::pair<MultiIndex, cplx>> coeffs;
        for (const auto& [i, m] : spatial_moments(f, correction_order))
            coeffs.emplace_back(i, ipow(-i.order()) * m / i.factorial());
        std::array<double, 3> buf{};
        std::span<double> xi(buf.data(), static_cast<std::size_t>(g.dim()));
        for (std::size_t n = 0; n < g.size(); ++n) {
            g.dual_coords(n, xi);
            cplx p{};
            for (const auto& [i, c] : coeffs) p += c * monomial_eval(xi, i);
            T.values[n] -= p;
        }
    }
    return symbol_times(T, omega);
}

}  // namespace rieszlab
