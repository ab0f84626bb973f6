#include "rieszlab/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rieszlab/errors.hpp"
#include "rieszlab/fourier.hpp"
#include "rieszlab/parallel.hpp"
#include "rieszlab/quadrature.hpp"
#include "rieszlab/singular_convolution.hpp"
#include "rieszlab/special_functions.hpp"

namespace rieszlab {

namespace {

bool is_nonnegative_integer(double v, double tol = 1e-12) {
    return v > -tol && std::abs(v - std::nearbyint(v)) < tol;
}

cplx ipow(int k) {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((k % 4) + 4) % 4];
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// PotentialSpec

PotentialSpec::PotentialSpec(double gamma, double p, int d) : gamma_(gamma), p_(p), d_(d), k1_(-1) {
    if (d != 1 && d != 2) throw SpecError("supported dimensions are d = 1 and d = 2");
    if (!(gamma > 0.0)) throw SpecError("gamma must be positive");
    if (!(p >= 1.0)) throw SpecError("p must lie in [1, inf]");
    if (is_nonnegative_integer(gamma))
        throw SpecError("gamma = " + std::to_string(gamma) + " is an integer; the potential requires a non-integer gamma");
    const double e = excess();
    if (is_nonnegative_integer(e))
        throw SpecError("gamma - d(1 - 1/p) = " + std::to_string(e) + " is a nonnegative integer");
    k1_ = e >= 0.0 ? static_cast<int>(std::floor(e)) : -1;
}

double PotentialSpec::excess() const {
    const double inv_p = p_is_infinite() ? 0.0 : 1.0 / p_;
    return gamma_ - d_ * (1.0 - inv_p);
}

std::vector<MultiIndex> PotentialSpec::correction_set() const {
    if (k1_ < 0) return {};
    return multi_indices(d_, k1_);
}

std::string PotentialSpec::describe() const {
    std::ostringstream os;
    os << "gamma=" << gamma_ << " p=" << (p_is_infinite() ? std::string("inf") : std::to_string(p_)) << " d=" << d_
       << " k1=" << k1_;
    return os.str();
}

std::string to_string(OperatorPath p) { return p == OperatorPath::fourier ? "fourier" : "spatial_kernel"; }

// ---------------------------------------------------------------------------------------------
// OperatorResult

OperatorResult::OperatorResult(SampledField regular_part, RadialPolyKernel singular_part, OperatorPath p)
    : field(regular_part), regular(std::move(regular_part)), singular(std::move(singular_part)), path(p) {
    const Grid& g = field.grid;
    if (!singular.empty() && singular.dim() != g.dim()) throw RangeError("singular part dimension mismatch");
    std::array<double, 3> buf{};
    std::span<double> x(buf.data(), static_cast<std::size_t>(g.dim()));
    const std::size_t origin = g.origin_index();
    if (singular.empty()) return;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i == origin) {
            field.values[i] = cplx(std::nan(""), std::nan(""));
            flagged_nodes.push_back(i);
            continue;
        }
        g.coords(i, x);
        field.values[i] += singular.eval(x);
    }
}

cplx OperatorResult::eval(std::span<const double> x) const {
    cplx v = interpolate(regular, x, false);
    if (!singular.empty()) v += singular.eval(x);
    return v;
}

std::string OperatorResult::diagnostics_json() const {
    nlohmann::json j;
    j["path"] = to_string(path);
    j["tail_sup"] = diagnostics.count("tail_sup") ? diagnostics.at("tail_sup") : 0.0;
    j["flagged_nodes"] = flagged_nodes;
    for (const auto& [k, v] : diagnostics)
        if (k != "tail_sup") j[k] = v;
    return j.dump();
}

// ---------------------------------------------------------------------------------------------
// Multiplier operators

void require_edge_decay(const SampledField& f, double tol) {
    const double m = f.max_abs();
    const double e = f.edge_max_abs();
    if (e > tol * m)
        throw DecayError("input does not decay at the box edge: edge/max = " + std::to_string(m > 0 ? e / m : 0.0));
}

SampledField fractional_laplacian(const SampledField& f, double gamma) {
    if (!(gamma > 0.0)) throw RangeError("fractional_laplacian requires gamma > 0");
    require_edge_decay(f);
    return apply_multiplier(f, HomogeneousSymbol(f.grid.dim(), gamma));
}

TailedField fractional_laplacian_tailed(const SampledField& f, double gamma) {
    if (f.grid.dim() != 1) throw RangeError("fractional_laplacian_tailed requires d = 1");
    SampledField body = fractional_laplacian(f, gamma);
    const auto K = kernel_of_symbol(HomogeneousSymbol(1, gamma));
    return {std::move(body), multipole_far_field(power_terms_1d(K), f, f.grid.half_width())};
}

SampledField riesz_potential_fourier(const SampledField& f, double gamma) {
    const int d = f.grid.dim();
    if (!(gamma > 0.0 && gamma < d)) throw RangeError("riesz_potential_fourier requires 0 < gamma < d");
    require_edge_decay(f);
    return apply_multiplier(f, radial_symbol(gamma, d));
}

SampledField riesz_potential_convolution(const SampledField& f, double gamma) {
    const int d = f.grid.dim();
    if (!(gamma > 0.0 && gamma < d)) throw RangeError("riesz_potential_convolution requires 0 < gamma < d");
    require_edge_decay(f);
    return convolve_box(f, kernel_from_radial_symbol(gamma, d));
}

std::map<MultiIndex, cplx> taylor_coeffs(const SampledField& f, int max_order) {
    std::map<MultiIndex, cplx> out;
    for (const auto& [i, m] : spatial_moments(f, max_order)) out.emplace(i, ipow(-i.order()) * m);
    return out;
}

SampledField generalized_riesz(const SampledField& f, const HomogeneousSymbol& omega) {
    const int d = f.grid.dim();
    if (omega.dim() != d) throw RangeError("generalized_riesz: symbol dimension mismatch");
    const double gamma = -omega.degree();
    if (is_nonnegative_integer(gamma - d))
        throw RangeError("generalized_riesz: gamma - d = " + std::to_string(gamma - d) + " is a nonnegative integer");
    if (gamma < d) return apply_multiplier(f, omega);

    // gamma > d: k0 = smallest integer above gamma - d; every weighted symbol has degree k0 - gamma > -d.
    const int k0 = static_cast<int>(std::floor(gamma - d)) + 1;
    const double factor = rieszlab::gamma(d - gamma) / rieszlab::gamma(d + k0 - gamma);
    SampledField out(f.grid);
    std::array<double, 3> buf{};
    std::span<double> x(buf.data(), static_cast<std::size_t>(d));
    const double k0_fact = std::tgamma(k0 + 1.0);
    for (const auto& j : multi_indices(d, k0)) {
        SampledField fj = f;
        for (std::size_t n = 0; n < f.size(); ++n) {
            f.grid.coords(n, x);
            fj.values[n] *= monomial_eval(x, j);
        }
        for (const auto& i : multi_indices_of_order(d, k0 - j.order())) {
            const SampledField Jij = apply_multiplier(fj, weight_symbol(omega, i + j));
            const double coef = factor * k0_fact / (i.factorial() * j.factorial());
            const double sgn = (i.order() % 2 == 0) ? 1.0 : -1.0;
            for (std::size_t n = 0; n < f.size(); ++n) {
                f.grid.coords(n, x);
                out.values[n] += coef * sgn * monomial_eval(x, i) * Jij.values[n];
            }
        }
    }
    return out;
}

TailedField generalized_riesz_tailed(const SampledField& f, const HomogeneousSymbol& omega) {
    if (f.grid.dim() != 1) throw RangeError("generalized_riesz_tailed requires d = 1");
    SampledField body = generalized_riesz(f, omega);
    const auto K = kernel_of_symbol(omega);
    return {std::move(body), multipole_far_field(power_terms_1d(K), f, f.grid.half_width())};
}

// ---------------------------------------------------------------------------------------------
// Integrable potential: Fourier path

OperatorResult integrable_potential_fourier(const SampledField& f, const PotentialSpec& spec) {
    const int d = f.grid.dim();
    if (spec.dim() != d) throw SpecError("spec dimension does not match the grid");
    require_edge_decay(f);
    const HomogeneousSymbol omega = spec.symbol();
    MultiplierDiagnostics md;
    SampledField J = apply_multiplier(f, omega, -1, &md);

    RadialPolyKernel singular;
    if (spec.k1() >= 0) {
        const RadialPolyKernel K = kernel_of_symbol(omega);
        const auto moments = spatial_moments(f, spec.k1());
        for (const auto& i : spec.correction_set()) {
            const double sgn = (i.order() % 2 == 0) ? 1.0 : -1.0;
            singular = singular + differentiate(K, i) * (-sgn * moments.at(i) / i.factorial());
        }
    }
    OperatorResult res(std::move(J), std::move(singular), OperatorPath::fourier);

    // Literal corrected spectrum: its size beyond half the Nyquist frequency measures what a plain
    // inverse transform of it would truncate.
    const SampledField spec_field = corrected_spectrum(f, omega, spec.k1());
    const double nyquist = std::numbers::pi / f.grid.spacing();
    std::array<double, 3> buf{};
    std::span<double> xi(buf.data(), static_cast<std::size_t>(d));
    double tail = 0.0;
    for (std::size_t n = 0; n < spec_field.size(); ++n) {
        spec_field.grid.dual_coords(n, xi);
        double r = 0.0;
        for (double v : xi) r += v * v;
        if (std::sqrt(r) > 0.5 * nyquist) tail = std::max(tail, std::abs(spec_field.values[n]));
    }
    res.diagnostics["tail_sup"] = tail;
    res.diagnostics["origin_correction"] = md.origin_correction;
    res.diagnostics["series_terms"] = md.series_terms;
    return res;
}

OperatorResult adjoint_integrable_potential(const SampledField& f, const PotentialSpec& spec) {
    if (spec.dim() != f.grid.dim()) throw SpecError("spec dimension does not match the grid");
    require_edge_decay(f);
    // Omega(-xi) = Omega(xi) for the radial symbol.
    MultiplierDiagnostics md;
    SampledField out = apply_multiplier(f, spec.symbol(), spec.k1(), &md);
    OperatorResult res(std::move(out), RadialPolyKernel(), OperatorPath::fourier);
    res.diagnostics["origin_correction"] = md.origin_correction;
    res.diagnostics["series_terms"] = md.series_terms;
    return res;
}

// ---------------------------------------------------------------------------------------------
// Integrable potential: spatial path

namespace {

enum class KernelCase { none = 0, one = 1, two = 2, three = 3 };

KernelCase classify(const PotentialSpec& spec) {
    const int k1 = spec.k1();
    if (k1 < 0) return KernelCase::none;
    if (spec.gamma() > k1 + 1) return KernelCase::one;
    if (k1 == 0) return KernelCase::three;
    return KernelCase::two;
}

// \int_a^\infty u^q F(u) du for one side of a far field (u = |y|).
cplx side_moment_tail(const std::vector<PowerSeries>& series, double scale, double a, int q) {
    cplx total{};
    for (const auto& s : series)
        for (std::size_t t = 0; t < s.coeffs.size(); ++t) {
            if (s.coeffs[t] == cplx{}) continue;
            const double P = s.base - static_cast<double>(t) + q;
            if (P >= -1.0) throw DecayError("weighted far field is not integrable");
            total += s.coeffs[t] * std::pow(scale, q + 1.0) * (-std::pow(a / scale, P + 1.0) / (P + 1.0));
        }
    return total;
}

// Far field of g_j on one side: base b + j, coefficients
//   fac s^j sign sum_r binom(w,r) (-1)^r (-c_t / (b - t + j - r)),  sign = (-1)^j on the right, 1 on the left.
std::vector<PowerSeries> g_far_side(const std::vector<PowerSeries>& series, double scale, int j, int w, double fac,
                                    double sign) {
    std::vector<PowerSeries> out;
    const double sj = std::pow(scale, j);
    for (const auto& s : series) {
        PowerSeries g{s.base + j, std::vector<cplx>(s.coeffs.size(), cplx{})};
        for (std::size_t t = 0; t < s.coeffs.size(); ++t) {
            cplx acc{};
            for (int r = 0; r <= w; ++r) {
                const double denom = s.base - static_cast<double>(t) + j - r;
                acc += binomial(w, r) * ((r % 2 == 0) ? 1.0 : -1.0) * (-s.coeffs[t] / denom);
            }
            g.coeffs[t] = fac * sj * sign * acc;
        }
        out.push_back(std::move(g));
    }
    return out;
}

void derivative_1d(const std::vector<cplx>& phi, double h, std::vector<cplx>& out) {
    const std::size_t n = phi.size();
    out.assign(n, cplx{});
    for (std::size_t m = 1; m + 1 < n; ++m) out[m] = (phi[m + 1] - phi[m - 1]) / (2.0 * h);
    out[0] = (-3.0 * phi[0] + 4.0 * phi[1] - phi[2]) / (2.0 * h);
    out[n - 1] = (3.0 * phi[n - 1] - 4.0 * phi[n - 2] + phi[n - 3]) / (2.0 * h);
}

// g_j(y) = fac \int_0^1 (1-t)^w (-y/t)^j f(y/t) t^{-1} dt for d = 1, written as
//   y > 0: fac sum_r binom(w,r) (-y)^r (-1)^j \int_y^\infty u^{j-r-1} f(u) du,
//   y < 0: fac sum_r binom(w,r) (-y)^r (-1)^r \int_{-\infty}^y |u|^{j-r-1} f(u) du,
// (substituting u = y/t), with cumulative trapezoid sums plus the h^2/12 end corrections and the
// far field integrated in closed form. At y = 0 the one-sided limits differ; the node takes their mean.
TailedField build_g_1d(const TailedField& in, int j, int w, double fac) {
    const Grid& g = in.body.grid;
    const int n = g.points_per_axis();
    const double h = g.spacing();
    const auto N = static_cast<std::size_t>(n);
    const double scale = in.tail.empty() ? g.half_width() : in.tail.scale();
    const double a_right = std::abs(g.node(n - 1)), a_left = std::abs(g.node(0));

    std::vector<std::vector<cplx>> right(static_cast<std::size_t>(w) + 1), left(static_cast<std::size_t>(w) + 1);
    std::vector<cplx> phi(N), psi(N), dphi, dpsi;
    for (int r = 0; r <= w; ++r) {
        const int q = j - r - 1;
        // phi = u^q f for the right integrals, psi = |u|^q f for the left ones.
        for (std::size_t m = 0; m < N; ++m) {
            const double u = g.node(static_cast<int>(m));
            phi[m] = std::pow(u, q) * in.body.values[m];
            psi[m] = std::pow(std::abs(u), q) * in.body.values[m];
        }
        derivative_1d(phi, h, dphi);
        derivative_1d(psi, h, dpsi);
        auto& R = right[static_cast<std::size_t>(r)];
        auto& Lc = left[static_cast<std::size_t>(r)];
        R.assign(N, cplx{});
        Lc.assign(N, cplx{});
        for (std::size_t m = N - 1; m-- > 0;) R[m] = R[m + 1] + 0.5 * h * (phi[m] + phi[m + 1]);
        for (std::size_t m = 1; m < N; ++m) Lc[m] = Lc[m - 1] + 0.5 * h * (psi[m] + psi[m - 1]);
        const cplx tail_r = in.tail.empty() ? cplx{} : side_moment_tail(in.tail.right(), scale, a_right, q);
        // On the left |u|^q F: the series is stored in |u| already.
        const cplx tail_l = in.tail.empty() ? cplx{} : side_moment_tail(in.tail.left(), scale, a_left, q);
        for (std::size_t m = 0; m < N; ++m) {
            R[m] += -h * h / 12.0 * (dphi[N - 1] - dphi[m]) + tail_r;
            Lc[m] += -h * h / 12.0 * (dpsi[m] - dpsi[0]) + tail_l;
        }
    }

    SampledField body(g);
    const double sj = (j % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t m = 0; m < N; ++m) {
        const double y = g.node(static_cast<int>(m));
        if (y > 0.0) {
            cplx s{};
            for (int r = 0; r <= w; ++r) s += binomial(w, r) * std::pow(-y, r) * sj * right[static_cast<std::size_t>(r)][m];
            body.values[m] = fac * s;
        } else if (y < 0.0) {
            cplx s{};
            for (int r = 0; r <= w; ++r)
                s += binomial(w, r) * std::pow(-y, r) * ((r % 2 == 0) ? 1.0 : -1.0) * left[static_cast<std::size_t>(r)][m];
            body.values[m] = fac * s;
        } else {
            body.values[m] = 0.5 * fac * (sj * right[0][m] + left[0][m]);
        }
    }

    FarField1D tail(scale);
    if (!in.tail.empty()) {
        tail.right() = g_far_side(in.tail.right(), scale, j, w, fac, sj);
        tail.left() = g_far_side(in.tail.left(), scale, j, w, fac, 1.0);
    }
    return {std::move(body), std::move(tail)};
}

cplx total_integral_1d(const TailedField& f) {
    cplx s = integrate(f.body);
    if (!f.tail.empty()) {
        const auto [a_left, a_right] = box_edges_1d(f.body.grid);
        s += f.tail.integral_right(a_right) + f.tail.integral_left(a_left);
    }
    return s;
}

OperatorResult spatial_1d(const TailedField& in, const PotentialSpec& spec) {
    const RadialPolyKernel K = kernel_of_symbol(spec.symbol());
    const KernelCase kc = classify(spec);
    const int k1 = spec.k1();
    SampledField regular(in.body.grid);
    RadialPolyKernel singular;
    double g_integral = 0.0;

    if (kc == KernelCase::none || kc == KernelCase::three) {
        regular = convolve_tailed_1d(in, K);
        if (kc == KernelCase::three) {
            const cplx M0 = total_integral_1d(in);
            singular = K * (-M0);
            g_integral = std::abs(M0);
        }
    } else {
        const bool one = kc == KernelCase::one;
        const int j = one ? k1 + 1 : k1;
        const int w = one ? k1 : k1 - 1;
        const double fac = one ? k1 + 1.0 : static_cast<double>(k1);
        const double jfact = std::tgamma(j + 1.0);
        const RadialPolyKernel Kj = differentiate(K, MultiIndex({j}));
        const TailedField gj = build_g_1d(in, j, w, fac);
        regular = (1.0 / jfact) * convolve_tailed_1d(gj, Kj);
        if (!one) {
            const cplx G = total_integral_1d(gj);
            singular = Kj * (-G / jfact);
            g_integral = std::abs(G);
        }
    }
    OperatorResult res(std::move(regular), std::move(singular), OperatorPath::spatial_kernel);
    res.diagnostics["kernel_case"] = static_cast<double>(kc);
    res.diagnostics["subtracted_integral"] = g_integral;
    return res;
}

// d = 2: g_j by the 64-point Gauss-Legendre rule in t with multilinear interpolation of f
// (zero outside the sampled box).
SampledField build_g_2d(const SampledField& f, const MultiIndex& j, int w, double fac) {
    const Grid& g = f.grid;
    SampledField out(g);
    static const QuadratureRule rule = gauss_legendre(64, 0.0, 1.0);
    parallel_for(g.size(), [&](std::size_t n) {
        std::array<double, 2> y{}, z{};
        g.coords(n, y);
        cplx s{};
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double t = rule.nodes[q];
            z = {y[0] / t, y[1] / t};
            const cplx fv = interpolate(f, z, true);
            if (fv == cplx{}) continue;
            const std::array<double, 2> mz{-z[0], -z[1]};
            s += rule.weights[q] * std::pow(1.0 - t, w) * monomial_eval(mz, j) * fv / (t * t);
        }
        out.values[n] = fac * s;
    });
    return out;
}

OperatorResult spatial_2d(const SampledField& f, const PotentialSpec& spec) {
    const RadialPolyKernel K = kernel_of_symbol(spec.symbol());
    const KernelCase kc = classify(spec);
    const int k1 = spec.k1();
    SampledField regular(f.grid);
    RadialPolyKernel singular;
    if (kc == KernelCase::none || kc == KernelCase::three) {
        regular = convolve_box(f, K);
        if (kc == KernelCase::three) singular = K * (-integrate(f));
    } else {
        const bool one = kc == KernelCase::one;
        const int order = one ? k1 + 1 : k1;
        const int w = one ? k1 : k1 - 1;
        const double fac = one ? k1 + 1.0 : static_cast<double>(k1);
        for (const auto& j : multi_indices_of_order(2, order)) {
            const RadialPolyKernel Kj = differentiate(K, j);
            const SampledField gj = build_g_2d(f, j, w, fac);
            regular = regular + (1.0 / j.factorial()) * convolve_box(gj, Kj);
            if (!one) singular = singular + Kj * (-integrate(gj) / j.factorial());
        }
    }
    OperatorResult res(std::move(regular), std::move(singular), OperatorPath::spatial_kernel);
    res.diagnostics["kernel_case"] = static_cast<double>(kc);
    return res;
}

}  // namespace

OperatorResult integrable_potential_spatial(const SampledField& f, const PotentialSpec& spec) {
    if (spec.dim() != f.grid.dim()) throw SpecError("spec dimension does not match the grid");
    require_edge_decay(f);
    if (f.grid.dim() == 1) return spatial_1d(TailedField{f, FarField1D()}, spec);
    return spatial_2d(f, spec);
}

OperatorResult integrable_potential_spatial(const TailedField& f, const PotentialSpec& spec) {
    if (f.body.grid.dim() != 1 || spec.dim() != 1) throw SpecError("tailed input requires d = 1");
    if (f.tail.empty()) require_edge_decay(f.body);
    return spatial_1d(f, spec);
}

}  // namespace rieszlab
