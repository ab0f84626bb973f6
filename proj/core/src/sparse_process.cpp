#include "rieszlab/sparse_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "rieszlab/errors.hpp"
#include "rieszlab/parallel.hpp"
#include "rieszlab/quadrature.hpp"
#include "rieszlab/test_functions.hpp"

namespace rieszlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kMaxSubpanels = 4096;

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// sin(x)/x.
double sinc(double x) { return std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

}  // namespace

// ---------------------------------------------------------------------------------------------
// Amplitudes

AmplitudeDist AmplitudeDist::deterministic(double a0) {
    if (!std::isfinite(a0)) throw ConfigError("deterministic amplitude must be finite");
    return {Kind::deterministic, a0, 0.0};
}

AmplitudeDist AmplitudeDist::gaussian(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("gaussian amplitude needs sigma > 0");
    return {Kind::gaussian, sigma, 0.0};
}

AmplitudeDist AmplitudeDist::laplace(double b) {
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("laplace amplitude needs b > 0");
    return {Kind::laplace, b, 0.0};
}

AmplitudeDist AmplitudeDist::uniform(double lo, double hi) {
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) throw ConfigError("uniform amplitude needs lo < hi");
    return {Kind::uniform, lo, hi};
}

AmplitudeDist AmplitudeDist::from_name(const std::string& name, const std::vector<double>& params) {
    auto need = [&](std::size_t k) {
        if (params.size() != k)
            throw ConfigError("amplitude '" + name + "' takes " + std::to_string(k) + " parameter(s)");
    };
    if (name == "deterministic") {
        if (params.empty()) return deterministic(1.0);
        need(1);
        return deterministic(params[0]);
    }
    if (name == "gaussian") {
        if (params.empty()) return gaussian(1.0);
        need(1);
        return gaussian(params[0]);
    }
    if (name == "laplace") {
        if (params.empty()) return laplace(1.0);
        need(1);
        return laplace(params[0]);
    }
    if (name == "uniform") {
        if (params.empty()) return uniform(-1.0, 1.0);
        need(2);
        return uniform(params[0], params[1]);
    }
    if (name == "cauchy")
        throw ConfigError("amplitude 'cauchy' rejected: the process requires a finite mean absolute amplitude "
                          "(\\int |a| dP(a) < infinity), which the Cauchy law violates");
    throw ConfigError("unknown amplitude kind '" + name + "'");
}

double AmplitudeDist::sample(Rng& rng) const {
    switch (kind_) {
        case Kind::deterministic: return p0_;
        case Kind::gaussian: return p0_ * rng.normal();
        case Kind::laplace: return rng.laplace(p0_);
        case Kind::uniform: return rng.uniform(p0_, p1_);
    }
    return 0.0;
}

double AmplitudeDist::mean() const {
    switch (kind_) {
        case Kind::deterministic: return p0_;
        case Kind::gaussian:
        case Kind::laplace: return 0.0;
        case Kind::uniform: return 0.5 * (p0_ + p1_);
    }
    return 0.0;
}

double AmplitudeDist::mean_abs() const {
    switch (kind_) {
        case Kind::deterministic: return std::abs(p0_);
        case Kind::gaussian: return p0_ * std::sqrt(2.0 / std::numbers::pi);
        case Kind::laplace: return p0_;
        case Kind::uniform: {
            const double lo = p0_, hi = p1_;
            if (lo >= 0.0 || hi <= 0.0) return std::abs(0.5 * (lo + hi));
            return (lo * lo + hi * hi) / (2.0 * (hi - lo));
        }
    }
    return 0.0;
}

cplx AmplitudeDist::characteristic(double s) const { return 1.0 + characteristic_minus_one(s); }

cplx AmplitudeDist::characteristic_minus_one(double s) const {
    switch (kind_) {
        case Kind::deterministic: {
            const double x = p0_ * s;
            const double h = std::sin(0.5 * x);
            return {-2.0 * h * h, -std::sin(x)};
        }
        case Kind::gaussian: return std::expm1(-0.5 * p0_ * p0_ * s * s);
        case Kind::laplace: {
            const double q = p0_ * p0_ * s * s;
            return -q / (1.0 + q);
        }
        case Kind::uniform: {
            // e^{-i m s} sinc(w s) - 1 = (e^{-i m s} - 1) sinc(w s) + (sinc(w s) - 1)
            const double m = 0.5 * (p0_ + p1_), w = 0.5 * (p1_ - p0_);
            const double x = m * s, h = std::sin(0.5 * x);
            const cplx em1(-2.0 * h * h, -std::sin(x));
            const double ws = w * s;
            const double sm1 = std::abs(ws) < 1e-4 ? -ws * ws / 6.0 : std::sin(ws) / ws - 1.0;
            return em1 * sinc(ws) + sm1;
        }
    }
    return 0.0;
}

double AmplitudeDist::scale() const {
    switch (kind_) {
        case Kind::deterministic: return std::abs(p0_);
        case Kind::gaussian:
        case Kind::laplace: return p0_;
        case Kind::uniform: return std::max(std::abs(p0_), std::abs(p1_));
    }
    return 1.0;
}

std::string AmplitudeDist::describe() const {
    switch (kind_) {
        case Kind::deterministic: return "deterministic(" + num(p0_) + ")";
        case Kind::gaussian: return "gaussian(" + num(p0_) + ")";
        case Kind::laplace: return "laplace(" + num(p0_) + ")";
        case Kind::uniform: return "uniform(" + num(p0_) + ", " + num(p1_) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------------------------
// Configuration and sampling

void PoissonConfig::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be positive, got " + num(lambda));
    if (!(B > 0.0) || !std::isfinite(B)) throw ConfigError("box half-width B must be positive, got " + num(B));
    if (d != 1 && d != 2) throw ConfigError("d must be 1 or 2");
}

double PoissonConfig::expected_count() const { return lambda * std::pow(2.0 * B, d); }

std::string CharFunctionalEstimate::to_json() const {
    nlohmann::ordered_json j;
    j["re"] = value.real();
    j["im"] = value.imag();
    j["stderr"] = std_error;
    j["n"] = n_samples;
    return j.dump();
}

PoissonRealization sample_realization(const PoissonConfig& cfg, std::uint64_t stream) {
    cfg.validate();
    Rng rng(cfg.seed, stream);
    const std::uint64_t N = rng.poisson(cfg.expected_count());
    PoissonRealization r;
    r.points.reserve(N);
    r.amplitudes.reserve(N);
    for (std::uint64_t k = 0; k < N; ++k) {
        std::vector<double> x(static_cast<std::size_t>(cfg.d));
        for (auto& v : x) v = rng.uniform(-cfg.B, cfg.B);
        r.points.push_back(std::move(x));
    }
    for (std::uint64_t k = 0; k < N; ++k) r.amplitudes.push_back(cfg.amplitude.sample(rng));
    return r;
}

// ---------------------------------------------------------------------------------------------
// Functionals

namespace {

const PotentialSpec& require_p1(const PotentialSpec& spec) {
    if (spec.p() != 1.0) throw SpecError("the sparse process uses the p = 1 potential; got p = " + num(spec.p()));
    return spec;
}

}  // namespace

PotentialFunctional::PotentialFunctional(const SampledField& f, const PotentialSpec& spec)
    : spec_(require_p1(spec)), u_(integrable_potential_spatial(f, spec)) {}

std::vector<std::vector<double>> PotentialFunctional::singular_points() const {
    if (u_.singular.empty()) return {};
    return {std::vector<double>(static_cast<std::size_t>(spec_.dim()), 0.0)};
}

double PotentialFunctional::operator()(std::span<const double> x, std::size_t* shifted) const {
    if (!u_.singular.empty()) {
        bool at_origin = true;
        for (double v : x) at_origin = at_origin && v == 0.0;
        if (at_origin) {
            std::vector<double> z(x.begin(), x.end());
            z[0] += 0.5 * u_.regular.grid.spacing();
            if (shifted) ++*shifted;
            return u_.eval(z).real();
        }
    }
    return u_.eval(x).real();
}

double evaluate_functional(const PoissonRealization& r, const PotentialFunctional& g, std::size_t* shifted) {
    double s = 0.0;
    for (std::size_t k = 0; k < r.size(); ++k) s += r.amplitudes[k] * g(r.points[k], shifted);
    return s;
}

double evaluate_functional(const PoissonRealization& r, const SampledField& f, const PotentialSpec& spec) {
    return evaluate_functional(r, PotentialFunctional(f, spec));
}

double windowed_functional(const PoissonRealization& r, const PotentialFunctional& g, double N) {
    if (!(N > 0.0)) throw RangeError("window scale N must be positive");
    double s = 0.0;
    std::vector<double> z;
    for (std::size_t k = 0; k < r.size(); ++k) {
        z.assign(r.points[k].begin(), r.points[k].end());
        for (auto& v : z) v /= N;
        const double w = cutoff(z);
        if (w == 0.0) continue;
        s += r.amplitudes[k] * w * g(r.points[k]);
    }
    return s;
}

double windowed_functional(const PoissonRealization& r, const SampledField& f, const PotentialSpec& spec, double N) {
    return windowed_functional(r, PotentialFunctional(f, spec), N);
}

// ---------------------------------------------------------------------------------------------
// Quadrature of \int (E e^{-i a t g(x)} - 1) dx

namespace {

struct PhaseQuadrature {
    std::function<double(std::span<const double>)> g;
    const AmplitudeDist* amp;
    double t;
    std::vector<std::vector<double>> singular;  // points where g blows up
    double eps_min;                             // smallest dyadic panel next to a singular point
    std::size_t panels = 0;

    cplx integrand(std::span<const double> x) const { return amp->characteristic_minus_one(t * g(x)); }

    double phase_variation(double ga, double gb) const { return std::abs(t) * amp->scale() * std::abs(gb - ga); }

    // d = 1, [a, b] free of singular points (possibly at distance eps_min).
    cplx panel_1d(double a, double b) {
        static const QuadratureRule rule = gauss_legendre(16);
        const std::array<double, 1> xa{a}, xb{b};
        const double var = phase_variation(g(xa), g(xb));
        const int m = static_cast<int>(std::min<double>(kMaxSubpanels, 1.0 + std::floor(var / 2.0)));
        const double w = (b - a) / m;
        cplx s{};
        for (int k = 0; k < m; ++k) {
            const double lo = a + k * w, half = 0.5 * w, mid = lo + half;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const std::array<double, 1> x{mid + half * rule.nodes[i]};
                s += rule.weights[i] * half * integrand(x);
            }
        }
        panels += static_cast<std::size_t>(m);
        return s;
    }

    bool is_singular_1d(double x) const {
        for (const auto& p : singular)
            if (p[0] == x) return true;
        return false;
    }

    // [u, v] with possibly singular ends: dyadic panels toward each singular end.
    cplx interval_1d(double u, double v) {
        const bool su = is_singular_1d(u), sv = is_singular_1d(v);
        if (su && sv) {
            const double mid = 0.5 * (u + v);
            return interval_1d(u, mid) + interval_1d(mid, v);
        }
        if (!su && !sv) return panel_1d(u, v);
        cplx s{};
        double e = v - u;
        while (e > eps_min) {
            const double half = 0.5 * e;
            s += su ? panel_1d(u + half, u + e) : panel_1d(v - e, v - half);
            e = half;
        }
        // The last piece of width eps_min is dropped: |integrand| <= 2 bounds its contribution.
        return s;
    }

    // \int over [lo, hi] with breakpoints at anchor + k cell and at the singular points.
    cplx integrate_1d(double lo, double hi, double anchor, double cell) {
        std::vector<double> bp{lo, hi};
        const double k0 = std::ceil((lo - anchor) / cell), k1 = std::floor((hi - anchor) / cell);
        for (double k = k0; k <= k1; k += 1.0) bp.push_back(anchor + k * cell);
        for (const auto& p : singular)
            if (p[0] > lo && p[0] < hi) bp.push_back(p[0]);
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        // Drop slivers produced by round-off in the anchored breakpoints, keeping singular points.
        std::vector<double> clean{bp.front()};
        for (std::size_t i = 1; i < bp.size(); ++i) {
            if (bp[i] - clean.back() < 1e-12 * cell && !is_singular_1d(bp[i]) && i + 1 < bp.size()) continue;
            clean.push_back(bp[i]);
        }
        std::vector<cplx> parts(clean.size() - 1);
        std::vector<std::size_t> counts(parts.size());
        // Intervals are independent; each task keeps its own panel count.
        parallel_for(parts.size(), [&](std::size_t i) {
            PhaseQuadrature local = *this;
            local.panels = 0;
            parts[i] = local.interval_1d(clean[i], clean[i + 1]);
            counts[i] = local.panels;
        });
        cplx s{};
        for (std::size_t i = 0; i < parts.size(); ++i) {
            s += parts[i];
            panels += counts[i];
        }
        return s;
    }

    // d = 2 cell [x0, x0 + w] x [y0, y0 + w]: tensor 8-point Gauss-Legendre, quartered recursively
    // around singular points.
    cplx cell_2d(double x0, double y0, double w, int depth) {
        bool touches = false;
        for (const auto& p : singular)
            touches = touches || (p[0] >= x0 && p[0] <= x0 + w && p[1] >= y0 && p[1] <= y0 + w);
        if (touches && depth < 24) {
            const double h = 0.5 * w;
            return cell_2d(x0, y0, h, depth + 1) + cell_2d(x0 + h, y0, h, depth + 1) + cell_2d(x0, y0 + h, h, depth + 1) +
                   cell_2d(x0 + h, y0 + h, h, depth + 1);
        }
        if (touches) return {};  // innermost cell of width ~ 2^-24 w dropped
        static const QuadratureRule rule = gauss_legendre(8);
        const double half = 0.5 * w;
        cplx s{};
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                const std::array<double, 2> x{x0 + half * (1.0 + rule.nodes[i]), y0 + half * (1.0 + rule.nodes[j])};
                s += rule.weights[i] * rule.weights[j] * half * half * integrand(x);
            }
        ++panels;
        return s;
    }

    cplx integrate_2d(double lo, double hi, int cells) {
        const double w = (hi - lo) / cells;
        std::vector<cplx> rows(static_cast<std::size_t>(cells));
        std::vector<std::size_t> counts(rows.size());
        parallel_for(rows.size(), [&](std::size_t i) {
            PhaseQuadrature local = *this;
            local.panels = 0;
            cplx s{};
            for (int j = 0; j < cells; ++j) s += local.cell_2d(lo + static_cast<double>(i) * w, lo + j * w, w, 0);
            rows[i] = s;
            counts[i] = local.panels;
        });
        cplx s{};
        for (std::size_t i = 0; i < rows.size(); ++i) {
            s += rows[i];
            panels += counts[i];
        }
        return s;
    }
};

// \int_{|x| > R} |K| for a kernel decaying like |x|^beta, estimated from its values at |x| = R.
double power_tail(double value_at_R, double R, double beta, int d) {
    const double decay = -beta - d;
    if (!(decay > 0.0)) return std::numeric_limits<double>::infinity();
    const double surface = (d == 1) ? 1.0 : 2.0 * std::numbers::pi;  // per unit R^{d-1}, one side for d = 1
    return surface * value_at_R * std::pow(R, d) / decay;
}

}  // namespace

cplx charfun_closed_form(const PotentialFunctional& g, double t, const PoissonConfig& cfg, ClosedFormInfo* info) {
    cfg.validate();
    const Grid& grid = g.potential().regular.grid;
    if (cfg.d != grid.dim()) throw ConfigError("process dimension does not match the grid");
    const double h = grid.spacing();
    if (cfg.B > grid.half_width() - h) throw RangeError("process box [-B, B] must lie inside the sampled grid");
    if (t == 0.0) {
        if (info) *info = {};
        return 1.0;
    }

    PhaseQuadrature q{[&g](std::span<const double> x) { return g(x); }, &cfg.amplitude, t, g.singular_points(),
                      1e-12 * cfg.B};
    const cplx I = (cfg.d == 1) ? q.integrate_1d(-cfg.B, cfg.B, -grid.half_width(), h)
                                : q.integrate_2d(-cfg.B, cfg.B, std::min(grid.points_per_axis(), 256));

    if (info) {
        info->panels = q.panels;
        // Sampled part outside the box plus a power-law estimate beyond the grid.
        const SampledField& U = g.potential().field;
        double outside = 0.0;
        std::array<double, 2> x{};
        std::span<double> xs(x.data(), static_cast<std::size_t>(cfg.d));
        for (std::size_t i = 0; i < U.size(); ++i) {
            grid.coords(i, xs);
            bool inside = true;
            for (double v : xs) inside = inside && std::abs(v) <= cfg.B;
            if (!inside && std::isfinite(U.values[i].real())) outside += std::abs(U.values[i]) * std::pow(h, cfg.d);
        }
        const PotentialSpec& spec = g.spec();
        const double beta = spec.gamma() - spec.dim() - spec.k1() - 1.0;
        const double edge = std::max(std::abs(U.values.front()), std::abs(U.values.back()));
        outside += (cfg.d == 1 ? 2.0 : 1.0) * power_tail(edge, grid.half_width(), beta, cfg.d);
        info->tail_bound = cfg.lambda * cfg.amplitude.mean_abs() * std::abs(t) * outside;
    }
    return std::exp(cfg.lambda * I);
}

cplx charfun_closed_form(const SampledField& f, const PotentialSpec& spec, double t, const PoissonConfig& cfg) {
    return charfun_closed_form(PotentialFunctional(f, spec), t, cfg);
}

namespace {

std::vector<CharFunctionalEstimate> estimate(const std::vector<double>& values, const std::vector<double>& ts) {
    const std::size_t n = values.size();
    std::vector<CharFunctionalEstimate> out;
    for (double t : ts) {
        CharFunctionalEstimate e;
        e.n_samples = n;
        double sr = 0, si = 0;
        for (double v : values) {
            sr += std::cos(t * v);
            si -= std::sin(t * v);
        }
        const double mr = sr / n, mi = si / n;
        double vr = 0, vi = 0;
        for (double v : values) {
            const double dr = std::cos(t * v) - mr, di = -std::sin(t * v) - mi;
            vr += dr * dr;
            vi += di * di;
        }
        const double denom = static_cast<double>(n) * static_cast<double>(n - 1);
        e.value = {mr, mi};
        e.std_error = std::sqrt(std::max(vr, vi) / denom);
        out.push_back(e);
    }
    return out;
}

void require_samples(std::size_t n) {
    if (n < 100) throw ConfigError("n_samples must be at least 100, got " + std::to_string(n));
}

}  // namespace

std::vector<CharFunctionalEstimate> charfun_monte_carlo(const PotentialFunctional& g, const std::vector<double>& ts,
                                                        const PoissonConfig& cfg, std::size_t n_samples) {
    cfg.validate();
    require_samples(n_samples);
    const Grid& grid = g.potential().regular.grid;
    if (cfg.d != grid.dim()) throw ConfigError("process dimension does not match the grid");
    if (cfg.B > grid.half_width() - grid.spacing()) throw RangeError("process box [-B, B] must lie inside the sampled grid");
    std::vector<double> values(n_samples);
    parallel_for(n_samples, [&](std::size_t m) { values[m] = evaluate_functional(sample_realization(cfg, m), g); });
    return estimate(values, ts);
}

CharFunctionalEstimate charfun_monte_carlo(const SampledField& f, const PotentialSpec& spec, double t,
                                           const PoissonConfig& cfg, std::size_t n_samples) {
    return charfun_monte_carlo(PotentialFunctional(f, spec), {t}, cfg, n_samples).front();
}

// ---------------------------------------------------------------------------------------------
// Pointwise process

PoissonConfig pointwise_config(const PoissonConfig& cfg) {
    PoissonConfig c = cfg;
    c.B = 4.0 * cfg.B;
    return c;
}

cplx pointwise_charfun(const HKernel& H, double t, const PoissonConfig& cfg, ClosedFormInfo* info) {
    cfg.validate();
    if (H.dim() != cfg.d) throw ConfigError("process dimension does not match the kernel");
    if (info) *info = {};
    if (t == 0.0 || H.vanishes()) return 1.0;
    const double R = 4.0 * cfg.B;
    PhaseQuadrature q{[&H](std::span<const double> x) { return H(x); }, &cfg.amplitude, t, H.singular_points(),
                      1e-12 * R};
    const cplx I = (cfg.d == 1) ? q.integrate_1d(-R, R, 0.0, R / 2048.0) : q.integrate_2d(-R, R, 256);
    if (info) {
        info->panels = q.panels;
        const double beta = H.gamma() - H.dim() - H.k1() - 1.0;
        std::vector<double> xp(static_cast<std::size_t>(cfg.d), 0.0), xm = xp;
        xp[0] = R;
        xm[0] = -R;
        const double tail = (cfg.d == 1) ? power_tail(std::abs(H(xp)), R, beta, 1) + power_tail(std::abs(H(xm)), R, beta, 1)
                                         : power_tail(std::max(std::abs(H(xp)), std::abs(H(xm))), R, beta, 2);
        info->tail_bound = cfg.lambda * cfg.amplitude.mean_abs() * std::abs(t) * tail;
    }
    return std::exp(cfg.lambda * I);
}

std::vector<CharFunctionalEstimate> pointwise_charfun_monte_carlo(const HKernel& H, const std::vector<double>& ts,
                                                                  const PoissonConfig& cfg, std::size_t n_samples,
                                                                  std::size_t* shifted) {
    const PoissonConfig big = pointwise_config(cfg);
    big.validate();
    require_samples(n_samples);
    if (H.dim() != cfg.d) throw ConfigError("process dimension does not match the kernel");
    const auto sing = H.singular_points();
    const double nudge = 1e-9 * big.B;
    std::vector<double> values(n_samples, 0.0);
    std::vector<std::size_t> moved(n_samples, 0);
    if (!H.vanishes()) {
        parallel_for(n_samples, [&](std::size_t m) {
            const PoissonRealization r = sample_realization(big, m);
            double s = 0.0;
            for (std::size_t k = 0; k < r.size(); ++k) {
                std::vector<double> x = r.points[k];
                if (std::find(sing.begin(), sing.end(), x) != sing.end()) {
                    x[0] += nudge;
                    ++moved[m];
                }
                s += r.amplitudes[k] * H(x);
            }
            values[m] = s;
        });
    }
    if (shifted) {
        *shifted = 0;
        for (auto c : moved) *shifted += c;
    }
    return estimate(values, ts);
}

// ---------------------------------------------------------------------------------------------
// Delta approximants

CheckReport delta_approx_convergence(const std::vector<double>& y0, const PotentialSpec& spec,
                                     const std::vector<double>& Ns, const Grid& g) {
    require_p1(spec);
    const int d = g.dim();
    if (spec.dim() != d || static_cast<int>(y0.size()) != d) throw RangeError("dimension mismatch in delta approximants");
    if (Ns.size() < 2) throw RangeError("need at least two values of N");
    const HKernel H(y0, spec.gamma(), d);

    // Nodes excluded: the origin and the node nearest y0.
    std::vector<int> yi(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a)
        yi[static_cast<std::size_t>(a)] = static_cast<int>(
            std::lround((y0[static_cast<std::size_t>(a)] + g.half_width()) / g.spacing()));
    const std::size_t origin = g.origin_index(), ynode = g.flat(yi);

    SampledField Hv(g);
    parallel_for(g.size(), [&](std::size_t i) {
        if (i == origin || i == ynode) {
            Hv.values[i] = kNaN;
            return;
        }
        std::array<double, 2> x{};
        std::span<double> xs(x.data(), static_cast<std::size_t>(d));
        g.coords(i, xs);
        try {
            Hv.values[i] = H(xs);
        } catch (const SingularPoint&) {
            Hv.values[i] = kNaN;
        }
    });

    const double cell = std::pow(g.spacing(), d);
    const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * d);
    std::vector<double> errs;
    CheckReport r;
    bool limited = false;
    for (double N : Ns) {
        if (!(N > 0.0)) throw RangeError("N must be positive");
        const SampledField gN = SampledField::sample(g, [&](std::span<const double> x) {
            double r2 = 0.0;
            for (int a = 0; a < d; ++a) {
                const double u = N * (x[static_cast<std::size_t>(a)] - y0[static_cast<std::size_t>(a)]);
                r2 += u * u;
            }
            return cplx(std::pow(N, d) * norm * std::exp(-0.5 * r2));
        });
        const OperatorResult u = integrable_potential_spatial(gN, spec);
        double e = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i == origin || i == ynode) continue;
            const cplx a = u.field.values[i], b = Hv.values[i];
            if (!std::isfinite(a.real()) || !std::isfinite(b.real())) continue;
            e += cell * std::abs(a - b);
        }
        errs.push_back(e);
        r.series.emplace_back(N, e);
        // Fewer than four nodes per standard deviation of g_N: the error reflects the grid, not N.
        limited = limited || 1.0 / N < 4.0 * g.spacing();
    }
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < errs.size(); ++k) worst = std::max(worst, errs[k + 1] / errs[k]);
    if (H.vanishes() && errs.front() == 0.0) worst = 0.0;
    auto series = std::move(r.series);
    // Strict decrease: every ratio e_{k+1} / e_k below 1.
    r = CheckReport::make("delta_approx_convergence", CriterionMode::at_most, worst, 0.0, std::nextafter(1.0, 0.0));
    r.series = std::move(series);
    r.metadata = {{"gamma", num(spec.gamma())}, {"grid", g.describe()}, {"resolution_limited", limited ? "true" : "false"}};
    std::string ys;
    for (std::size_t a = 0; a < y0.size(); ++a) ys += (a ? "," : "") + num(y0[a]);
    r.metadata["y0"] = ys;
    return r;
}

// ---------------------------------------------------------------------------------------------
// Rendering

RenderedField render_field(const PoissonRealization& r, const PotentialSpec& spec, const Grid& g) {
    require_p1(spec);
    const int d = g.dim();
    if (spec.dim() != d) throw SpecError("spec dimension does not match the grid");
    std::vector<HKernel> kernels;
    std::vector<double> amps;
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (static_cast<int>(r.points[k].size()) != d) throw RangeError("impulse dimension does not match the grid");
        HKernel H(r.points[k], spec.gamma(), d);
        if (H.vanishes()) continue;
        kernels.push_back(std::move(H));
        amps.push_back(r.amplitudes[k]);
    }
    RenderedField out{SampledField(g), {}};
    std::vector<char> flag(g.size(), 0);
    parallel_for(g.size(), [&](std::size_t i) {
        std::array<double, 2> x{};
        std::span<double> xs(x.data(), static_cast<std::size_t>(d));
        g.coords(i, xs);
        double s = 0.0;
        for (std::size_t k = 0; k < kernels.size(); ++k) {
            try {
                s += amps[k] * kernels[k](xs);
            } catch (const SingularPoint&) {
                s = kNaN;
                flag[i] = 1;
                break;
            }
        }
        out.field.values[i] = s;
    });
    // The cells holding an impulse.
    for (const auto& H : kernels) {
        std::vector<int> idx(static_cast<std::size_t>(d));
        bool inside = true;
        for (int a = 0; a < d; ++a) {
            const long m = std::lround((H.y0()[static_cast<std::size_t>(a)] + g.half_width()) / g.spacing());
            inside = inside && m >= 0 && m < g.points_per_axis();
            idx[static_cast<std::size_t>(a)] = static_cast<int>(m);
        }
        if (inside) flag[g.flat(idx)] = 1;
    }
    for (std::size_t i = 0; i < g.size(); ++i)
        if (flag[i]) out.flagged_nodes.push_back(i);
    return out;
}

// ---------------------------------------------------------------------------------------------
// Self-similarity

CheckReport self_similarity_probe(const SampledField& f, const PotentialSpec& spec, double t, const PoissonConfig& cfg,
                                  double s, double tolerance) {
    if (!(s > 0.0)) throw RangeError("scale factor must be positive");
    const Grid& g = f.grid;
    const Grid gs(g.dim(), s * g.half_width(), g.points_per_axis());
    const SampledField fs(gs, f.values);  // f(. / s) sampled on the scaled grid
    PoissonConfig cs = cfg;
    cs.lambda = cfg.lambda * std::pow(s, -g.dim());
    cs.B = s * cfg.B;
    const cplx z1 = charfun_closed_form(PotentialFunctional(f, spec), t, cfg);
    const cplx z2 = charfun_closed_form(PotentialFunctional(fs, spec), t * std::pow(s, -spec.gamma()), cs);
    CheckReport r = CheckReport::make("self_similarity", CriterionMode::at_most, std::abs(z1 - z2), 0.0, tolerance);
    r.metadata = {{"gamma", num(spec.gamma())}, {"s", num(s)}, {"t", num(t)}, {"grid", g.describe()}};
    return r;
}

}  // namespace rieszlab
