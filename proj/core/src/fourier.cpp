#include "rieszlab/fourier.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include <fftw3.h>

#include "rieszlab/errors.hpp"
#include "detail/fft.hpp"

namespace rieszlab {

namespace detail {

// The FFTW planner is not re-entrant; executing a plan is.
void fft_inplace(std::vector<cplx>& data, int d, int n, int sign) {
    static std::mutex planner;
    std::array<int, 3> dims{n, n, n};
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner);
        plan = fftw_plan_dft(d, dims.data(), buf, buf, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner);
    fftw_destroy_plan(plan);
}

}  // namespace detail

namespace {

// prod over axes of (-1)^{idx_a}, optionally shifted by n/2 per axis.
std::vector<double> checkerboard(const Grid& g, bool centered) {
    std::vector<double> s(g.size());
    std::array<int, 3> idx{};
    std::span<int> is(idx.data(), static_cast<std::size_t>(g.dim()));
    const int shift = centered ? g.points_per_axis() / 2 : 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.unflatten(i, is);
        int parity = 0;
        for (int v : is) parity += v - shift;
        s[i] = (parity % 2 == 0) ? 1.0 : -1.0;
    }
    return s;
}

}  // namespace

SampledField continuous_ft(const SampledField& f) {
    if (f.tag != DomainTag::spatial) throw DomainTagError("continuous_ft expects a spatial field");
    const Grid& g = f.grid;
    const auto pre = checkerboard(g, false);
    const auto post = checkerboard(g, true);
    std::vector<cplx> buf(f.values);
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= pre[i];
    detail::fft_inplace(buf, g.dim(), g.points_per_axis(), FFTW_FORWARD);
    const double scale = std::pow(g.spacing(), g.dim());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= post[i] * scale;
    return SampledField(g, std::move(buf), DomainTag::frequency);
}

SampledField continuous_ift(const SampledField& F) {
    if (F.tag != DomainTag::frequency) throw DomainTagError("continuous_ift expects a frequency field");
    const Grid& g = F.grid;
    const auto pre = checkerboard(g, true);
    const auto post = checkerboard(g, false);
    std::vector<cplx> buf(F.values);
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= pre[i];
    detail::fft_inplace(buf, g.dim(), g.points_per_axis(), FFTW_BACKWARD);
    const double scale = 1.0 / std::pow(g.points_per_axis() * g.spacing(), g.dim());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= post[i] * scale;
    return SampledField(g, std::move(buf), DomainTag::spatial);
}

cplx integrate(const SampledField& f) {
    cplx s{};
    for (const auto& v : f.values) s += v;
    return s * std::pow(f.grid.spacing(), f.grid.dim());
}

cplx spatial_moment(const SampledField& f, const MultiIndex& i) {
    if (i.dim() != f.grid.dim()) throw RangeError("spatial_moment: multi-index dimension mismatch");
    std::array<double, 3> x{};
    std::span<double> xs(x.data(), static_cast<std::size_t>(f.grid.dim()));
    cplx s{};
    for (std::size_t k = 0; k < f.size(); ++k) {
        f.grid.coords(k, xs);
        s += monomial_eval(xs, i) * f.values[k];
    }
    return s * std::pow(f.grid.spacing(), f.grid.dim());
}

std::map<MultiIndex, cplx> spatial_moments(const SampledField& f, int max_order) {
    std::map<MultiIndex, cplx> out;
    for (const auto& i : multi_indices(f.grid.dim(), max_order)) out.emplace(i, spatial_moment(f, i));
    return out;
}

std::vector<cplx> scaled_moments_1d(const SampledField& f, double s, int max_order) {
    if (f.grid.dim() != 1) throw RangeError("scaled_moments_1d requires d = 1");
    std::vector<cplx> mu(static_cast<std::size_t>(max_order) + 1, cplx{});
    const Grid& g = f.grid;
    for (int m = 0; m < g.points_per_axis(); ++m) {
        const double y = s * g.node(m);
        double t = 1.0;
        const cplx v = f.values[static_cast<std::size_t>(m)];
        if (v == cplx{}) continue;
        for (int a = 0; a <= max_order; ++a) {
            if (a > 0) t *= y / a;
            mu[static_cast<std::size_t>(a)] += t * v;
        }
    }
    for (auto& v : mu) v *= g.spacing();
    return mu;
}

}  // namespace rieszlab
