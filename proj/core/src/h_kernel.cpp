#include "rieszlab/h_kernel.hpp"

#include <algorithm>
#include <cmath>

#include "rieszlab/errors.hpp"
#include "rieszlab/quadrature.hpp"

namespace rieszlab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

HKernel::HKernel(std::vector<double> y0, double gamma, int d)
    : y0_(std::move(y0)), gamma_(gamma), d_(d), k1_(static_cast<int>(std::floor(gamma))), zero_(true) {
    if (static_cast<int>(y0_.size()) != d) throw RangeError("h_kernel: y0 dimension mismatch");
    if (!(gamma > 0.0) || gamma == std::nearbyint(gamma)) throw RangeError("h_kernel requires a positive non-integer gamma");
    for (double v : y0_) zero_ = zero_ && v == 0.0;
    K_ = kernel_of_symbol(radial_symbol(gamma, d));
    if (k1_ >= 1)
        for (const auto& j : multi_indices_of_order(d, k1_)) Kj_.emplace_back(j, differentiate(K_, j));
}

std::vector<std::vector<double>> HKernel::singular_points() const {
    std::vector<std::vector<double>> pts{std::vector<double>(static_cast<std::size_t>(d_), 0.0)};
    if (!zero_) pts.push_back(y0_);
    return pts;
}

double HKernel::operator()(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != d_) throw RangeError("h_kernel: point dimension mismatch");
    if (zero_) return 0.0;
    bool at_origin = true, at_y0 = true;
    for (int a = 0; a < d_; ++a) {
        at_origin = at_origin && x[static_cast<std::size_t>(a)] == 0.0;
        at_y0 = at_y0 && x[static_cast<std::size_t>(a)] == y0_[static_cast<std::size_t>(a)];
    }
    if (at_origin) throw SingularPoint("H is singular at the origin");
    std::vector<double> z(static_cast<std::size_t>(d_));
    if (k1_ == 0) {
        if (at_y0) throw SingularPoint("H is singular at y0");
        for (int a = 0; a < d_; ++a) z[static_cast<std::size_t>(a)] = x[static_cast<std::size_t>(a)] - y0_[static_cast<std::size_t>(a)];
        return (K_.eval(z) - K_.eval(x)).real();
    }

    // k1 >= 1: the integrand is singular where x - t y0 = 0, i.e. near t* on the line through y0.
    const double yy = dot(y0_, y0_);
    const double tstar = dot(x, y0_) / yy;
    const double beta = gamma_ - d_ - k1_;  // homogeneity degree of K_j
    const double q = (beta < 0.0) ? std::max(2.0, 2.0 / (1.0 + std::max(beta, -0.9))) : 1.0;
    std::vector<double> mj(static_cast<std::size_t>(d_));
    for (int a = 0; a < d_; ++a) mj[static_cast<std::size_t>(a)] = -y0_[static_cast<std::size_t>(a)];

    auto integrand_at = [&](const std::vector<double>& z, double t) {
        double r2 = 0.0;
        for (double v : z) r2 += v * v;
        if (r2 == 0.0) return 0.0;  // measure-zero node of the graded rule
        double s = 0.0;
        for (const auto& [j, Kj] : Kj_)
            s += k1_ / j.factorial() * monomial_eval(mj, j) * Kj.eval(z).real();
        return s * std::pow(1.0 - t, k1_ - 1);
    };
    auto integrand = [&](double t) {
        for (int a = 0; a < d_; ++a) z[static_cast<std::size_t>(a)] = x[static_cast<std::size_t>(a)] - t * y0_[static_cast<std::size_t>(a)];
        return integrand_at(z, t);
    };
    double total = 0.0;
    if (tstar > 0.0 && tstar < 1.0) {
        // x - t y0 = perp + (t* - t) y0 with perp orthogonal to y0 (zero in one dimension); forming z
        // this way keeps its relative accuracy at the graded nodes closest to t*.
        std::vector<double> perp(static_cast<std::size_t>(d_), 0.0);
        if (d_ > 1)
            for (int a = 0; a < d_; ++a)
                perp[static_cast<std::size_t>(a)] = x[static_cast<std::size_t>(a)] - tstar * y0_[static_cast<std::size_t>(a)];
        auto near = [&](double u, double side) {
            for (int a = 0; a < d_; ++a)
                z[static_cast<std::size_t>(a)] = perp[static_cast<std::size_t>(a)] + side * u * y0_[static_cast<std::size_t>(a)];
            return integrand_at(z, tstar - side * u);
        };
        total += graded_gauss([&](double u) { return near(u, 1.0); }, 0.0, tstar, 64, q);
        total += graded_gauss([&](double u) { return near(u, -1.0); }, 0.0, 1.0 - tstar, 64, q);
    } else if (tstar <= 0.0) {
        total += graded_gauss(integrand, 0.0, 1.0, 64, tstar > -0.5 ? q : 1.0);
    } else {
        total += graded_gauss([&](double u) { return integrand(1.0 - u); }, 0.0, 1.0, 64, tstar < 1.5 ? q : 1.0);
    }
    // Constant part: sum_j (k1/j!) (-y0)^j K_j(x) \int_0^1 (1-t)^{k1-1} dt = sum_j (-y0)^j K_j(x) / j!.
    for (const auto& [j, Kj] : Kj_) total -= monomial_eval(mj, j) * Kj.eval(x).real() / j.factorial();
    return total;
}

std::complex<double> HKernel::fourier(std::span<const double> xi) const {
    const double s = dot(y0_, xi);
    double rho = 0.0;
    for (double v : xi) rho += v * v;
    rho = std::sqrt(rho);
    if (rho == 0.0) return 0.0;
    // e^{-is} minus its Taylor polynomial of degree k1 in s.
    std::complex<double> taylor = 0.0, term = 1.0;
    for (int k = 0; k <= k1_; ++k) {
        if (k > 0) term *= std::complex<double>(0.0, -s) / static_cast<double>(k);
        taylor += term;
    }
    return (std::exp(std::complex<double>(0.0, -s)) - taylor) * std::pow(rho, -gamma_);
}

HKernel h_kernel(std::vector<double> y0, double gamma, int d) { return HKernel(std::move(y0), gamma, d); }

}  // namespace rieszlab
