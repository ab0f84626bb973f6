#pragma once

#include <complex>
#include <span>
#include <vector>

#include "rieszlab/symbols.hpp"

namespace rieszlab {

// Pointwise-evaluation kernel of the integrable potential with p = 1, i.e. U applied to the point mass
// at y0 (k1 = floor(gamma)):
//   k1 = 0:  H(x) = K(x - y0) - K(x)
//   k1 >= 1: H(x) = sum_{|j| = k1} (k1 / j!) \int_0^1 (K_j(x - t y0) - K_j(x)) (-y0)^j (1-t)^{k1-1} dt
// with K = c_{gamma,d} |x|^{gamma-d} and K_j = d^j K. The t-integral uses 64-point Gauss-Legendre
// panels split and graded at t* = <x,y0>/|y0|^2, where K_j(x - t y0) is singular on the line.
// Its transform is (e^{-i<y0,xi>} - sum_{|i| <= k1} (-i<y0,xi>)^{|i|}/|i|!) |xi|^{-gamma}.
class HKernel {
public:
    // Throws RangeError for integer gamma.
    HKernel(std::vector<double> y0, double gamma, int d);

    int dim() const { return d_; }
    double gamma() const { return gamma_; }
    int k1() const { return k1_; }
    const std::vector<double>& y0() const { return y0_; }
    bool vanishes() const { return zero_; }

    // Throws SingularPoint at x = 0 and, for k1 = 0, at x = y0.
    double operator()(std::span<const double> x) const;
    // Points where the kernel is singular.
    std::vector<std::vector<double>> singular_points() const;
    std::complex<double> fourier(std::span<const double> xi) const;

private:
    std::vector<double> y0_;
    double gamma_;
    int d_, k1_;
    bool zero_;
    RadialPolyKernel K_;
    std::vector<std::pair<MultiIndex, RadialPolyKernel>> Kj_;
};

HKernel h_kernel(std::vector<double> y0, double gamma, int d);

}  // namespace rieszlab
