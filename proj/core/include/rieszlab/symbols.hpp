#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "rieszlab/multi_index.hpp"

namespace rieszlab {

// Omega(xi) = (i xi)^monomial * |xi|^radial_exponent, homogeneous of degree |monomial| + radial_exponent.
class HomogeneousSymbol {
public:
    HomogeneousSymbol(int d, double radial_exponent, MultiIndex monomial);
    explicit HomogeneousSymbol(int d, double radial_exponent = 0.0)
        : HomogeneousSymbol(d, radial_exponent, MultiIndex::zero(d)) {}

    int dim() const { return monomial_.dim(); }
    double radial_exponent() const { return r_; }
    const MultiIndex& monomial() const { return monomial_; }
    double degree() const { return degree_; }
    bool is_radial() const { return monomial_.is_zero(); }

    // Throws SingularPoint at xi = 0 when the symbol is singular there.
    std::complex<double> eval(std::span<const double> xi) const;
    std::string describe() const;

private:
    friend HomogeneousSymbol symbol_product(const HomogeneousSymbol& a, const HomogeneousSymbol& b);

    double r_;
    MultiIndex monomial_;
    // Stored rather than recomputed so that products add degrees without rounding drift.
    double degree_;
};

// |xi|^{-gamma}.
HomogeneousSymbol radial_symbol(double gamma, int d = 1);
// (i xi)^j Omega(xi).
HomogeneousSymbol weight_symbol(const HomogeneousSymbol& omega, const MultiIndex& j);
HomogeneousSymbol symbol_product(const HomogeneousSymbol& a, const HomogeneousSymbol& b);

// c_{gamma,d} = pi^{-d/2} 2^{-gamma} Gamma((d-gamma)/2) / Gamma(gamma/2): the constant for which
// c |x|^{gamma-d} is the inverse transform of |xi|^{-gamma}. Negative gamma is accepted (the kernel of
// |xi|^{-gamma} away from the origin); it vanishes when gamma is a nonpositive even integer.
// Throws PoleError when gamma - d is a nonnegative even integer.
double riesz_constant(double gamma, int d);

struct KernelTerm {
    std::complex<double> coefficient;
    MultiIndex monomial;
    double radial_exponent;
};

// K(x) = sum_t c_t x^{i_t} |x|^{beta_t}; all terms share one total degree.
class RadialPolyKernel {
public:
    RadialPolyKernel() = default;
    RadialPolyKernel(int d, std::vector<KernelTerm> terms);

    int dim() const { return d_; }
    const std::vector<KernelTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    // Total degree |i| + beta (0 for the empty kernel).
    double degree() const;

    // Throws SingularPoint at x = 0.
    std::complex<double> eval(std::span<const double> x) const;
    // Adds like terms and drops zero coefficients.
    RadialPolyKernel collected() const;

    RadialPolyKernel operator+(const RadialPolyKernel& o) const;
    RadialPolyKernel operator*(std::complex<double> s) const;

private:
    int d_ = 1;
    std::vector<KernelTerm> terms_;
};

// c_{gamma,d} |x|^{gamma-d}. Requires gamma > 0 and gamma - d not a nonnegative integer.
RadialPolyKernel kernel_from_radial_symbol(double gamma, int d);

// Pointwise kernel of an arbitrary homogeneous symbol of this family:
// K_Omega = d^k [c_{-r,d} |x|^{-r-d}] for Omega = (i xi)^k |xi|^r. Requires -r - d not a nonnegative
// integer (those symbols have polynomial-corrected kernels).
RadialPolyKernel kernel_of_symbol(const HomogeneousSymbol& omega);

// Symbolic d^j K via d_m(x^i |x|^b) = i_m x^{i-e_m}|x|^b + b x^{i+e_m}|x|^{b-2}. Throws UnsupportedOrder for |j| > 4.
RadialPolyKernel kernel_derivative(const RadialPolyKernel& k, const MultiIndex& j);
// Same without the order cap (used for multipole expansions).
RadialPolyKernel differentiate(const RadialPolyKernel& k, const MultiIndex& j);

std::complex<double> kernel_eval(const RadialPolyKernel& k, std::span<const double> x);

// One-dimensional view: c sign(x)^parity |x|^exponent.
struct PowerTerm1D {
    std::complex<double> coefficient;
    double exponent;
    int parity;  // 0 even, 1 odd
};
// Rewrites a d = 1 kernel as power terms (x^i |x|^b = sign(x)^i |x|^{i+b}).
std::vector<PowerTerm1D> power_terms_1d(const RadialPolyKernel& k);

}  // namespace rieszlab
