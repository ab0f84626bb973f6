#pragma once

#include <complex>
#include <vector>

#include "rieszlab/grid.hpp"
#include "rieszlab/symbols.hpp"

namespace rieszlab {

// A power series in |y| valid outside a box, used to carry the slowly decaying
// part of a one-dimensional field beyond the sampled window:
//   F(y) = (|y|/scale)^base * sum_t coeffs[t] (scale/|y|)^t.
struct PowerSeries {
    double base = 0.0;
    std::vector<cplx> coeffs;
};

// Far field of a d = 1 field: separate series for y >= edge_right and y <= -edge_left.
class FarField1D {
public:
    FarField1D() = default;
    explicit FarField1D(double scale) : scale_(scale) {}

    double scale() const { return scale_; }
    bool empty() const { return right_.empty() && left_.empty(); }
    const std::vector<PowerSeries>& right() const { return right_; }
    const std::vector<PowerSeries>& left() const { return left_; }
    std::vector<PowerSeries>& right() { return right_; }
    std::vector<PowerSeries>& left() { return left_; }

    // Evaluates the series on the side given by the sign of y (y != 0).
    cplx eval(double y) const;
    // \int_a^\infty F(y) dy (right side) and \int_{-\infty}^{-a} F(y) dy (left side), a > 0.
    cplx integral_right(double a) const;
    cplx integral_left(double a) const;
    // Largest total exponent present (controls integrability).
    double leading_exponent() const;

    FarField1D operator*(cplx s) const;
    FarField1D operator+(const FarField1D& o) const;

private:
    double scale_ = 1.0;
    std::vector<PowerSeries> right_, left_;
};

// Multipole expansion of (K * f)(y) for |y| beyond the support of f:
//   sum_a (-1)^a M_a / a! d^a K(y),  M_a = \int y^a f,
// truncated once terms fall below rel_tol relative to the leading one at |y| = scale.
FarField1D multipole_far_field(const std::vector<PowerTerm1D>& kernel, const SampledField& f, double scale,
                               int max_order = 48, double rel_tol = 1e-17);

// A d = 1 field given by samples inside the box plus an analytic far field outside it.
struct TailedField {
    SampledField body;
    FarField1D tail;
};

}  // namespace rieszlab
