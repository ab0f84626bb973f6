#include "rieszlab/far_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rieszlab/errors.hpp"
#include "rieszlab/fourier.hpp"
#include "rieszlab/special_functions.hpp"

namespace rieszlab {

namespace {

cplx eval_series(const std::vector<PowerSeries>& ss, double r, double scale) {
    cplx total{};
    const double u = r / scale;
    const double inv = 1.0 / u;
    for (const auto& s : ss) {
        cplx acc{};
        for (std::size_t t = s.coeffs.size(); t-- > 0;) acc = acc * inv + s.coeffs[t];
        total += std::pow(u, s.base) * acc;
    }
    return total;
}

cplx integral_series(const std::vector<PowerSeries>& ss, double a, double scale) {
    // \int_a^inf (y/s)^{p} dy = -s (a/s)^{p+1} / (p+1) for p < -1.
    cplx total{};
    const double u = a / scale;
    for (const auto& s : ss)
        for (std::size_t t = 0; t < s.coeffs.size(); ++t) {
            if (s.coeffs[t] == cplx{}) continue;
            const double p = s.base - static_cast<double>(t);
            if (p >= -1.0) throw DecayError("far field is not integrable (exponent " + std::to_string(p) + ")");
            total += s.coeffs[t] * (-scale * std::pow(u, p + 1.0) / (p + 1.0));
        }
    return total;
}

}  // namespace

cplx FarField1D::eval(double y) const {
    if (y > 0) return eval_series(right_, y, scale_);
    if (y < 0) return eval_series(left_, -y, scale_);
    throw SingularPoint("far field evaluated at the origin");
}

cplx FarField1D::integral_right(double a) const { return integral_series(right_, a, scale_); }
cplx FarField1D::integral_left(double a) const { return integral_series(left_, a, scale_); }

double FarField1D::leading_exponent() const {
    double e = -std::numeric_limits<double>::infinity();
    for (const auto* side : {&right_, &left_})
        for (const auto& s : *side)
            for (std::size_t t = 0; t < s.coeffs.size(); ++t)
                if (s.coeffs[t] != cplx{}) {
                    e = std::max(e, s.base - static_cast<double>(t));
                    break;
                }
    return e;
}

FarField1D FarField1D::operator*(cplx s) const {
    FarField1D r = *this;
    for (auto* side : {&r.right_, &r.left_})
        for (auto& ser : *side)
            for (auto& c : ser.coeffs) c *= s;
    return r;
}

FarField1D FarField1D::operator+(const FarField1D& o) const {
    if (empty()) return o;
    if (o.empty()) return *this;
    if (o.scale_ != scale_) throw RangeError("far fields with different scales cannot be added");
    FarField1D r = *this;
    r.right_.insert(r.right_.end(), o.right_.begin(), o.right_.end());
    r.left_.insert(r.left_.end(), o.left_.begin(), o.left_.end());
    return r;
}

FarField1D multipole_far_field(const std::vector<PowerTerm1D>& kernel, const SampledField& f, double scale,
                               int max_order, double rel_tol) {
    if (f.grid.dim() != 1) throw RangeError("multipole_far_field requires d = 1");
    FarField1D out(scale);
    // mu_a = \int (y/scale)^a / a! f(y) dy, so M_a / a! = mu_a scale^a.
    const auto mu = scaled_moments_1d(f, 1.0 / scale, max_order);
    for (const auto& k : kernel) {
        // Right side: c y^e -> d^a: c (e)_a y^{e-a}. Left side: c (-1)^par (-y)^e -> c (-1)^{par+a} (e)_a (-y)^{e-a}.
        // Coefficients in units of (|y|/scale)^{e-a}: multiply by scale^{e-a} and the scale^a from M_a.
        PowerSeries right{k.exponent, {}}, left{k.exponent, {}};
        const double se = std::pow(scale, k.exponent);
        // The expansion is asymptotic for non-compact f: stop at the smallest term.
        double lead = 0.0, prev = std::numeric_limits<double>::infinity();
        int small_run = 0;
        for (int a = 0; a <= max_order; ++a) {
            const double ff = falling_factorial(k.exponent, a);
            const cplx m = mu[static_cast<std::size_t>(a)] * ff * se * k.coefficient;
            const double mag = std::abs(m);
            // Terms at rounding level (odd moments of an even f, say) take no part in the growth test.
            const bool tiny = a > 0 && mag <= rel_tol * lead;
            if (!tiny && a > 2 && mag > prev) break;
            const double sgn_a = (a % 2 == 0) ? 1.0 : -1.0;
            right.coeffs.push_back(sgn_a * m);
            left.coeffs.push_back(((k.parity % 2 == 0) ? 1.0 : -1.0) * m);
            lead = std::max(lead, mag);
            if (tiny) {
                if (++small_run >= 2) break;
            } else {
                prev = mag;
                small_run = 0;
            }
            if (ff == 0.0) break;  // polynomial kernel: higher derivatives vanish
        }
        out.right().push_back(std::move(right));
        out.left().push_back(std::move(left));
    }
    return out;
}

}  // namespace rieszlab
