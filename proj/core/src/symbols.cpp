#include "rieszlab/symbols.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "rieszlab/errors.hpp"
#include "rieszlab/special_functions.hpp"

namespace rieszlab {

namespace {

double norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

bool is_nonnegative_integer(double v, double tol = 1e-12) {
    return v > -tol && std::abs(v - std::nearbyint(v)) < tol;
}

std::complex<double> ipow(int k) {
    static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((k % 4) + 4) % 4];
}

}  // namespace

HomogeneousSymbol::HomogeneousSymbol(int d, double radial_exponent, MultiIndex monomial)
    : r_(radial_exponent), monomial_(std::move(monomial)), degree_(monomial_.order() + r_) {
    if (monomial_.dim() != d) throw RangeError("HomogeneousSymbol: monomial dimension mismatch");
}

std::complex<double> HomogeneousSymbol::eval(std::span<const double> xi) const {
    const double rho = norm(xi);
    if (rho == 0.0) {
        if (degree() > 0.0) return 0.0;
        if (degree() == 0.0 && monomial_.is_zero()) return 1.0;
        throw SingularPoint("symbol " + describe() + " is singular at xi = 0");
    }
    return ipow(monomial_.order()) * monomial_eval(xi, monomial_) * std::pow(rho, r_);
}

std::string HomogeneousSymbol::describe() const {
    std::ostringstream os;
    if (!monomial_.is_zero()) os << "(i xi)^" << monomial_.str() << " ";
    os << "|xi|^" << r_;
    return os.str();
}

HomogeneousSymbol radial_symbol(double gamma, int d) { return HomogeneousSymbol(d, -gamma); }

HomogeneousSymbol weight_symbol(const HomogeneousSymbol& omega, const MultiIndex& j) {
    return HomogeneousSymbol(omega.dim(), omega.radial_exponent(), omega.monomial() + j);
}

HomogeneousSymbol symbol_product(const HomogeneousSymbol& a, const HomogeneousSymbol& b) {
    if (a.dim() != b.dim()) throw RangeError("symbol_product: dimension mismatch");
    HomogeneousSymbol out(a.dim(), a.radial_exponent() + b.radial_exponent(), a.monomial() + b.monomial());
    out.degree_ = a.degree_ + b.degree_;
    return out;
}

double riesz_constant(double gamma, int d) {
    const double a = 0.5 * (d - gamma);
    if (a <= 0.0 && a == std::nearbyint(a))
        throw PoleError("riesz_constant: gamma - d = " + std::to_string(gamma - d) + " is a nonnegative even integer");
    return std::pow(std::numbers::pi, -0.5 * d) * std::pow(2.0, -gamma) * rieszlab::gamma(a) * rgamma(0.5 * gamma);
}

RadialPolyKernel::RadialPolyKernel(int d, std::vector<KernelTerm> terms) : d_(d), terms_(std::move(terms)) {
    for (const auto& t : terms_)
        if (t.monomial.dim() != d_) throw RangeError("RadialPolyKernel: term dimension mismatch");
}

double RadialPolyKernel::degree() const {
    if (terms_.empty()) return 0.0;
    return terms_.front().monomial.order() + terms_.front().radial_exponent;
}

std::complex<double> RadialPolyKernel::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != d_) throw RangeError("kernel_eval: dimension mismatch");
    const double rho = norm(x);
    if (rho == 0.0) throw SingularPoint("kernel evaluated at the origin");
    std::complex<double> s{};
    for (const auto& t : terms_) s += t.coefficient * monomial_eval(x, t.monomial) * std::pow(rho, t.radial_exponent);
    return s;
}

RadialPolyKernel RadialPolyKernel::collected() const {
    std::map<std::pair<std::vector<int>, double>, std::complex<double>> acc;
    std::vector<std::pair<std::vector<int>, double>> order;
    for (const auto& t : terms_) {
        auto key = std::make_pair(t.monomial.entries(), t.radial_exponent);
        auto [it, inserted] = acc.emplace(key, t.coefficient);
        if (inserted)
            order.push_back(key);
        else
            it->second += t.coefficient;
    }
    std::vector<KernelTerm> out;
    for (const auto& key : order) {
        const auto c = acc[key];
        if (c != std::complex<double>{}) out.push_back({c, MultiIndex(key.first), key.second});
    }
    return RadialPolyKernel(d_, std::move(out));
}

RadialPolyKernel RadialPolyKernel::operator+(const RadialPolyKernel& o) const {
    if (!empty() && !o.empty() && o.d_ != d_) throw RangeError("kernel sum: dimension mismatch");
    std::vector<KernelTerm> t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return RadialPolyKernel(empty() ? o.d_ : d_, std::move(t)).collected();
}

RadialPolyKernel RadialPolyKernel::operator*(std::complex<double> s) const {
    std::vector<KernelTerm> t = terms_;
    for (auto& x : t) x.coefficient *= s;
    return RadialPolyKernel(d_, std::move(t)).collected();
}

RadialPolyKernel kernel_from_radial_symbol(double gamma, int d) {
    if (!(gamma > 0.0)) throw RangeError("kernel_from_radial_symbol requires gamma > 0");
    if (is_nonnegative_integer(gamma - d))
        throw RangeError("kernel_from_radial_symbol: gamma - d must not be a nonnegative integer");
    return RadialPolyKernel(d, {{riesz_constant(gamma, d), MultiIndex::zero(d), gamma - d}});
}

RadialPolyKernel kernel_of_symbol(const HomogeneousSymbol& omega) {
    const int d = omega.dim();
    const double r = omega.radial_exponent();
    if (is_nonnegative_integer(-r - d))
        throw RangeError("kernel_of_symbol: |xi|^" + std::to_string(r) + " has no homogeneous pointwise kernel");
    RadialPolyKernel base(d, {{riesz_constant(-r, d), MultiIndex::zero(d), -r - d}});
    return differentiate(base, omega.monomial());
}

RadialPolyKernel differentiate(const RadialPolyKernel& k, const MultiIndex& j) {
    if (j.dim() != k.dim()) throw RangeError("kernel_derivative: dimension mismatch");
    RadialPolyKernel cur = k;
    for (int axis = 0; axis < j.dim(); ++axis) {
        for (int rep = 0; rep < j[axis]; ++rep) {
            std::vector<KernelTerm> next;
            const MultiIndex e = MultiIndex::unit(k.dim(), axis);
            for (const auto& t : cur.terms()) {
                if (t.monomial[axis] > 0)
                    next.push_back({t.coefficient * static_cast<double>(t.monomial[axis]), t.monomial - e, t.radial_exponent});
                if (t.radial_exponent != 0.0)
                    next.push_back({t.coefficient * t.radial_exponent, t.monomial + e, t.radial_exponent - 2.0});
            }
            cur = RadialPolyKernel(k.dim(), std::move(next)).collected();
        }
    }
    return cur;
}

RadialPolyKernel kernel_derivative(const RadialPolyKernel& k, const MultiIndex& j) {
    if (j.order() > 4) throw UnsupportedOrder("kernel derivatives are supported up to order 4, got " + j.str());
    return differentiate(k, j);
}

std::complex<double> kernel_eval(const RadialPolyKernel& k, std::span<const double> x) { return k.eval(x); }

std::vector<PowerTerm1D> power_terms_1d(const RadialPolyKernel& k) {
    if (k.dim() != 1) throw RangeError("power_terms_1d requires d = 1");
    std::vector<PowerTerm1D> out;
    for (const auto& t : k.terms()) {
        const int i = t.monomial[0];
        const double e = i + t.radial_exponent;
        const int par = i % 2;
        bool merged = false;
        for (auto& o : out)
            if (o.parity == par && o.exponent == e) {
                o.coefficient += t.coefficient;
                merged = true;
            }
        if (!merged) out.push_back({t.coefficient, e, par});
    }
    return out;
}

}  // namespace rieszlab
