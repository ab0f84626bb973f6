#pragma once

#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rieszlab/far_field.hpp"
#include "rieszlab/grid.hpp"
#include "rieszlab/multi_index.hpp"
#include "rieszlab/multiplier.hpp"
#include "rieszlab/symbols.hpp"

namespace rieszlab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Parameters of the p-integrable Riesz potential I_{gamma,p} (radial symbol |xi|^{-gamma}).
class PotentialSpec {
public:
    // Throws SpecError when gamma or gamma - d (1 - 1/p) is a nonnegative integer, or when
    // gamma <= 0, p < 1, or d is not 1 or 2. p = kInfinity is allowed.
    PotentialSpec(double gamma, double p, int d);

    double gamma() const { return gamma_; }
    double p() const { return p_; }
    int dim() const { return d_; }
    bool p_is_infinite() const { return p_ == kInfinity; }
    // gamma - d (1 - 1/p).
    double excess() const;
    // Integral part of the excess; -1 when the excess is negative (no Taylor correction).
    int k1() const { return k1_; }
    // {i : |i| <= excess}, empty when k1 = -1.
    std::vector<MultiIndex> correction_set() const;
    HomogeneousSymbol symbol() const { return radial_symbol(gamma_, d_); }
    std::string describe() const;

private:
    double gamma_, p_;
    int d_, k1_;
};

enum class OperatorPath { fourier, spatial_kernel };
std::string to_string(OperatorPath p);

// Output of the integrable potentials. The result is split into a regular field (finite at every
// node) and an analytic singular component q(x) = sum c x^i |x|^b, so that values near the origin
// keep the exact singular profile. `field` = regular + q at every node except flagged ones (NaN).
struct OperatorResult {
    SampledField field;
    SampledField regular;
    RadialPolyKernel singular;
    OperatorPath path = OperatorPath::fourier;
    std::map<std::string, double> diagnostics;
    std::vector<std::size_t> flagged_nodes;

    OperatorResult(SampledField regular_part, RadialPolyKernel singular_part, OperatorPath p);

    // Multilinear interpolation of the regular part plus the exact singular part. Throws RangeError
    // outside the sampled box and SingularPoint at the origin when the singular part is nonzero.
    cplx eval(std::span<const double> x) const;
    // JSON diagnostics sidecar: {"path": ..., "tail_sup": ..., "flagged_nodes": [...], ...}.
    std::string diagnostics_json() const;
};

// Throws DecayError when max |f| on the box faces exceeds tol * max |f|.
void require_edge_decay(const SampledField& f, double tol = 1e-10);

// (-Delta)^{gamma/2} f: the multiplier |xi|^gamma.
SampledField fractional_laplacian(const SampledField& f, double gamma);
// d = 1: the same together with its far field sum_a (-1)^a M_a/a! d^a K_{-gamma}, so that the slowly
// decaying output can be fed to operators that integrate over all of R.
TailedField fractional_laplacian_tailed(const SampledField& f, double gamma);

// I_gamma f by the multiplier |xi|^{-gamma}, 0 < gamma < d.
SampledField riesz_potential_fourier(const SampledField& f, double gamma);
// I_gamma f = c_{gamma,d} \int |x - y|^{gamma - d} f(y) dy by singular-corrected quadrature, 0 < gamma < d.
SampledField riesz_potential_convolution(const SampledField& f, double gamma);

// d^i f^(0) = (-i)^{|i|} \int x^i f for all |i| <= max_order.
std::map<MultiIndex, cplx> taylor_coeffs(const SampledField& f, int max_order);

// J_Omega f for a homogeneous symbol of degree -gamma with gamma - d not a nonnegative integer.
// gamma < d: the multiplier. gamma > d: the finite sum over |i| + |j| = k0 of weighted multipliers
// applied to x^j f, each with a locally integrable symbol.
SampledField generalized_riesz(const SampledField& f, const HomogeneousSymbol& omega);
// d = 1, degree in (-1, 0) or positive: J_Omega f together with its multipole far field.
TailedField generalized_riesz_tailed(const SampledField& f, const HomogeneousSymbol& omega);

// U f with the Taylor-corrected spectrum. Synthesized as J_Omega f - sum_{i in correction set}
// (-1)^{|i|} M_i / i! d^i K_Omega, which is the inverse transform of the corrected spectrum without
// its slowly decaying tail being truncated by the grid. diagnostics["tail_sup"] records
// sup_{|xi| > Xi/2} |F(Uf)|, Xi the Nyquist frequency.
OperatorResult integrable_potential_fourier(const SampledField& f, const PotentialSpec& spec);

// U f from the spatial kernels (Cases I, II, III by gamma versus k1 + 1).
OperatorResult integrable_potential_spatial(const SampledField& f, const PotentialSpec& spec);
// d = 1 input with a far field (for instance the output of fractional_laplacian_tailed).
OperatorResult integrable_potential_spatial(const TailedField& f, const PotentialSpec& spec);

// U* f(x) = (2 pi)^{-d} \int (e^{i<x,xi>} - sum_{|i| <= k1} (i x)^i xi^i / i!) Omega(-xi) f^(xi) dxi.
OperatorResult adjoint_integrable_potential(const SampledField& f, const PotentialSpec& spec);

}  // namespace rieszlab
