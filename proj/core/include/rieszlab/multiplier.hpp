#pragma once

#include "rieszlab/grid.hpp"
#include "rieszlab/symbols.hpp"

namespace rieszlab {

struct MultiplierDiagnostics {
    // Largest |origin correction| over the nodes: the size of the xi = 0 contribution that a
    // plain zero at that node would have dropped.
    double origin_correction = 0.0;
    // Largest number of lattice-sum terms used at a node (d = 1).
    int series_terms = 0;
};

// Spatial samples of (2 pi)^{-d} \int e^{i<x,xi>} Omega(xi) f^(xi) dxi.
//
// The grid sum over the dual nodes is the trapezoid rule for this integral, which is exact
// up to spectrally small terms away from xi = 0. At xi = 0 the integrand behaves like
// |xi|^r times the smooth factor e^{i<x,xi>} f^(xi); the grid sum is taken over xi != 0 and the
// generalized Euler-Maclaurin terms of that point singularity are added back:
//   d = 1:  - sum_m 2 zeta(-r-m) dxi^{m+1+r} c_m(x),  c_m the Taylor coefficients (m + |k| even),
//   d = 2:  lattice sums of the square lattice (Epstein zeta), Taylor orders up to 2.
// The Taylor coefficients of f^ come from spatial moments, so no frequency differencing is used.
// For negative degrees below -d this yields the analytically continued (finite part) integral.
//
// When subtract_order >= 0 the exponential is replaced by
//   e^{i<x,xi>} - sum_{|a| <= subtract_order} (i x)^a xi^a / a!
// which is the adjoint form of the integrable potential.
SampledField apply_multiplier(const SampledField& f, const HomogeneousSymbol& omega, int subtract_order = -1,
                              MultiplierDiagnostics* diag = nullptr);

// Omega(xi) (f^(xi) - sum_{|i| <= correction_order} d^i f^(0) xi^i / i!) on the dual grid with 0 at xi = 0.
// correction_order < 0 gives the plain product.
SampledField corrected_spectrum(const SampledField& f, const HomogeneousSymbol& omega, int correction_order);

}  // namespace rieszlab
