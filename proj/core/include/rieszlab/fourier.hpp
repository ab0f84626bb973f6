#pragma once

#include <map>
#include <vector>

#include "rieszlab/grid.hpp"
#include "rieszlab/multi_index.hpp"

namespace rieszlab {

// Continuous Fourier transform  F f(xi) = \int e^{-i<x,xi>} f(x) dx  on the dual grid.
//
// With x_m = -L + m h and xi_k = (k - n/2) pi / L (per axis),
//   e^{-i xi_k x_m} = (-1)^{k - n/2} (-1)^m e^{-2 pi i k m / n},
// so F_k = h^d prod_axes (-1)^{k_a - n/2} * DFT[ prod_axes (-1)^{m_a} f_m ]_k.
// Equivalently F = h^d (-1)^{k-n/2} fftshift(fft(f)) per axis.
// Throws DomainTagError unless f is spatial.
SampledField continuous_ft(const SampledField& f);

// Inverse (2 pi)^{-d} \int e^{i<x,xi>} F(xi) dxi, the exact inverse of continuous_ft on the grid:
// f_m = (n h)^{-d} prod (-1)^{m_a} * IDFT[ prod (-1)^{k_a - n/2} F_k ]_m.
SampledField continuous_ift(const SampledField& F);

// Box quadrature h^d sum values.
cplx integrate(const SampledField& f);

// \int x^i f(x) dx by the same box quadrature.
cplx spatial_moment(const SampledField& f, const MultiIndex& i);

// All moments with |i| <= max_order.
std::map<MultiIndex, cplx> spatial_moments(const SampledField& f, int max_order);

// d = 1 only: returns mu_a = \int (s x)^a / a! f(x) dx for a = 0..max_order, computed with
// a per-node recurrence so that high orders do not overflow.
std::vector<cplx> scaled_moments_1d(const SampledField& f, double s, int max_order);

}  // namespace rieszlab
