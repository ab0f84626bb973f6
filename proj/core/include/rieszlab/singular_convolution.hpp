#pragma once

#include <vector>

#include "rieszlab/far_field.hpp"
#include "rieszlab/grid.hpp"
#include "rieszlab/symbols.hpp"

namespace rieszlab {

// Box part of (K * f)(x_m) = \int K(x_m - y) f(y) dy over the cells [x_j - h/2, x_j + h/2)^d.
//
// Off-diagonal cells use the node rule h^d K(x_m - x_j). The singular cell and its neighbours get
// the generalized Euler-Maclaurin weights of the power singularity:
//   d = 1, c sign(u)^par |u|^e: the terms 2 zeta(-e-j) h^{1+e+j} phi^{(j)}(0) / j! for j = par, par+2
//          (j <= 3), with the derivatives of f taken by central differences;
//   d = 2, c x^i |x|^b: the square-lattice sums (Epstein zeta) for the radial and x_k^2 terms;
//          other monomials have a vanishing lattice sum.
// The linear convolution is done with zero-padded FFTs of size (2n)^d.
SampledField convolve_box(const SampledField& f, const RadialPolyKernel& K);

// d = 1: \int_{a_right}^\infty K(x - y) F(y) dy + \int_{-\infty}^{-a_left} K(x - y) F(y) dy with F the far
// field, for -a_left < x < a_right. Graded 16-point Gauss-Legendre panels whose widths double away from
// the nearest edge, then the binomial expansion of K(x - y) in x / y beyond 16 (|x| + a).
cplx convolve_tail_1d(double x, const std::vector<PowerTerm1D>& K, const FarField1D& tail, double a_right,
                      double a_left);

// d = 1: box part plus tail part at every node. The box covers [-L - h/2, L - h/2).
SampledField convolve_tailed_1d(const TailedField& f, const RadialPolyKernel& K);

// Edges of the box covered by the cells of a d = 1 grid: (a_left, a_right) with the box [-a_left, a_right).
std::pair<double, double> box_edges_1d(const Grid& g);

}  // namespace rieszlab
