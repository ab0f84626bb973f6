#pragma once

#include <functional>
#include <vector>

namespace rieszlab {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule with n points on [a, b]. Supported n: 8, 16, 32, 64.
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

// \int_a^b f with an n-point Gauss-Legendre rule after the substitution t = a + (b-a) s^q,
// which removes an endpoint singularity of type (t - a)^{1/q - 1}. q = 1 is plain Gauss-Legendre.
double graded_gauss(const std::function<double(double)>& f, double a, double b, int n, double q);

}  // namespace rieszlab
