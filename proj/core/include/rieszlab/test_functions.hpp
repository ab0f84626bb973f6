#pragma once

#include <string>
#include <vector>

#include "rieszlab/grid.hpp"
#include "rieszlab/multi_index.hpp"

namespace rieszlab {

// The fixed smooth cutoff: phi(r) = q(2 - r) / (q(2 - r) + q(r - 1)), q(s) = e^{-1/s} for s > 0 else 0.
// phi = 1 on r <= 1 and 0 on r >= 2.
double cutoff(double r);
double cutoff(std::span<const double> x);

enum class TestFunctionKind { gaussian, shifted_gaussian, bump_psi, moment_cancelled, cutoff_bump };

// Named inputs for the operators and checks.
//   gaussian:          e^{-|x|^2 / (2 sigma^2)}
//   shifted_gaussian:  the same centred at `center`
//   bump_psi(i):       the function whose transform is xi^i phi(xi) / i!
//   moment_cancelled:  d_1^{m0+1} of the unit Gaussian (all moments of order <= m0 vanish)
//   cutoff_bump:       phi(x) used as a spatial function (support |x| <= 2)
struct TestFunction {
    TestFunctionKind kind = TestFunctionKind::gaussian;
    double sigma = 1.0;
    std::vector<double> center;
    MultiIndex psi_index;
    int m0 = 0;

    static TestFunction gaussian(double sigma = 1.0);
    static TestFunction shifted_gaussian(std::vector<double> center, double sigma = 1.0);
    static TestFunction bump_psi(MultiIndex i);
    static TestFunction moment_cancelled(int m0);
    static TestFunction cutoff_bump();
    // Parses "gaussian", "shifted_gaussian", "bump_psi", "moment_cancelled", "bump".
    static TestFunction from_name(const std::string& name, int d);

    SampledField sample(const Grid& g) const;
    std::string describe() const;
};

}  // namespace rieszlab
