#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rieszlab/grid.hpp"
#include "rieszlab/operators.hpp"
#include "rieszlab/test_functions.hpp"

namespace rieszlab {

// How a report's metric is judged:
//   within:   |metric - target| <= tolerance   (fitted slopes)
//   at_most:  metric <= tolerance              (residuals)
//   at_least: metric >= tolerance              (demonstrated variance or growth)
enum class CriterionMode { within, at_most, at_least };
std::string to_string(CriterionMode m);

struct CheckReport {
    std::string name;
    bool passed = false;
    double metric = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    CriterionMode mode = CriterionMode::at_most;
    std::map<std::string, std::string> metadata;
    // Optional (x, y) data behind the metric, e.g. radii and annulus norms.
    std::vector<std::pair<double, double>> series;

    // Fills passed from (mode, metric, target, tolerance).
    static CheckReport make(std::string name, CriterionMode mode, double metric, double target, double tolerance);
    // One JSON object on a single line.
    std::string to_json() const;
};

bool criterion_passes(CriterionMode mode, double metric, double target, double tolerance);

// Operators the invariance checks can be pointed at.
enum class OperatorId {
    generalized_riesz,      // J_Omega with Omega = |xi|^{-gamma} (multiplier path)
    integrable_potential,   // I_{gamma,1} by the spatial kernels
    integrable_fourier,     // I_{gamma,1} by the corrected multiplier
};
std::string to_string(OperatorId op);
OperatorId operator_from_string(const std::string& s);

// Applies an operator and returns its node values (NaN where the result is singular).
SampledField apply_operator(OperatorId op, const SampledField& f, double gamma);

// sup |I_{gamma,p}((-Delta)^{gamma/2} f) - f| / sup |f| over non-singular nodes. For d = 1 the fractional
// Laplacian carries its far field into the spatial path.
CheckReport check_left_inverse(double gamma, double p, int d, const TestFunction& f, const Grid& g,
                               double tolerance = 1e-2);

// sup |Op(delta_t f) - t^{-gamma} delta_t(Op f)| / sup |Op f| over the nodes x with t x on the grid.
// t must be a power of two (GridIncompatible otherwise).
CheckReport check_dilation_invariance(OperatorId op, double gamma, double t, const TestFunction& f, const Grid& g,
                                      double tolerance);

// sup |Op(tau_x0 f) - tau_x0(Op f)| / sup |Op f| for a shift by a whole number of cells. For J_Omega the
// metric must stay below tolerance; for the integrable potential it must exceed variance_floor.
CheckReport check_translation_behavior(OperatorId op, double gamma, double x0, const TestFunction& f, const Grid& g,
                                       double tolerance = 1e-3, double variance_floor = 0.05);

// Least-squares slope of log|field| against log|x| over the nodes with r_min <= |x| <= r_max.
// Throws RangeError unless r_max <= L/2 and EmptyWindow when fewer than two usable nodes remain.
CheckReport fit_decay_slope(const SampledField& field, double r_min, double r_max, double target, double tolerance,
                            const std::string& name = "decay_slope");

// Annulus norms ||J_Omega f||_{L^p(R <= |x| <= 2R)}. p = kInfinity: passes when the log-log slope of the
// annulus sups is within tolerance of gamma - d. Finite p: passes when the norms are non-decreasing up to
// a relative slack.
CheckReport integrability_scan(double gamma, double p, int d, const TestFunction& f, const std::vector<double>& radii,
                               const Grid& g, double tolerance = 0.15, double slack = 1e-3);

// sup |J_{Omega1}(J_{Omega2} f) - J_{Omega1 Omega2} f| / sup |J_{Omega1 Omega2} f| on the inner half-box,
// Omega_k = |xi|^{-gamma_k}. Requires 0 <= gamma1, 0 < gamma2 < d, gamma1 + gamma2 < d (HypothesisError).
CheckReport check_composition(double gamma1, double gamma2, int d, const TestFunction& f, const Grid& g,
                              double tolerance = 1e-3);

// I_{gamma1,1}((-Delta) f) against (-Delta)^{(2 - gamma1)/2} f on the inner half-box (d = 1): the
// integrable potential composed with a positive-degree multiplier whose output has vanishing moments.
CheckReport check_mixed_composition(double gamma1, const TestFunction& f, const Grid& g, double tolerance = 1e-2);

// Riesz potential by the multiplier and by the singular convolution, relative sup difference on the
// inner half-box.
CheckReport check_cross_path(double gamma, const TestFunction& f, const Grid& g, double tolerance = 1e-2);

// Empirical constant C(n) = sup_{xi != 0} |F(Uf)(xi)| / (|xi|^{k1-gamma+1} (1+|xi|)^{-1}) for each n;
// metric = max C / min C, passing when below `ratio`.
CheckReport check_fourier_bound(double gamma, const TestFunction& f, double half_width, const std::vector<int>& ns,
                                double ratio = 2.0);

// The decay scenarios on a d = 1 grid: J_Omega tail, positive-degree tail, vanishing-moment tail and the
// origin singularity of I_{gamma,1} for gamma in {0.5, 1.5}.
std::vector<CheckReport> decay_suite(double half_width = 256.0, int n = 1 << 15);

// Selectable suites of the default verification run.
std::vector<std::string> suite_names();
std::vector<CheckReport> run_suite(const std::string& name);

}  // namespace rieszlab
