#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rieszlab/grid.hpp"
#include "rieszlab/h_kernel.hpp"
#include "rieszlab/operators.hpp"
#include "rieszlab/random.hpp"
#include "rieszlab/verification.hpp"

namespace rieszlab {

// Amplitude law of the Poisson impulses. Only finite-mean families are constructible; a Cauchy request
// is rejected with ConfigError.
class AmplitudeDist {
public:
    enum class Kind { deterministic, gaussian, laplace, uniform };

    static AmplitudeDist deterministic(double a0);
    static AmplitudeDist gaussian(double sigma);
    static AmplitudeDist laplace(double b);
    static AmplitudeDist uniform(double lo, double hi);
    // "deterministic", "gaussian", "laplace", "uniform" with parameters {a0}, {sigma}, {b}, {lo, hi}.
    static AmplitudeDist from_name(const std::string& name, const std::vector<double>& params);

    Kind kind() const { return kind_; }
    double sample(Rng& rng) const;
    double mean() const;
    double mean_abs() const;
    // E[e^{-i a s}].
    cplx characteristic(double s) const;
    // E[e^{-i a s}] - 1 without cancellation for small s.
    cplx characteristic_minus_one(double s) const;
    // Amplitude scale used to size quadrature panels against the phase a s.
    double scale() const;
    std::string describe() const;

private:
    AmplitudeDist(Kind k, double p0, double p1) : kind_(k), p0_(p0), p1_(p1) {}
    Kind kind_;
    double p0_, p1_;
};

struct PoissonConfig {
    double lambda = 1.0;  // mean impulses per unit volume
    double B = 10.0;      // box [-B, B]^d
    int d = 1;
    AmplitudeDist amplitude = AmplitudeDist::deterministic(1.0);
    std::uint64_t seed = 0;

    // Throws ConfigError unless lambda > 0, B > 0 and d in {1, 2}.
    void validate() const;
    double expected_count() const;
};

struct PoissonRealization {
    std::vector<std::vector<double>> points;
    std::vector<double> amplitudes;
    std::size_t size() const { return amplitudes.size(); }
};

struct CharFunctionalEstimate {
    cplx value;
    double std_error = 0.0;  // max of the componentwise standard errors
    std::size_t n_samples = 0;
    std::string to_json() const;
};

// Realization number `stream` of the process: N ~ Poisson(lambda (2B)^d), then N uniform points and
// N amplitudes, all drawn from Rng(seed, stream).
PoissonRealization sample_realization(const PoissonConfig& cfg, std::uint64_t stream = 0);

// x -> (I_{gamma,1} f)(x), computed once on the grid by the spatial path; off-grid points use
// multilinear interpolation of the regular part plus the exact singular part.
class PotentialFunctional {
public:
    // Throws SpecError unless p = 1.
    PotentialFunctional(const SampledField& f, const PotentialSpec& spec);

    const OperatorResult& potential() const { return u_; }
    const PotentialSpec& spec() const { return spec_; }
    // Throws RangeError outside the sampled box. Points exactly at the origin (where the potential may be
    // singular) are moved by h/2 and counted in `shifted`.
    double operator()(std::span<const double> x, std::size_t* shifted = nullptr) const;
    // Points where the potential is singular (the origin when the singular part is present).
    std::vector<std::vector<double>> singular_points() const;

private:
    PotentialSpec spec_;
    OperatorResult u_;
};

// sum_k a_k (I_{gamma,1} f)(x_k).
double evaluate_functional(const PoissonRealization& r, const PotentialFunctional& g, std::size_t* shifted = nullptr);
double evaluate_functional(const PoissonRealization& r, const SampledField& f, const PotentialSpec& spec);
// sum_k a_k phi(x_k / N) (I_{gamma,1} f)(x_k) with phi the fixed cutoff.
double windowed_functional(const PoissonRealization& r, const PotentialFunctional& g, double N);
double windowed_functional(const PoissonRealization& r, const SampledField& f, const PotentialSpec& spec, double N);

// Diagnostics of a closed-form characteristic functional.
struct ClosedFormInfo {
    double tail_bound = 0.0;   // lambda E|a| |t| \int_{outside} |kernel|, estimated
    std::size_t panels = 0;    // quadrature panels used
};

// exp(lambda \int_{[-B,B]^d} (E[e^{-i a t g(x)}] - 1) dx) with g = I_{gamma,1} f.
cplx charfun_closed_form(const PotentialFunctional& g, double t, const PoissonConfig& cfg, ClosedFormInfo* info = nullptr);
cplx charfun_closed_form(const SampledField& f, const PotentialSpec& spec, double t, const PoissonConfig& cfg);

// Monte-Carlo mean of e^{-i t Phi(f)} over realizations 0..n_samples-1 (n_samples >= 100), one estimate
// per t. Realizations are evaluated in parallel; the reduction runs in index order, so results do not
// depend on the thread count.
std::vector<CharFunctionalEstimate> charfun_monte_carlo(const PotentialFunctional& g, const std::vector<double>& ts,
                                                        const PoissonConfig& cfg, std::size_t n_samples);
CharFunctionalEstimate charfun_monte_carlo(const SampledField& f, const PotentialSpec& spec, double t,
                                           const PoissonConfig& cfg, std::size_t n_samples);

// Pointwise process through H_{y0}: closed form over the enlarged box [-4B, 4B]^d and its Monte-Carlo
// counterpart sum_k a_k H_{y0}(x_k) with impulses drawn over the same enlarged box.
PoissonConfig pointwise_config(const PoissonConfig& cfg);
cplx pointwise_charfun(const HKernel& H, double t, const PoissonConfig& cfg, ClosedFormInfo* info = nullptr);
std::vector<CharFunctionalEstimate> pointwise_charfun_monte_carlo(const HKernel& H, const std::vector<double>& ts,
                                                                  const PoissonConfig& cfg, std::size_t n_samples,
                                                                  std::size_t* shifted = nullptr);

// e_N = ||I_{gamma,1} g_{N,y0} - H_{y0}||_1 for each N (g the unit-mass Gaussian), quadrature over the
// grid nodes excluding the origin and y0. Passes when e_N strictly decreases.
CheckReport delta_approx_convergence(const std::vector<double>& y0, const PotentialSpec& spec,
                                     const std::vector<double>& Ns, const Grid& g);

struct RenderedField {
    SampledField field;
    std::vector<std::size_t> flagged_nodes;  // nodes in the cells of impulses or singular points
};
// sum_k a_k H_{x_k}(x) on the grid. Nodes that coincide with a singular point are NaN.
RenderedField render_field(const PoissonRealization& r, const PotentialSpec& spec, const Grid& g);

// Closed forms for f on the grid (L, n) with (lambda, t, B) against f(. / s) on (sL, n) with
// (lambda s^{-d}, t s^{-gamma}, s B): equal by dilation invariance of I_{gamma,1}.
CheckReport self_similarity_probe(const SampledField& f, const PotentialSpec& spec, double t, const PoissonConfig& cfg,
                                  double s, double tolerance = 1e-6);

}  // namespace rieszlab
