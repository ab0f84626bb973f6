#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <json.hpp>

#include "rieszlab/rieszlab.hpp"

namespace rieszlab::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

const std::set<std::string> kTestFunctionNames{"gaussian", "shifted_gaussian", "bump_psi", "psi0",
                                               "moment_cancelled", "bump", "cutoff"};

// Output directory: --out, then RIESZLAB_OUT, then `fallback` (may be empty for stdout-only commands).
std::string output_dir(const GlobalOptions& g, const std::string& fallback) {
    std::string dir = g.out;
    if (dir.empty()) {
        if (const char* env = std::getenv("RIESZLAB_OUT"); env != nullptr && *env != '\0') dir = env;
    }
    if (dir.empty()) dir = fallback;
    if (!dir.empty()) {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
    }
    return dir;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open '" + path + "' for writing");
    return os;
}

double parse_p(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "Inf") return kInfinity;
    std::size_t used = 0;
    double p = 0.0;
    try {
        p = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size()) throw ConfigError("p must be a number or 'inf', got '" + s + "'");
    return p;
}

SampledField load_input(const ApplyOptions& o) {
    if (kTestFunctionNames.count(o.input) != 0) {
        return TestFunction::from_name(o.input, o.d).sample(Grid(o.d, o.L, o.n));
    }
    if (!fs::exists(o.input)) {
        throw ConfigError("input '" + o.input + "' is neither a test function name nor an existing CSV file");
    }
    SampledField f = read_csv(o.input);
    if (f.tag != DomainTag::spatial) throw ConfigError("input field must be spatial-tagged");
    return f;
}

ojson plain_diagnostics(const std::string& path) {
    ojson j;
    j["path"] = path;
    j["tail_sup"] = nullptr;
    j["flagged_nodes"] = ojson::array();
    return j;
}

PoissonConfig make_process(const GlobalOptions& g, const ProcessOptions& o) {
    PoissonConfig cfg;
    cfg.lambda = o.lambda;
    cfg.B = o.B;
    cfg.d = o.d;
    cfg.seed = g.seed;
    cfg.amplitude = AmplitudeDist::from_name(o.amplitude, o.amp_params);
    cfg.validate();
    return cfg;
}

void add_process_options(CLI::App& sub, ProcessOptions& o) {
    sub.add_option("--lambda", o.lambda, "Impulse intensity per unit volume")->capture_default_str();
    sub.add_option("--B", o.B, "Half-width of the impulse box [-B, B]^d")->capture_default_str();
    sub.add_option("--d", o.d, "Dimension (1 or 2)")->capture_default_str();
    sub.add_option("--gamma", o.gamma, "Degree of the potential (p = 1)")->capture_default_str();
    sub.add_option("--amplitude", o.amplitude, "deterministic | gaussian | laplace | uniform")->capture_default_str();
    sub.add_option("--amp-params", o.amp_params, "Amplitude parameters (a0 | sigma | b | lo hi)")->delimiter(',');
}

}  // namespace

void add_apply(CLI::App& app, ApplyOptions& o) {
    auto* sub = app.add_subcommand("apply", "Apply an operator to a test function or a field CSV");
    sub->add_option("--op", o.op, "frac_laplacian | riesz | integrable_riesz | adjoint")
        ->check(CLI::IsMember({"frac_laplacian", "riesz", "integrable_riesz", "adjoint"}))
        ->capture_default_str();
    sub->add_option("--gamma", o.gamma, "Operator degree")->capture_default_str();
    sub->add_option("--p", o.p, "Integrability exponent, a number >= 1 or 'inf'")->capture_default_str();
    sub->add_option("--d", o.d, "Dimension")->capture_default_str();
    sub->add_option("--L", o.L, "Grid half-width")->capture_default_str();
    sub->add_option("--n", o.n, "Points per axis (even)")->capture_default_str();
    sub->add_option("--input", o.input, "Test function name or path to a field CSV")->capture_default_str();
    sub->add_option("--path", o.path, "fourier | spatial (riesz, integrable_riesz)")
        ->check(CLI::IsMember({"", "fourier", "spatial"}));
}

void add_verify(CLI::App& app, VerifyOptions& o) {
    auto* sub = app.add_subcommand("verify", "Run verification suites and print JSON-lines reports");
    std::vector<std::string> names = suite_names();
    names.push_back("all");
    sub->add_option("--suite", o.suites, "Suites to run (repeat or comma-separate)")
        ->delimiter(',')
        ->check(CLI::IsMember(names));
    sub->add_option("--gamma1", o.gamma1, "Outer degree for the composition check")->capture_default_str();
    sub->add_option("--gamma2", o.gamma2, "Inner degree for the composition check")->capture_default_str();
}

void add_simulate(CLI::App& app, SimulateOptions& o) {
    auto* sub = app.add_subcommand("simulate", "Draw one Poisson realization and render its field");
    add_process_options(*sub, o.process);
    sub->add_option("--L", o.L, "Render grid half-width (default 2B)");
    sub->add_option("--n", o.n, "Render grid points per axis (default 1024 in 1-d, 128 in 2-d)");
    sub->add_option("--stream", o.stream, "Realization index under the seed")->capture_default_str();
}

void add_charfun(CLI::App& app, CharfunOptions& o) {
    auto* sub = app.add_subcommand("charfun", "Compare closed-form and Monte-Carlo characteristic functionals");
    add_process_options(*sub, o.process);
    sub->add_option("--test-function", o.test_function, "Test function of the functional")->capture_default_str();
    sub->add_option("--y0", o.y0, "Evaluation point; selects the pointwise process")->delimiter(',');
    sub->add_option("--t", o.t, "Arguments t")->delimiter(',')->capture_default_str();
    sub->add_option("--n-samples", o.n_samples, "Monte-Carlo realizations (>= 100)")->capture_default_str();
    sub->add_option("--L", o.L, "Grid half-width for the potential")->capture_default_str();
    sub->add_option("--n", o.n, "Grid points per axis for the potential")->capture_default_str();
}

int run_apply(const GlobalOptions& g, const ApplyOptions& o) {
    const double p = parse_p(o.p);
    std::optional<PotentialSpec> spec;
    if (o.op == "integrable_riesz" || o.op == "adjoint") spec.emplace(o.gamma, p, o.d);
    if (o.op == "riesz" && !(o.gamma > 0.0 && o.gamma < o.d))
        throw RangeError("riesz requires 0 < gamma < d");
    if (o.op == "frac_laplacian" && !(o.gamma > 0.0)) throw RangeError("frac_laplacian requires gamma > 0");
    if (o.op == "frac_laplacian" || o.op == "adjoint") {
        if (o.path == "spatial") throw ConfigError(o.op + " has only the Fourier path");
    }
    const SampledField f = load_input(o);
    if (spec && spec->dim() != f.grid.dim()) throw ConfigError("--d does not match the input grid dimension");

    SampledField out(f.grid);
    ojson diag;
    if (o.op == "frac_laplacian") {
        out = fractional_laplacian(f, o.gamma);
        diag = plain_diagnostics("fourier");
    } else if (o.op == "riesz") {
        const bool spatial = o.path == "spatial";
        out = spatial ? riesz_potential_convolution(f, o.gamma) : riesz_potential_fourier(f, o.gamma);
        diag = plain_diagnostics(spatial ? "spatial_kernel" : "fourier");
    } else {
        OperatorResult r = o.op == "adjoint"          ? adjoint_integrable_potential(f, *spec)
                           : o.path == "fourier"      ? integrable_potential_fourier(f, *spec)
                                                      : integrable_potential_spatial(f, *spec);
        out = r.field;
        diag = ojson::parse(r.diagnostics_json());
    }
    diag["op"] = o.op;
    diag["gamma"] = o.gamma;
    diag["p"] = std::isinf(p) ? ojson("inf") : ojson(p);
    diag["grid"] = out.grid.describe();

    const std::string dir = output_dir(g, ".");
    const std::string field_path = (fs::path(dir) / (o.op + ".csv")).string();
    const std::string diag_path = (fs::path(dir) / (o.op + ".diagnostics.json")).string();
    write_csv(field_path, out);
    open_output(diag_path) << diag.dump(2) << '\n';

    ojson summary;
    summary["field"] = field_path;
    summary["diagnostics"] = diag_path;
    std::cout << summary.dump() << '\n';
    return kPass;
}

int run_verify(const GlobalOptions& g, const VerifyOptions& o) {
    if (o.suites.empty()) {
        throw ConfigError("no suite selected; pass --suite with one of the suite names or 'all'");
    }
    std::set<std::string> selected;
    for (const auto& s : o.suites) {
        if (s == "all") {
            for (const auto& n : suite_names()) selected.insert(n);
        } else {
            selected.insert(s);
        }
    }
    if (o.gamma_override) {
        if (selected.count("composition") == 0) throw ConfigError("--gamma1/--gamma2 apply only to the composition suite");
        // Validate the hypothesis before any suite runs.
        if (!(o.gamma1 >= 0.0 && o.gamma2 > 0.0 && o.gamma2 < 1.0 && o.gamma1 + o.gamma2 < 1.0)) {
            throw HypothesisError("composition needs 0 <= gamma1, 0 < gamma2 < d and gamma1 + gamma2 < d (d = 1); got gamma1 = " +
                                  std::to_string(o.gamma1) + ", gamma2 = " + std::to_string(o.gamma2));
        }
    }

    const std::string dir = output_dir(g, "");
    std::ofstream file;
    if (!dir.empty()) file = open_output((fs::path(dir) / "verify.jsonl").string());

    bool all_passed = true;
    // Keep the documented suite order rather than the set's alphabetical one.
    for (const auto& name : suite_names()) {
        if (selected.count(name) == 0) continue;
        std::vector<CheckReport> reports;
        if (name == "composition" && o.gamma_override) {
            reports.push_back(check_composition(o.gamma1, o.gamma2, 1, TestFunction::gaussian(), Grid(1, 20.0, 4096)));
        } else {
            reports = run_suite(name);
        }
        for (const auto& r : reports) {
            const std::string line = r.to_json();
            std::cout << line << '\n' << std::flush;
            if (file.is_open()) file << line << '\n';
            all_passed = all_passed && r.passed;
        }
    }
    return all_passed ? kPass : kCheckFailed;
}

int run_simulate(const GlobalOptions& g, const SimulateOptions& o) {
    const PoissonConfig cfg = make_process(g, o.process);
    const PotentialSpec spec(o.process.gamma, 1.0, o.process.d);
    const double L = o.L > 0.0 ? o.L : 2.0 * o.process.B;
    const int n = o.n > 0 ? o.n : (o.process.d == 1 ? 1024 : 128);
    const Grid grid(o.process.d, L, n);

    const PoissonRealization r = sample_realization(cfg, o.stream);
    const RenderedField rf = render_field(r, spec, grid);

    const std::string dir = output_dir(g, ".");
    const std::string real_path = (fs::path(dir) / "realization.csv").string();
    const std::string field_path = (fs::path(dir) / "field.csv").string();
    const std::string diag_path = (fs::path(dir) / "simulate.json").string();
    {
        auto os = open_output(real_path);
        os << "k";
        for (int a = 1; a <= cfg.d; ++a) os << ",x_" << a;
        os << ",a\n";
        os.precision(17);
        for (std::size_t k = 0; k < r.size(); ++k) {
            os << k;
            for (double x : r.points[k]) os << ',' << x;
            os << ',' << r.amplitudes[k] << '\n';
        }
    }
    write_csv(field_path, rf.field);

    ojson diag;
    diag["seed"] = g.seed;
    diag["stream"] = o.stream;
    diag["count"] = r.size();
    diag["expected_count"] = cfg.expected_count();
    diag["amplitude"] = cfg.amplitude.describe();
    diag["spec"] = spec.describe();
    diag["grid"] = grid.describe();
    diag["flagged_nodes"] = rf.flagged_nodes;
    open_output(diag_path) << diag.dump(2) << '\n';

    ojson summary;
    summary["realization"] = real_path;
    summary["field"] = field_path;
    summary["diagnostics"] = diag_path;
    summary["count"] = r.size();
    std::cout << summary.dump() << '\n';
    return kPass;
}

int run_charfun(const GlobalOptions& g, const CharfunOptions& o) {
    if (o.n_samples < 100) {
        throw ConfigError("n_samples = " + std::to_string(o.n_samples) + " is below the floor of 100 realizations");
    }
    if (o.t.empty()) throw ConfigError("no t values given");
    const PoissonConfig cfg = make_process(g, o.process);
    const PotentialSpec spec(o.process.gamma, 1.0, o.process.d);
    const bool pointwise = !o.y0.empty();
    if (pointwise && static_cast<int>(o.y0.size()) != cfg.d) throw ConfigError("--y0 must have d coordinates");

    std::vector<cplx> closed;
    std::vector<CharFunctionalEstimate> mc;
    if (pointwise) {
        const HKernel H(o.y0, spec.gamma(), spec.dim());
        for (double t : o.t) closed.push_back(pointwise_charfun(H, t, cfg));
        mc = pointwise_charfun_monte_carlo(H, o.t, cfg, o.n_samples);
    } else {
        const Grid grid(cfg.d, o.L, o.n);
        const PotentialFunctional G(TestFunction::from_name(o.test_function, cfg.d).sample(grid), spec);
        for (double t : o.t) closed.push_back(charfun_closed_form(G, t, cfg));
        mc = charfun_monte_carlo(G, o.t, cfg, o.n_samples);
    }

    const std::string dir = output_dir(g, "");
    std::ofstream file;
    if (!dir.empty()) file = open_output((fs::path(dir) / "charfun.jsonl").string());

    bool all_agree = true;
    for (std::size_t i = 0; i < o.t.size(); ++i) {
        const bool agree = std::abs(closed[i] - mc[i].value) <= 3.0 * mc[i].std_error;
        all_agree = all_agree && agree;
        ojson row;
        row["t"] = o.t[i];
        row["closed_re"] = closed[i].real();
        row["closed_im"] = closed[i].imag();
        row["mc_re"] = mc[i].value.real();
        row["mc_im"] = mc[i].value.imag();
        row["stderr"] = mc[i].std_error;
        row["agree"] = agree;
        std::cout << row.dump() << '\n';
        if (file.is_open()) file << row.dump() << '\n';
    }
    return all_agree ? kPass : kCheckFailed;
}

}  // namespace rieszlab::cli
