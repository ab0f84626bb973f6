#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace rieszlab::cli {

// Exit-code contract.
enum ExitCode : int { kPass = 0, kCheckFailed = 1, kConfigError = 2, kNumericError = 3 };

struct GlobalOptions {
    std::string config;
    std::string out;  // empty: RIESZLAB_OUT, then no file output (verify, charfun) or "." (apply, simulate)
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

struct ApplyOptions {
    std::string op = "integrable_riesz";
    double gamma = 0.5;
    std::string p = "1";
    int d = 1;
    double L = 20.0;
    int n = 4096;
    std::string input = "gaussian";
    std::string path;  // fourier | spatial; empty picks the operator's reference path
};

struct VerifyOptions {
    std::vector<std::string> suites;
    double gamma1 = 0.2;
    double gamma2 = 0.3;
    bool gamma_override = false;
};

struct ProcessOptions {
    double lambda = 1.0;
    double B = 10.0;
    int d = 1;
    double gamma = 0.5;
    std::string amplitude = "deterministic";
    std::vector<double> amp_params;
};

struct SimulateOptions {
    ProcessOptions process;
    double L = 0.0;  // 0: twice B
    int n = 0;       // 0: 1024 for d = 1, 128 for d = 2
    std::uint64_t stream = 0;
};

struct CharfunOptions {
    ProcessOptions process;
    std::string test_function = "bump";
    std::vector<double> y0;  // non-empty selects the pointwise process H_{y0}
    std::vector<double> t{0.5, 1.0, 2.0};
    std::size_t n_samples = 10000;
    double L = 32.0;
    int n = 4096;
};

void add_apply(CLI::App& app, ApplyOptions& o);
void add_verify(CLI::App& app, VerifyOptions& o);
void add_simulate(CLI::App& app, SimulateOptions& o);
void add_charfun(CLI::App& app, CharfunOptions& o);

// Each returns an ExitCode; library errors propagate as exceptions.
int run_apply(const GlobalOptions& g, const ApplyOptions& o);
int run_verify(const GlobalOptions& g, const VerifyOptions& o);
int run_simulate(const GlobalOptions& g, const SimulateOptions& o);
int run_charfun(const GlobalOptions& g, const CharfunOptions& o);

}  // namespace rieszlab::cli
