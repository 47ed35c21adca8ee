#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinpoll/detection.hpp"

namespace spinpoll {

// invalid configuration -> exit 2
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// estimator cannot serve the request -> exit 3
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// internal numeric failure -> exit 4
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kToolName = "spinpoll";
inline constexpr const char* kToolVersion = "0.1.0";

// Flat, resolved run description. Sweep lists must be nonempty and strictly
// increasing; scalar commands take single-element lists.
struct RunConfig {
    std::string command;  // cdf | pe-vs-n | pe-vs-beta | asymptotics | bounds-check | probe-concentration
    std::vector<std::string> graphs{"empty"};
    std::vector<long long> n_list{1001};
    std::vector<double> beta_list{0.0};
    std::vector<double> h_list{0.0};
    std::vector<std::string> S_list{"0"};  // numeric or the symbolic "mu"
    std::vector<double> p_list{0.3};
    double delta = 1.0;
    std::string estimator = "auto";  // exact | rb-exact | rb-gauss | mc | auto
    std::string sampler = "metropolis";
    long long burn_in = 1000;
    long long thin = 10;
    long long trials = 100000;
    long long mcmc_samples = 10000;
    uint64_t seed = 1;
    std::string boundary = "free";
    std::string threshold_mode = "delta-scaled";
    double match_tol = 1e-9;  // tolerance for the S = mu knife edge
    std::string probe_window_mode = "scaled";
    double probe_window = 1.0;

    // execution/output knobs, excluded from the config hash
    int workers = 0;  // 0 = hardware concurrency
    std::string out;  // empty = stdout
    std::string format = "csv";  // csv | json
};

struct RunResult {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    nlohmann::json manifest;
    bool json_record = false;  // asymptotics emits the manifest alone

    std::string csv_text() const;
};

// canonical FNV-1a hash of the scientific part of the config
std::string config_hash(const RunConfig& config);

// Resolves the symbolic level "mu" for a family at (beta, h); numeric passes
// through.
double resolve_level(const std::string& spec, GraphFamily family, double beta, double h);

RunResult run_command(const RunConfig& config);

// CSV + adjacent <out>.manifest.json, or one merged document for json format.
// Empty out streams the table to stdout and the manifest to stderr.
void write_outputs(const RunResult& result, const RunConfig& config);

std::string format_double(double v);

}  // namespace spinpoll
