#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spinpoll/ising.hpp"
#include "spinpoll/mcmc.hpp"
#include "spinpoll/rng.hpp"

namespace spinpoll {

struct ChannelParams {
    double p = 0.3;     // crossover probability, in (0, 1/2)
    double delta = 1.0;  // observation fraction, in (0, 1]
};

enum class ThresholdMode { DeltaScaled, PaperLiteral };

struct DetectionTask {
    double S = 0.0;  // supermajority level in (-1, 1)
    ChannelParams channel;
    ThresholdMode threshold_mode = ThresholdMode::DeltaScaled;
};

// Rejects (n, S) combinations where n(1+S)/2 lands on an integer (within
// 1e-9), which would make the supermajority variable ambiguous.
void require_no_tie(int n, double S);

// Per-coordinate independent measurement: skipped (0) with probability
// 1 - delta, otherwise flips the spin with probability p.
std::vector<int8_t> measure(const SpinConfiguration& x, const ChannelParams& channel,
                            Xoshiro256pp& rng);

int supermajority(double xbar, double S);  // throws on a tie

// Detector threshold: (1-2p)S at full observation; under partial observation
// either delta-scaled (default) or the literal full-observation value.
double detection_threshold(const DetectionTask& task, double effective_delta);

// sign(ybar - threshold) with sign(0) := +1
int detect(double ybar, const DetectionTask& task, double effective_delta);

// standard normal upper tail via erfc
double normal_tail_q(double x);

inline constexpr int kExactConditionalMaxN = 2048;

// Exact P(detector disagrees with the supermajority | plus count = k) at full
// observation: the observed plus count is Binomial(k, 1-p) + Binomial(n-k, p)
// and the answer is one tail of that convolution. O(n) per call after an
// O(n) setup; n <= kExactConditionalMaxN.
double conditional_error_exact(int k, int n, const DetectionTask& task);

// Gaussian limit of the same conditional error: Q(d_p sqrt(n) |xbar - S|).
double conditional_error_gauss(int k, int n, const DetectionTask& task);

enum class EstimatorMethod { ExactSmallN, RBExact, RBGauss, PlainMC };

const char* method_name(EstimatorMethod m);
std::optional<EstimatorMethod> method_from_name(std::string_view name);

struct ErrorEstimate {
    double pe = 0;
    double std_error = 0;  // 0 for deterministic methods
    EstimatorMethod method = EstimatorMethod::RBGauss;
    int n = 0;
    std::optional<double> hoeffding_bound;  // E[exp(-c n (xbar-S)^2)], c = delta^2 (1-2p)^2 / 2
    double hoeffding_std_error = 0;
    std::optional<double> q_limit_value;  // E[Q(d_p sqrt(n)|xbar-S|)] (full observation only)
};

// Detection error estimators over an exact magnetization law. ExactSmallN and
// RBExact run the deterministic sum over the exact conditional error (full
// observation, n within the exact cutoff); RBGauss substitutes the Gaussian
// conditional; PlainMC draws the plus count from the pmf and simulates the
// channel (`trials` draws).
ErrorEstimate estimate_pe(const MagnetizationPmf& pmf, const DetectionTask& task,
                          EstimatorMethod method, long long trials = 100000, uint64_t seed = 1);

// Same estimators over an MCMC sample batch. Exact/gauss conditionals are
// averaged across the batch; PlainMC cycles trials through the samples.
ErrorEstimate estimate_pe(const SampleBatch& batch, const DetectionTask& task,
                          EstimatorMethod method, long long trials = 100000, uint64_t seed = 1);

enum class WindowMode { ScaledWindow, FixedWindow };

// P(sqrt(n)|xbar - S| <= window) (scaled) or P(|xbar - S| <= window) (fixed).
double concentration_probe(const MagnetizationPmf& pmf, double S, double window, WindowMode mode);
double concentration_probe(const SampleBatch& batch, double S, double window, WindowMode mode);

// Least-squares slope of log(prob) against n; the empirical decay-rate
// diagnostic for an n-sweep of window probabilities or error rates.
double fit_log_slope(const std::vector<double>& ns, const std::vector<double>& probs);

}  // namespace spinpoll
