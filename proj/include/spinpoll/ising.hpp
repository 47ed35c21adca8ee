#pragma once

#include <vector>

#include "spinpoll/graph.hpp"

namespace spinpoll {

// Model parameters. The coupling counts every edge once:
//   log-weight H(x) = beta * sum_{(i,j) in E} x_i x_j + h * sum_i x_i,
// which makes the closed-form free entropy densities hold verbatim. A
// double-counted adjacency convention is recovered by passing 2*beta.
struct ModelParams {
    double beta = 0.0;
    double h = 0.0;
};

using SpinConfiguration = std::vector<int8_t>;

// Exact law of the spin sum S_n = sum_i x_i plus log Z_n. probs[k] is
// P(#{i : x_i = +1} = k), i.e. P(S_n = 2k - n), for k = 0..n.
struct MagnetizationPmf {
    int n = 0;
    std::vector<double> probs;
    double log_partition = 0.0;

    double sum_value(int k) const { return 2.0 * k - n; }
    double xbar(int k) const { return (2.0 * k - n) / n; }
    double mean_xbar() const;
    double var_xbar() const;
    // index of the largest-probability support point with xbar >= 0
    int positive_mode_index() const;
};

// Builds a normalized pmf from unnormalized log-weights over k = 0..n
// (-infinity marks empty support) with a single log-sum-exp pass.
MagnetizationPmf pmf_from_log_weights(int n, const std::vector<double>& log_weights);

double hamiltonian_weight(const GraphInstance& g, const ModelParams& params,
                          const SpinConfiguration& x);

// Full 2^m sweep over the free spins (clamped spins stay fixed); m <= 24.
MagnetizationPmf exact_enumeration(const GraphInstance& g, const ModelParams& params);

// Exact finite-n log Z via the 2x2 transfer matrix, stable up to n ~ 1e6.
// kind must be Chain (n >= 2) or Ring (n >= 3).
double chain_ring_log_partition(const ModelParams& params, long long n, GraphFamily kind);

// Exact finite-n log Z through the analytic route for each family:
// Empty/Star closed forms, Chain/Ring transfer matrix, Wheel hub-conditioned
// ring, Complete = Curie-Weiss normalizer (O(n)). Lattice2D has no closed
// route and throws.
double log_partition_exact(GraphFamily family, const ModelParams& params, long long n);

// Exact pmf of the spin sum by hub conditioning / transfer DP; O(n^2) time,
// O(n) memory. family must be Chain, Ring, Star or Wheel.
MagnetizationPmf magnetization_pmf_dp(GraphFamily family, const ModelParams& params, int n);

// Complete graph with the coupling weakened to beta/n:
// P(S_n = s) ~ C(n,(n+s)/2) exp(beta s^2 / (2n) + h s). O(n).
MagnetizationPmf magnetization_pmf_curie_weiss(const ModelParams& params, int n);

// Dispatcher covering all exactly solvable families (Empty and Complete
// included). Lattice2D throws.
MagnetizationPmf exact_pmf(GraphFamily family, const ModelParams& params, int n);

inline double finite_n_free_entropy(double log_partition, double n) { return log_partition / n; }
inline double finite_n_free_entropy(const MagnetizationPmf& pmf) {
    return pmf.log_partition / pmf.n;
}

}  // namespace spinpoll
