#pragma once

#include <cstdint>
#include <vector>

#include "spinpoll/graph.hpp"
#include "spinpoll/ising.hpp"

namespace spinpoll {

enum class Sampler { Metropolis, WolffCluster };

const char* sampler_name(Sampler s);

struct SampleBatch {
    int n = 0;
    std::vector<double> magnetizations;  // xbar = (2k - n)/n per recorded sample
    std::vector<int> plus_counts;
    uint64_t seed = 0;
    Sampler sampler = Sampler::Metropolis;
    int burn_in = 0;
    int thin = 0;
};

// Runs a single chain and records `count` magnetizations, one every `thin`
// sweeps after `burn_in` sweeps. Fully deterministic given the seed.
//
// Metropolis: one sweep = one single-site proposal per free vertex in fixed
// scan order, acceptance min(1, exp(delta log-weight)); a zero-delta proposal
// accepts with probability 1/2 so the beta = 0 chain stays ergodic.
//
// WolffCluster (h = 0 only): clusters grow over free vertices with bond
// probability 1 - exp(-2 beta); an activated bond into a clamped vertex
// vetoes the flip (the clamps act as one frozen ghost cluster). Burn-in
// sweeps run cluster updates until coverage reaches n; the average number of
// updates that took is frozen as the per-sweep update count for measurement,
// since recording at coverage-triggered times would bias the samples.
SampleBatch mcmc_sample(const GraphInstance& g, const ModelParams& params, Sampler sampler,
                        int count, int burn_in, int thin, uint64_t seed);

}  // namespace spinpoll
