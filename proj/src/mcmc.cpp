#include <cmath>
#include <stdexcept>

#include "spinpoll/mcmc.hpp"
#include "spinpoll/rng.hpp"

namespace spinpoll {

const char* sampler_name(Sampler s) {
    return s == Sampler::Metropolis ? "metropolis" : "wolff";
}

namespace {

struct ChainState {
    const GraphInstance* g;
    ModelParams params;
    SpinConfiguration x;
    std::vector<int> free;
    long long spin_sum = 0;

    ChainState(const GraphInstance& graph, const ModelParams& p, Xoshiro256pp& rng)
        : g(&graph), params(p), x(graph.n), free(graph.free_vertices()) {
        for (int v = 0; v < graph.n; ++v) {
            if (graph.clamp[v] != 0)
                x[v] = graph.clamp[v];
            else
                x[v] = (rng.next_u64() & 1) ? int8_t{1} : int8_t{-1};
            spin_sum += x[v];
        }
    }

    int plus_count() const { return static_cast<int>((spin_sum + g->n) / 2); }

    void metropolis_sweep(Xoshiro256pp& rng) {
        for (int v : free) {
            double nb = 0;
            for (int u : g->neighbors(v)) nb += x[u];
            const double delta = -2.0 * x[v] * (params.beta * nb + params.h);
            // delta == 0 accepts with probability 1/2; always accepting would
            // make the beta = 0 chain a deterministic global flip
            const bool accept = delta > 0 ? true
                                : delta == 0 ? rng.uniform() < 0.5
                                             : rng.uniform() < std::exp(delta);
            if (accept) {
                x[v] = static_cast<int8_t>(-x[v]);
                spin_sum += 2 * x[v];
            }
        }
    }

    // One Wolff cluster update; returns the cluster size. The cluster grows
    // over free vertices only; an activated bond into an aligned clamped
    // vertex marks the move rejected, but growth completes so the proposal
    // distribution is the standard Wolff one.
    int wolff_update(Xoshiro256pp& rng, const double p_add, std::vector<uint8_t>& in_cluster,
                     std::vector<int>& stack, std::vector<int>& members) {
        const int seed_site = free[static_cast<size_t>(rng.below(free.size()))];
        const int8_t cluster_spin = x[seed_site];
        bool touches_clamp = false;
        stack.clear();
        members.clear();
        stack.push_back(seed_site);
        in_cluster[seed_site] = 1;
        members.push_back(seed_site);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int u : g->neighbors(v)) {
                if (x[u] != cluster_spin) continue;
                if (in_cluster[u]) continue;
                if (rng.uniform() >= p_add) continue;
                if (g->clamp[u] != 0) {
                    touches_clamp = true;
                    continue;
                }
                in_cluster[u] = 1;
                members.push_back(u);
                stack.push_back(u);
            }
        }
        if (!touches_clamp) {
            for (int v : members) {
                x[v] = static_cast<int8_t>(-x[v]);
                spin_sum += 2 * x[v];
            }
        }
        for (int v : members) in_cluster[v] = 0;
        return static_cast<int>(members.size());
    }

};

}  // namespace

SampleBatch mcmc_sample(const GraphInstance& g, const ModelParams& params, Sampler sampler,
                        int count, int burn_in, int thin, uint64_t seed) {
    if (count <= 0 || burn_in <= 0 || thin <= 0)
        throw std::invalid_argument("count, burn_in and thin must be positive");
    if (sampler == Sampler::WolffCluster && params.h != 0)
        throw std::invalid_argument("the Wolff cluster sampler requires h = 0");
    if (g.num_free() == 0 && sampler == Sampler::WolffCluster)
        throw std::invalid_argument("Wolff sampler needs at least one free vertex");

    Xoshiro256pp rng(seed);
    ChainState chain(g, params, rng);

    SampleBatch batch;
    batch.n = g.n;
    batch.seed = seed;
    batch.sampler = sampler;
    batch.burn_in = burn_in;
    batch.thin = thin;
    batch.magnetizations.reserve(count);
    batch.plus_counts.reserve(count);

    std::vector<uint8_t> in_cluster(g.n, 0);
    std::vector<int> stack, members;
    const double p_add = -std::expm1(-2.0 * params.beta);

    if (sampler == Sampler::Metropolis) {
        for (int s = 0; s < burn_in; ++s) chain.metropolis_sweep(rng);
        for (int i = 0; i < count; ++i) {
            for (int s = 0; s < thin; ++s) chain.metropolis_sweep(rng);
            const int k = chain.plus_count();
            batch.plus_counts.push_back(k);
            batch.magnetizations.push_back((2.0 * k - g.n) / g.n);
        }
        return batch;
    }

    // Wolff. Recording may only happen after a state-independent number of
    // cluster updates: stopping a sweep when cumulative cluster coverage
    // crosses n would sample states right after large (often rejected)
    // clusters and bias the record. Burn-in measures the average updates
    // needed to cover n sites and that count is frozen for measurement.
    long long burn_updates = 0;
    for (int s = 0; s < burn_in; ++s) {
        long long covered = 0;
        do {
            covered += chain.wolff_update(rng, p_add, in_cluster, stack, members);
            ++burn_updates;
        } while (covered < g.n);
    }
    const long long per_sweep = (burn_updates + burn_in - 1) / burn_in;
    for (int i = 0; i < count; ++i) {
        for (long long s = 0; s < thin * per_sweep; ++s)
            chain.wolff_update(rng, p_add, in_cluster, stack, members);
        const int k = chain.plus_count();
        batch.plus_counts.push_back(k);
        batch.magnetizations.push_back((2.0 * k - g.n) / g.n);
    }
    return batch;
}

}  // namespace spinpoll
