#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "spinpoll/mcmc.hpp"

using namespace spinpoll;

namespace {

double batch_mean(const SampleBatch& b) { return oracles::mean_of(b.magnetizations); }

double batch_se(const SampleBatch& b) {
    return oracles::stddev_of(b.magnetizations) / std::sqrt((double)b.magnetizations.size());
}

}  // namespace

TEST_CASE("invalid sampling requests are rejected") {
    auto g = build_graph(GraphFamily::Ring, 8);
    CHECK_THROWS_AS(mcmc_sample(g, {0.5, 0.1}, Sampler::WolffCluster, 10, 10, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(mcmc_sample(g, {0.5, 0.0}, Sampler::Metropolis, 0, 10, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(mcmc_sample(g, {0.5, 0.0}, Sampler::Metropolis, 10, 0, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(mcmc_sample(g, {0.5, 0.0}, Sampler::Metropolis, 10, 10, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("chains are deterministic in the seed") {
    auto g = build_graph(GraphFamily::Lattice2D, 25);
    auto a = mcmc_sample(g, {0.4, 0.0}, Sampler::Metropolis, 50, 20, 2, 42);
    auto b = mcmc_sample(g, {0.4, 0.0}, Sampler::Metropolis, 50, 20, 2, 42);
    CHECK(a.magnetizations == b.magnetizations);
    auto c = mcmc_sample(g, {0.4, 0.0}, Sampler::Metropolis, 50, 20, 2, 43);
    CHECK(a.magnetizations != c.magnetizations);
    auto w1 = mcmc_sample(g, {0.4, 0.0}, Sampler::WolffCluster, 50, 20, 2, 42);
    auto w2 = mcmc_sample(g, {0.4, 0.0}, Sampler::WolffCluster, 50, 20, 2, 42);
    CHECK(w1.magnetizations == w2.magnetizations);
}

TEST_CASE("metropolis reproduces the enumerated law on a 4x4 lattice") {
    auto g = build_graph(GraphFamily::Lattice2D, 16);
    auto ref = exact_enumeration(g, {0.3, 0.0});
    auto batch = mcmc_sample(g, {0.3, 0.0}, Sampler::Metropolis, 6000, 500, 5, 7);
    CHECK(std::abs(batch_mean(batch) - ref.mean_xbar()) <= 3 * batch_se(batch) + 1e-9);

    // and with a field, where the mean is away from zero
    auto ref_h = exact_enumeration(g, {0.3, 0.2});
    auto batch_h = mcmc_sample(g, {0.3, 0.2}, Sampler::Metropolis, 6000, 500, 5, 11);
    CHECK(std::abs(batch_mean(batch_h) - ref_h.mean_xbar()) <= 3 * batch_se(batch_h));
}

TEST_CASE("wolff reproduces the enumerated law on a 4x4 lattice") {
    auto g = build_graph(GraphFamily::Lattice2D, 16);
    auto ref = exact_enumeration(g, {0.3, 0.0});
    auto batch = mcmc_sample(g, {0.3, 0.0}, Sampler::WolffCluster, 6000, 500, 5, 9);
    CHECK(std::abs(batch_mean(batch) - ref.mean_xbar()) <= 3 * batch_se(batch) + 1e-9);
    // second moment pins the distribution harder than the (zero) mean
    double m2 = 0;
    for (double x : batch.magnetizations) m2 += x * x;
    m2 /= batch.magnetizations.size();
    double ref_m2 = 0;
    for (int k = 0; k <= 16; ++k) ref_m2 += ref.probs[k] * ref.xbar(k) * ref.xbar(k);
    CHECK(m2 == doctest::Approx(ref_m2).epsilon(0.05));
}

TEST_CASE("wolff honors clamped boundaries") {
    auto g = build_graph(GraphFamily::Lattice2D, 16, Boundary::PlusClamped);
    auto ref = exact_enumeration(g, {0.4, 0.0});
    auto batch = mcmc_sample(g, {0.4, 0.0}, Sampler::WolffCluster, 6000, 500, 5, 13);
    CHECK(std::abs(batch_mean(batch) - ref.mean_xbar()) <= 3 * batch_se(batch) + 1e-9);

    // clamped spins never flip: the 3x3 plus-clamped grid has one free site
    auto tiny = build_graph(GraphFamily::Lattice2D, 9, Boundary::PlusClamped);
    auto tb = mcmc_sample(tiny, {0.4, 0.0}, Sampler::Metropolis, 200, 10, 1, 3);
    for (int k : tb.plus_counts) CHECK((k == 8 || k == 9));
}

TEST_CASE("independent spins at beta = 0 have binomial variance") {
    auto g = build_graph(GraphFamily::Ring, 100);
    auto batch = mcmc_sample(g, {0.0, 0.0}, Sampler::Metropolis, 4000, 100, 2, 5);
    std::vector<double> sums;
    sums.reserve(batch.plus_counts.size());
    for (int k : batch.plus_counts) sums.push_back(2.0 * k - 100);
    const double sd = oracles::stddev_of(sums);
    CHECK(sd * sd == doctest::Approx(100.0).epsilon(0.15));
}

TEST_CASE("plus clamping never lowers the sampled mean") {
    auto free_g = build_graph(GraphFamily::Lattice2D, 25);
    auto plus_g = build_graph(GraphFamily::Lattice2D, 25, Boundary::PlusClamped);
    auto free_b = mcmc_sample(free_g, {0.5, 0.0}, Sampler::WolffCluster, 4000, 300, 3, 17);
    auto plus_b = mcmc_sample(plus_g, {0.5, 0.0}, Sampler::WolffCluster, 4000, 300, 3, 17);
    const double se = std::hypot(batch_se(free_b), batch_se(plus_b));
    CHECK(batch_mean(plus_b) >= batch_mean(free_b) - 3 * se);
}

TEST_CASE("plus-clamped 51x51 mean matches the spontaneous magnetization") {
    auto g = build_graph(GraphFamily::Lattice2D, 2601, Boundary::PlusClamped);
    auto batch = mcmc_sample(g, {0.7, 0.0}, Sampler::WolffCluster, 2000, 300, 5, 23);
    // deep in the ordered phase the clamped-boundary mean sits at the
    // classical value (1 - sinh(2 beta)^-4)^(1/8) ~ 0.9902
    CHECK(std::abs(batch_mean(batch) - 0.9901625386761564) <= 0.01);
}

TEST_CASE("recorded magnetizations are consistent with plus counts") {
    auto g = build_graph(GraphFamily::Chain, 33);
    auto batch = mcmc_sample(g, {0.4, -0.2}, Sampler::Metropolis, 100, 50, 2, 21);
    for (size_t i = 0; i < batch.plus_counts.size(); ++i) {
        CHECK(batch.magnetizations[i] ==
              doctest::Approx((2.0 * batch.plus_counts[i] - 33) / 33).epsilon(1e-15));
        CHECK(batch.magnetizations[i] >= -1.0);
        CHECK(batch.magnetizations[i] <= 1.0);
    }
}
