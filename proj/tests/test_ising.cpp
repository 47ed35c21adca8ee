#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "spinpoll/analytics.hpp"
#include "spinpoll/ising.hpp"

using namespace spinpoll;
using doctest::Approx;

namespace {

double pmf_total(const MagnetizationPmf& pmf) {
    double s = 0;
    for (double p : pmf.probs) s += p;
    return s;
}

}  // namespace

TEST_CASE("hamiltonian weight on small graphs") {
    auto chain2 = build_graph(GraphFamily::Chain, 2);
    CHECK(hamiltonian_weight(chain2, {0.5, 0.0}, {1, 1}) == Approx(0.5).epsilon(1e-15));
    CHECK(hamiltonian_weight(chain2, {0.5, 0.3}, {1, -1}) == Approx(-0.5).epsilon(1e-15));
    auto ring3 = build_graph(GraphFamily::Ring, 3);
    CHECK(hamiltonian_weight(ring3, {0.5, 0.0}, {1, 1, 1}) == Approx(1.5).epsilon(1e-15));
    CHECK_THROWS_AS(hamiltonian_weight(ring3, {0.5, 0.0}, {1, 1}), std::invalid_argument);
}

TEST_CASE("exact enumeration matches hand counts") {
    auto empty1 = exact_enumeration(build_graph(GraphFamily::Empty, 1), {0.0, 0.0});
    CHECK(empty1.log_partition == Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(empty1.probs[0] == Approx(0.5).epsilon(1e-14));
    CHECK(empty1.probs[1] == Approx(0.5).epsilon(1e-14));

    auto chain2 = exact_enumeration(build_graph(GraphFamily::Chain, 2), {0.5, 0.0});
    CHECK(chain2.log_partition == Approx(std::log(4 * std::cosh(0.5))).epsilon(1e-14));

    auto ring3 = exact_enumeration(build_graph(GraphFamily::Ring, 3), {0.5, 0.0});
    CHECK(ring3.log_partition ==
          Approx(std::log(2 * std::exp(1.5) + 6 * std::exp(-0.5))).epsilon(1e-14));
    CHECK_THROWS_AS(exact_enumeration(build_graph(GraphFamily::Empty, 30), {0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("transfer matrix agrees with enumeration and the asymptotic row") {
    CHECK(chain_ring_log_partition({0.5, 0.0}, 2, GraphFamily::Chain) ==
          Approx(std::log(4 * std::cosh(0.5))).epsilon(1e-14));
    CHECK(chain_ring_log_partition({0.5, 0.0}, 3, GraphFamily::Ring) ==
          Approx(std::log(2 * std::exp(1.5) + 6 * std::exp(-0.5))).epsilon(1e-14));
    for (double beta : {0.2, 0.7})
        for (double h : {0.0, 0.3, -0.4})
            for (int n : {2, 5, 11}) {
                ModelParams p{beta, h};
                auto chain = exact_enumeration(build_graph(GraphFamily::Chain, n), p);
                CHECK(chain_ring_log_partition(p, n, GraphFamily::Chain) ==
                      Approx(chain.log_partition).epsilon(1e-12));
                if (n >= 3) {
                    auto ring = exact_enumeration(build_graph(GraphFamily::Ring, n), p);
                    CHECK(chain_ring_log_partition(p, n, GraphFamily::Ring) ==
                          Approx(ring.log_partition).epsilon(1e-12));
                }
            }
    // asymptotic free entropy density: psi = beta + log(cosh h + sqrt(sinh^2 h + e^{-4 beta}))
    const double beta = 0.5, h = 0.3;
    const double psi =
        beta + std::log(std::cosh(h) + std::sqrt(std::sinh(h) * std::sinh(h) + std::exp(-4 * beta)));
    CHECK(chain_ring_log_partition({beta, h}, 4096, GraphFamily::Ring) / 4096 ==
          Approx(psi).epsilon(1e-9));
}

TEST_CASE("transfer DP reproduces enumeration for every family at small n") {
    struct Cell {
        GraphFamily family;
        std::vector<int> sizes;
    };
    const Cell cells[] = {
        {GraphFamily::Chain, {2, 5, 9, 16}},
        {GraphFamily::Ring, {3, 6, 11, 16}},
        {GraphFamily::Star, {2, 5, 10, 16}},
        {GraphFamily::Wheel, {4, 7, 12, 16}},
    };
    for (const auto& cell : cells) {
        for (int n : cell.sizes) {
            for (ModelParams p : {ModelParams{0.2, 0.0}, ModelParams{0.5, 0.3},
                                  ModelParams{1.0, -0.4}, ModelParams{0.0, 0.7}}) {
                auto dp = magnetization_pmf_dp(cell.family, p, n);
                auto ref = exact_enumeration(build_graph(cell.family, n), p);
                CHECK(oracles::total_variation(dp, ref) <= 1e-12);
                CHECK(std::abs(dp.log_partition - ref.log_partition) <= 1e-10);
                CHECK(pmf_total(dp) == Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("curie-weiss law against a dedicated brute force") {
    auto pmf = magnetization_pmf_curie_weiss({0.5, 0.2}, 16);
    auto ref = oracles::curie_weiss_brute_force(0.5, 0.2, 16);
    CHECK(oracles::total_variation(pmf, ref) <= 1e-12);
    CHECK(std::abs(pmf.log_partition - ref.log_partition) <= 1e-10);

    auto n1 = magnetization_pmf_curie_weiss({3.0, 0.0}, 1);
    CHECK(n1.probs[0] == Approx(0.5).epsilon(1e-14));
    CHECK(n1.probs[1] == Approx(0.5).epsilon(1e-14));

    // complete graph with coupling beta/n carries the same law; log Z shifts
    // by exactly beta/2 because (beta/2n) s^2 = (beta/n) sum_{i<j} x_i x_j + beta/2
    const int n = 12;
    const double beta = 0.8, h = 0.15;
    auto cw = magnetization_pmf_curie_weiss({beta, h}, n);
    auto complete = exact_enumeration(build_graph(GraphFamily::Complete, n), {beta / n, h});
    CHECK(oracles::total_variation(cw, complete) <= 1e-12);
    CHECK(cw.log_partition == Approx(complete.log_partition + beta / 2).epsilon(1e-12));
}

TEST_CASE("curie-weiss phase transition shows in the exact law") {
    auto sub = magnetization_pmf_curie_weiss({0.5, 0.0}, 5001);
    CHECK(5001 * sub.var_xbar() == Approx(2.0).epsilon(0.05));
    int mode = sub.positive_mode_index();
    CHECK(std::abs(sub.xbar(mode)) <= 0.005);

    auto super = magnetization_pmf_curie_weiss({2.0, 0.0}, 5001);
    // independent fixed-point oracle for the mode location
    double lo = 1e-15, hi = 1;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (std::tanh(2 * mid) - mid > 0 ? lo : hi) = mid;
    }
    const double mu_star = 0.5 * (lo + hi);
    CHECK(mu_star == Approx(0.9575).epsilon(1e-4));
    CHECK(std::abs(super.xbar(super.positive_mode_index()) - mu_star) <= 0.01);
}

TEST_CASE("h-negation reflects the law exactly") {
    for (GraphFamily f : {GraphFamily::Chain, GraphFamily::Ring, GraphFamily::Star,
                          GraphFamily::Wheel}) {
        const int n = f == GraphFamily::Wheel ? 14 : 13;
        auto pos = magnetization_pmf_dp(f, {0.4, 0.25}, n);
        auto neg = magnetization_pmf_dp(f, {0.4, -0.25}, n);
        for (int k = 0; k <= n; ++k) CHECK(neg.probs[k] == pos.probs[n - k]);
        CHECK(neg.log_partition == pos.log_partition);
    }
    auto pos = exact_pmf(GraphFamily::Empty, {0.0, 0.6}, 21);
    auto neg = exact_pmf(GraphFamily::Empty, {0.0, -0.6}, 21);
    for (int k = 0; k <= 21; ++k) CHECK(neg.probs[k] == pos.probs[21 - k]);
}

TEST_CASE("zero-field laws are symmetric") {
    for (GraphFamily f : {GraphFamily::Chain, GraphFamily::Ring, GraphFamily::Star,
                          GraphFamily::Wheel, GraphFamily::Complete}) {
        const int n = f == GraphFamily::Wheel ? 16 : 15;
        auto pmf = exact_pmf(f, {0.6, 0.0}, n);
        for (int k = 0; k <= n; ++k)
            CHECK(pmf.probs[k] == Approx(pmf.probs[n - k]).epsilon(1e-12).scale(1.0));
    }
    // chain has a closed-form sanity point: P(s=+3) = P(s=-3) at n=3
    auto c3 = magnetization_pmf_dp(GraphFamily::Chain, {0.8, 0.0}, 3);
    CHECK(c3.probs[3] == Approx(c3.probs[0]).epsilon(1e-13));
}

TEST_CASE("mean and variance match h-derivatives of the free entropy") {
    const double dh = 1e-4;
    for (GraphFamily f : {GraphFamily::Chain, GraphFamily::Ring, GraphFamily::Star,
                          GraphFamily::Wheel, GraphFamily::Complete}) {
        const int n = 512;
        const double beta = 0.5, h = 0.3;
        auto pmf = exact_pmf(f, {beta, h}, n);
        auto psi_at = [&](double hh) {
            return log_partition_exact(f, {beta, hh}, n) / n;
        };
        const double mean_fd = (psi_at(h + dh) - psi_at(h - dh)) / (2 * dh);
        CHECK(std::abs(pmf.mean_xbar() - mean_fd) <= 1e-5);
        const double var_fd = (psi_at(h + dh) - 2 * psi_at(h) + psi_at(h - dh)) / (dh * dh);
        CHECK(std::abs(n * pmf.var_xbar() - var_fd) <= 1e-3);
    }
}

TEST_CASE("DP partition values agree with the analytic routes") {
    for (int n : {64, 1024, 4096}) {
        for (ModelParams p : {ModelParams{0.2, 0.0}, ModelParams{0.5, 0.3}}) {
            CHECK(std::abs(magnetization_pmf_dp(GraphFamily::Chain, p, n).log_partition -
                           chain_ring_log_partition(p, n, GraphFamily::Chain)) <= 1e-9 * n);
            CHECK(std::abs(magnetization_pmf_dp(GraphFamily::Ring, p, n).log_partition -
                           chain_ring_log_partition(p, n, GraphFamily::Ring)) <= 1e-9 * n);
        }
    }
    ModelParams p{0.5, 0.3};
    CHECK(std::abs(magnetization_pmf_dp(GraphFamily::Wheel, p, 1024).log_partition -
                   log_partition_exact(GraphFamily::Wheel, p, 1024)) <= 1e-8);
    CHECK(std::abs(magnetization_pmf_dp(GraphFamily::Star, p, 1024).log_partition -
                   log_partition_exact(GraphFamily::Star, p, 1024)) <= 1e-8);
}

TEST_CASE("finite-n free entropy approaches the closed forms") {
    CHECK(finite_n_free_entropy(log_partition_exact(GraphFamily::Empty, {0.3, 0.0}, 10), 10) ==
          Approx(std::log(2.0)).epsilon(1e-12));
    const double psi_star = std::log(2 * std::cosh(0.5));
    CHECK(std::abs(finite_n_free_entropy(log_partition_exact(GraphFamily::Star, {0.5, 0.0}, 2000),
                                         2000) -
                   psi_star) <= 5.0 / 2000);
    const double beta = 0.5, h = 0.3;
    const double psi_chain =
        beta + std::log(std::cosh(h) + std::sqrt(std::sinh(h) * std::sinh(h) + std::exp(-4 * beta)));
    CHECK(std::abs(chain_ring_log_partition({beta, h}, 4096, GraphFamily::Chain) / 4096 -
                   psi_chain) <= 5.0 / 4096);
}

TEST_CASE("large instances stay stable and match the asymptotic mean") {
    // transfer matrix at n = 1e6: the subleading term underflows harmlessly
    const double psi = 0.5 + std::log(std::cosh(0.3) +
                                      std::sqrt(std::sinh(0.3) * std::sinh(0.3) + std::exp(-2.0)));
    const double lz = chain_ring_log_partition({0.5, 0.3}, 1000000, GraphFamily::Ring);
    CHECK(std::isfinite(lz));
    CHECK(lz / 1e6 == Approx(psi).epsilon(1e-12));

    // hub-conditioned wheel law at n = 10001 tracks the closed-form mean
    auto pmf = magnetization_pmf_dp(GraphFamily::Wheel, {0.2, 0.1}, 10001);
    CHECK(std::abs(pmf.mean_xbar() - 0.4136108559011316) <= 0.01);
}

TEST_CASE("curie-weiss law reflects under h-negation") {
    auto pos = magnetization_pmf_curie_weiss({0.8, 0.15}, 17);
    auto neg = magnetization_pmf_curie_weiss({0.8, -0.15}, 17);
    for (int k = 0; k <= 17; ++k) CHECK(neg.probs[k] == pos.probs[17 - k]);
}

TEST_CASE("finite-n free entropy converges at rate 10/n for every closed family") {
    for (GraphFamily f : {GraphFamily::Empty, GraphFamily::Star, GraphFamily::Chain,
                          GraphFamily::Ring, GraphFamily::Wheel}) {
        for (long long n : {256, 1024, 4096})
            for (double beta : {0.2, 0.5})
                for (double h : {0.0, 0.3}) {
                    const double psi_n = log_partition_exact(f, {beta, h}, n) / n;
                    const double psi = *table1_summary(f, beta, h).psi;
                    CHECK(std::abs(psi_n - psi) <= 10.0 / n);
                }
    }
}

TEST_CASE("lattice enumeration agrees with the row-transfer oracle") {
    for (Boundary b : {Boundary::Free, Boundary::PlusClamped, Boundary::MinusClamped}) {
        auto g = build_graph(GraphFamily::Lattice2D, 16, b);
        for (ModelParams p : {ModelParams{0.3, 0.0}, ModelParams{0.5, 0.1}}) {
            auto ref = oracles::lattice_row_transfer(p.beta, p.h, 4, b);
            auto pmf = exact_enumeration(g, p);
            CHECK(oracles::total_variation(pmf, ref) <= 1e-12);
            CHECK(std::abs(pmf.log_partition - ref.log_partition) <= 1e-10);
        }
    }
    // clamps shift the law: plus boundary pulls the mean up
    auto plus = exact_enumeration(build_graph(GraphFamily::Lattice2D, 16, Boundary::PlusClamped),
                                  {0.4, 0.0});
    auto free = exact_enumeration(build_graph(GraphFamily::Lattice2D, 16), {0.4, 0.0});
    CHECK(plus.mean_xbar() > free.mean_xbar());
    CHECK(free.mean_xbar() == Approx(0.0).epsilon(1e-12).scale(1.0));
}

TEST_CASE("dp solvers reject unsupported requests") {
    CHECK_THROWS_AS(magnetization_pmf_dp(GraphFamily::Empty, {0.5, 0.0}, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(magnetization_pmf_dp(GraphFamily::Wheel, {0.5, 0.0}, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(magnetization_pmf_dp(GraphFamily::Chain, {-0.1, 0.0}, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(exact_pmf(GraphFamily::Lattice2D, {0.5, 0.0}, 16), std::invalid_argument);
}
