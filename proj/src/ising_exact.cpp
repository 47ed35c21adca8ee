#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinpoll/ising.hpp"

namespace spinpoll {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(2 cosh x) without overflow
double log_2cosh(double x) {
    return std::abs(x) + std::log1p(std::exp(-2.0 * std::abs(x)));
}

double logsumexp2(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

struct Eigen2 {
    double lam_hi, lam_lo;  // lam_hi >= lam_lo >= 0 for beta >= 0
    double chi_hi, chi_lo;  // squared overlaps of the boundary vector with each eigenvector
};

// Symmetric 2x2 transfer matrix T(x,x') = exp(beta x x' + h (x+x')/2) in the
// (+,-) basis, with boundary vector b(x) = exp(h x / 2).
Eigen2 transfer_eigen(const ModelParams& p) {
    const double a = std::exp(p.beta + p.h);
    const double d = std::exp(p.beta - p.h);
    const double off = std::exp(-p.beta);
    const double mid = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), off);
    Eigen2 e;
    e.lam_hi = mid + rad;
    e.lam_lo = std::max(mid - rad, 0.0);
    // eigenvector for lam_hi: (off, lam_hi - a), normalized; off > 0 always
    const double vy = e.lam_hi - a;
    const double norm = std::hypot(off, vy);
    const double v1 = off / norm, v2 = vy / norm;
    const double b1 = std::exp(0.5 * p.h), b2 = std::exp(-0.5 * p.h);
    const double c_hi = v1 * b1 + v2 * b2;
    const double c_lo = -v2 * b1 + v1 * b2;
    e.chi_hi = c_hi * c_hi;
    e.chi_lo = c_lo * c_lo;
    return e;
}

}  // namespace

double MagnetizationPmf::mean_xbar() const {
    double m = 0;
    for (int k = 0; k <= n; ++k) m += probs[k] * xbar(k);
    return m;
}

double MagnetizationPmf::var_xbar() const {
    const double m = mean_xbar();
    double v = 0;
    for (int k = 0; k <= n; ++k) {
        double d = xbar(k) - m;
        v += probs[k] * d * d;
    }
    return v;
}

int MagnetizationPmf::positive_mode_index() const {
    int best = -1;
    for (int k = (n + 1) / 2; k <= n; ++k)
        if (best < 0 || probs[k] > probs[best]) best = k;
    return best;
}

MagnetizationPmf pmf_from_log_weights(int n, const std::vector<double>& log_weights) {
    MagnetizationPmf pmf;
    pmf.n = n;
    pmf.probs.assign(n + 1, 0.0);
    double m = kNegInf;
    for (double lw : log_weights) m = std::max(m, lw);
    if (m == kNegInf) throw std::runtime_error("pmf has empty support");
    double total = 0;
    for (int k = 0; k <= n; ++k) {
        if (log_weights[k] == kNegInf) continue;
        pmf.probs[k] = std::exp(log_weights[k] - m);
        total += pmf.probs[k];
    }
    for (double& p : pmf.probs) p /= total;
    pmf.log_partition = m + std::log(total);
    return pmf;
}

double hamiltonian_weight(const GraphInstance& g, const ModelParams& params,
                          const SpinConfiguration& x) {
    if (static_cast<int>(x.size()) != g.n)
        throw std::invalid_argument("spin configuration length does not match graph size");
    double pair_sum = 0;
    for (auto [a, b] : g.edges) pair_sum += static_cast<double>(x[a]) * x[b];
    double field_sum = 0;
    for (int8_t s : x) field_sum += s;
    return params.beta * pair_sum + params.h * field_sum;
}

MagnetizationPmf exact_enumeration(const GraphInstance& g, const ModelParams& params) {
    const std::vector<int> fv = g.free_vertices();
    const int m = static_cast<int>(fv.size());
    if (m > 24) throw std::invalid_argument("exact enumeration limited to 24 free spins");

    SpinConfiguration x(g.n);
    auto reset = [&] {
        for (int v = 0; v < g.n; ++v) x[v] = g.clamp[v] != 0 ? g.clamp[v] : int8_t{-1};
    };
    auto plus_count = [&] {
        int k = 0;
        for (int8_t s : x) k += (s > 0);
        return k;
    };

    // Gray-code sweep: step t flips exactly one free spin, so the weight is
    // maintained incrementally. Pass 1 finds max H, pass 2 accumulates.
    const uint64_t states = 1ull << m;
    auto sweep = [&](auto&& visit) {
        reset();
        double H = hamiltonian_weight(g, params, x);
        int k = plus_count();
        visit(H, k);
        for (uint64_t t = 1; t < states; ++t) {
            const int v = fv[std::countr_zero(t)];
            double nb = 0;
            for (int u : g.neighbors(v)) nb += x[u];
            H += -2.0 * x[v] * (params.beta * nb + params.h);
            x[v] = static_cast<int8_t>(-x[v]);
            k += x[v];
            visit(H, k);
        }
    };

    double h_max = kNegInf;
    sweep([&](double H, int) { h_max = std::max(h_max, H); });

    std::vector<double> acc(g.n + 1, 0.0);
    sweep([&](double H, int k) { acc[k] += std::exp(H - h_max); });

    MagnetizationPmf pmf;
    pmf.n = g.n;
    pmf.probs.assign(g.n + 1, 0.0);
    double total = 0;
    for (double a : acc) total += a;
    for (int k = 0; k <= g.n; ++k) pmf.probs[k] = acc[k] / total;
    pmf.log_partition = h_max + std::log(total);
    return pmf;
}

double chain_ring_log_partition(const ModelParams& params, long long n, GraphFamily kind) {
    if (params.beta < 0) throw std::invalid_argument("beta must be nonnegative");
    const Eigen2 e = transfer_eigen(params);
    const double ratio = e.lam_hi > 0 ? e.lam_lo / e.lam_hi : 0.0;
    if (kind == GraphFamily::Ring) {
        if (n < 3) throw std::invalid_argument("ring transfer matrix requires n >= 3");
        return n * std::log(e.lam_hi) + std::log1p(std::pow(ratio, static_cast<double>(n)));
    }
    if (kind == GraphFamily::Chain) {
        if (n < 2) throw std::invalid_argument("chain transfer matrix requires n >= 2");
        const double tail = e.chi_lo * std::pow(ratio, static_cast<double>(n - 1));
        return (n - 1) * std::log(e.lam_hi) + std::log(e.chi_hi + tail);
    }
    throw std::invalid_argument("transfer matrix defined for chain and ring only");
}

double log_partition_exact(GraphFamily family, const ModelParams& params, long long n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    switch (family) {
        case GraphFamily::Empty:
            return n * log_2cosh(params.h);
        case GraphFamily::Chain:
        case GraphFamily::Ring:
            return chain_ring_log_partition(params, n, family);
        case GraphFamily::Star: {
            if (n < 2) throw std::invalid_argument("star requires n >= 2");
            const double lp = params.h + (n - 1) * log_2cosh(params.h + params.beta);
            const double lm = -params.h + (n - 1) * log_2cosh(params.h - params.beta);
            return logsumexp2(lp, lm);
        }
        case GraphFamily::Wheel: {
            if (n < 4) throw std::invalid_argument("wheel requires n >= 4");
            const double lp =
                params.h + chain_ring_log_partition({params.beta, params.h + params.beta}, n - 1,
                                                    GraphFamily::Ring);
            const double lm =
                -params.h + chain_ring_log_partition({params.beta, params.h - params.beta}, n - 1,
                                                     GraphFamily::Ring);
            return logsumexp2(lp, lm);
        }
        case GraphFamily::Complete:
            return magnetization_pmf_curie_weiss(params, static_cast<int>(n)).log_partition;
        case GraphFamily::Lattice2D:
            throw std::invalid_argument("no exact partition route for the lattice family");
    }
    throw std::invalid_argument("unknown family");
}

}  // namespace spinpoll
