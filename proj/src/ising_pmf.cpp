#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinpoll/ising.hpp"

namespace spinpoll {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kDpMaxN = 32768;

std::vector<double> log_factorials(int n) {
    std::vector<double> lf(n + 1);
    for (int i = 0; i <= n; ++i) lf[i] = std::lgamma(i + 1.0);
    return lf;
}

double logsumexp2(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

// Transfer DP over a path of vertices coupled in sequence with strength beta
// and per-vertex field h. State = (plus count, spin of the last vertex), kept
// in linear domain with a per-layer rescale; `log_scale` carries the running
// offset. Layout: w[2*k + s], spin(s) = +1 for s=0.
struct PathDp {
    std::vector<double> cur, nxt;
    double log_scale = 0.0;

    explicit PathDp(int cap) : cur(2 * (cap + 2), 0.0), nxt(2 * (cap + 2), 0.0) {}

    void rescale(int k_max) {
        double m = 0;
        const int lim = 2 * (k_max + 1);
        for (int i = 0; i < lim; ++i) m = std::max(m, cur[i]);
        if (m <= 0) throw std::runtime_error("transfer DP layer lost all mass");
        const double inv = 1.0 / m;
        for (int i = 0; i < lim; ++i) cur[i] *= inv;
        log_scale += std::log(m);
    }

    // Advance one vertex with transition factor tf[s][s'] = exp(beta ss' + h s').
    // k_max is the largest reachable plus count before this vertex joins.
    void step(int k_max, const double tf[2][2]) {
        std::fill(nxt.begin(), nxt.begin() + 2 * (k_max + 2), 0.0);
        for (int k = 0; k <= k_max; ++k) {
            const double wp = cur[2 * k];
            const double wm = cur[2 * k + 1];
            nxt[2 * (k + 1)] += wp * tf[0][0] + wm * tf[1][0];
            nxt[2 * k + 1] += wp * tf[0][1] + wm * tf[1][1];
        }
        cur.swap(nxt);
        rescale(k_max + 1);
    }
};

void fill_transition(const ModelParams& p, double tf[2][2]) {
    auto spin = [](int s) { return s == 0 ? 1.0 : -1.0; };
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) tf[s][t] = std::exp(p.beta * spin(s) * spin(t) + p.h * spin(t));
}

// Chain of n free vertices; returns log-weights of the plus count.
std::vector<double> chain_log_weights(const ModelParams& p, int n) {
    PathDp dp(n);
    dp.cur[2 * 1 + 0] = std::exp(p.h);
    dp.cur[2 * 0 + 1] = std::exp(-p.h);
    double tf[2][2];
    fill_transition(p, tf);
    // vertex j joins with j-1 vertices placed, so counts run 0..j-1
    for (int j = 2; j <= n; ++j) dp.step(j - 1, tf);
    std::vector<double> lw(n + 1, kNegInf);
    for (int k = 0; k <= n; ++k) {
        const double w = dp.cur[2 * k] + dp.cur[2 * k + 1];
        if (w > 0) lw[k] = std::log(w) + dp.log_scale;
    }
    return lw;
}

// Ring of n vertices with vertex 0 fixed to spin c; plus count includes
// vertex 0. Closes the cycle with the (n-1, 0) edge.
std::vector<double> ring_branch_log_weights(const ModelParams& p, int n, int c) {
    const int k0 = c > 0 ? 1 : 0;
    PathDp dp(n);
    dp.cur[2 * (k0 + 1) + 0] = std::exp(p.beta * c + p.h);
    dp.cur[2 * k0 + 1] = std::exp(-p.beta * c - p.h);
    double tf[2][2];
    fill_transition(p, tf);
    // vertex j joins with vertex 0 plus path vertices 1..j-1 placed
    for (int j = 2; j <= n - 1; ++j) dp.step(k0 + j - 1, tf);
    const double close_p = std::exp(p.beta * c);
    const double close_m = std::exp(-p.beta * c);
    std::vector<double> lw(n + 1, kNegInf);
    for (int k = 0; k <= n; ++k) {
        const double w = dp.cur[2 * k] * close_p + dp.cur[2 * k + 1] * close_m;
        if (w > 0) lw[k] = std::log(w) + dp.log_scale + p.h * c;
    }
    return lw;
}

std::vector<double> ring_log_weights(const ModelParams& p, int n) {
    std::vector<double> plus = ring_branch_log_weights(p, n, +1);
    std::vector<double> lw(n + 1, kNegInf);
    if (p.h == 0) {
        // the c = -1 branch is the exact mirror of the c = +1 branch
        for (int k = 0; k <= n; ++k) lw[k] = logsumexp2(plus[k], plus[n - k]);
    } else {
        std::vector<double> minus = ring_branch_log_weights(p, n, -1);
        for (int k = 0; k <= n; ++k) lw[k] = logsumexp2(plus[k], minus[k]);
    }
    return lw;
}

// Star: given the hub spin c, the n-1 leaves are i.i.d. with field h + c*beta,
// so each branch is a binomial profile written directly in log domain.
std::vector<double> star_log_weights(const ModelParams& p, int n) {
    const auto lf = log_factorials(n - 1);
    auto lchoose = [&](int m, int k) { return lf[m] - lf[k] - lf[m - k]; };
    std::vector<double> lw(n + 1, kNegInf);
    for (int c : {+1, -1}) {
        const double eta = p.h + c * p.beta;
        const int shift = c > 0 ? 1 : 0;
        for (int leaves = 0; leaves <= n - 1; ++leaves) {
            const double v = lchoose(n - 1, leaves) + eta * (2.0 * leaves - (n - 1)) + p.h * c;
            const int k = leaves + shift;
            lw[k] = logsumexp2(lw[k], v);
        }
    }
    return lw;
}

// Wheel: given the hub spin c, the remaining n-1 vertices form a ring with
// field h + c*beta; reuse the ring DP and shift by the hub.
std::vector<double> wheel_log_weights(const ModelParams& p, int n) {
    auto branch = [&](int c) {
        std::vector<double> ring = ring_log_weights({p.beta, p.h + c * p.beta}, n - 1);
        std::vector<double> out(n + 1, kNegInf);
        const int shift = c > 0 ? 1 : 0;
        for (int k = 0; k <= n - 1; ++k)
            if (ring[k] != kNegInf) out[k + shift] = ring[k] + p.h * c;
        return out;
    };
    std::vector<double> plus = branch(+1);
    std::vector<double> lw(n + 1, kNegInf);
    if (p.h == 0) {
        for (int k = 0; k <= n; ++k) lw[k] = logsumexp2(plus[k], plus[n - k]);
    } else {
        std::vector<double> minus = branch(-1);
        for (int k = 0; k <= n; ++k) lw[k] = logsumexp2(plus[k], minus[k]);
    }
    return lw;
}

std::vector<double> empty_log_weights(const ModelParams& p, int n) {
    const auto lf = log_factorials(n);
    std::vector<double> lw(n + 1);
    for (int k = 0; k <= n; ++k)
        lw[k] = lf[n] - lf[k] - lf[n - k] + p.h * (2.0 * k - n);
    return lw;
}

}  // namespace

MagnetizationPmf magnetization_pmf_dp(GraphFamily family, const ModelParams& params, int n) {
    if (params.beta < 0) throw std::invalid_argument("beta must be nonnegative");
    if (n > kDpMaxN) throw std::invalid_argument("n too large for the quadratic transfer DP");

    // Solve at |h| and reflect for h < 0, so the h-negation symmetry
    // P_{beta,-h}(s) = P_{beta,h}(-s) holds exactly.
    if (params.h < 0) {
        MagnetizationPmf pos = magnetization_pmf_dp(family, {params.beta, -params.h}, n);
        MagnetizationPmf pmf = pos;
        std::reverse(pmf.probs.begin(), pmf.probs.end());
        return pmf;
    }

    std::vector<double> lw;
    switch (family) {
        case GraphFamily::Chain:
            if (n < 2) throw std::invalid_argument("chain requires n >= 2");
            lw = chain_log_weights(params, n);
            break;
        case GraphFamily::Ring:
            if (n < 3) throw std::invalid_argument("ring requires n >= 3");
            lw = ring_log_weights(params, n);
            break;
        case GraphFamily::Star:
            if (n < 2) throw std::invalid_argument("star requires n >= 2");
            lw = star_log_weights(params, n);
            break;
        case GraphFamily::Wheel:
            if (n < 4) throw std::invalid_argument("wheel requires n >= 4");
            lw = wheel_log_weights(params, n);
            break;
        default:
            throw std::invalid_argument("transfer DP covers chain, ring, star and wheel");
    }
    return pmf_from_log_weights(n, lw);
}

MagnetizationPmf magnetization_pmf_curie_weiss(const ModelParams& params, int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (params.beta < 0) throw std::invalid_argument("beta must be nonnegative");
    if (params.h < 0) {
        MagnetizationPmf pos = magnetization_pmf_curie_weiss({params.beta, -params.h}, n);
        std::reverse(pos.probs.begin(), pos.probs.end());
        return pos;
    }
    const auto lf = log_factorials(n);
    std::vector<double> lw(n + 1);
    for (int k = 0; k <= n; ++k) {
        const double s = 2.0 * k - n;
        lw[k] = lf[n] - lf[k] - lf[n - k] + params.beta * s * s / (2.0 * n) + params.h * s;
    }
    return pmf_from_log_weights(n, lw);
}

MagnetizationPmf exact_pmf(GraphFamily family, const ModelParams& params, int n) {
    switch (family) {
        case GraphFamily::Empty: {
            if (params.h < 0) {
                MagnetizationPmf pos = exact_pmf(family, {params.beta, -params.h}, n);
                std::reverse(pos.probs.begin(), pos.probs.end());
                return pos;
            }
            return pmf_from_log_weights(n, empty_log_weights(params, n));
        }
        case GraphFamily::Complete:
            return magnetization_pmf_curie_weiss(params, n);
        case GraphFamily::Chain:
        case GraphFamily::Ring:
        case GraphFamily::Star:
        case GraphFamily::Wheel:
            return magnetization_pmf_dp(family, params, n);
        case GraphFamily::Lattice2D:
            throw std::invalid_argument("no exact pmf route for the lattice family");
    }
    throw std::invalid_argument("unknown family");
}

}  // namespace spinpoll
