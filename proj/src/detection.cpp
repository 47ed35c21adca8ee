#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spinpoll/detection.hpp"

namespace spinpoll {

namespace {

constexpr double kTieTol = 1e-9;

std::vector<double> log_factorials(int n) {
    std::vector<double> lf(n + 1);
    for (int i = 0; i <= n; ++i) lf[i] = std::lgamma(i + 1.0);
    return lf;
}

// binomial pmf over 0..m as linear-domain doubles (underflows far tails to 0)
std::vector<double> binomial_pmf(int m, double q, const std::vector<double>& lf) {
    std::vector<double> pmf(m + 1);
    if (q <= 0) {
        pmf.assign(m + 1, 0.0);
        pmf[0] = 1.0;
        return pmf;
    }
    if (q >= 1) {
        pmf.assign(m + 1, 0.0);
        pmf[m] = 1.0;
        return pmf;
    }
    const double lq = std::log(q), l1q = std::log1p(-q);
    for (int a = 0; a <= m; ++a)
        pmf[a] = std::exp(lf[m] - lf[a] - lf[m - a] + a * lq + (m - a) * l1q);
    return pmf;
}

// smallest integer M with M >= x, with a guard so values that are integers up
// to rounding noise are not pushed one step up
int threshold_count(double x) { return static_cast<int>(std::ceil(x - kTieTol)); }

double validate_channel(const DetectionTask& task) {
    const auto& c = task.channel;
    if (!(c.p >= 0 && c.p < 0.5)) throw std::invalid_argument("crossover must lie in [0, 1/2)");
    if (!(c.delta > 0 && c.delta <= 1)) throw std::invalid_argument("delta must lie in (0, 1]");
    return c.p;
}

}  // namespace

void require_no_tie(int n, double S) {
    const double x = n * (1 + S) / 2;
    if (std::abs(x - std::round(x)) <= kTieTol)
        throw std::invalid_argument("n(1+S)/2 = " + std::to_string(x) +
                                    " is an integer; the supermajority variable is ambiguous");
}

std::vector<int8_t> measure(const SpinConfiguration& x, const ChannelParams& channel,
                            Xoshiro256pp& rng) {
    std::vector<int8_t> y(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (channel.delta < 1.0 && rng.uniform() >= channel.delta) {
            y[i] = 0;
            continue;
        }
        y[i] = rng.uniform() < channel.p ? static_cast<int8_t>(-x[i]) : x[i];
    }
    return y;
}

int supermajority(double xbar, double S) {
    if (xbar == S) throw std::invalid_argument("xbar equals the supermajority level (tie)");
    return xbar > S ? 1 : -1;
}

double detection_threshold(const DetectionTask& task, double effective_delta) {
    const double base = (1 - 2 * task.channel.p) * task.S;
    if (task.threshold_mode == ThresholdMode::DeltaScaled) return effective_delta * base;
    return base;
}

int detect(double ybar, const DetectionTask& task, double effective_delta) {
    return ybar >= detection_threshold(task, effective_delta) ? 1 : -1;
}

double normal_tail_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

const char* method_name(EstimatorMethod m) {
    switch (m) {
        case EstimatorMethod::ExactSmallN: return "exact";
        case EstimatorMethod::RBExact: return "rb-exact";
        case EstimatorMethod::RBGauss: return "rb-gauss";
        case EstimatorMethod::PlainMC: return "mc";
    }
    return "?";
}

std::optional<EstimatorMethod> method_from_name(std::string_view name) {
    for (EstimatorMethod m : {EstimatorMethod::ExactSmallN, EstimatorMethod::RBExact,
                              EstimatorMethod::RBGauss, EstimatorMethod::PlainMC}) {
        if (name == method_name(m)) return m;
    }
    return std::nullopt;
}

double conditional_error_exact(int k, int n, const DetectionTask& task) {
    const double p = validate_channel(task);
    if (task.channel.delta != 1.0)
        throw std::invalid_argument("exact conditional error is defined at full observation");
    if (n > kExactConditionalMaxN)
        throw std::invalid_argument("n exceeds the exact conditional-error cutoff");
    if (k < 0 || k > n) throw std::invalid_argument("plus count out of range");

    const double xbar = (2.0 * k - n) / n;
    const int truth = supermajority(xbar, task.S);

    // detector: +1 iff observed plus count M >= m_thr
    const double t = detection_threshold(task, 1.0);
    const int m_thr = threshold_count(n * (1 + t) / 2);
    if (m_thr <= 0) return truth == 1 ? 0.0 : 1.0;
    if (m_thr > n) return truth == 1 ? 1.0 : 0.0;

    // M = B1 + B2 with B1 ~ Bin(k, 1-p), B2 ~ Bin(n-k, p). The error-side
    // tail is summed directly (never as 1 - CDF) so far tails keep full
    // relative accuracy instead of cancelling against 1.
    const auto lf = log_factorials(n);
    const std::vector<double> pmf1 = binomial_pmf(k, 1 - p, lf);
    const std::vector<double> pmf2 = binomial_pmf(n - k, p, lf);

    double err = 0;
    if (truth == 1) {
        // err = P(M <= m_thr - 1)
        std::vector<double> cdf2(pmf2);
        for (size_t i = 1; i < cdf2.size(); ++i) cdf2[i] += cdf2[i - 1];
        const int c = m_thr - 1;
        for (int a = 0; a <= std::min(k, c); ++a) {
            const int b = c - a;
            err += pmf1[a] * (b >= n - k ? 1.0 : cdf2[b]);
        }
    } else {
        // err = P(M >= m_thr)
        std::vector<double> sf2(pmf2.size() + 1, 0.0);
        for (int b = n - k; b >= 0; --b) sf2[b] = sf2[b + 1] + pmf2[b];
        for (int a = 0; a <= k; ++a) {
            const int b = m_thr - a;
            if (b <= 0)
                err += pmf1[a];
            else if (b <= n - k)
                err += pmf1[a] * sf2[b];
        }
    }
    return std::min(err, 1.0);
}

double conditional_error_gauss(int k, int n, const DetectionTask& task) {
    validate_channel(task);
    if (task.channel.delta != 1.0)
        throw std::invalid_argument("gaussian conditional error is defined at full observation");
    const double p = task.channel.p;
    const double d_p = (1 - 2 * p) / std::sqrt(4 * p * (1 - p));
    const double xbar = (2.0 * k - n) / n;
    return normal_tail_q(d_p * std::sqrt(static_cast<double>(n)) * std::abs(xbar - task.S));
}

namespace {

// shared deterministic pieces over a pmf: the Hoeffding-bound expectation and
// the Q-limit expectation
double bound_over_pmf(const MagnetizationPmf& pmf, const DetectionTask& task) {
    const double p = task.channel.p;
    const double d = task.channel.delta;
    const double c = d * d * 0.5 * (1 - 2 * p) * (1 - 2 * p);
    double acc = 0;
    for (int k = 0; k <= pmf.n; ++k) {
        if (pmf.probs[k] == 0) continue;
        const double diff = pmf.xbar(k) - task.S;
        acc += pmf.probs[k] * std::exp(-c * pmf.n * diff * diff);
    }
    return acc;
}

double q_limit_over_pmf(const MagnetizationPmf& pmf, const DetectionTask& task) {
    double acc = 0;
    for (int k = 0; k <= pmf.n; ++k) {
        if (pmf.probs[k] == 0) continue;
        acc += pmf.probs[k] * conditional_error_gauss(k, pmf.n, task);
    }
    return acc;
}

// one simulated ybar given the plus count, reproducing measure() coordinatewise
double simulate_ybar(int k, int n, const ChannelParams& channel, Xoshiro256pp& rng) {
    long long sum = 0;
    for (int i = 0; i < n; ++i) {
        if (channel.delta < 1.0 && rng.uniform() >= channel.delta) continue;
        const int x = i < k ? 1 : -1;
        sum += rng.uniform() < channel.p ? -x : x;
    }
    return static_cast<double>(sum) / n;
}

struct McTally {
    long long errors = 0;
    long long trials = 0;
    void add(bool err) {
        errors += err;
        ++trials;
    }
    double rate() const { return static_cast<double>(errors) / trials; }
    double se() const {
        const double r = rate();
        return std::sqrt(r * (1 - r) / trials);
    }
};

}  // namespace

ErrorEstimate estimate_pe(const MagnetizationPmf& pmf, const DetectionTask& task,
                          EstimatorMethod method, long long trials, uint64_t seed) {
    validate_channel(task);
    require_no_tie(pmf.n, task.S);
    const int n = pmf.n;

    ErrorEstimate est;
    est.method = method;
    est.n = n;
    est.hoeffding_bound = bound_over_pmf(pmf, task);
    if (task.channel.delta == 1.0) est.q_limit_value = q_limit_over_pmf(pmf, task);

    switch (method) {
        case EstimatorMethod::ExactSmallN:
        case EstimatorMethod::RBExact: {
            if (task.channel.delta != 1.0)
                throw std::invalid_argument("exact estimators require full observation");
            if (n > kExactConditionalMaxN)
                throw std::invalid_argument("n exceeds the exact conditional-error cutoff");
            double pe = 0;
            for (int k = 0; k <= n; ++k) {
                if (pmf.probs[k] < 1e-14) continue;  // mass below target tolerances
                pe += pmf.probs[k] * conditional_error_exact(k, n, task);
            }
            est.pe = pe;
            break;
        }
        case EstimatorMethod::RBGauss: {
            if (task.channel.delta != 1.0)
                throw std::invalid_argument("the gaussian estimator requires full observation");
            est.pe = *est.q_limit_value;
            break;
        }
        case EstimatorMethod::PlainMC: {
            if (trials <= 0) throw std::invalid_argument("trials must be positive");
            std::vector<double> cdf(pmf.probs.begin(), pmf.probs.end());
            for (size_t i = 1; i < cdf.size(); ++i) cdf[i] += cdf[i - 1];
            Xoshiro256pp rng(seed);
            McTally tally;
            for (long long t = 0; t < trials; ++t) {
                const double u = rng.uniform();
                const int k = static_cast<int>(
                    std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
                const int truth = supermajority((2.0 * k - n) / n, task.S);
                const double ybar = simulate_ybar(k, n, task.channel, rng);
                tally.add(detect(ybar, task, task.channel.delta) != truth);
            }
            est.pe = tally.rate();
            est.std_error = tally.se();
            break;
        }
    }
    return est;
}

ErrorEstimate estimate_pe(const SampleBatch& batch, const DetectionTask& task,
                          EstimatorMethod method, long long trials, uint64_t seed) {
    validate_channel(task);
    require_no_tie(batch.n, task.S);
    if (batch.plus_counts.empty()) throw std::invalid_argument("empty sample batch");
    const int n = batch.n;
    const size_t m = batch.plus_counts.size();

    ErrorEstimate est;
    est.method = method;
    est.n = n;

    {
        const double p = task.channel.p;
        const double d = task.channel.delta;
        const double c = d * d * 0.5 * (1 - 2 * p) * (1 - 2 * p);
        double acc = 0, acc2 = 0;
        for (int k : batch.plus_counts) {
            const double diff = (2.0 * k - n) / n - task.S;
            const double v = std::exp(-c * n * diff * diff);
            acc += v;
            acc2 += v * v;
        }
        const double mean = acc / m;
        est.hoeffding_bound = mean;
        if (m > 1) est.hoeffding_std_error = std::sqrt((acc2 / m - mean * mean) / (m - 1));
    }

    switch (method) {
        case EstimatorMethod::ExactSmallN:
        case EstimatorMethod::RBExact:
            throw std::invalid_argument("exact estimators need an exact magnetization law");
        case EstimatorMethod::RBGauss: {
            if (task.channel.delta != 1.0)
                throw std::invalid_argument("the gaussian estimator requires full observation");
            double acc = 0, acc2 = 0;
            for (int k : batch.plus_counts) {
                const double v = conditional_error_gauss(k, n, task);
                acc += v;
                acc2 += v * v;
            }
            est.pe = acc / m;
            est.q_limit_value = est.pe;
            if (m > 1) est.std_error = std::sqrt((acc2 / m - est.pe * est.pe) / (m - 1));
            break;
        }
        case EstimatorMethod::PlainMC: {
            if (trials <= 0) throw std::invalid_argument("trials must be positive");
            Xoshiro256pp rng(seed);
            McTally tally;
            for (long long t = 0; t < trials; ++t) {
                const int k = batch.plus_counts[static_cast<size_t>(t % m)];
                const int truth = supermajority((2.0 * k - n) / n, task.S);
                const double ybar = simulate_ybar(k, n, task.channel, rng);
                tally.add(detect(ybar, task, task.channel.delta) != truth);
            }
            est.pe = tally.rate();
            est.std_error = tally.se();
            break;
        }
    }
    return est;
}

double concentration_probe(const MagnetizationPmf& pmf, double S, double window,
                           WindowMode mode) {
    if (!(window > 0)) throw std::invalid_argument("window must be positive");
    const double b = mode == WindowMode::ScaledWindow
                         ? window / std::sqrt(static_cast<double>(pmf.n))
                         : window;
    double acc = 0;
    for (int k = 0; k <= pmf.n; ++k)
        if (std::abs(pmf.xbar(k) - S) <= b) acc += pmf.probs[k];
    return acc;
}

double concentration_probe(const SampleBatch& batch, double S, double window, WindowMode mode) {
    if (!(window > 0)) throw std::invalid_argument("window must be positive");
    if (batch.magnetizations.empty()) throw std::invalid_argument("empty sample batch");
    const double b = mode == WindowMode::ScaledWindow
                         ? window / std::sqrt(static_cast<double>(batch.n))
                         : window;
    long long hits = 0;
    for (double xb : batch.magnetizations)
        if (std::abs(xb - S) <= b) ++hits;
    return static_cast<double>(hits) / batch.magnetizations.size();
}

double fit_log_slope(const std::vector<double>& ns, const std::vector<double>& probs) {
    if (ns.size() != probs.size()) throw std::invalid_argument("mismatched sweep lengths");
    std::vector<double> xs, ys;
    for (size_t i = 0; i < ns.size(); ++i) {
        if (probs[i] > 0) {
            xs.push_back(ns[i]);
            ys.push_back(std::log(probs[i]));
        }
    }
    if (xs.size() < 2)
        throw std::invalid_argument("need at least two positive probabilities to fit a slope");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double m = static_cast<double>(xs.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace spinpoll
