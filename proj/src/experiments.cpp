#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <thread>

#include "spinpoll/analytics.hpp"
#include "spinpoll/experiments.hpp"

namespace spinpoll {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string format_full(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <typename T, typename F>
std::string join_list(const std::vector<T>& xs, F&& fmt) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += fmt(xs[i]);
    }
    return out;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct PointClock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

template <typename F>
void parallel_for(int count, int workers, F&& fn) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    next.store(count);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

GraphFamily parse_family(const std::string& name) {
    auto f = family_from_name(name);
    if (!f) throw ConfigError("unknown graph family: " + name);
    return *f;
}

Boundary parse_boundary(const std::string& name) {
    auto b = boundary_from_name(name);
    if (!b) throw ConfigError("unknown boundary: " + name);
    return *b;
}

Sampler parse_sampler(const std::string& name) {
    if (name == "metropolis") return Sampler::Metropolis;
    if (name == "wolff") return Sampler::WolffCluster;
    throw ConfigError("unknown sampler: " + name);
}

ThresholdMode parse_threshold_mode(const std::string& name) {
    if (name == "delta-scaled") return ThresholdMode::DeltaScaled;
    if (name == "paper-literal") return ThresholdMode::PaperLiteral;
    throw ConfigError("unknown threshold mode: " + name);
}

bool is_exact_family(GraphFamily f) { return f != GraphFamily::Lattice2D; }

template <typename T>
void require_increasing(const std::vector<T>& xs, const char* what) {
    if (xs.empty()) throw ConfigError(std::string(what) + " list must be nonempty");
    for (size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw ConfigError(std::string(what) + " list must be strictly increasing");
}

void validate_common(const RunConfig& c) {
    if (c.graphs.empty()) throw ConfigError("graph list must be nonempty");
    for (const auto& g : c.graphs) parse_family(g);
    require_increasing(c.n_list, "n");
    require_increasing(c.beta_list, "beta");
    for (double b : c.beta_list)
        if (b < 0) throw ConfigError("beta must be nonnegative");
    for (double p : c.p_list)
        if (!(p > 0 && p < 0.5)) throw ConfigError("p must lie in (0, 1/2)");
    if (!(c.delta > 0 && c.delta <= 1)) throw ConfigError("delta must lie in (0, 1]");
    if (c.burn_in <= 0 || c.thin <= 0 || c.trials <= 0 || c.mcmc_samples <= 0)
        throw ConfigError("burn-in, thin, trials and sample counts must be positive");
    parse_boundary(c.boundary);
    parse_sampler(c.sampler);
    parse_threshold_mode(c.threshold_mode);
}

struct ScalarView {
    GraphFamily family;
    Boundary boundary;
    Sampler sampler;
    ThresholdMode threshold_mode;
    double h;
    double p;
    std::string S_spec;
};

ScalarView scalar_view(const RunConfig& c) {
    if (c.graphs.size() != 1) throw ConfigError("this command takes a single graph family");
    if (c.h_list.size() != 1) throw ConfigError("this command takes a single h");
    if (c.p_list.size() != 1) throw ConfigError("this command takes a single p");
    if (c.S_list.size() != 1) throw ConfigError("this command takes a single S");
    return {parse_family(c.graphs[0]), parse_boundary(c.boundary), parse_sampler(c.sampler),
            parse_threshold_mode(c.threshold_mode), c.h_list[0], c.p_list[0], c.S_list[0]};
}

json config_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["graph"] = join_list(c.graphs, [](const std::string& s) { return s; });
    j["n"] = join_list(c.n_list, [](long long v) { return std::to_string(v); });
    j["beta"] = join_list(c.beta_list, format_full);
    j["h"] = join_list(c.h_list, format_full);
    j["S"] = join_list(c.S_list, [](const std::string& s) { return s; });
    j["p"] = join_list(c.p_list, format_full);
    j["delta"] = c.delta;
    j["estimator"] = c.estimator;
    j["sampler"] = c.sampler;
    j["burn_in"] = c.burn_in;
    j["thin"] = c.thin;
    j["trials"] = c.trials;
    j["mcmc_samples"] = c.mcmc_samples;
    j["seed"] = c.seed;
    j["boundary"] = c.boundary;
    j["threshold_mode"] = c.threshold_mode;
    j["match_tol"] = c.match_tol;
    j["probe_window"] = c.probe_window;
    j["probe_window_mode"] = c.probe_window_mode;
    return j;
}

}  // namespace

std::string config_hash(const RunConfig& c) {
    std::string s = c.command;
    const json j = config_json(c);
    for (auto it = j.begin(); it != j.end(); ++it) {
        s += ";";
        s += it.key();
        s += "=";
        s += it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(s)));
    return buf;
}

double resolve_level(const std::string& spec, GraphFamily family, double beta, double h) {
    if (spec == "mu") {
        const AsymptoticSummary summary = asymptotic_summary(family, beta, h);
        if (!summary.mu.has_value())
            throw ConfigError("S=mu is not resolvable for this family at h != 0");
        return *summary.mu;
    }
    try {
        size_t used = 0;
        const double v = std::stod(spec, &used);
        if (used != spec.size()) throw std::invalid_argument(spec);
        if (!(v > -1 && v < 1)) throw ConfigError("S must lie in (-1, 1)");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("S must be a number in (-1, 1) or the symbol mu");
    }
}

std::string RunResult::csv_text() const {
    std::string out;
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ",";
        out += columns[i];
    }
    out += "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += row[i];
        }
        out += "\n";
    }
    return out;
}

namespace {

json base_manifest(const RunConfig& c) {
    json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["command"] = c.command;
    m["config"] = config_json(c);
    m["config_hash"] = config_hash(c);
    m["seed"] = c.seed;
    m["workers"] = c.workers;
    m["points"] = json::array();
    m["notes"] = json::array();
    return m;
}

struct PointRecord {
    std::vector<std::vector<std::string>> rows;
    json point = json::object();
};

// Runs `count` sweep points in parallel and splices rows/manifests back in
// point order, so output bytes do not depend on the worker count.
void run_points(const RunConfig& c, int count, RunResult& result,
                const std::function<void(int, PointRecord&, uint64_t)>& body) {
    std::vector<PointRecord> records(count);
    parallel_for(count, c.workers, [&](int i) {
        PointClock clock;
        records[i].point["index"] = i;
        body(i, records[i], derive_stream_seed(c.seed, static_cast<uint64_t>(i)));
        records[i].point["wall_ms"] = clock.ms();
    });
    for (auto& rec : records) {
        for (auto& row : rec.rows) result.rows.push_back(std::move(row));
        result.manifest["points"].push_back(std::move(rec.point));
    }
}

SampleBatch lattice_batch(const RunConfig& c, const ScalarView& v, long long n, double beta,
                          uint64_t seed) {
    const GraphInstance g = build_graph(GraphFamily::Lattice2D, static_cast<int>(n), v.boundary);
    return mcmc_sample(g, {beta, v.h}, v.sampler, static_cast<int>(c.mcmc_samples),
                       static_cast<int>(c.burn_in), static_cast<int>(c.thin), seed);
}

void validate_lattice_sampler(const ScalarView& v) {
    if (v.sampler == Sampler::WolffCluster && v.h != 0)
        throw ConfigError("the Wolff sampler requires h = 0");
}

RunResult run_asymptotics(const RunConfig& c) {
    const ScalarView v = scalar_view(c);
    if (c.beta_list.size() != 1) throw ConfigError("asymptotics takes a single beta");
    const double beta = c.beta_list[0];

    RunResult result;
    result.json_record = true;
    result.manifest = base_manifest(c);

    const AsymptoticSummary s = asymptotic_summary(v.family, beta, v.h);
    json js;
    js["family"] = family_name(s.family);
    js["beta"] = s.beta;
    js["h"] = s.h;
    js["mean_kind"] = s.mean_kind == MeanKind::SymmetricModes ? "symmetric-modes" : "unique-mean";
    js["regime"] = s.regime;
    js["psi"] = s.psi.has_value() ? json(*s.psi) : json(nullptr);
    js["mu"] = s.mu.has_value() ? json(*s.mu) : json(nullptr);
    js["sigma2"] = s.sigma2.has_value() ? json(*s.sigma2) : json(nullptr);
    result.manifest["summary"] = js;

    const DetectorConstants dc = detector_constants(v.p);
    result.manifest["constants"] = {{"c_p", dc.c_p}, {"d_p", dc.d_p}};

    try {
        const double S = resolve_level(v.S_spec, v.family, beta, v.h);
        const PeLimit lim = pe_limit(s, S, v.p, c.match_tol);
        json jl;
        jl["kind"] = pe_limit_kind_name(lim.kind);
        jl["value"] = lim.value.has_value() ? json(*lim.value)
                      : lim.kind == PeLimitKind::Zero ? json(0.0)
                                                      : json(nullptr);
        result.manifest["S"] = S;
        result.manifest["pe_limit"] = jl;
    } catch (const std::invalid_argument& e) {
        result.manifest["pe_limit"] = nullptr;
        result.manifest["notes"].push_back(std::string("pe_limit unavailable: ") + e.what());
    }
    return result;
}

RunResult run_cdf(const RunConfig& c) {
    const ScalarView v = scalar_view(c);
    if (c.n_list.size() != 1) throw ConfigError("cdf takes a single n");
    const long long n = c.n_list[0];

    RunResult result;
    result.columns = {"family", "n", "beta", "h", "boundary", "xbar", "cdf", "config_hash"};
    result.manifest = base_manifest(c);
    const std::string hash = config_hash(c);

    if (!is_exact_family(v.family)) {
        validate_lattice_sampler(v);
        if (c.estimator == "exact" || c.estimator == "rb-exact")
            throw ConfigError("the lattice has no exact law; use the sampling route");
    }

    const int count = static_cast<int>(c.beta_list.size());
    run_points(c, count, result, [&](int i, PointRecord& rec, uint64_t seed) {
        const double beta = c.beta_list[i];
        rec.point["beta"] = beta;
        auto emit = [&](double xbar, double cdf) {
            rec.rows.push_back({family_name(v.family), std::to_string(n), format_double(beta),
                                format_double(v.h), v.boundary == Boundary::Free ? "free"
                                : v.boundary == Boundary::PlusClamped ? "plus" : "minus",
                                format_double(xbar), format_double(cdf), hash});
        };
        if (is_exact_family(v.family)) {
            const MagnetizationPmf pmf =
                exact_pmf(v.family, {beta, v.h}, static_cast<int>(n));
            rec.point["method"] = "exact-pmf";
            double acc = 0;
            for (int k = 0; k <= pmf.n; ++k) {
                acc += pmf.probs[k];
                emit(pmf.xbar(k), std::min(acc, 1.0));
            }
        } else {
            const SampleBatch batch = lattice_batch(c, v, n, beta, seed);
            rec.point["method"] = std::string("mcmc-") + sampler_name(v.sampler);
            std::vector<double> xs = batch.magnetizations;
            std::sort(xs.begin(), xs.end());
            const double m = static_cast<double>(xs.size());
            for (size_t j = 0; j < xs.size(); ++j) {
                if (j + 1 < xs.size() && xs[j + 1] == xs[j]) continue;  // keep last duplicate
                emit(xs[j], (j + 1) / m);
            }
        }
    });
    return result;
}

struct MethodChoice {
    EstimatorMethod method;
    std::string note;
};

MethodChoice choose_method(const std::string& estimator, GraphFamily family, long long n,
                           double delta) {
    const bool exact_ok = is_exact_family(family) && n <= kExactConditionalMaxN && delta == 1.0;
    if (estimator == "auto") {
        if (exact_ok) return {EstimatorMethod::RBExact, ""};
        if (delta == 1.0) return {EstimatorMethod::RBGauss, ""};
        return {EstimatorMethod::PlainMC, ""};
    }
    if (estimator == "exact" || estimator == "rb-exact") {
        const EstimatorMethod want =
            estimator == "exact" ? EstimatorMethod::ExactSmallN : EstimatorMethod::RBExact;
        if (exact_ok) return {want, ""};
        if (!is_exact_family(family))
            throw InfeasibleError("exact estimators need an exact magnetization law");
        if (delta != 1.0) throw InfeasibleError("exact estimators require delta = 1");
        return {EstimatorMethod::RBGauss,
                "n=" + std::to_string(n) + " beyond the exact cutoff; fell back to rb-gauss"};
    }
    if (estimator == "rb-gauss") {
        if (delta != 1.0) throw InfeasibleError("rb-gauss requires delta = 1");
        return {EstimatorMethod::RBGauss, ""};
    }
    if (estimator == "mc") return {EstimatorMethod::PlainMC, ""};
    throw ConfigError("unknown estimator: " + estimator);
}

RunResult run_pe_vs_n(const RunConfig& c) {
    const ScalarView v = scalar_view(c);
    RunResult result;
    result.columns = {"beta", "n", "pe", "stderr", "method", "hoeffding_bound",
                      "q_limit_value", "pe_limit", "config_hash"};
    result.manifest = base_manifest(c);
    const std::string hash = config_hash(c);

    if (!is_exact_family(v.family)) validate_lattice_sampler(v);

    struct Point {
        double beta;
        long long n;
    };
    std::vector<Point> points;
    for (double beta : c.beta_list)
        for (long long n : c.n_list) points.push_back({beta, n});

    // validate ties and level resolution up front (config errors beat workers)
    for (const auto& pt : points) {
        const double S = resolve_level(v.S_spec, v.family, pt.beta, v.h);
        try {
            require_no_tie(static_cast<int>(pt.n), S);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }

    run_points(c, static_cast<int>(points.size()), result,
               [&](int i, PointRecord& rec, uint64_t seed) {
        const auto [beta, n] = points[i];
        rec.point["beta"] = beta;
        rec.point["n"] = n;
        const double S = resolve_level(v.S_spec, v.family, beta, v.h);
        DetectionTask task{S, {v.p, c.delta}, v.threshold_mode};

        const MethodChoice mc = choose_method(c.estimator, v.family, n, c.delta);
        if (!mc.note.empty()) rec.point["note"] = mc.note;
        rec.point["method"] = method_name(mc.method);

        ErrorEstimate est;
        if (is_exact_family(v.family)) {
            const MagnetizationPmf pmf = exact_pmf(v.family, {beta, v.h}, static_cast<int>(n));
            est = estimate_pe(pmf, task, mc.method, c.trials, seed);
        } else {
            const SampleBatch batch = lattice_batch(c, v, n, beta, seed);
            est = estimate_pe(batch, task, mc.method, c.trials, seed);
        }

        std::string lim_text;
        const AsymptoticSummary summary = asymptotic_summary(v.family, beta, v.h);
        if (summary.mu.has_value()) {
            const PeLimit lim = pe_limit(summary, S, v.p, c.match_tol);
            if (lim.kind == PeLimitKind::Zero)
                lim_text = "0";
            else if (lim.value.has_value())
                lim_text = format_double(*lim.value);
        }

        rec.rows.push_back({format_double(beta), std::to_string(n), format_double(est.pe),
                            format_double(est.std_error), method_name(est.method),
                            est.hoeffding_bound ? format_double(*est.hoeffding_bound) : "",
                            est.q_limit_value ? format_double(*est.q_limit_value) : "",
                            lim_text, hash});
    });
    return result;
}

RunResult run_pe_vs_beta(const RunConfig& c) {
    const ScalarView v = scalar_view(c);
    if (v.family != GraphFamily::Lattice2D)
        throw ConfigError("pe-vs-beta scans the lattice family");
    if (c.n_list.size() != 1) throw ConfigError("pe-vs-beta takes a single n");
    validate_lattice_sampler(v);
    if (c.estimator == "exact" || c.estimator == "rb-exact")
        throw InfeasibleError("exact estimators need an exact magnetization law");

    const long long n = c.n_list[0];
    RunResult result;
    result.columns = {"beta", "pe", "stderr", "n_samples", "boundary", "config_hash"};
    result.manifest = base_manifest(c);
    result.manifest["beta_c"] = lattice_beta_critical();
    const std::string hash = config_hash(c);

    for (double beta : c.beta_list) {
        const double S = resolve_level(v.S_spec, v.family, beta, v.h);
        try {
            require_no_tie(static_cast<int>(n), S);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }

    run_points(c, static_cast<int>(c.beta_list.size()), result,
               [&](int i, PointRecord& rec, uint64_t seed) {
        const double beta = c.beta_list[i];
        rec.point["beta"] = beta;
        const double S = resolve_level(v.S_spec, v.family, beta, v.h);
        DetectionTask task{S, {v.p, c.delta}, v.threshold_mode};
        const MethodChoice mc = choose_method(c.estimator, v.family, n, c.delta);
        rec.point["method"] = method_name(mc.method);
        const SampleBatch batch = lattice_batch(c, v, n, beta, seed);
        const ErrorEstimate est = estimate_pe(batch, task, mc.method, c.trials, seed);
        rec.rows.push_back({format_double(beta), format_double(est.pe),
                            format_double(est.std_error),
                            std::to_string(batch.plus_counts.size()), c.boundary, hash});
    });
    return result;
}

RunResult run_bounds_check(const RunConfig& c) {
    for (const auto& g : c.graphs)
        if (!is_exact_family(parse_family(g)))
            throw ConfigError("bounds-check covers the exactly solvable families");
    for (long long n : c.n_list)
        if (n > kExactConditionalMaxN)
            throw ConfigError("bounds-check needs n within the exact cutoff");
    if (c.delta != 1.0) throw ConfigError("bounds-check runs at full observation");
    const ThresholdMode tmode = parse_threshold_mode(c.threshold_mode);

    RunResult result;
    result.columns = {"family", "n", "beta", "h", "S", "p",
                      "pe", "hoeffding_bound", "q_limit_value", "pass", "config_hash"};
    result.manifest = base_manifest(c);
    const std::string hash = config_hash(c);

    struct Point {
        GraphFamily family;
        long long n;
        double beta, h;
        std::string S_spec;
        double p;
    };
    std::vector<Point> points;
    std::vector<std::string> skipped;
    for (const auto& gname : c.graphs) {
        const GraphFamily family = parse_family(gname);
        for (long long n : c.n_list)
            for (double beta : c.beta_list)
                for (double h : c.h_list)
                    for (const auto& S_spec : c.S_list)
                        for (double p : c.p_list) {
                            const double S = resolve_level(S_spec, family, beta, h);
                            try {
                                require_no_tie(static_cast<int>(n), S);
                            } catch (const std::invalid_argument&) {
                                skipped.push_back(gname + " n=" + std::to_string(n) +
                                                  " S=" + S_spec +
                                                  ": n(1+S)/2 integer, point skipped");
                                continue;
                            }
                            points.push_back({family, n, beta, h, S_spec, p});
                        }
    }
    for (const auto& s : skipped) result.manifest["notes"].push_back(s);
    if (points.empty()) throw ConfigError("bounds-check grid is empty after tie filtering");

    std::atomic<long long> violations{0};
    run_points(c, static_cast<int>(points.size()), result,
               [&](int i, PointRecord& rec, uint64_t) {
        const Point& pt = points[i];
        const double S = resolve_level(pt.S_spec, pt.family, pt.beta, pt.h);
        DetectionTask task{S, {pt.p, 1.0}, tmode};
        const MagnetizationPmf pmf =
            exact_pmf(pt.family, {pt.beta, pt.h}, static_cast<int>(pt.n));
        const ErrorEstimate est = estimate_pe(pmf, task, EstimatorMethod::RBExact);
        const bool pass = est.pe <= *est.hoeffding_bound;
        if (!pass) violations.fetch_add(1);
        rec.point["key"] = std::string(family_name(pt.family)) + " n=" + std::to_string(pt.n);
        rec.rows.push_back({family_name(pt.family), std::to_string(pt.n),
                            format_double(pt.beta), format_double(pt.h), format_double(S),
                            format_double(pt.p), format_double(est.pe),
                            format_double(*est.hoeffding_bound),
                            est.q_limit_value ? format_double(*est.q_limit_value) : "",
                            pass ? "1" : "0", hash});
    });
    result.manifest["violations"] = violations.load();
    return result;
}

RunResult run_probe_concentration(const RunConfig& c) {
    const ScalarView v = scalar_view(c);
    if (c.beta_list.size() != 1) throw ConfigError("probe-concentration takes a single beta");
    const double beta = c.beta_list[0];
    const double S = resolve_level(v.S_spec, v.family, beta, v.h);
    WindowMode mode;
    if (c.probe_window_mode == "scaled")
        mode = WindowMode::ScaledWindow;
    else if (c.probe_window_mode == "fixed")
        mode = WindowMode::FixedWindow;
    else
        throw ConfigError("window mode must be scaled or fixed");
    if (!(c.probe_window > 0)) throw ConfigError("window must be positive");
    if (!is_exact_family(v.family)) validate_lattice_sampler(v);

    RunResult result;
    result.columns = {"family", "n", "beta", "h", "S", "mode", "window", "prob", "config_hash"};
    result.manifest = base_manifest(c);
    const std::string hash = config_hash(c);

    std::vector<double> probs(c.n_list.size(), 0.0);
    run_points(c, static_cast<int>(c.n_list.size()), result,
               [&](int i, PointRecord& rec, uint64_t seed) {
        const long long n = c.n_list[i];
        rec.point["n"] = n;
        double prob;
        if (is_exact_family(v.family)) {
            prob = concentration_probe(exact_pmf(v.family, {beta, v.h}, static_cast<int>(n)), S,
                                       c.probe_window, mode);
        } else {
            prob = concentration_probe(lattice_batch(c, v, n, beta, seed), S, c.probe_window,
                                       mode);
        }
        probs[i] = prob;
        rec.rows.push_back({family_name(v.family), std::to_string(n), format_double(beta),
                            format_double(v.h), format_double(S),
                            mode == WindowMode::ScaledWindow ? "scaled" : "fixed",
                            format_double(c.probe_window), format_double(prob), hash});
    });

    long positive = 0;
    for (double p : probs) positive += (p > 0);
    if (c.n_list.size() >= 2 && positive >= 2) {
        std::vector<double> ns(c.n_list.begin(), c.n_list.end());
        result.manifest["log_slope"] = fit_log_slope(ns, probs);
    }
    return result;
}

}  // namespace

RunResult run_command(const RunConfig& c) {
    validate_common(c);
    try {
        if (c.command == "asymptotics") return run_asymptotics(c);
        if (c.command == "cdf") return run_cdf(c);
        if (c.command == "pe-vs-n") return run_pe_vs_n(c);
        if (c.command == "pe-vs-beta") return run_pe_vs_beta(c);
        if (c.command == "bounds-check") return run_bounds_check(c);
        if (c.command == "probe-concentration") return run_probe_concentration(c);
    } catch (const ConfigError&) {
        throw;
    } catch (const InfeasibleError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    } catch (const std::exception& e) {
        throw NumericError(e.what());
    }
    throw ConfigError("unknown command: " + c.command);
}

void write_outputs(const RunResult& result, const RunConfig& config) {
    if (result.json_record || config.format == "json") {
        json doc = result.manifest;
        if (!result.json_record) {
            doc["columns"] = result.columns;
            doc["rows"] = result.rows;
        }
        const std::string text = doc.dump(2) + "\n";
        if (config.out.empty() || config.out == "-") {
            std::cout << text;
        } else {
            std::ofstream f(config.out);
            if (!f) throw ConfigError("cannot open output file: " + config.out);
            f << text;
        }
        return;
    }
    const std::string csv = result.csv_text();
    const std::string manifest = result.manifest.dump(2) + "\n";
    if (config.out.empty() || config.out == "-") {
        std::cout << csv;
        std::cerr << manifest;
    } else {
        std::ofstream f(config.out);
        if (!f) throw ConfigError("cannot open output file: " + config.out);
        f << csv;
        std::ofstream mf(config.out + ".manifest.json");
        if (!mf) throw ConfigError("cannot open manifest file: " + config.out + ".manifest.json");
        mf << manifest;
    }
}

}  // namespace spinpoll
