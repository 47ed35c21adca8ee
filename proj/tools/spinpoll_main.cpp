#include <iostream>

#include <CLI11.hpp>

#include "spinpoll/experiments.hpp"

using spinpoll::RunConfig;

namespace {

void add_common_flags(CLI::App* sub, RunConfig& cfg) {
    sub->set_help_flag("--help", "print help");  // frees -h for the field flag
    sub->set_config("--config", "", "flat key=value config file; flags override");
    sub->add_option("--graph", cfg.graphs,
                    "graph family {empty,star,chain,ring,wheel,complete,lattice}; "
                    "bounds-check accepts a comma list")
        ->delimiter(',');
    sub->add_option("--n", cfg.n_list, "member count (lattice: a perfect square); sweeps take a comma list")
        ->delimiter(',');
    sub->add_option("--beta", cfg.beta_list, "connection strength; sweeps take a comma list")
        ->delimiter(',');
    sub->add_option("--h", cfg.h_list, "external influence strength")->delimiter(',');
    sub->add_option("--S", cfg.S_list, "supermajority level in (-1,1), or 'mu' for the asymptotic mean")
        ->delimiter(',');
    sub->add_option("--p", cfg.p_list, "measurement crossover probability in (0,1/2)")
        ->delimiter(',');
    sub->add_option("--delta", cfg.delta, "observation fraction in (0,1]");
    sub->add_option("--estimator", cfg.estimator, "{exact,rb-exact,rb-gauss,mc,auto}");
    sub->add_option("--sampler", cfg.sampler, "{metropolis,wolff}");
    sub->add_option("--burn-in", cfg.burn_in, "MCMC burn-in sweeps");
    sub->add_option("--thin", cfg.thin, "sweeps between recorded samples");
    sub->add_option("--trials", cfg.trials, "Monte Carlo channel trials");
    sub->add_option("--samples", cfg.mcmc_samples, "recorded MCMC samples per point");
    sub->add_option("--seed", cfg.seed, "base RNG seed; per-point streams derive from it");
    sub->add_option("--boundary", cfg.boundary, "lattice boundary {free,plus,minus}");
    sub->add_option("--threshold-mode", cfg.threshold_mode, "{delta-scaled,paper-literal}");
    sub->add_option("--match-tol", cfg.match_tol, "tolerance for the S = mu comparison");
    sub->add_option("--workers", cfg.workers, "parallel sweep workers (0 = hardware)");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "{csv,json}");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"supermajority sentiment detection on Ising-coupled networks"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    RunConfig cfg;
    struct SubSpec {
        const char* name;
        const char* help;
    };
    const SubSpec subs[] = {
        {"cdf", "exact or sampled CDF of the average sentiment"},
        {"pe-vs-n", "detection error versus member count, with bound and limit overlays"},
        {"pe-vs-beta", "lattice detection error versus connection strength"},
        {"asymptotics", "closed-form asymptotic summary and limiting error (JSON)"},
        {"bounds-check", "exact error vs Hoeffding bound over a parameter grid"},
        {"probe-concentration", "window probabilities of the average sentiment"},
    };
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_common_flags(sub, cfg);
        sub->callback([&cfg, name = std::string(s.name)] { cfg.command = name; });
    }
    app.get_subcommand("probe-concentration")
        ->add_option("--window", cfg.probe_window, "window half-width B (scaled) or b (fixed)");
    app.get_subcommand("probe-concentration")
        ->add_option("--window-mode", cfg.probe_window_mode, "{scaled,fixed}");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const spinpoll::RunResult result = spinpoll::run_command(cfg);
        spinpoll::write_outputs(result, cfg);
        return 0;
    } catch (const spinpoll::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const spinpoll::InfeasibleError& e) {
        std::cerr << "infeasible estimator: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    }
}
