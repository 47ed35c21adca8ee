#pragma once

#include <optional>
#include <string>

#include "spinpoll/graph.hpp"

namespace spinpoll {

struct DetectorConstants {
    double c_p;  // Hoeffding exponent constant (1-2p)^2 / 2
    double d_p;  // Gaussian-limit constant (1-2p) / sqrt(4p(1-p))
};

// Requires 0 < p < 1/2. p = 0 is rejected: d_p diverges and noiseless
// detection needs no constants.
DetectorConstants detector_constants(double p);

enum class MeanKind { UniqueMean, SymmetricModes };

// Asymptotic law of the average sentiment: free entropy density psi, the mean
// (or the positive mode mu+ at h = 0 in symmetric supercritical phases) and
// the asymptotic n*Var. For Star/Wheel at h = 0, sigma2 is the variance
// conditioned on the hub sign. Fields with no closed form (lattice) are
// absent.
struct AsymptoticSummary {
    GraphFamily family = GraphFamily::Empty;
    double beta = 0;
    double h = 0;
    std::optional<double> psi;
    MeanKind mean_kind = MeanKind::UniqueMean;
    std::optional<double> mu;
    std::optional<double> sigma2;
    std::string regime;
};

// Closed forms for Empty, Star, Chain, Ring and Wheel.
AsymptoticSummary table1_summary(GraphFamily family, double beta, double h);

// Complete graph with coupling beta/n: solves mu = tanh(beta mu + h) for the
// global maximizer of h mu + beta mu^2/2 + H((1+mu)/2); sigma2 by the closed
// form (1 - mu^2) / (1 - beta + beta mu^2).
AsymptoticSummary curie_weiss_summary(double beta, double h);

// 2-D lattice: regime against beta_c = log(1+sqrt(2))/2. At h = 0 above
// beta_c the positive mode is the classical spontaneous-magnetization value
// m = (1 - sinh(2 beta)^-4)^(1/8); psi and sigma2 have no closed form here
// and are left empty.
AsymptoticSummary lattice_summary(double beta, double h);

AsymptoticSummary asymptotic_summary(GraphFamily family, double beta, double h);

// Positive-branch fixed point of mu = tanh(beta mu + h) (global maximizer for
// h >= 0), residual below 1e-12; negative h by symmetry.
double curie_weiss_mu(double beta, double h);

double lattice_beta_critical();
double onsager_spontaneous_magnetization(double beta);  // beta > beta_c

enum class PeLimitKind { Zero, ArccotValue, HalfArccotValue, BoundedPositiveUnknown };

struct PeLimit {
    PeLimitKind kind = PeLimitKind::Zero;
    std::optional<double> value;  // present for the arccot kinds
};

const char* pe_limit_kind_name(PeLimitKind k);

// Limiting detection error at supermajority level S and crossover p.
// S is compared against the mean/modes within match_tol. Lattice summaries
// with a matching mean/mode produce BoundedPositiveUnknown (no closed-form
// variance exists); a lattice summary with no usable mean (h != 0) is
// rejected.
PeLimit pe_limit(const AsymptoticSummary& summary, double S, double p, double match_tol = 1e-9);

// Error probability of polling a delta fraction equals polling everyone with
// crossover ((1-delta)(1-2p)+p) / ((1-delta)(1-2p)+1).
double effective_crossover(double p, double delta);

}  // namespace spinpoll
