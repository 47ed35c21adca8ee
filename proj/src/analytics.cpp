#include <cmath>
#include <stdexcept>

#include "spinpoll/analytics.hpp"

namespace spinpoll {

namespace {

double sign_of(double h) { return h > 0 ? 1.0 : (h < 0 ? -1.0 : 0.0); }

// entropy of a Bernoulli(q) in nats, safe at the endpoints
double binary_entropy(double q) {
    double e = 0;
    if (q > 0) e -= q * std::log(q);
    if (q < 1) e -= (1 - q) * std::log(1 - q);
    return e;
}

double cw_objective(double beta, double h, double mu) {
    return h * mu + 0.5 * beta * mu * mu + binary_entropy(0.5 * (1 + mu));
}

// largest root of tanh(beta mu + h) - mu on (0, 1] for h >= 0; 0 if none
double cw_positive_root(double beta, double h) {
    auto f = [&](double mu) { return std::tanh(beta * mu + h) - mu; };
    double lo = h > 0 ? 0.0 : 1e-15;
    if (f(lo) <= 0) return 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double arccot(double x) { return std::atan2(1.0, x); }

}  // namespace

DetectorConstants detector_constants(double p) {
    if (!(p > 0 && p < 0.5))
        throw std::invalid_argument("crossover probability must lie in (0, 1/2)");
    const double w = 1 - 2 * p;
    return {0.5 * w * w, w / std::sqrt(4 * p * (1 - p))};
}

AsymptoticSummary table1_summary(GraphFamily family, double beta, double h) {
    if (beta < 0) throw std::invalid_argument("beta must be nonnegative");
    AsymptoticSummary s;
    s.family = family;
    s.beta = beta;
    s.h = h;
    const double ah = std::abs(h);
    switch (family) {
        case GraphFamily::Empty:
            s.psi = std::log(2 * std::cosh(h));
            s.mean_kind = MeanKind::UniqueMean;
            s.mu = std::tanh(h);
            s.sigma2 = 1.0 / (std::cosh(h) * std::cosh(h));
            s.regime = "iid";
            break;
        case GraphFamily::Star: {
            const double a = beta + ah;
            s.psi = std::log(2 * std::cosh(a));
            s.sigma2 = 1.0 / (std::cosh(a) * std::cosh(a));
            if (h != 0) {
                s.mean_kind = MeanKind::UniqueMean;
                s.mu = std::tanh(a) * sign_of(h);
                s.regime = "hub-aligned";
            } else {
                s.mean_kind = beta > 0 ? MeanKind::SymmetricModes : MeanKind::UniqueMean;
                s.mu = std::tanh(beta);
                s.regime = beta > 0 ? "hub-split" : "iid";
            }
            break;
        }
        case GraphFamily::Chain:
        case GraphFamily::Ring: {
            const double root = std::sqrt(std::sinh(h) * std::sinh(h) + std::exp(-4 * beta));
            s.psi = beta + std::log(std::cosh(h) + root);
            s.mean_kind = MeanKind::UniqueMean;
            s.mu = std::sinh(h) / root;
            s.sigma2 = std::exp(-4 * beta) * std::cosh(h) / (root * root * root);
            s.regime = "one-dimensional";
            break;
        }
        case GraphFamily::Wheel: {
            const double a = beta + ah;
            const double root = std::sqrt(std::sinh(a) * std::sinh(a) + std::exp(-4 * beta));
            s.psi = beta + std::log(std::cosh(a) + root);
            s.sigma2 = std::exp(-4 * beta) * std::cosh(a) / (root * root * root);
            if (h != 0) {
                s.mean_kind = MeanKind::UniqueMean;
                s.mu = std::sinh(a) / root * sign_of(h);
                s.regime = "hub-aligned";
            } else {
                s.mean_kind = beta > 0 ? MeanKind::SymmetricModes : MeanKind::UniqueMean;
                s.mu = std::sinh(beta) / root;
                s.regime = beta > 0 ? "hub-split" : "iid";
            }
            break;
        }
        default:
            throw std::invalid_argument("closed-form summary covers empty/star/chain/ring/wheel");
    }
    return s;
}

double curie_weiss_mu(double beta, double h) {
    if (h < 0) return -curie_weiss_mu(beta, -h);
    const double pos = cw_positive_root(beta, h);
    if (pos == 0) return 0.0;
    // For h > 0 the aligned root maximizes on [0,1] and beats every
    // disaligned stationary point by 2h|mu|. At h = 0 compare against the
    // mu = 0 stationary point, which settles the pitchfork near beta = 1.
    if (h == 0 && cw_objective(beta, h, 0.0) >= cw_objective(beta, h, pos)) return 0.0;
    return pos;
}

AsymptoticSummary curie_weiss_summary(double beta, double h) {
    if (beta < 0) throw std::invalid_argument("beta must be nonnegative");
    AsymptoticSummary s;
    s.family = GraphFamily::Complete;
    s.beta = beta;
    s.h = h;
    const double mu = curie_weiss_mu(beta, h);
    s.psi = cw_objective(beta, h, mu);
    s.sigma2 = (1 - mu * mu) / (1 - beta + beta * mu * mu);
    if (h == 0 && beta > 1) {
        s.mean_kind = MeanKind::SymmetricModes;
        s.mu = mu;  // positive mode
        s.regime = "supercritical";
    } else {
        s.mean_kind = MeanKind::UniqueMean;
        s.mu = mu;
        s.regime = beta <= 1 ? "subcritical" : "field-aligned";
    }
    return s;
}

double lattice_beta_critical() { return 0.5 * std::log(1.0 + std::sqrt(2.0)); }

double onsager_spontaneous_magnetization(double beta) {
    if (beta <= lattice_beta_critical())
        throw std::invalid_argument("spontaneous magnetization exists only above beta_c");
    const double s = std::sinh(2 * beta);
    return std::pow(1.0 - 1.0 / (s * s * s * s), 0.125);
}

AsymptoticSummary lattice_summary(double beta, double h) {
    if (beta < 0) throw std::invalid_argument("beta must be nonnegative");
    AsymptoticSummary s;
    s.family = GraphFamily::Lattice2D;
    s.beta = beta;
    s.h = h;
    const bool supercritical = beta > lattice_beta_critical();
    s.regime = supercritical ? "supercritical" : "subcritical";
    if (h == 0) {
        if (supercritical) {
            s.mean_kind = MeanKind::SymmetricModes;
            s.mu = onsager_spontaneous_magnetization(beta);
        } else {
            s.mean_kind = MeanKind::UniqueMean;
            s.mu = 0.0;
        }
    }
    // h != 0: the mean exists but has no closed form here; psi and sigma2
    // likewise stay empty.
    return s;
}

AsymptoticSummary asymptotic_summary(GraphFamily family, double beta, double h) {
    switch (family) {
        case GraphFamily::Complete:
            return curie_weiss_summary(beta, h);
        case GraphFamily::Lattice2D:
            return lattice_summary(beta, h);
        default:
            return table1_summary(family, beta, h);
    }
}

const char* pe_limit_kind_name(PeLimitKind k) {
    switch (k) {
        case PeLimitKind::Zero: return "zero";
        case PeLimitKind::ArccotValue: return "arccot";
        case PeLimitKind::HalfArccotValue: return "half-arccot";
        case PeLimitKind::BoundedPositiveUnknown: return "bounded-positive-unknown";
    }
    return "?";
}

PeLimit pe_limit(const AsymptoticSummary& summary, double S, double p, double match_tol) {
    if (!(S > -1 && S < 1)) throw std::invalid_argument("supermajority level must lie in (-1, 1)");
    const DetectorConstants dc = detector_constants(p);
    if (!summary.mu.has_value())
        throw std::invalid_argument("summary carries no mean or mode to compare S against");

    bool matches;
    if (summary.mean_kind == MeanKind::SymmetricModes) {
        const double mode = *summary.mu;
        matches = std::abs(S - mode) <= match_tol || std::abs(S + mode) <= match_tol;
    } else {
        matches = std::abs(S - *summary.mu) <= match_tol;
    }
    if (!matches) return {PeLimitKind::Zero, std::nullopt};

    if (summary.family == GraphFamily::Lattice2D || !summary.sigma2.has_value())
        return {PeLimitKind::BoundedPositiveUnknown, std::nullopt};

    const double sigma = std::sqrt(*summary.sigma2);
    if (summary.mean_kind == MeanKind::SymmetricModes)
        return {PeLimitKind::HalfArccotValue, arccot(dc.d_p * sigma) / (2 * M_PI)};
    return {PeLimitKind::ArccotValue, arccot(dc.d_p * sigma) / M_PI};
}

double effective_crossover(double p, double delta) {
    if (!(p > 0 && p < 0.5)) throw std::invalid_argument("crossover must lie in (0, 1/2)");
    if (!(delta > 0 && delta <= 1)) throw std::invalid_argument("delta must lie in (0, 1]");
    const double a = (1 - delta) * (1 - 2 * p);
    return (a + p) / (a + 1);
}

}  // namespace spinpoll
