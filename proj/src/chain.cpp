#include "qrep/chain.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qrep/codes.hpp"

namespace qrep {
namespace {

void check_tail_args(int n, int t, double q) {
    if (n < 1) throw std::domain_error("block size must be >= 1");
    if (t < 0 || t > n) throw std::domain_error("correctable weight must lie in [0, n]");
    if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("flip rate must lie in [0, 1]");
}

double log_binom(int n, int j) {
    return std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
}

// log P(X > t) and log P(X <= t) for X ~ Binomial(n, q), via one
// log-sum-exp pass; the shared normalization cancels in the difference.
void log_tail_and_head(int n, int t, double q, double& log_tail, double& log_head) {
    const double lq = std::log(q), l1q = std::log1p(-q);
    double m = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(n + 1);
    for (int j = 0; j <= n; ++j) {
        terms[j] = log_binom(n, j) + j * lq + (n - j) * l1q;
        if (terms[j] > m) m = terms[j];
    }
    long double tail = 0.0L, head = 0.0L;
    for (int j = 0; j <= n; ++j) {
        long double e = std::exp(static_cast<long double>(terms[j] - m));
        if (j > t) tail += e; else head += e;
    }
    log_tail = (tail > 0.0L) ? m + static_cast<double>(std::log(tail))
                             : -std::numeric_limits<double>::infinity();
    log_head = (head > 0.0L) ? m + static_cast<double>(std::log(head))
                             : -std::numeric_limits<double>::infinity();
}

}  // namespace

double logical_error_prob(int n, int t, double q) {
    check_tail_args(n, t, q);
    if (t == n) return 0.0;
    if (q == 0.0) return 0.0;
    if (q == 1.0) return 1.0;  // weight-n pattern, n > t
    double log_tail, log_head;
    log_tail_and_head(n, t, q, log_tail, log_head);
    double p = std::exp(log_tail);
    return p < 1.0 ? p : 1.0;
}

double logical_error_prob_asymptotic(int n, int t, double q) {
    check_tail_args(n, t, q);
    if (t < 1) throw std::domain_error("asymptotic tail needs t >= 1");
    if (q == 0.0) return 0.0;
    const double base = std::exp(1.0 + 0.5 / n) * n * q / (t + 1.0);
    return std::pow(base, t + 1.0) / std::sqrt(2.0 * M_PI * t);
}

double asymptotic_critical_rate(int n, int t) {
    if (n < 1 || t < 1) throw std::domain_error("critical rate needs n >= 1, t >= 1");
    return (t + 1.0) / (n * std::exp(1.0 + 0.5 / n));
}

ChainFidelity chain_fidelity(double q_logical, double stations) {
    if (!(q_logical >= 0.0 && q_logical <= 1.0))
        throw std::domain_error("logical error probability must lie in [0, 1]");
    if (!(stations >= 2.0))
        throw std::domain_error("a chain needs at least 2 stations");
    const double keep = 1.0 - q_logical;
    return {std::pow(keep, 2.0 * stations), std::pow(keep, 2.0 * stations - 2.0)};
}

double max_connections(double q_logical, double f_star) {
    if (!(q_logical >= 0.0 && q_logical < 1.0))
        throw std::domain_error("logical error probability must lie in [0, 1)");
    if (!(f_star > 0.0 && f_star < 1.0))
        throw std::domain_error("fidelity target must lie in (0, 1)");
    if (q_logical == 0.0) return std::numeric_limits<double>::infinity();
    return std::log(f_star) / (2.0 * std::log1p(-q_logical));
}

double key_correlation(double q_logical, double stations) {
    if (!(q_logical >= 0.0 && q_logical <= 1.0))
        throw std::domain_error("logical error probability must lie in [0, 1]");
    if (!(stations >= 2.0))
        throw std::domain_error("a chain needs at least 2 stations");
    return std::pow(1.0 - q_logical, stations);
}

double threshold_scan(double ratio, int n_max) {
    if (!(ratio > 0.0 && ratio <= 0.5))
        throw std::domain_error("ratio must lie in (0, 0.5]");
    if (n_max < 4) throw std::domain_error("n_max must be >= 4");
    const int n_half = n_max / 2;
    auto logit = [](int n, double ratio, double q) {
        int t = static_cast<int>(ratio * n);
        double lt, lh;
        log_tail_and_head(n, t, q, lt, lh);
        return lt - lh;
    };
    // below threshold the doubled block has the smaller tail logit
    auto improves = [&](double q) {
        return logit(n_max, ratio, q) < logit(n_half, ratio, q);
    };
    double lo = 1e-6, hi = 0.5;
    if (!improves(lo)) return lo;
    if (improves(hi)) return hi;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        (improves(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<ChainReport> table1_report(double q, double f_star, double l0_km) {
    if (!(l0_km > 0.0)) throw std::domain_error("station spacing must be > 0");
    std::vector<ChainReport> rows;
    for (const auto& name : registered_code_names()) {
        const CssCodeSpec& c = build_code(name);
        ChainReport r;
        r.code = name;
        r.q = q;
        // repetition rows count only the protected readout species
        r.logical_q = logical_error_prob(c.n, c.t, q);
        r.l_star = max_connections(r.logical_q, f_star);
        // report columns use the continuous closed forms at the (possibly
        // fractional, possibly < 2) budget point; the station-count gate
        // applies to chain_fidelity/key_correlation proper
        const double keep = 1.0 - r.logical_q;
        r.fidelity = std::pow(keep, 2.0 * r.l_star);
        r.fidelity_refined = std::pow(keep, 2.0 * r.l_star - 2.0);
        r.correlation = std::pow(keep, r.l_star);
        r.distance_km = r.l_star * l0_km;
        r.resource_total = resource_estimate(c).total;
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace qrep
