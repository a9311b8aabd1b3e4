#pragma once

#include <string>
#include <vector>

namespace qrep {

/// Per-readout logical error probability of a block with n outcome bits
/// correcting up to t flips: P(Binomial(n, q) > t), computed in log space
/// so large n and tiny q stay accurate.
double logical_error_prob(int n, int t, double q);

/// Large-block closed-form estimate of the same tail (requires t >= 1):
/// (2 pi t)^{-1/2} (e^{1 + 1/(2n)} n q / (t+1))^{t+1}.
double logical_error_prob_asymptotic(int n, int t, double q);

/// Rate at which the asymptotic base reaches 1: (t+1)/(n e^{1 + 1/(2n)}).
double asymptotic_critical_rate(int n, int t);

struct ChainFidelity {
    double fidelity = 0;          // (1-Q)^(2L): two decoded readouts per station
    double fidelity_refined = 0;  // (1-Q)^(2L-2): end stations decode once each
};

/// End-to-end fidelity of a chain of `stations` stations whose per-readout
/// logical error probability is q_logical. Fractional station counts are
/// allowed (they arise from inverting the fidelity target).
ChainFidelity chain_fidelity(double q_logical, double stations);

/// Largest station count keeping fidelity >= f_star:
/// ln(f_star) / (2 ln(1 - q_logical)); +infinity when q_logical == 0.
double max_connections(double q_logical, double f_star);

/// Probability the end-to-end key bits agree in one basis: (1-Q)^L.
/// Squares to the fidelity of chain_fidelity.
double key_correlation(double q_logical, double stations);

/// Bisect for the flip rate where growing the block stops helping: at fixed
/// t/n = ratio, compares the tail at n_max against n_max/2 in logit space
/// and returns the crossover rate.
double threshold_scan(double ratio, int n_max);

struct ChainReport {
    std::string code;
    double q = 0;                // per-readout flip rate
    double logical_q = 0;        // per-station logical error probability
    double l_star = 0;           // station budget at the fidelity target
    double fidelity = 0;
    double fidelity_refined = 0;
    double correlation = 0;
    double distance_km = 0;      // l_star * station spacing
    int resource_total = 0;      // physical qubits per station
};

/// One row per registered code: maximum chain length at flip rate q holding
/// final fidelity f_star, with stations every l0_km.
std::vector<ChainReport> table1_report(double q, double f_star, double l0_km);

}  // namespace qrep
