#pragma once

namespace qrep {

/// Elementary noise rates for one repeater station.
struct ErrorParams {
    double beta = 1e-3;   // two-qubit gate error, in [0, 1]
    double delta = 1e-3;  // measurement error, in [0, 1]
    double mu = 0.0;      // memory error accumulated while waiting, in [0, 1]
    double gamma = 0.0;   // memory decay rate (1/s), >= 0
    double f0 = 0.95;     // raw entangled-pair fidelity, in [0.25, 1]
};

/// Per-connection effective error probabilities after first-order
/// accumulation through encoded connection + verification.
struct EffectiveError {
    // stage 1: stored half-pair (waited, so carries mu) and the freshly
    // purified half-pair consumed by the connection
    double stored_bit = 0, stored_phase = 0;
    double fresh_bit = 0, fresh_phase = 0;
    // stage 2: per-qubit error from one round of encoded gates
    double gate_bit = 0, gate_phase = 0;
    // stage 3: control/target qubit totals entering readout
    double control_bit = 0, control_phase = 0;
    double target_bit = 0, target_phase = 0;
    // totals: q_b/q_p drive the Z-basis/X-basis readout errors; q is the
    // symmetrized single-parameter rate used by the analytic chain model
    double q_b = 0, q_p = 0, q = 0;
    bool saturated = false;  // some first-order sum exceeded 1 and was clamped
};

/// Accumulate the per-qubit error probabilities for one encoded connection.
/// First-order (union-bound) arithmetic: probabilities add; a sum above 1
/// clamps and sets `saturated`. Throws std::domain_error if any field of
/// ErrorParams is out of range.
EffectiveError effective_error_probabilities(const ErrorParams& params);

/// Memory error accumulated over a wait of `tau` seconds at decay rate
/// `gamma`: 1 - exp(-gamma * tau). Throws std::domain_error on negative
/// arguments.
double memory_error_prob(double gamma, double tau);

}  // namespace qrep
