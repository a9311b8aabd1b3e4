#include "qrep/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace qrep {
namespace {

void check_unit(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::domain_error(std::string(what) + " must be in [0, 1]");
}

// clamp a first-order probability sum into [0, 1], remembering saturation
double cap(double p, bool& saturated) {
    if (p > 1.0) {
        saturated = true;
        return 1.0;
    }
    return p;
}

}  // namespace

EffectiveError effective_error_probabilities(const ErrorParams& params) {
    check_unit(params.beta, "beta");
    check_unit(params.delta, "delta");
    check_unit(params.mu, "mu");
    if (!(params.gamma >= 0.0))
        throw std::domain_error("gamma must be >= 0");
    if (!(params.f0 >= 0.25 && params.f0 <= 1.0))
        throw std::domain_error("f0 must be in [0.25, 1]");

    const double beta = params.beta, delta = params.delta, mu = params.mu;
    EffectiveError e;

    // Stage 1 - the stored half-pair sat in memory since the previous
    // connection, so its encoding/purification residue (beta/4 bit,
    // beta/2 phase) is joined by mu split evenly between the two error
    // types. The half-pair consumed to extend the chain is fresh.
    e.stored_bit = beta / 4 + mu / 2;
    e.stored_phase = beta / 2 + mu / 2;
    e.fresh_bit = beta / 4;
    e.fresh_phase = beta / 2;

    // Stage 2 - one round of transversal two-qubit gates touches every
    // qubit once; gate error splits 1/2 bit on the control side and 1/4
    // phase (the symmetric split is applied per role below).
    e.gate_bit = beta / 2;
    e.gate_phase = beta / 4;

    // Stage 3 - connection + verification. The control qubit keeps its
    // stored bit error and picks up half a gate error; its phase error
    // collects both halves plus two gate phase contributions and the
    // measurement. The target mirrors with bit <-> phase swapped.
    bool sat = false;
    e.control_bit = cap(e.stored_bit + beta / 2, sat);
    e.control_phase =
        cap(e.stored_phase + e.fresh_phase + 2 * e.gate_phase + beta + delta, sat);
    e.target_bit =
        cap(e.stored_bit + e.fresh_bit + 2 * e.gate_bit + beta + delta, sat);
    e.target_phase = cap(e.stored_phase + beta / 2, sat);

    // Readout totals: the Z-type (bit) check sees both qubits' bit errors
    // plus half a gate error and one measurement; X-type mirrors.
    e.q_b = cap(e.control_bit + e.target_bit + beta / 2 + delta, sat);
    e.q_p = cap(e.control_phase + e.target_phase + beta / 2 + delta, sat);
    e.q = cap(std::max(e.q_b, e.q_p), sat);
    e.saturated = sat;
    return e;
}

double memory_error_prob(double gamma, double tau) {
    if (!(gamma >= 0.0)) throw std::domain_error("gamma must be >= 0");
    if (!(tau >= 0.0)) throw std::domain_error("tau must be >= 0");
    return -std::expm1(-gamma * tau);
}

}  // namespace qrep
