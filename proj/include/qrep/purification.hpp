#pragma once

#include <map>
#include <optional>
#include <vector>

namespace qrep {

/// Bell-diagonal two-qubit state: probabilities of the four Bell
/// components. Fidelity of the pair is the Phi+ weight.
struct BellDiagState {
    double phi_plus = 1;   // A
    double psi_plus = 0;   // B
    double psi_minus = 0;  // C
    double phi_minus = 0;  // D
    double fidelity() const { return phi_plus; }
};

/// Depolarized pair of fidelity f0: the infidelity spread evenly over the
/// three orthogonal components.
BellDiagState depolarized_state(double f0);

struct PurifyResult {
    double success_prob = 0;  // probability the parity check keeps the pair
    BellDiagState state;      // renormalized surviving state
};

/// One round of recurrence purification: two identical copies, bilateral
/// CNOT, keep on matching Z-readouts, then a symmetrizing twirl. Each
/// bilateral CNOT carries a two-qubit depolarizing error of probability
/// beta per side; each of the two measured bits flips with probability
/// delta. Throws std::domain_error on a non-normalized input.
PurifyResult purify_step(const BellDiagState& state, double beta, double delta);

struct PurifyLadder {
    std::vector<double> success_probs;  // r_i per level
    std::vector<BellDiagState> states;  // state after each level
};

/// Iterate purify_step `levels` times from a depolarized f0 pair.
PurifyLadder purify_levels(double f0, double beta, double delta, int levels);

/// Distribution of the number of surviving pairs after `level` rounds of
/// pair-up-and-purify, stored sparsely (count -> probability). Entries
/// below 1e-15 are dropped into truncated_mass; no renormalization.
struct NumberDist {
    int level = 0;
    std::map<long, double> probs;
    double truncated_mass = 0;
};

/// Evolve the pair-count distribution from the deterministic start (n0
/// pairs at level 0) through `levels` rounds: counts pair up (m -> floor
/// m/2) and each candidate pair survives independently with the level's
/// success probability. Requires one success probability per level.
NumberDist number_distribution(long n0, const std::vector<double>& r, int levels);

/// Probability fewer than `n` pairs survive `levels` rounds starting from
/// n0: sum of the final distribution below n.
double failure_probability(long n0, long n, const std::vector<double>& r,
                           int levels);

/// Smallest n0 whose failure probability is <= p_target, or std::nullopt
/// when the target is unreachable (some level never succeeds, or no count
/// up to the internal scan cap of 2^16 reaches it).
std::optional<long> required_pairs(long n, const std::vector<double>& r,
                                   int levels, double p_target);

/// Elementary-link budget for entanglement generation between neighbors.
struct LinkParams {
    double l0_km = 10.0;     // station spacing
    double l_att_km = 20.0;  // fiber attenuation length
    double v_km_s = 2.0e5;   // signal velocity in fiber
    double eta = 0.3;        // collection/detection efficiency
    int n_eng = 4;           // qubits devoted to generation per station
};

/// Unpurified-pair generation rate R = (v/l0) eta^2 exp(-l0/l_att) n_eng.
double generation_rate(const LinkParams& link);

struct CycleTime {
    double tau_c_s = 0;  // full measurement cycle, two generation rounds
    double kappa = 0;    // 2 n0 / n_eng, the dimensionless overhead
};

/// Cycle time to accumulate n0 raw pairs twice over: tau_c = 2 n0 / R.
CycleTime cycle_time(const LinkParams& link, long n0);

struct KeyRate {
    double raw_hz = 0;     // 1 / tau_c
    double sifted_hz = 0;  // basis agreement halves the raw rate
};

/// Secret-bit throughput of a chain cycling every tau_c seconds; the rate
/// carries no dependence on chain length.
KeyRate key_rate(double tau_c_s);

}  // namespace qrep
