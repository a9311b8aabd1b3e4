#include "qrep/purification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrep {
namespace {

constexpr double kDropBelow = 1e-15;  // sparse-entry truncation threshold
constexpr long kScanCap = 1L << 16;   // required_pairs search ceiling

void check_state(const BellDiagState& s) {
    const double parts[4] = {s.phi_plus, s.psi_plus, s.psi_minus, s.phi_minus};
    double sum = 0;
    for (double p : parts) {
        if (p < -1e-12) throw std::domain_error("Bell coefficients must be >= 0");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::domain_error("Bell coefficients must sum to 1");
}

void check_link(const LinkParams& link) {
    if (!(link.l0_km > 0 && link.l_att_km > 0 && link.v_km_s > 0))
        throw std::domain_error("link lengths and velocity must be positive");
    if (!(link.eta > 0 && link.eta <= 1))
        throw std::domain_error("eta must lie in (0, 1]");
    if (link.n_eng < 1)
        throw std::domain_error("generation qubits must be >= 1");
}

// Thin a spread-out binomial: given j candidates each surviving with
// probability r, add Binomial(j, r) weighted by w into `into`. Terms are
// generated outward from the mode with the multiplicative recurrence so the
// anchor never underflows even when (1-r)^j would.
void thin_binomial(long j, double r, double w, std::map<long, double>& into) {
    if (j == 0 || r == 0.0) {
        into[0] += w;
        return;
    }
    if (r == 1.0) {
        into[j] += w;
        return;
    }
    const long mode = std::min<long>(j, static_cast<long>((j + 1) * r));
    const double log_mode = std::lgamma(j + 1.0) - std::lgamma(mode + 1.0) -
                            std::lgamma(j - mode + 1.0) + mode * std::log(r) +
                            (j - mode) * std::log1p(-r);
    const double pm = std::exp(log_mode);
    const double cut = 1e-21;
    double p = pm;
    for (long m = mode; m >= 0; --m) {  // walk down from the mode
        into[m] += w * p;
        if (m > 0) {
            p *= (m * (1.0 - r)) / ((j - m + 1.0) * r);
            if (p < cut) break;
        }
    }
    p = pm;
    for (long m = mode; m < j; ++m) {  // walk up from the mode
        p *= ((j - m) * r) / ((m + 1.0) * (1.0 - r));
        if (p < cut) break;
        into[m + 1] += w * p;
    }
}

}  // namespace

BellDiagState depolarized_state(double f0) {
    if (!(f0 >= 0.0 && f0 <= 1.0))
        throw std::domain_error("fidelity must lie in [0, 1]");
    const double rest = (1.0 - f0) / 3.0;
    return {f0, rest, rest, rest};
}

PurifyResult purify_step(const BellDiagState& state, double beta, double delta) {
    check_state(state);
    if (!(beta >= 0.0 && beta <= 1.0) || !(delta >= 0.0 && delta <= 1.0))
        throw std::domain_error("beta and delta must lie in [0, 1]");

    // Index Bell components by (bit, phase) discrepancy:
    // Phi+=(0,0), Psi+=(1,0), Psi-=(1,1), Phi-=(0,1).
    const double p00 = state.phi_plus, p10 = state.psi_plus;
    const double p11 = state.psi_minus, p01 = state.phi_minus;

    // Ideal bilateral CNOT on two copies, keeping the coincidence branch:
    // source bit index stays, target bit index is measured; phases add onto
    // the source. Collected per output label with the kept branch summed
    // over agreeing target readouts.
    double eq[2][2];   // output label when the two inputs carry equal bits
    eq[0][0] = p00 * p00 + p01 * p01;
    eq[0][1] = 2 * p00 * p01;
    eq[1][0] = p10 * p10 + p11 * p11;
    eq[1][1] = 2 * p10 * p11;
    double neq_same = p00 * p10 + p01 * p11;  // phases agree
    double neq_diff = p00 * p11 + p01 * p10;  // phases differ

    // Readout errors: each of the two measured bits flips with delta, a
    // coincidence survives a double flip. The equal-bit branch passes and
    // the unequal-bit branch leaks in with weight 2 delta (1 - delta).
    const double d2 = 2.0 * delta * (1.0 - delta);
    double out[2][2];
    out[0][0] = (1 - d2) * eq[0][0] + d2 * neq_same;
    out[0][1] = (1 - d2) * eq[0][1] + d2 * neq_diff;
    out[1][0] = (1 - d2) * eq[1][0] + d2 * neq_same;
    out[1][1] = (1 - d2) * eq[1][1] + d2 * neq_diff;

    // Two-qubit depolarizing channels (one per bilateral CNOT side, total
    // weight lambda = (1-beta)^2 of clean operation) mix toward the
    // maximally mixed two-qubit state, of which the kept parity branch
    // carries half: each Bell label receives (1 - lambda)/8.
    const double lambda = (1.0 - beta) * (1.0 - beta);
    double r = 0;
    for (auto& row : out)
        for (double& v : row) {
            v = lambda * v + (1.0 - lambda) / 8.0;
            r += v;
        }

    PurifyResult res;
    res.success_prob = r;
    // Symmetrizing twirl: swap the two phase-error components so the next
    // round sees the canonical ordering (bit index, then phase index).
    res.state = {out[0][0] / r, out[1][0] / r, out[0][1] / r, out[1][1] / r};
    return res;
}

PurifyLadder purify_levels(double f0, double beta, double delta, int levels) {
    if (levels < 0) throw std::domain_error("levels must be >= 0");
    PurifyLadder ladder;
    BellDiagState s = depolarized_state(f0);
    ladder.states.push_back(s);
    for (int i = 0; i < levels; ++i) {
        PurifyResult step = purify_step(s, beta, delta);
        ladder.success_probs.push_back(step.success_prob);
        s = step.state;
        ladder.states.push_back(s);
    }
    return ladder;
}

NumberDist number_distribution(long n0, const std::vector<double>& r,
                               int levels) {
    if (levels < 0) throw std::domain_error("levels must be >= 0");
    if (n0 < 0) throw std::domain_error("initial pair count must be >= 0");
    if (static_cast<int>(r.size()) != levels)
        throw std::invalid_argument("need exactly one success probability per level");
    for (double ri : r)
        if (!(ri >= 0.0 && ri <= 1.0))
            throw std::domain_error("success probabilities must lie in [0, 1]");

    NumberDist dist;
    dist.probs[n0] = 1.0;
    for (int lvl = 0; lvl < levels; ++lvl) {
        // pair up: m -> floor(m/2) candidates, then thin by r[lvl]
        std::map<long, double> paired;
        for (const auto& [m, p] : dist.probs) paired[m / 2] += p;
        std::map<long, double> next;
        for (const auto& [j, p] : paired) thin_binomial(j, r[lvl], p, next);
        dist.probs.clear();
        for (const auto& [m, p] : next) {
            if (p < kDropBelow)
                dist.truncated_mass += p;
            else
                dist.probs[m] = p;
        }
        dist.level = lvl + 1;
    }
    return dist;
}

double failure_probability(long n0, long n, const std::vector<double>& r,
                           int levels) {
    if (n < 0) throw std::domain_error("required pair count must be >= 0");
    const NumberDist dist = number_distribution(n0, r, levels);
    double fail = 0;
    for (const auto& [m, p] : dist.probs)
        if (m < n) fail += p;
    return std::min(fail, 1.0);
}

std::optional<long> required_pairs(long n, const std::vector<double>& r,
                                   int levels, double p_target) {
    if (!(p_target > 0.0 && p_target < 1.0))
        throw std::domain_error("failure target must lie in (0, 1)");
    if (n < 1) throw std::domain_error("required pair count must be >= 1");
    for (double ri : r)
        if (ri == 0.0) return std::nullopt;  // a dead level never yields pairs

    // P_fail is nonincreasing in n0; scan up from the smallest count that
    // can possibly leave n pairs after halving `levels` times.
    long lo = n << levels;
    for (long n0 = lo; n0 <= kScanCap; ++n0)
        if (failure_probability(n0, n, r, levels) <= p_target) return n0;
    return std::nullopt;
}

double generation_rate(const LinkParams& link) {
    check_link(link);
    return (link.v_km_s / link.l0_km) * link.eta * link.eta *
           std::exp(-link.l0_km / link.l_att_km) * link.n_eng;
}

CycleTime cycle_time(const LinkParams& link, long n0) {
    if (n0 < 1) throw std::domain_error("pair count must be >= 1");
    const double rate = generation_rate(link);
    CycleTime c;
    c.tau_c_s = 2.0 * n0 / rate;
    c.kappa = 2.0 * n0 / link.n_eng;
    return c;
}

KeyRate key_rate(double tau_c_s) {
    if (!(tau_c_s > 0.0)) throw std::domain_error("cycle time must be positive");
    return {1.0 / tau_c_s, 0.5 / tau_c_s};
}

}  // namespace qrep
