#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace qrep {

/// One sampled repeater chain: `stations` stations, the inner ones each
/// measuring an X-basis and a Z-basis block, the two end stations decoding
/// their halves once per basis.
struct ChainConfig {
    std::string code = "none";
    int stations = 3;        // chain length, endpoints included; >= 3
    double q_b = 0;          // flip rate per Z-basis readout bit
    double q_p = 0;          // flip rate per X-basis readout bit
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 1;
    bool single_species = false;  // repetition operation: decode both blocks
                                  // as bit-type at q_b
    int threads = 0;              // 0: one worker per hardware thread
};

struct SimOutcome {
    std::uint64_t trials = 0;
    std::uint64_t error_free = 0;  // no decode slot that feeds the state flipped
    std::uint64_t x_chain_ok = 0;  // X-basis end-to-end parity intact
    std::uint64_t z_chain_ok = 0;
    // per-station logical-error counts, [station][0] = X block, [1] = Z block
    std::vector<std::array<std::uint64_t, 2>> station_flags;

    double logical_error_free_fraction() const {
        return trials ? double(error_free) / double(trials) : 0.0;
    }
    double x_chain_correct_fraction() const {
        return trials ? double(x_chain_ok) / double(trials) : 0.0;
    }
    double z_chain_correct_fraction() const {
        return trials ? double(z_chain_ok) / double(trials) : 0.0;
    }
    double std_err(double p) const {
        return trials ? std::sqrt(p * (1.0 - p) / double(trials)) : 0.0;
    }
    double logical_error_free_se() const {
        return std_err(logical_error_free_fraction());
    }
    double x_chain_correct_se() const {
        return std_err(x_chain_correct_fraction());
    }
    double z_chain_correct_se() const {
        return std_err(z_chain_correct_fraction());
    }
};

/// Pauli-frame sample of the full chain. Each (trial, station, species)
/// block draws i.i.d. flips, decodes through the registered decoder, and a
/// block counts as a logical error when the pattern weight exceeds the
/// code's guarantee or the decoder corrects to the wrong logical value.
/// Results are bit-identical for any thread count.
SimOutcome simulate_chain(const ChainConfig& cfg);

struct ExactChainResult {
    double error_free = 0;
    double x_chain_ok = 0;
    double z_chain_ok = 0;
};

/// Brute-force check of the sampler: enumerates the joint flip pattern
/// across every decode slot of the chain (same classification path as
/// simulate_chain) and accumulates exact probabilities. Throws
/// std::length_error when the joint space exceeds 2^30 patterns.
ExactChainResult exact_chain_error(const ChainConfig& cfg);

/// Normal z-score of `hits` successes in `trials` draws against expected
/// success probability p (score test: the spread uses p itself).
double z_score(std::uint64_t hits, std::uint64_t trials, double p);

}  // namespace qrep
