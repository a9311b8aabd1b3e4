#include "qrep/mcsim.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "qrep/codes.hpp"
#include "qrep/rng.hpp"

namespace qrep {
namespace {

struct SpeciesPlan {
    Basis basis = Basis::Z;
    double rate = 0;
    int t = 0;
};

struct ChainPlan {
    const CssCodeSpec* code = nullptr;
    int stations = 0;
    // species 0 = the X-type block, 1 = the Z-type block of each station
    std::array<SpeciesPlan, 2> species;
};

ChainPlan make_plan(const ChainConfig& cfg) {
    const CssCodeSpec& code = build_code(cfg.code);
    if (!code.decodable)
        throw std::runtime_error("code '" + code.name + "' cannot be simulated");
    if (cfg.stations < 3)
        throw std::domain_error("simulated chains need >= 3 stations");
    if (!(cfg.q_b >= 0 && cfg.q_b <= 1) || !(cfg.q_p >= 0 && cfg.q_p <= 1))
        throw std::domain_error("flip rates must lie in [0, 1]");
    ChainPlan plan;
    plan.code = &code;
    plan.stations = cfg.stations;
    if (cfg.single_species) {
        plan.species[0] = {Basis::Z, cfg.q_b, code.correctable(Basis::Z)};
        plan.species[1] = plan.species[0];
    } else {
        plan.species[0] = {Basis::X, cfg.q_p, code.correctable(Basis::X)};
        plan.species[1] = {Basis::Z, cfg.q_b, code.correctable(Basis::Z)};
    }
    return plan;
}

bool block_logical_error(const CssCodeSpec& code, const SpeciesPlan& sp, std::uint32_t word) {
    // the decoder acts on error patterns directly: decoding is linear, so
    // the outcome on codeword + pattern is the outcome on the pattern alone
    WordDecode dec = decode_word(code, sp.basis, word);
    return std::popcount(word) > sp.t || dec.logical != 0 || dec.failed;
}

struct TrialFlags {
    bool ef = false, x = false, z = false;
};

// wiring of one decode slot into the three chain outcomes: inner stations
// feed the state and their basis chain; each end station feeds the state
// through one basis only but both parity chains
void wire(TrialFlags& f, int station, int last, int species, bool err) {
    if (!err) return;
    const bool is_x = (species == 0);
    if (station == 0) {
        if (is_x) f.x = true;
        else { f.z = true; f.ef = true; }
    } else if (station == last) {
        if (is_x) { f.x = true; f.ef = true; }
        else f.z = true;
    } else {
        f.ef = true;
        if (is_x) f.x = true;
        else f.z = true;
    }
}

}  // namespace

SimOutcome simulate_chain(const ChainConfig& cfg) {
    const ChainPlan plan = make_plan(cfg);
    if (cfg.trials < 1) throw std::domain_error("trials must be >= 1");
    if (cfg.threads < 0) throw std::domain_error("threads must be >= 0");

    const int L = plan.stations;
    unsigned workers = cfg.threads ? static_cast<unsigned>(cfg.threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
    if (workers > cfg.trials) workers = static_cast<unsigned>(cfg.trials);

    struct Local {
        std::uint64_t error_free = 0, x_ok = 0, z_ok = 0;
        std::vector<std::array<std::uint64_t, 2>> station_flags;
    };
    std::vector<Local> locals(workers);

    auto run = [&](unsigned w) {
        Local& acc = locals[w];
        acc.station_flags.assign(L, {0, 0});
        for (std::uint64_t trial = w; trial < cfg.trials; trial += workers) {
            TrialFlags f;
            for (int s = 0; s < L; ++s) {
                for (int sp = 0; sp < 2; ++sp) {
                    KeyedStream rng(cfg.master_seed, trial, static_cast<std::uint64_t>(s),
                                    static_cast<std::uint64_t>(sp));
                    std::uint32_t word =
                        sample_error_word(rng, plan.code->n, plan.species[sp].rate);
                    bool err = word && block_logical_error(*plan.code, plan.species[sp], word);
                    acc.station_flags[s][sp] += err;
                    wire(f, s, L - 1, sp, err);
                }
            }
            acc.error_free += !f.ef;
            acc.x_ok += !f.x;
            acc.z_ok += !f.z;
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& th : pool) th.join();

    SimOutcome out;
    out.trials = cfg.trials;
    out.station_flags.assign(L, {0, 0});
    for (const auto& acc : locals) {  // integer merge: order independent
        out.error_free += acc.error_free;
        out.x_chain_ok += acc.x_ok;
        out.z_chain_ok += acc.z_ok;
        for (int s = 0; s < L; ++s) {
            out.station_flags[s][0] += acc.station_flags[s][0];
            out.station_flags[s][1] += acc.station_flags[s][1];
        }
    }
    return out;
}

ExactChainResult exact_chain_error(const ChainConfig& cfg) {
    const ChainPlan plan = make_plan(cfg);
    const int L = plan.stations;
    const int n = plan.code->n;
    const int slots = 2 * L;
    if (static_cast<long long>(n) * slots > 30)
        throw std::length_error("joint pattern space exceeds 2^30");

    // per-species tables over all single-block patterns
    std::array<std::vector<double>, 2> prob;
    std::array<std::vector<std::uint8_t>, 2> err;
    for (int sp = 0; sp < 2; ++sp) {
        const double p = plan.species[sp].rate;
        const std::uint32_t words = 1u << n;
        prob[sp].resize(words);
        err[sp].resize(words);
        for (std::uint32_t w = 0; w < words; ++w) {
            int k = std::popcount(w);
            prob[sp][w] = std::pow(p, k) * std::pow(1.0 - p, n - k);
            err[sp][w] = w && block_logical_error(*plan.code, plan.species[sp], w);
        }
    }

    struct Slot { int station, species; };
    std::vector<Slot> order;
    for (int s = 0; s < L; ++s)
        for (int sp = 0; sp < 2; ++sp) order.push_back({s, sp});

    ExactChainResult res;
    // depth-first product over the joint pattern space, same wiring as the
    // sampler; a fully-flagged prefix contributes to nothing and is pruned
    auto walk = [&](auto&& self, std::size_t idx, double pfx, TrialFlags f) -> void {
        if (f.ef && f.x && f.z) return;
        if (idx == order.size()) {
            if (!f.ef) res.error_free += pfx;
            if (!f.x) res.x_chain_ok += pfx;
            if (!f.z) res.z_chain_ok += pfx;
            return;
        }
        const Slot slot = order[idx];
        const auto& pr = prob[slot.species];
        const auto& er = err[slot.species];
        for (std::uint32_t w = 0; w < pr.size(); ++w) {
            TrialFlags g = f;
            wire(g, slot.station, L - 1, slot.species, er[w] != 0);
            self(self, idx + 1, pfx * pr[w], g);
        }
    };
    walk(walk, 0, 1.0, TrialFlags{});
    return res;
}

double z_score(std::uint64_t hits, std::uint64_t trials, double p) {
    if (trials == 0) throw std::domain_error("z_score needs trials >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p must lie in [0, 1]");
    const double emp = static_cast<double>(hits) / static_cast<double>(trials);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    if (se == 0.0) return (emp == p) ? 0.0 : std::numeric_limits<double>::infinity();
    return (emp - p) / se;
}

}  // namespace qrep
