#include "qrep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qrep/chain.hpp"
#include "qrep/codes.hpp"
#include "qrep/errors.hpp"
#include "qrep/mcsim.hpp"
#include "qrep/purification.hpp"

namespace qrep {
namespace {

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

std::string trim(std::string_view s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string_view::npos) return {};
    size_t b = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(std::stod(item));
    return out;
}

std::vector<long> parse_int_list(const std::string& text) {
    std::vector<long> out;
    for (const auto& item : split_list(text)) out.push_back(std::stol(item));
    return out;
}

}  // namespace

std::string RunConfig::get_str(const std::string& key, const std::string& def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : it->second;
}

double RunConfig::get_double(const std::string& key, double def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    try {
        size_t pos = 0;
        double v = std::stod(it->second, &pos);
        if (trim(it->second.substr(pos)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("bad numeric value for '" + key + "': " + it->second);
}

long long RunConfig::get_int(const std::string& key, long long def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    try {
        size_t pos = 0;
        long long v = std::stoll(it->second, &pos);
        if (trim(it->second.substr(pos)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("bad integer value for '" + key + "': " + it->second);
}

bool RunConfig::get_bool(const std::string& key, bool def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    std::string v = it->second;
    std::transform(v.begin(), v.end(), v.begin(), ::tolower);
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw std::invalid_argument("bad boolean value for '" + key + "': " + it->second);
}

RunConfig parse_config_text(std::string_view text) {
    RunConfig cfg;
    size_t start = 0;
    int lineno = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line = trim(text.substr(start, end - start));
        start = end + 1;
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " has no '=': " + line);
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string val = trim(std::string_view(line).substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " has an empty key");
        cfg.set(key, val);
    }
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    for (const auto& [k, v] : cfg.entries()) out += k + " = " + v + "\n";
    return out;
}

CommandResult cmd_table1(const RunConfig& cfg) {
    const double q = cfg.get_double("q", 3e-3);
    const double f_star = cfg.get_double("f_star", 0.95);
    const double l0 = cfg.get_double("l0_km", 10.0);
    std::string csv = "name,n,k,t,qubits_per_station,L_star,distance_km\n";
    for (const auto& row : table1_report(q, f_star, l0)) {
        const CssCodeSpec& code = build_code(row.code);
        csv += row.code + ',' + std::to_string(code.n) + ',' +
               std::to_string(code.k) + ',' + std::to_string(code.t) + ',' +
               std::to_string(row.resource_total) + ',' + sci(row.l_star) + ',' +
               sci(row.distance_km) + '\n';
    }
    return {{{"table1", std::move(csv)}}, 0};
}

CommandResult cmd_lstar_sweep(const RunConfig& cfg) {
    const double q_min = cfg.get_double("q_min", 1e-4);
    const double q_max = cfg.get_double("q_max", 1e-1);
    const long long steps = cfg.get_int("q_steps", 60);
    const double f_star = cfg.get_double("f_star", 0.95);
    if (!(q_min > 0) || !(q_max > q_min)) throw std::invalid_argument("need 0 < q_min < q_max");
    if (steps < 2) throw std::invalid_argument("q_steps must be >= 2");

    std::vector<std::string> codes = registered_code_names();
    if (cfg.has("codes")) codes = split_list(cfg.get_str("codes", ""));
    if (codes.empty()) throw std::invalid_argument("empty code list");

    std::string csv = "code,q,Q,L_star\n";
    const double lmin = std::log(q_min), lmax = std::log(q_max);
    for (const auto& name : codes) {
        const CssCodeSpec& code = build_code(name);
        for (long long i = 0; i < steps; ++i) {
            double q = std::exp(lmin + (lmax - lmin) * static_cast<double>(i) /
                                           static_cast<double>(steps - 1));
            double Q = logical_error_prob(code.n, code.t, q);
            // Q at 1 kills the chain outright; Q at 0 prints the inf sentinel
            double ls = (Q < 1.0) ? max_connections(Q, f_star) : 0.0;
            csv += name + ',' + sci(q) + ',' + sci(Q) + ',' + sci(ls) + '\n';
        }
    }
    return {{{"lstar", std::move(csv)}}, 0};
}

CommandResult cmd_pfail(const RunConfig& cfg) {
    const std::vector<long> ns = parse_int_list(cfg.get_str("n_list", "7,23"));
    const long long levels = cfg.get_int("levels", 3);
    const double f0 = cfg.get_double("f0", 0.95);
    const double beta = cfg.get_double("beta", 1e-3);
    const double delta = cfg.get_double("delta", 1e-3);
    const long long max_over_n = cfg.get_int("n0_max_over_n", 24);
    if (ns.empty()) throw std::invalid_argument("empty n list");
    for (long n : ns)
        if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (levels < 0) throw std::invalid_argument("levels must be >= 0");

    const PurifyLadder ladder =
        purify_levels(f0, beta, delta, static_cast<int>(levels));
    const std::vector<double>& r = ladder.success_probs;

    std::string curve = "n,N0,P_fail\n";
    for (long n : ns) {
        const long n0_min = n << levels;
        const long n0_max = static_cast<long>(max_over_n) * n;
        for (long n0 = n0_min; n0 <= n0_max; ++n0)
            curve += std::to_string(n) + ',' + std::to_string(n0) + ',' +
                     sci(failure_probability(n0, n, r, static_cast<int>(levels))) +
                     '\n';
    }

    const std::vector<double> targets =
        parse_double_list(cfg.get_str("p_targets", "1e-3,1e-5,1e-7,1e-9"));
    std::string req = "n,p_target,N0,N0_over_n\n";
    for (long n : ns)
        for (double pt : targets) {
            auto need = required_pairs(n, r, static_cast<int>(levels), pt);
            req += std::to_string(n) + ',' + sci(pt) + ',';
            if (need)
                req += std::to_string(*need) + ',' +
                       sci(static_cast<double>(*need) / static_cast<double>(n));
            else
                req += "unreachable,inf";
            req += '\n';
        }
    return {{{"pfail_curve", std::move(curve)}, {"required_pairs", std::move(req)}}, 0};
}

CommandResult cmd_simulate(const RunConfig& cfg) {
    ErrorParams ep;
    ep.beta = cfg.get_double("beta", 1e-3);
    ep.delta = cfg.get_double("delta", 1e-3);
    ep.mu = cfg.get_double("mu", 0.0);
    const EffectiveError eff = effective_error_probabilities(ep);

    ChainConfig sim;
    sim.code = cfg.get_str("code", "repetition-3");
    const CssCodeSpec& code = build_code(sim.code);
    sim.stations = static_cast<int>(cfg.get_int("stations", 5));
    sim.q_b = cfg.get_double("q_b", eff.q_b);
    sim.q_p = cfg.get_double("q_p", eff.q_p);
    sim.trials = static_cast<std::uint64_t>(cfg.get_int("trials", 100000));
    sim.master_seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
    sim.single_species = cfg.get_bool("single_species", code.single_error_type);
    sim.threads = static_cast<int>(cfg.get_int("threads", 0));

    const SimOutcome out = simulate_chain(sim);

    // analytic expectations mirror the simulator's species plan
    const int tz = code.correctable(Basis::Z), tx = code.correctable(Basis::X);
    const double Qz = logical_error_prob(code.n, tz, sim.q_b);
    const double Qx = sim.single_species ? Qz
                                         : logical_error_prob(code.n, tx, sim.q_p);
    const int L = sim.stations;
    const double exp_ef = std::pow(1.0 - Qx, L - 1) * std::pow(1.0 - Qz, L - 1);
    const double exp_x = std::pow(1.0 - Qx, L);
    const double exp_z = std::pow(1.0 - Qz, L);

    const double z_ef = z_score(out.error_free, out.trials, exp_ef);
    const double z_x = z_score(out.x_chain_ok, out.trials, exp_x);
    const double z_z = z_score(out.z_chain_ok, out.trials, exp_z);

    std::string csv = "metric,hits,trials,empirical,expected,z\n";
    auto row = [&](const char* name, std::uint64_t hits, double emp, double want,
                   double z) {
        csv += std::string(name) + ',' + std::to_string(hits) + ',' +
               std::to_string(out.trials) + ',' + sci(emp) + ',' + sci(want) + ',' +
               sci(z) + '\n';
    };
    row("error_free", out.error_free, out.logical_error_free_fraction(), exp_ef, z_ef);
    row("x_chain_ok", out.x_chain_ok, out.x_chain_correct_fraction(), exp_x, z_x);
    row("z_chain_ok", out.z_chain_ok, out.z_chain_correct_fraction(), exp_z, z_z);

    // per-station logical error counts against the per-readout expectation
    std::string st = "station,species,errors,trials,empirical,expected\n";
    for (int s = 0; s < L; ++s)
        for (int sp = 0; sp < 2; ++sp) {
            double expect = (sp == 0 && !sim.single_species) ? Qx : Qz;
            st += std::to_string(s) + ',' + (sp == 0 ? "x" : "z") + ',' +
                  std::to_string(out.station_flags[s][sp]) + ',' +
                  std::to_string(out.trials) + ',' +
                  sci(static_cast<double>(out.station_flags[s][sp]) /
                      static_cast<double>(out.trials)) +
                  ',' + sci(expect) + '\n';
        }

    const bool drift = std::abs(z_ef) > 4.0 || std::abs(z_x) > 4.0 || std::abs(z_z) > 4.0;
    return {{{"simulate", std::move(csv)}, {"stations", std::move(st)}}, drift ? 2 : 0};
}

CommandResult cmd_rate(const RunConfig& cfg) {
    const std::string code_name = cfg.get_str("code", "hamming-7");
    const CssCodeSpec& code = build_code(code_name);
    const long long levels = cfg.get_int("levels", 3);
    const double f0 = cfg.get_double("f0", 0.95);
    const double beta = cfg.get_double("beta", 1e-3);
    const double delta = cfg.get_double("delta", 1e-3);
    const double p_target = cfg.get_double("p_target", 1e-5);
    const long long stations = cfg.get_int("stations", 16);
    if (levels < 0) throw std::invalid_argument("levels must be >= 0");
    if (stations < 2) throw std::invalid_argument("stations must be >= 2");

    LinkParams link;
    link.l0_km = cfg.get_double("l0_km", 10.0);
    link.l_att_km = cfg.get_double("l_att_km", 20.0);
    link.v_km_s = cfg.get_double("v_km_s", 2e5);
    link.eta = cfg.get_double("eta", 0.3);
    link.n_eng = 4 * code.n;  // four generator banks per encoded block

    std::string lv = "level,success_prob,fidelity\n";
    const PurifyLadder ladder =
        purify_levels(f0, beta, delta, static_cast<int>(levels));
    for (long long k = 1; k <= levels; ++k)
        lv += std::to_string(k) + ',' + sci(ladder.success_probs[k - 1]) + ',' +
              sci(ladder.states[k].fidelity()) + '\n';

    // encoded-cycle throughput is distance-independent; the classical
    // round-trip signalling rate of an equal-length chain gives the scale
    const double classical_hz =
        link.v_km_s / (link.l0_km * static_cast<double>(stations));
    auto n0 = required_pairs(code.n, ladder.success_probs,
                             static_cast<int>(levels), p_target);
    std::string csv =
        "code,n,levels,f_final,p_target,N0,kappa,gen_rate_hz,tau_c_s,raw_hz,"
        "sifted_hz,stations,classical_ref_hz\n";
    csv += code_name + ',' + std::to_string(code.n) + ',' + std::to_string(levels) +
           ',' + sci(ladder.states.back().fidelity()) + ',' + sci(p_target) + ',';
    if (!n0) {
        csv += "unreachable,,,,,," + std::to_string(stations) + ',' +
               sci(classical_hz) + '\n';
        return {{{"rate", std::move(csv)}, {"levels", std::move(lv)}}, 0};
    }
    CycleTime cyc = cycle_time(link, *n0);
    KeyRate kr = key_rate(cyc.tau_c_s);
    csv += std::to_string(*n0) + ',' + sci(cyc.kappa) + ',' +
           sci(generation_rate(link)) + ',' + sci(cyc.tau_c_s) + ',' + sci(kr.raw_hz) +
           ',' + sci(kr.sifted_hz) + ',' + std::to_string(stations) + ',' +
           sci(classical_hz) + '\n';
    return {{{"rate", std::move(csv)}, {"levels", std::move(lv)}}, 0};
}

}  // namespace qrep
