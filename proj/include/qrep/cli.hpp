#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qrep {

/// String key/value run configuration. Typed getters fall back to the
/// given default when the key is absent and throw std::invalid_argument
/// when a present value fails to parse.
class RunConfig {
  public:
    void set(const std::string& key, std::string value) { kv_[key] = std::move(value); }
    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    std::string get_str(const std::string& key, const std::string& def) const;
    double get_double(const std::string& key, double def) const;
    long long get_int(const std::string& key, long long def) const;
    bool get_bool(const std::string& key, bool def) const;
    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

/// Parse `key = value` lines; blank lines and '#' comments are skipped.
RunConfig parse_config_text(std::string_view text);

/// Emit the configuration as config-file text; parse_config_text round-trips it.
std::string serialize_config(const RunConfig& cfg);

struct NamedTable {
    std::string name;
    std::string csv;
};

struct CommandResult {
    std::vector<NamedTable> tables;
    int exit_code = 0;  // 0 ok; 2: sampled results drifted past the gate
};

/// Station-budget table over every registered code at one flip rate:
/// name, block parameters, qubits per station, station budget, distance.
/// Keys: q, f_star, l0_km.
CommandResult cmd_table1(const RunConfig& cfg);

/// Station budget against flip rate on a log grid, per code.
/// Keys: codes (comma list, default all), q_min, q_max, q_steps, f_star.
CommandResult cmd_lstar_sweep(const RunConfig& cfg);

/// Restocking-failure curves and required-pool table per block size.
/// Keys: n_list (comma list), levels, f0, beta, delta, n0_max_over_n,
/// p_targets (comma list).
CommandResult cmd_pfail(const RunConfig& cfg);

/// Monte Carlo chain run cross-checked against the analytic expectation;
/// exit code 2 when any aggregate drifts past |z| = 4.
/// Keys: code, stations, trials, seed, threads, q_b, q_p, single_species,
/// beta, delta, mu (defaults for the rates).
CommandResult cmd_simulate(const RunConfig& cfg);

/// Pair-pool sizing and key-rate summary for one code, with the classical
/// round-trip signalling rate of an equal-length chain for comparison.
/// Keys: code, levels, f0, beta, delta, p_target, l0_km, l_att_km, v_km_s,
/// eta, stations.
CommandResult cmd_rate(const RunConfig& cfg);

}  // namespace qrep
