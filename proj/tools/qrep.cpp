#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qrep/cli.hpp"

namespace {

struct Front {
    std::string config_path;
    std::string out_path;
    bool to_stdout = false;
    qrep::RunConfig flags;  // command-line overrides, applied last
};

// register a key-forwarding option: --name VALUE lands in cfg as key=value
void add_opt(CLI::App* sub, Front& front, const std::string& flag,
             const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>(
           "--" + flag,
           [&front, key](const std::string& v) { front.flags.set(key, v); }, help)
        ->type_name("VALUE");
}

void add_switch(CLI::App* sub, Front& front, const std::string& flag,
                const std::string& key, const std::string& help) {
    sub->add_flag_callback(
        "--" + flag, [&front, key]() { front.flags.set(key, "true"); }, help);
}

qrep::RunConfig merged_config(const Front& front) {
    qrep::RunConfig cfg;
    if (!front.config_path.empty()) {
        std::ifstream in(front.config_path);
        if (!in) throw std::invalid_argument("cannot open config file: " + front.config_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        cfg = qrep::parse_config_text(buf.str());
    }
    for (const auto& [k, v] : front.flags.entries()) cfg.set(k, v);
    return cfg;
}

int emit(const qrep::CommandResult& result, const Front& front) {
    std::string text;
    for (const auto& table : result.tables) {
        if (result.tables.size() > 1) text += "# table: " + table.name + "\n";
        text += table.csv;
    }
    if (!front.out_path.empty()) {
        std::ofstream out(front.out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output file: " + front.out_path);
        out << text;
        std::fprintf(stderr, "wrote %s\n", front.out_path.c_str());
        if (front.to_stdout) std::fputs(text.c_str(), stdout);
    } else {
        std::fputs(text.c_str(), stdout);
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"encoded repeater chain models: tables, sweeps, sampling"};
    app.require_subcommand(1);

    Front front;
    app.add_option("--config", front.config_path, "key=value parameter file")
        ->type_name("PATH");
    app.add_option("--out", front.out_path, "write CSV here instead of stdout")
        ->type_name("PATH");
    app.add_flag("--stdout", front.to_stdout, "echo CSV to stdout even with --out");
    app.add_option_function<std::string>(
           "--seed", [&front](const std::string& v) { front.flags.set("seed", v); },
           "sampling seed (simulate)")
        ->type_name("U64");

    using Runner = std::function<qrep::CommandResult(const qrep::RunConfig&)>;
    std::vector<std::pair<CLI::App*, Runner>> dispatch;

    CLI::App* table1 = app.add_subcommand(
        "table1", "station budget and distance for every registered code");
    add_opt(table1, front, "q", "q", "per-qubit output error rate");
    add_opt(table1, front, "f-star", "f_star", "end-to-end fidelity target");
    add_opt(table1, front, "l0-km", "l0_km", "station spacing, km");
    dispatch.push_back({table1, qrep::cmd_table1});

    CLI::App* lstar = app.add_subcommand(
        "lstar", "station budget against error rate on a log grid");
    add_opt(lstar, front, "codes", "codes", "comma-separated code names");
    add_opt(lstar, front, "q-min", "q_min", "grid start");
    add_opt(lstar, front, "q-max", "q_max", "grid end");
    add_opt(lstar, front, "q-steps", "q_steps", "grid points");
    add_opt(lstar, front, "f-star", "f_star", "end-to-end fidelity target");
    dispatch.push_back({lstar, qrep::cmd_lstar_sweep});

    CLI::App* pfail = app.add_subcommand(
        "pfail", "restocking failure probability against initial pair count");
    add_opt(pfail, front, "n-list", "n_list", "pairs needed, comma separated");
    add_opt(pfail, front, "levels", "levels", "purification levels");
    add_opt(pfail, front, "f0", "f0", "raw pair fidelity");
    add_opt(pfail, front, "beta", "beta", "gate error rate");
    add_opt(pfail, front, "delta", "delta", "measurement error rate");
    add_opt(pfail, front, "n0-max-over-n", "n0_max_over_n", "sweep end, units of n");
    add_opt(pfail, front, "p-targets", "p_targets", "failure targets, comma separated");
    dispatch.push_back({pfail, qrep::cmd_pfail});

    CLI::App* simulate = app.add_subcommand(
        "simulate", "sample the encoded chain and compare with the closed form");
    add_opt(simulate, front, "code", "code", "registered code name");
    add_opt(simulate, front, "stations", "stations", "chain length");
    add_opt(simulate, front, "trials", "trials", "sample count");
    add_opt(simulate, front, "threads", "threads", "worker threads (0 = all)");
    add_opt(simulate, front, "q-b", "q_b", "bit-flip rate per Z readout");
    add_opt(simulate, front, "q-p", "q_p", "phase rate per X readout");
    add_opt(simulate, front, "beta", "beta", "gate error rate (sets defaults)");
    add_opt(simulate, front, "delta", "delta", "measurement error rate");
    add_opt(simulate, front, "mu", "mu", "memory error per cycle");
    add_switch(simulate, front, "single-species", "single_species",
               "decode both blocks as bit-type");
    dispatch.push_back({simulate, qrep::cmd_simulate});

    CLI::App* rate = app.add_subcommand(
        "rate", "pair-pool sizing, cycle time and key rate for one code");
    add_opt(rate, front, "code", "code", "registered code name");
    add_opt(rate, front, "levels", "levels", "purification levels");
    add_opt(rate, front, "f0", "f0", "raw pair fidelity");
    add_opt(rate, front, "beta", "beta", "gate error rate");
    add_opt(rate, front, "delta", "delta", "measurement error rate");
    add_opt(rate, front, "p-target", "p_target", "restocking failure target");
    add_opt(rate, front, "l0-km", "l0_km", "station spacing, km");
    add_opt(rate, front, "l-att-km", "l_att_km", "fiber attenuation length, km");
    add_opt(rate, front, "v-km-s", "v_km_s", "signal velocity, km/s");
    add_opt(rate, front, "eta", "eta", "collection/detection efficiency");
    add_opt(rate, front, "stations", "stations", "chain length for the reference rate");
    dispatch.push_back({rate, qrep::cmd_rate});

    // common flags (--config/--out/--stdout/--seed) live on the top-level
    // app; let them be written after the subcommand name as well
    for (auto& [sub, runner] : dispatch) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems exit 1; --help exits 0
    }

    try {
        const qrep::RunConfig cfg = merged_config(front);
        for (const auto& [sub, runner] : dispatch)
            if (sub->parsed()) return emit(runner(cfg), front);
        std::fputs("no subcommand selected\n", stderr);
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
