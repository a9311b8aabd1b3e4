#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrep/cli.hpp"

using namespace qrep;
using doctest::Approx;

namespace {

std::vector<std::string> lines(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) out.push_back(f);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

// first data row whose leading field matches
std::vector<std::string> row_of(const std::string& csv, const std::string& key) {
    for (const auto& line : lines(csv)) {
        auto f = fields(line);
        if (!f.empty() && f[0] == key) return f;
    }
    REQUIRE_MESSAGE(false, "row not found: " << key);
    return {};
}

}  // namespace

TEST_CASE("config text round-trips through serialize and parse") {
    RunConfig cfg;
    cfg.set("q", "3e-3");
    cfg.set("code", "golay-23");
    cfg.set("note", "two words");
    RunConfig back = parse_config_text(serialize_config(cfg));
    CHECK(back.entries() == cfg.entries());
}

TEST_CASE("config parser skips blanks and comments, reports bad lines") {
    RunConfig cfg = parse_config_text("\n# a comment\n  q   =  0.01 \n\ncode=none\n");
    CHECK(cfg.get_double("q", 0) == Approx(0.01));
    CHECK(cfg.get_str("code", "") == "none");
    CHECK_FALSE(cfg.has("comment"));

    try {
        parse_config_text("q = 1\nnot a pair\n");
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("= 5\n"), std::invalid_argument);
}

TEST_CASE("typed getters validate or fall back") {
    RunConfig cfg = parse_config_text(
        "a = 2.5e-3\nb = 42\nc = yes\nd = off\nbad = 1.5x\nworse = abc\n");
    CHECK(cfg.get_double("a", 0) == Approx(2.5e-3));
    CHECK(cfg.get_int("b", 0) == 42);
    CHECK(cfg.get_bool("c", false));
    CHECK_FALSE(cfg.get_bool("d", true));
    CHECK(cfg.get_double("missing", 7.5) == 7.5);
    CHECK(cfg.get_int("missing", -3) == -3);
    CHECK(cfg.get_bool("missing", true));
    CHECK(cfg.get_str("missing", "x") == "x");
    CHECK_THROWS_AS(cfg.get_double("bad", 0), std::invalid_argument);
    CHECK_THROWS_AS(cfg.get_int("a", 0), std::invalid_argument);
    CHECK_THROWS_AS(cfg.get_bool("b", false), std::invalid_argument);
}

TEST_CASE("station-budget table covers the registry in order") {
    CommandResult res = cmd_table1(RunConfig{});
    REQUIRE(res.tables.size() == 1);
    CHECK(res.tables[0].name == "table1");
    auto ls = lines(res.tables[0].csv);
    REQUIRE(ls.size() == 9);
    CHECK(ls[0] == "name,n,k,t,qubits_per_station,L_star,distance_km");
    const char* order[] = {"none",          "repetition-3", "repetition-5",
                           "hamming-7",     "bacon-shor-25", "golay-23",
                           "bch-127",       "qr-103"};
    for (int i = 0; i < 8; ++i) CHECK(fields(ls[i + 1])[0] == order[i]);

    auto hamming = row_of(res.tables[0].csv, "hamming-7");
    CHECK(hamming[1] == "7");
    CHECK(hamming[2] == "1");
    CHECK(hamming[3] == "1");
    CHECK(hamming[4] == "42");

    auto golay = row_of(res.tables[0].csv, "golay-23");
    CHECK(golay[4] == "138");
    const double dist = std::stod(golay[6]);
    CHECK(dist / 3.7e5 > 1.0 / 1.15);
    CHECK(dist / 3.7e5 < 1.15);
}

TEST_CASE("station budget responds to a tighter fidelity floor") {
    RunConfig cfg;
    cfg.set("f_star", "0.999");
    CommandResult res = cmd_table1(cfg);
    auto golay = row_of(res.tables[0].csv, "golay-23");
    CHECK(std::stod(golay[5]) == Approx(730.0).epsilon(0.05));
}

TEST_CASE("budget sweep emits one log-spaced grid per code") {
    CommandResult res = cmd_lstar_sweep(RunConfig{});
    REQUIRE(res.tables.size() == 1);
    auto ls = lines(res.tables[0].csv);
    CHECK(ls[0] == "code,q,Q,L_star");
    CHECK(ls.size() == 1 + 8 * 60);
    CHECK(std::stod(fields(ls[1])[1]) == Approx(1e-4).epsilon(1e-9));
    CHECK(std::stod(fields(ls[60])[1]) == Approx(1e-1).epsilon(1e-9));

    RunConfig one;
    one.set("codes", "golay-23");
    one.set("q_steps", "7");
    auto sub = lines(cmd_lstar_sweep(one).tables[0].csv);
    CHECK(sub.size() == 8);
    for (size_t i = 1; i < sub.size(); ++i) CHECK(fields(sub[i])[0] == "golay-23");

    RunConfig bad;
    bad.set("codes", " , ");
    CHECK_THROWS_AS(cmd_lstar_sweep(bad), std::invalid_argument);
    RunConfig steps;
    steps.set("q_steps", "1");
    CHECK_THROWS_AS(cmd_lstar_sweep(steps), std::invalid_argument);
}

TEST_CASE("restocking command: curves fall, pool sizes match the solver") {
    CommandResult res = cmd_pfail(RunConfig{});
    REQUIRE(res.tables.size() == 2);
    CHECK(res.tables[0].name == "pfail_curve");
    CHECK(res.tables[1].name == "required_pairs");
    auto curve = lines(res.tables[0].csv);
    CHECK(curve[0] == "n,N0,P_fail");
    // default grid: n in {7, 23}, N0 from 8n..24n inclusive
    CHECK(curve.size() == 1 + (24 - 8) * 7 + 1 + (24 - 8) * 23 + 1);
    double prev = 2.0;
    for (const auto& line : curve) {
        auto f = fields(line);
        if (f[0] != "7") continue;
        double pf = std::stod(f[2]);
        CHECK(pf <= prev + 1e-18);  // nonincreasing in the pool size
        prev = pf;
    }

    auto req = lines(res.tables[1].csv);
    CHECK(req[0] == "n,p_target,N0,N0_over_n");
    long last = 0;
    bool seen_106 = false, seen_278 = false;
    for (size_t i = 1; i < req.size(); ++i) {
        auto f = fields(req[i]);
        long n0 = std::stol(f[2]);
        if (f[0] == "7" && f[1] == "1.00000e-05") {
            CHECK(n0 == 106);
            CHECK(std::stod(f[3]) == Approx(106.0 / 7.0).epsilon(1e-4));
            seen_106 = true;
        }
        if (f[0] == "23" && f[1] == "1.00000e-05") {
            CHECK(n0 == 278);
            seen_278 = true;
        }
        // within one block size, tighter targets need no fewer pairs
        if (f[0] == "7") {
            CHECK(n0 >= last);
            last = n0;
        }
    }
    CHECK(seen_106);
    CHECK(seen_278);
}

TEST_CASE("restocking command with perfect rounds never fails") {
    RunConfig cfg;
    cfg.set("f0", "1");
    cfg.set("beta", "0");
    cfg.set("delta", "0");
    cfg.set("n_list", "7");
    CommandResult res = cmd_pfail(cfg);
    for (size_t i = 1; i < lines(res.tables[0].csv).size(); ++i) {
        auto f = fields(lines(res.tables[0].csv)[i]);
        CHECK(std::stod(f[2]) == 0.0);
    }
    auto req = fields(lines(res.tables[1].csv)[1]);
    CHECK(req[2] == "56");  // 7 doublings in 3 perfect rounds
}

TEST_CASE("simulate command: clean runs report unit survival and exit 0") {
    RunConfig cfg;
    cfg.set("beta", "0");
    cfg.set("delta", "0");
    cfg.set("mu", "0");
    cfg.set("trials", "400");
    CommandResult res = cmd_simulate(cfg);
    CHECK(res.exit_code == 0);
    REQUIRE(res.tables.size() == 2);
    CHECK(res.tables[0].name == "simulate");
    CHECK(res.tables[1].name == "stations");
    auto ls = lines(res.tables[0].csv);
    CHECK(ls[0] == "metric,hits,trials,empirical,expected,z");
    REQUIRE(ls.size() == 4);
    for (int i = 1; i <= 3; ++i) {
        auto f = fields(ls[i]);
        CHECK(f[1] == "400");
        CHECK(std::stod(f[3]) == 1.0);
        CHECK(std::stod(f[4]) == 1.0);
        CHECK(std::stod(f[5]) == 0.0);
    }
}

TEST_CASE("simulate command is deterministic in the seed, not the threads") {
    RunConfig cfg;
    cfg.set("trials", "5000");
    cfg.set("seed", "33");
    cfg.set("threads", "1");
    CommandResult a = cmd_simulate(cfg);
    cfg.set("threads", "3");
    CommandResult b = cmd_simulate(cfg);
    CHECK(a.tables[0].csv == b.tables[0].csv);
    CHECK(a.tables[1].csv == b.tables[1].csv);
    CHECK(a.exit_code == 0);  // expectations come from the same model

    cfg.set("seed", "34");
    CommandResult c = cmd_simulate(cfg);
    CHECK(a.tables[0].csv != c.tables[0].csv);
}

TEST_CASE("simulate command checks sampled chains against the model") {
    RunConfig cfg;
    cfg.set("code", "hamming-7");
    cfg.set("stations", "4");
    cfg.set("trials", "20000");
    cfg.set("seed", "7");
    CommandResult res = cmd_simulate(cfg);
    CHECK(res.exit_code == 0);
    for (int i = 1; i <= 3; ++i) {
        auto f = fields(lines(res.tables[0].csv)[i]);
        CHECK(std::abs(std::stod(f[5])) <= 4.0);
    }
    auto st = lines(res.tables[1].csv);
    CHECK(st[0] == "station,species,errors,trials,empirical,expected");
    CHECK(st.size() == 1 + 4 * 2);
}

TEST_CASE("rate command reproduces the seven-qubit working point") {
    RunConfig cfg;  // defaults: hamming-7, 3 levels, f0 0.95, targets 1e-5
    CommandResult res = cmd_rate(cfg);
    REQUIRE(res.tables.size() == 2);
    CHECK(res.tables[0].name == "rate");
    CHECK(res.tables[1].name == "levels");
    auto main_row = fields(lines(res.tables[0].csv)[1]);
    CHECK(lines(res.tables[0].csv)[0] ==
          "code,n,levels,f_final,p_target,N0,kappa,gen_rate_hz,tau_c_s,raw_hz,"
          "sifted_hz,stations,classical_ref_hz");
    CHECK(main_row[0] == "hamming-7");
    CHECK(main_row[1] == "7");
    CHECK(std::stod(main_row[3]) == Approx(0.9984057).epsilon(1e-4));
    CHECK(main_row[5] == "106");
    CHECK(std::stod(main_row[6]) == Approx(7.571428571).epsilon(1e-6));
    CHECK(std::stod(main_row[8]) == Approx(6.935097408e-3).epsilon(1e-6));
    CHECK(std::stod(main_row[9]) > 100.0);
    CHECK(std::stod(main_row[9]) == Approx(144.19408).epsilon(1e-5));
    CHECK(std::stod(main_row[10]) == Approx(72.09704).epsilon(1e-5));
    CHECK(main_row[11] == "16");
    CHECK(std::stod(main_row[12]) == Approx(1250.0).epsilon(1e-9));

    auto levels = lines(res.tables[1].csv);
    CHECK(levels[0] == "level,success_prob,fidelity");
    REQUIRE(levels.size() == 4);
    CHECK(std::stod(fields(levels[3])[2]) == Approx(0.9984057).epsilon(1e-4));
}

TEST_CASE("rate command: throughput does not depend on the chain length") {
    RunConfig cfg;
    cfg.set("stations", "64");
    auto main_row = fields(lines(cmd_rate(cfg).tables[0].csv)[1]);
    CHECK(std::stod(main_row[9]) == Approx(144.19408).epsilon(1e-5));
    CHECK(std::stod(main_row[12]) == Approx(2e5 / (10.0 * 64)).epsilon(1e-9));
}

TEST_CASE("rate command reports unreachable pool targets honestly") {
    RunConfig cfg;
    cfg.set("levels", "14");  // initial pool would exceed the solver's cap
    CommandResult res = cmd_rate(cfg);
    auto row = lines(res.tables[0].csv)[1];
    CHECK(row.find("unreachable") != std::string::npos);
    CHECK(res.exit_code == 0);
}
