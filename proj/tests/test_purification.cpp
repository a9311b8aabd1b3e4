#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qrep/purification.hpp"

using namespace qrep;
using doctest::Approx;

namespace {

double dist_sum(const NumberDist& d) {
    double s = d.truncated_mass;
    for (const auto& [m, p] : d.probs) s += p;
    return s;
}

double dist_mean(const NumberDist& d) {
    double s = 0;
    for (const auto& [m, p] : d.probs) s += static_cast<double>(m) * p;
    return s;
}

}  // namespace

TEST_CASE("perfect pairs are a fixed point") {
    PurifyResult r = purify_step({1, 0, 0, 0}, 0, 0);
    CHECK(r.success_prob == Approx(1.0).epsilon(1e-15));
    CHECK(r.state.phi_plus == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("one error-free round against the offline 4-qubit oracle") {
    // frozen from a density-matrix simulation of the bilateral-CNOT round
    PurifyResult r = purify_step(depolarized_state(0.95), 0, 0);
    CHECK(r.success_prob == Approx(0.9355555555555551).epsilon(1e-12));
    CHECK(r.state.phi_plus == Approx(0.964964370546318).epsilon(1e-10));
    CHECK(r.state.psi_plus == Approx(5.938242280285043e-4).epsilon(1e-9));
    CHECK(r.state.psi_minus == Approx(3.384798099762478e-2).epsilon(1e-9));
    CHECK(r.state.phi_minus == Approx(5.938242280285043e-4).epsilon(1e-9));
    CHECK(r.state.fidelity() > 0.95);  // strict improvement
}

TEST_CASE("noisy asymmetric round against the offline oracle") {
    BellDiagState in{0.9, 0.05, 0.03, 0.02};
    PurifyResult r = purify_step(in, 2e-3, 3e-3);
    CHECK(r.success_prob == Approx(0.8471861787132029).epsilon(1e-12));
    CHECK(r.state.phi_plus == Approx(0.9479668224216146).epsilon(1e-10));
    CHECK(r.state.psi_plus == Approx(4.883631664583857e-3).epsilon(1e-9));
    CHECK(r.state.psi_minus == Approx(4.285714302814106e-2).epsilon(1e-9));
    CHECK(r.state.phi_minus == Approx(4.292402885660208e-3).epsilon(1e-9));
}

TEST_CASE("output states stay normalized and nonnegative") {
    BellDiagState s = depolarized_state(0.8);
    for (int i = 0; i < 4; ++i) {
        PurifyResult r = purify_step(s, 2e-3, 1e-3);
        s = r.state;
        const double sum = s.phi_plus + s.psi_plus + s.psi_minus + s.phi_minus;
        CHECK(sum == Approx(1.0).epsilon(1e-12));
        CHECK(s.phi_plus >= 0);
        CHECK(s.psi_plus >= 0);
        CHECK(s.psi_minus >= 0);
        CHECK(s.phi_minus >= 0);
        CHECK(r.success_prob > 0);
        CHECK(r.success_prob <= 1);
    }
}

TEST_CASE("three noisy rounds hit the working fidelity") {
    PurifyLadder ladder = purify_levels(0.95, 1e-3, 1e-3, 3);
    REQUIRE(ladder.success_probs.size() == 3);
    REQUIRE(ladder.states.size() == 4);
    CHECK(ladder.success_probs[0] == Approx(0.93294787921952).epsilon(1e-10));
    CHECK(ladder.success_probs[1] == Approx(0.9298522282886631).epsilon(1e-10));
    CHECK(ladder.success_probs[2] == Approx(0.9896656642715875).epsilon(1e-10));
    const BellDiagState& f = ladder.states.back();
    CHECK(f.phi_plus == Approx(0.9984057062531156).epsilon(1e-10));
    CHECK(f.psi_plus == Approx(2.6267003976145737e-4).epsilon(1e-8));
    CHECK(f.psi_minus == Approx(1.0680610687014362e-3).epsilon(1e-8));
    CHECK(f.phi_minus == Approx(2.635626384215545e-4).epsilon(1e-8));
    // the purified infidelity lands within the documented working window
    CHECK(1.0 - f.phi_plus < 2e-3);
}

TEST_CASE("error-free ladder freeze") {
    PurifyLadder ladder = purify_levels(0.95, 0, 0, 3);
    CHECK(ladder.success_probs[0] == Approx(0.9355555555555556).epsilon(1e-12));
    CHECK(ladder.success_probs[1] == Approx(0.9334888654430972).epsilon(1e-12));
    CHECK(ladder.success_probs[2] == Approx(0.9951012828596851).epsilon(1e-12));
    CHECK(ladder.states[3].phi_plus == Approx(0.999907606207997).epsilon(1e-12));
}

TEST_CASE("bad inputs are rejected") {
    CHECK_THROWS_AS(purify_step({0.5, 0.1, 0.1, 0.1}, 0, 0), std::domain_error);
    CHECK_THROWS_AS(purify_step({1.2, -0.2, 0, 0}, 0, 0), std::domain_error);
    CHECK_THROWS_AS(purify_step({1, 0, 0, 0}, -0.1, 0), std::domain_error);
    CHECK_THROWS_AS(depolarized_state(1.2), std::domain_error);
    CHECK_THROWS_AS(purify_levels(0.95, 0, 0, -1), std::domain_error);
}

TEST_CASE("pair-count recursion, small cases by hand") {
    NumberDist d = number_distribution(4, {1.0}, 1);
    CHECK(d.level == 1);
    REQUIRE(d.probs.count(2) == 1);
    CHECK(d.probs.at(2) == Approx(1.0).epsilon(1e-15));

    d = number_distribution(1, {0.7}, 1);  // a lone pair cannot combine
    REQUIRE(d.probs.count(0) == 1);
    CHECK(d.probs.at(0) == Approx(1.0).epsilon(1e-15));

    d = number_distribution(2, {0.5}, 1);
    CHECK(d.probs.at(0) == Approx(0.5).epsilon(1e-12));
    CHECK(d.probs.at(1) == Approx(0.5).epsilon(1e-12));

    d = number_distribution(0, {0.5, 0.5}, 2);
    CHECK(d.probs.at(0) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("pair-count distribution conserves mass and mean") {
    const std::vector<double> r = {0.93, 0.9, 0.85};
    for (long n0 : {7L, 64L, 301L, 2048L}) {
        NumberDist prev = number_distribution(n0, {}, 0);
        for (int lvl = 1; lvl <= 3; ++lvl) {
            std::vector<double> sub(r.begin(), r.begin() + lvl);
            NumberDist cur = number_distribution(n0, sub, lvl);
            CHECK(dist_sum(cur) == Approx(1.0).epsilon(1e-9));
            // mean recursion: E[next] = r * E[floor(m/2)]
            double half_mean = 0;
            for (const auto& [m, p] : prev.probs)
                half_mean += static_cast<double>(m / 2) * p;
            CHECK(dist_mean(cur) == Approx(r[lvl - 1] * half_mean).epsilon(1e-9));
            prev = cur;
        }
    }
}

TEST_CASE("pair-count distribution input checks") {
    CHECK_THROWS_AS(number_distribution(4, {0.5}, -1), std::domain_error);
    CHECK_THROWS_AS(number_distribution(-1, {0.5}, 1), std::domain_error);
    CHECK_THROWS_AS(number_distribution(4, {1.5}, 1), std::domain_error);
    CHECK_THROWS_AS(number_distribution(4, {0.5, 0.5}, 1), std::invalid_argument);
    CHECK_THROWS_AS(number_distribution(4, {}, 1), std::invalid_argument);
}

TEST_CASE("restocking failure probability") {
    CHECK(failure_probability(2, 1, {1.0}, 1) == 0.0);
    CHECK(failure_probability(2, 1, {0.5}, 1) == Approx(0.5).epsilon(1e-12));
    // monotone: more raw pairs never hurt, higher demands never help
    const std::vector<double> r = {0.93294787921952, 0.9298522282886631,
                                   0.9896656642715875};
    double prev = 1.0;
    for (long n0 : {56L, 70L, 90L, 106L, 140L}) {
        double pf = failure_probability(n0, 7, r, 3);
        CHECK(pf <= prev);
        prev = pf;
    }
    CHECK(failure_probability(100, 8, r, 3) >= failure_probability(100, 7, r, 3));
}

TEST_CASE("pool sizing inverts the failure probability") {
    const std::vector<double> r = {0.93294787921952, 0.9298522282886631,
                                   0.9896656642715875};
    auto n0 = required_pairs(7, r, 3, 1e-5);
    REQUIRE(n0.has_value());
    CHECK(*n0 == 106);
    CHECK(failure_probability(*n0, 7, r, 3) <= 1e-5);
    CHECK(failure_probability(*n0 - 1, 7, r, 3) > 1e-5);

    auto n23 = required_pairs(23, r, 3, 1e-5);
    REQUIRE(n23.has_value());
    CHECK(*n23 == 278);

    CHECK(*required_pairs(1, {1.0}, 1, 0.1) == 2);
    // nonincreasing in the target
    CHECK(*required_pairs(7, r, 3, 1e-3) <= *required_pairs(7, r, 3, 1e-5));
    // a dead level makes any target unreachable
    CHECK_FALSE(required_pairs(7, {0.9, 0.0, 0.9}, 3, 1e-3).has_value());
    CHECK_THROWS_AS(required_pairs(7, r, 3, 0.0), std::domain_error);
    CHECK_THROWS_AS(required_pairs(0, r, 3, 0.5), std::domain_error);
}

TEST_CASE("raw pair generation rate") {
    LinkParams link;  // spacing 10 km, attenuation 20 km, v 2e5, eta 0.3, 4 qubits
    const double per_generator = 1091.7551874827401;
    CHECK(generation_rate(link) == Approx(4 * per_generator).epsilon(1e-12));
    link.n_eng = 8;
    CHECK(generation_rate(link) == Approx(8 * per_generator).epsilon(1e-12));
    // lossless short-link limit approaches v/l0 per generation qubit
    link.n_eng = 1, link.eta = 1.0, link.l0_km = 1e-6;
    CHECK(generation_rate(link) ==
          Approx(link.v_km_s / link.l0_km).epsilon(1e-6));
    link = LinkParams{};
    link.eta = 0.0;
    CHECK_THROWS_AS(generation_rate(link), std::domain_error);
    link = LinkParams{};
    link.l0_km = -1;
    CHECK_THROWS_AS(generation_rate(link), std::domain_error);
}

TEST_CASE("cycle time and overhead factor") {
    LinkParams link;
    link.n_eng = 4 * 7;  // generation bank sized for a 7-qubit block
    CycleTime c = cycle_time(link, 106);
    CHECK(c.kappa == Approx(7.571428571428571).epsilon(1e-12));
    CHECK(c.tau_c_s == Approx(6.935097408500539e-3).epsilon(1e-12));
    // the prefactor tau_c / kappa = (l0/v) e^(l0/l_att) / eta^2
    CHECK(c.tau_c_s / c.kappa == Approx(9.159562615000713e-4).epsilon(1e-12));
    // unit-overhead identity
    LinkParams u;
    CycleTime one = cycle_time(u, u.n_eng / 2);
    CHECK(one.kappa == Approx(1.0).epsilon(1e-15));
    CHECK(one.tau_c_s == Approx(9.159562615000713e-4).epsilon(1e-12));
    CHECK_THROWS_AS(cycle_time(link, 0), std::domain_error);
}

TEST_CASE("key rate halves under sifting and ignores length") {
    KeyRate k = key_rate(7e-3);
    CHECK(k.raw_hz == Approx(142.857142857).epsilon(1e-9));
    CHECK(k.sifted_hz == Approx(71.4285714286).epsilon(1e-9));
    CHECK(key_rate(1.0).raw_hz == Approx(1.0));
    CHECK_THROWS_AS(key_rate(0.0), std::domain_error);
    CHECK_THROWS_AS(key_rate(-2.0), std::domain_error);
}
