#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hotshare/equilibrium.hpp"
#include "hotshare/errors.hpp"
#include "hotshare/market.hpp"
#include "hotshare/oracle.hpp"

using namespace hotshare;

namespace {

double d(const Rat& x) { return x.get_d(); }

double price_gap(const OracleOutcome& o, const EquilibriumOutcome& exact) {
    return std::max(std::abs(o.p_A - d(exact.prices.p_A)), std::abs(o.p_B - d(exact.prices.p_B)));
}

} // namespace

TEST_CASE("grid dynamics settle on the four-segment baseline prices") {
    MarketConfig four = MarketConfig::four_segment(Rat(3), Rat(1));
    OracleOutcome o = grid_equilibrium(SharingMechanism::none(), four, 1e-3, 25000);
    CHECK(o.converged);
    CHECK(o.cycle.empty());
    CHECK(o.rounds > 0);
    CHECK(std::abs(o.p_A - 2.0 / 3.0) <= 1e-3 + 1e-9);
    CHECK(std::abs(o.p_B - 2.0 / 3.0) <= 1e-3 + 1e-9);
    CHECK(std::abs(o.pi_A - 25.0 / 72.0) <= 1e-2);
    CHECK(std::abs(o.pi_B - 25.0 / 72.0) <= 1e-2);
    CHECK(std::abs(o.cw - 2.0) <= 1e-2);
}

TEST_CASE("grid dynamics on full sharing: uniform prices die, duel profits remain") {
    MarketConfig one = MarketConfig::one_segment(Rat(3), Rat(1));
    OracleOutcome o = grid_equilibrium(SharingMechanism::full(), one, 1e-3, 25000);
    CHECK(o.converged);
    CHECK(o.p_A == 0.0); // degenerate uniform demand settles at zero exactly
    CHECK(o.p_B == 0.0);
    CHECK(std::abs(o.pi_A - 0.25) <= 1e-2);
    CHECK(std::abs(o.pi_B - 0.25) <= 1e-2);
    CHECK(std::abs(o.cw - 2.25) <= 1e-2);
}

TEST_CASE("grid dynamics agree with the exact engine on every scenario") {
    for (Scenario s : all_scenarios()) {
        CAPTURE(scenario_name(s));
        MarketConfig cfg = scenario_config(s, Rat(3), Rat(1));
        SharingMechanism m = scenario_mechanism(s);
        EquilibriumOutcome exact = solve_equilibrium(m, cfg);
        OracleOutcome o = grid_equilibrium(m, cfg, 1e-3, 20000);
        CHECK(o.converged);
        CHECK(price_gap(o, exact) <= 1e-2);
        CHECK(std::abs(o.pi_A - d(exact.pi_A)) <= 1e-2);
        CHECK(std::abs(o.pi_B - d(exact.pi_B)) <= 1e-2);
        CHECK(std::abs(o.cw - d(exact.cw)) <= 1e-2);
    }
}

TEST_CASE("halving the price step never widens the price gap on canonical scenarios") {
    for (Scenario s : {Scenario::OneSegNone, Scenario::OneSegEps, Scenario::FourSegNone,
                       Scenario::FourSegFirmOpt}) {
        CAPTURE(scenario_name(s));
        MarketConfig cfg = scenario_config(s, Rat(3), Rat(1));
        SharingMechanism m = scenario_mechanism(s);
        EquilibriumOutcome exact = solve_equilibrium(m, cfg);
        double g4 = price_gap(grid_equilibrium(m, cfg, 4e-3, 20000), exact);
        double g2 = price_gap(grid_equilibrium(m, cfg, 2e-3, 20000), exact);
        double g1 = price_gap(grid_equilibrium(m, cfg, 1e-3, 20000), exact);
        CHECK(g2 <= g4 + 1e-12);
        CHECK(g1 <= g2 + 1e-12);
        CHECK(g1 <= 4e-3); // and the finest grid is genuinely close
    }
}

TEST_CASE("the settled point does not depend on the starting prices") {
    MarketConfig four = MarketConfig::four_segment(Rat(3), Rat(1));
    SharingMechanism m = scenario_mechanism(Scenario::FourSegFirmOpt);
    OracleOutcome mid = grid_equilibrium(m, four, 1e-3, 20000);
    OracleOutcome low = grid_equilibrium_from(m, four, 1e-3, 20000, 0.0, 0.0);
    OracleOutcome high = grid_equilibrium_from(m, four, 1e-3, 20000, 3.0, 3.0);
    CHECK(mid.converged);
    CHECK(low.converged);
    CHECK(high.converged);
    CHECK(low.p_A == mid.p_A);
    CHECK(low.p_B == mid.p_B);
    CHECK(high.p_A == mid.p_A);
    CHECK(high.p_B == mid.p_B);
}

TEST_CASE("midpoint Riemann re-integration tracks the exact values") {
    for (Scenario s : all_scenarios()) {
        CAPTURE(scenario_name(s));
        EquilibriumOutcome out =
            solve_equilibrium(scenario_mechanism(s), scenario_config(s, Rat(3), Rat(1)));
        RiemannReport fine = riemann_check(out, out.config, 1000000);
        CHECK(fine.max_dev <= 1e-5);
        RiemannReport coarse = riemann_check(out, out.config, 1000);
        CHECK(coarse.max_dev <= 1e-2);
        CHECK(fine.max_dev ==
              std::max({std::abs(fine.pi_A_dev), std::abs(fine.pi_B_dev), std::abs(fine.cw_dev)}));
    }
}

TEST_CASE("Riemann deviations vanish on an all-zero price book") {
    MarketConfig one = MarketConfig::one_segment(Rat(3), Rat(1));
    EquilibriumOutcome out;
    out.config = one;
    out.mechanism = SharingMechanism::full();
    for (SegKind k : all_segments) {
        SegmentAllocation alloc;
        alloc.segment = k;
        alloc.runs = {Run{Rat(0), Rat(1), Firm::B, Rat(0), Rat(0)}};
        out.allocation.push_back(alloc);
    }
    out.pi_A = Rat(0);
    out.pi_B = Rat(0);
    out.cw = Rat(3) - frac(1, 2); // v - t/2: everyone rides with B for free
    RiemannReport rep = riemann_check(out, one, 10000);
    CHECK(rep.pi_A_dev == 0.0);
    CHECK(rep.pi_B_dev == 0.0);
    // Midpoint sums integrate the affine utility exactly, up to rounding.
    CHECK(rep.cw_dev <= 1e-12);
}

TEST_CASE("oracle preconditions") {
    MarketConfig one = MarketConfig::one_segment(Rat(3), Rat(1));
    CHECK_THROWS_AS(grid_equilibrium(SharingMechanism::none(), one, 0.0, 20000), BadParam);
    CHECK_THROWS_AS(grid_equilibrium(SharingMechanism::none(), one, -1e-3, 20000), BadParam);
    CHECK_THROWS_AS(grid_equilibrium(SharingMechanism::none(), one, 1e-3, 999), BadParam);
    EquilibriumOutcome out = solve_equilibrium(SharingMechanism::none(), one);
    CHECK_THROWS_AS(riemann_check(out, one, 999), BadParam);
}
