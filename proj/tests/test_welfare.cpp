#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hotshare/equilibrium.hpp"
#include "hotshare/errors.hpp"
#include "hotshare/market.hpp"
#include "hotshare/welfare.hpp"

using namespace hotshare;

namespace {

EquilibriumOutcome solve_scenario(Scenario s, const Rat& eps = frac(1, 8)) {
    return solve_equilibrium(scenario_mechanism(s, eps), scenario_config(s, Rat(3), Rat(1)));
}

} // namespace

TEST_CASE("profit integration matches the closed-form values") {
    MarketConfig one = MarketConfig::one_segment(Rat(3), Rat(1));
    EquilibriumOutcome none1 = solve_scenario(Scenario::OneSegNone);
    auto [pa, pb] = profits(none1, one);
    CHECK(pa == frac(1, 8));
    CHECK(pb == frac(9, 16));

    MarketConfig four = MarketConfig::four_segment(Rat(3), Rat(1));
    EquilibriumOutcome co4 = solve_scenario(Scenario::FourSegConsumerOpt);
    auto [ca, cb] = profits(co4, four);
    CHECK(ca == frac(25, 72));
    CHECK(cb == frac(25, 72));

    EquilibriumOutcome fo1 = solve_scenario(Scenario::OneSegFirmOpt);
    auto [fa, fb] = profits(fo1, one);
    CHECK(fa + fb == frac(23, 32));
    CHECK(fa == frac(11, 64));
    CHECK(fb == frac(35, 64));

    // The standalone integrator agrees with the solver's own fields everywhere.
    for (Scenario s : all_scenarios()) {
        CAPTURE(scenario_name(s));
        EquilibriumOutcome out = solve_scenario(s);
        auto [xa, xb] = profits(out, out.config);
        CHECK(xa == out.pi_A);
        CHECK(xb == out.pi_B);
        CHECK(consumer_welfare(out, out.config) == out.cw);
    }
}

TEST_CASE("consumer welfare matches the closed-form values") {
    CHECK(consumer_welfare(solve_scenario(Scenario::OneSegFull),
                           MarketConfig::one_segment(Rat(3), Rat(1))) == frac(9, 4));
    CHECK(consumer_welfare(solve_scenario(Scenario::FourSegNone),
                           MarketConfig::four_segment(Rat(3), Rat(1))) == Rat(2));
    CHECK(consumer_welfare(solve_scenario(Scenario::FourSegConsumerOpt),
                           MarketConfig::four_segment(Rat(3), Rat(1))) == frac(37, 18));
}

TEST_CASE("pointwise welfare: realized utility at a location") {
    EquilibriumOutcome none1 = solve_scenario(Scenario::OneSegNone);
    // theta = 3/5 is matched by B at 2θ - 1/2 = 7/10: u = 3 - 7/10 - 2/5.
    CHECK(pointwise_welfare(none1, SegKind::BOnly, frac(3, 5)) == frac(19, 10));

    EquilibriumOutcome fo1 = solve_scenario(Scenario::OneSegFirmOpt);
    // theta = 3/10 sits in the shared interval: duel won by A at t(1-2θ).
    CHECK(pointwise_welfare(fo1, SegKind::BOnly, frac(3, 10)) == frac(23, 10));
    // Against no sharing (match at 1/10, utility 22/10), that consumer gains.
    CHECK(pointwise_welfare(fo1, SegKind::BOnly, frac(3, 10)) >
          pointwise_welfare(none1, SegKind::BOnly, frac(3, 10)));

    EquilibriumOutcome none4 = solve_scenario(Scenario::FourSegNone);
    // Midpoint dueller rides the price war down to 0: u = 3 - 0 - 1/2.
    CHECK(pointwise_welfare(none4, SegKind::Both, frac(1, 2)) == frac(5, 2));

    // The stored per-segment welfare functions agree pointwise.
    for (const Rat& th : {Rat(0), frac(1, 3), frac(1, 2), frac(9, 10), Rat(1)})
        CHECK(pointwise_welfare(none4, SegKind::Neither, th) ==
              none4.welfare[static_cast<size_t>(SegKind::Neither)].eval(th));
}

TEST_CASE("welfare slopes stay inside the transport-and-match family") {
    for (Scenario s : all_scenarios()) {
        CAPTURE(scenario_name(s));
        EquilibriumOutcome out = solve_scenario(s);
        const Rat t = out.config.t;
        for (const auto& fn : out.welfare)
            for (const auto& piece : fn.pieces()) {
                bool ok = piece.slope == t || piece.slope == -t || piece.slope == 3 * t ||
                          piece.slope == -3 * t;
                CHECK(ok);
            }
    }
}

TEST_CASE("classification: full sharing on one segment helps A, guts B, harms near consumers") {
    MarketConfig one = MarketConfig::one_segment(Rat(3), Rat(1));
    EquilibriumOutcome base = solve_scenario(Scenario::OneSegNone);
    EquilibriumOutcome full = solve_scenario(Scenario::OneSegFull);
    ParetoVerdict v = pareto_compare(full, base, one);
    CHECK(v.ir_A);
    CHECK_FALSE(v.ir_B);
    CHECK_FALSE(v.jointly_ir);
    CHECK_FALSE(v.consumers_no_worse);
    CHECK_FALSE(v.pareto_improving);
    CHECK_FALSE(v.strict);
    // Consumers left of 1/4 lose their cheap uniform price to a duel.
    REQUIRE_FALSE(v.consumer_witnesses.empty());
    bool found = false;
    for (const auto& w : v.consumer_witnesses) {
        CHECK(w.shortfall > Rat(0));
        if (w.segment == SegKind::BOnly && w.theta < frac(1, 4)) found = true;
    }
    CHECK(found);
    CHECK_FALSE(v.firm_witnesses.empty());
}

TEST_CASE("classification: small shared interval is jointly IR but not Pareto") {
    MarketConfig one = MarketConfig::one_segment(Rat(3), Rat(1));
    EquilibriumOutcome base = solve_scenario(Scenario::OneSegNone);
    EquilibriumOutcome eps = solve_scenario(Scenario::OneSegEps, frac(1, 8));
    ParetoVerdict v = pareto_compare(eps, base, one);
    CHECK(v.ir_A);
    CHECK(v.ir_B); // 3/4 - 1/8 still exceeds 9/16
    CHECK(v.jointly_ir);
    // A's uniform price rises to t(1 - 2eps): unshared near consumers pay more.
    CHECK_FALSE(v.consumers_no_worse);
    CHECK_FALSE(v.pareto_improving);
    CHECK_FALSE(v.strict);
}

TEST_CASE("classification: firm-optimal interval without a rebate harms only B") {
    MarketConfig one = MarketConfig::one_segment(Rat(3), Rat(1));
    EquilibriumOutcome base = solve_scenario(Scenario::OneSegNone);
    EquilibriumOutcome fo = solve_scenario(Scenario::OneSegFirmOpt);
    ParetoVerdict v = pareto_compare(fo, base, one);
    CHECK(v.ir_A);
    CHECK_FALSE(v.ir_B); // 35/64 < 9/16
    CHECK(v.jointly_ir); // 23/32 > 11/16
    CHECK(v.consumers_no_worse); // uniform price unchanged; duels only cut prices
    CHECK_FALSE(v.pareto_improving);
    CHECK_FALSE(v.strict);
    CHECK(v.consumer_witnesses.empty());
    REQUIRE_FALSE(v.firm_witnesses.empty());
}

TEST_CASE("classification: two-segment products restore both firms' IR") {
    MarketConfig two = MarketConfig::two_segment(Rat(3), Rat(1));
    EquilibriumOutcome base = solve_equilibrium(SharingMechanism::none(), two);
    CHECK(base.pi_A == frac(11, 32));
    CHECK(base.pi_B == frac(11, 32));
    CHECK(base.cw == Rat(2));

    ParetoVerdict vf = pareto_compare(solve_scenario(Scenario::TwoSegFirmOpt), base, two);
    CHECK(vf.ir_A);
    CHECK(vf.ir_B);
    CHECK(vf.jointly_ir);
    CHECK(vf.consumers_no_worse);
    CHECK(vf.pareto_improving);
    CHECK(vf.strict);

    ParetoVerdict vc = pareto_compare(solve_scenario(Scenario::TwoSegConsumerOpt), base, two);
    CHECK(vc.pareto_improving);
    CHECK(vc.strict);
}

TEST_CASE("classification: four-segment canonical mechanisms Pareto-improve") {
    MarketConfig four = MarketConfig::four_segment(Rat(3), Rat(1));
    EquilibriumOutcome base = solve_scenario(Scenario::FourSegNone);

    ParetoVerdict vf = pareto_compare(solve_scenario(Scenario::FourSegFirmOpt), base, four);
    CHECK(vf.ir_A);
    CHECK(vf.ir_B);
    CHECK(vf.jointly_ir);
    CHECK(vf.consumers_no_worse);
    CHECK(vf.pareto_improving);
    CHECK(vf.strict);

    ParetoVerdict vc = pareto_compare(solve_scenario(Scenario::FourSegConsumerOpt), base, four);
    CHECK(vc.ir_A); // profits exactly equal: weakly IR
    CHECK(vc.ir_B);
    CHECK(vc.pareto_improving);
    CHECK(vc.strict); // CW strictly rises by t/18
}

TEST_CASE("classification is reflexive: an outcome never dominates itself strictly") {
    for (Scenario s : all_scenarios()) {
        CAPTURE(scenario_name(s));
        EquilibriumOutcome out = solve_scenario(s);
        ParetoVerdict v = pareto_compare(out, out, out.config);
        CHECK(v.ir_A);
        CHECK(v.ir_B);
        CHECK(v.jointly_ir);
        CHECK(v.consumers_no_worse);
        CHECK(v.pareto_improving);
        CHECK_FALSE(v.strict);
        CHECK(v.consumer_witnesses.empty());
    }
}

TEST_CASE("comparing outcomes from different markets is rejected") {
    EquilibriumOutcome a = solve_scenario(Scenario::OneSegNone);
    EquilibriumOutcome b = solve_scenario(Scenario::FourSegNone);
    CHECK_THROWS_AS(pareto_compare(a, b, MarketConfig::one_segment(Rat(3), Rat(1))), ConfigMismatch);
}
