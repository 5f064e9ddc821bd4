#pragma once

// Full two-stage solve: mutually best-responding uniform prices (exact
// branch-pair enumeration, with damped iteration as a fallback), followed by
// the personalized stage, exact profit/welfare integration, and the
// closed-form reference table used as a test fixture.

#include <string>
#include <utility>
#include <vector>

#include "hotshare/market.hpp"
#include "hotshare/piecewise.hpp"
#include "hotshare/pricing.hpp"

namespace hotshare {

struct PriceSystem {
    Rat p_A, p_B;                          // uniform prices
    std::vector<MaskedSchedule> schedules; // personalized, on the knowledge partition
};

struct SolverDiagnostics {
    std::string method;   // "enumeration" or "iteration"
    int iterations = 0;   // best-response iterations used (0 for enumeration)
    bool degenerate_A = false, degenerate_B = false;
    std::vector<std::pair<Rat, Rat>> certified; // every certified price pair, sorted
};

struct EquilibriumOutcome {
    MarketConfig config;
    SharingMechanism mechanism;
    PriceSystem prices;
    std::vector<SegmentAllocation> allocation; // SegKind order
    Rat pi_A, pi_B;      // profits
    Rat cw;              // total consumer welfare
    Rat transport;       // t * E[distance to assigned firm]
    std::vector<PiecewiseLinearFn> welfare; // pointwise utility per segment, SegKind order
    SolverDiagnostics diagnostics;
};

struct SolveOptions {
    bool force_iteration = false; // skip enumeration, exercise the fallback
    int max_iterations = 10000;
    double damping = 0.5;
    double tolerance = 1e-12; // convergence threshold, in units of t
};

// Solve the two-stage game for the mechanism. Throws NoPureEquilibrium when no
// candidate pair certifies, NonConvergence when the fallback iteration runs
// out of steps.
EquilibriumOutcome solve_equilibrium(const SharingMechanism& mechanism, const MarketConfig& config,
                                     const SolveOptions& options = {});

enum class Scenario {
    OneSegNone,
    OneSegFull,
    OneSegEps,
    OneSegFirmOpt,
    TwoSegConsumerOpt,
    TwoSegFirmOpt,
    FourSegNone,
    FourSegFull,
    FourSegConsumerOpt,
    FourSegFirmOpt,
};

// Canonical scenario names: "1seg-none", "1seg-full", "1seg-eps",
// "1seg-firmopt", "2seg-consumeropt", "2seg-firmopt", "4seg-none",
// "4seg-full", "4seg-consumeropt", "4seg-firmopt".
Scenario scenario_from_name(const std::string& name);
std::string scenario_name(Scenario s);
const std::vector<Scenario>& all_scenarios();

// Hard-coded outcome from the closed-form table (prices, profits, CW are
// literal; schedules/allocation evaluated at the literal prices; transport
// filled via the surplus identity). `eps` is used only by OneSegEps and must
// lie in (0, 1/4].
EquilibriumOutcome closed_form_reference(Scenario scenario, const Rat& v, const Rat& t,
                                         const Rat& eps = frac(1, 8));

// The market and mechanism each scenario lives on.
MarketConfig scenario_config(Scenario scenario, const Rat& v, const Rat& t);
SharingMechanism scenario_mechanism(Scenario scenario, const Rat& eps = frac(1, 8));

} // namespace hotshare
