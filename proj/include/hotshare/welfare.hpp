#pragma once

// Exact profit/welfare integration from allocation runs, pointwise welfare
// lookups, and IR / Pareto classification against the no-sharing baseline.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hotshare/equilibrium.hpp"
#include "hotshare/market.hpp"

namespace hotshare {

struct ParetoWitness {
    SegKind segment;
    Rat theta;     // a location whose utility strictly drops
    Rat shortfall; // baseline utility minus candidate utility (> 0)
};

struct ParetoVerdict {
    bool ir_A = false;             // pi_A >= baseline pi_A
    bool ir_B = false;
    bool jointly_ir = false;       // profit sum weakly up
    bool consumers_no_worse = false; // every consumer weakly better
    bool pareto_improving = false; // both firms and every consumer weakly better
    bool strict = false;           // pareto_improving with some strict gain
    std::vector<ParetoWitness> consumer_witnesses; // where consumers lose
    std::vector<std::string> firm_witnesses;       // which firm conditions fail
};

// Exact integral of (price paid) x density over each firm's served set.
std::pair<Rat, Rat> profits(const EquilibriumOutcome& outcome, const MarketConfig& config);

// Mass-weighted integral of realized consumer utility.
Rat consumer_welfare(const EquilibriumOutcome& outcome, const MarketConfig& config);

// Realized utility of the consumer at theta on the given segment.
Rat pointwise_welfare(const EquilibriumOutcome& outcome, SegKind segment, const Rat& theta);

// Classify `candidate` against `baseline` (same config required): firm IR by
// profit comparison, joint IR by sums, consumer condition decided exactly on
// the union of welfare breakpoints (both functions are piecewise affine).
ParetoVerdict pareto_compare(const EquilibriumOutcome& candidate,
                             const EquilibriumOutcome& baseline, const MarketConfig& config);

} // namespace hotshare
