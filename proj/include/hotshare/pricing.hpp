#pragma once

// Stage-3 personalized best responses and stage-2 uniform-price best
// responses: match pricing, duels, the full personalized stage (allocation
// runs plus per-firm schedules on the knowledge partition), uniform demand,
// and the exact piecewise best-response maximization.

#include <vector>

#include "hotshare/interval_set.hpp"
#include "hotshare/market.hpp"
#include "hotshare/piecewise.hpp"

namespace hotshare {

// Maximal run of consumers [x0, x1) on one segment served by one firm at one
// affine price p(theta) = price_slope*theta + price_icept. Adjacent runs with
// the same winner but a different price form are kept separate.
struct Run {
    Rat x0, x1;
    Firm winner;
    Rat price_slope, price_icept;

    Rat price_at(const Rat& theta) const { return price_slope * theta + price_icept; }
    bool operator==(const Run& o) const = default;
};

// Allocation cuts for one segment: runs covering [0,1].
struct SegmentAllocation {
    SegKind segment;
    std::vector<Run> runs;

    const Run& run_at(const Rat& theta) const; // theta in [0,1]

    bool operator==(const SegmentAllocation&) const = default;
};

// A firm's personalized price schedule on one segment, defined exactly on the
// sub-set of locations that firm knows there.
struct MaskedSchedule {
    Firm firm;
    SegKind segment;
    IntervalSet domain;
    PiecewiseLinearFn prices; // pieces cover exactly the domain

    bool operator==(const MaskedSchedule& o) const = default;
};

struct StageOutcome {
    std::vector<SegmentAllocation> allocation; // one entry per segment, in SegKind order
    std::vector<MaskedSchedule> schedules;     // 8 entries: firm x segment
};

struct BestResponse {
    Rat price;
    Rat profit;
    bool degenerate = false; // uniform demand identically zero; price 0 by convention
};

struct DuelOutcome {
    Rat price_A, price_B;
    Firm winner;
};

// Personalized price making the consumer at theta exactly indifferent to the
// rival's standing offer, floored at zero.
Rat match_price(Firm firm, const Rat& theta, const Rat& rival_offer, const MarketConfig& config);

// Personalized offers where both firms know theta: the nearer firm wins at
// t*|1-2theta|, the farther prices 0; the exact midpoint goes to B.
DuelOutcome duel_prices(const Rat& theta, const MarketConfig& config);

// Full stage-3 resolution for announced uniform prices: allocation runs and
// per-firm masked schedules, for every segment.
StageOutcome personalized_stage(const Rat& p_A, const Rat& p_B, const SharingMechanism& mechanism,
                                const MarketConfig& config);

// Mass of consumers who end up paying `firm`'s uniform price.
Rat uniform_demand(Firm firm, const Rat& p_self, const Rat& p_rival,
                   const SharingMechanism& mechanism, const MarketConfig& config);

// Exact global maximizer of p * uniform_demand(p) over p >= 0; ties break to
// the lowest price. Degenerate (identically zero) demand returns price 0 with
// the flag set.
BestResponse best_response_uniform(Firm firm, const Rat& p_rival, const SharingMechanism& mechanism,
                                   const MarketConfig& config);

} // namespace hotshare
