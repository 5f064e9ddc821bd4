#include "hotshare/welfare.hpp"

#include <algorithm>

#include "hotshare/errors.hpp"

namespace hotshare {

namespace {

void require_same_config(const MarketConfig& a, const MarketConfig& b) {
    bool same = a.v == b.v && a.t == b.t;
    for (SegKind k : all_segments) {
        same = same && a.mass(k) == b.mass(k) &&
               a.density(k).breakpoints == b.density(k).breakpoints &&
               a.density(k).levels == b.density(k).levels;
    }
    if (!same) throw ConfigMismatch("outcomes computed over different market configs");
}

// Value of a piecewise function at theta using the piece that owns theta's
// cell; `limit_from_left` asks for the closure value at a right endpoint.
Rat piece_value(const PiecewiseLinearFn& fn, const Rat& lo, const Rat& hi, const Rat& at) {
    // The cell [lo,hi) is contained in exactly one piece; evaluate that
    // piece's affine form at `at` (an endpoint of the cell, possibly hi).
    for (const PLPiece& p : fn.pieces())
        if (p.x0 <= lo && hi <= p.x1) return p.slope * at + p.icept;
    throw DomainError("welfare functions do not cover a comparison cell");
}

} // namespace

std::pair<Rat, Rat> profits(const EquilibriumOutcome& outcome, const MarketConfig& config) {
    require_same_config(outcome.config, config);
    Rat pi_A(0), pi_B(0);
    for (const SegmentAllocation& alloc : outcome.allocation) {
        const Rat& q = config.mass(alloc.segment);
        if (q == Rat(0)) continue;
        const DensitySpec& f = config.density(alloc.segment);
        for (const Run& r : alloc.runs) {
            Rat rev = q * f.integrate_linear(r.x0, r.x1, r.price_slope, r.price_icept);
            (r.winner == Firm::A ? pi_A : pi_B) += rev;
        }
    }
    return {pi_A, pi_B};
}

Rat consumer_welfare(const EquilibriumOutcome& outcome, const MarketConfig& config) {
    require_same_config(outcome.config, config);
    Rat cw(0);
    for (SegKind k : all_segments) {
        const Rat& q = config.mass(k);
        if (q == Rat(0)) continue;
        const DensitySpec& f = config.density(k);
        for (const PLPiece& p : outcome.welfare[static_cast<size_t>(k)].pieces())
            cw += q * f.integrate_linear(p.x0, p.x1, p.slope, p.icept);
    }
    return cw;
}

Rat pointwise_welfare(const EquilibriumOutcome& outcome, SegKind segment, const Rat& theta) {
    if (theta < Rat(0) || theta > Rat(1)) throw DomainError("location outside [0,1]");
    return outcome.welfare[static_cast<size_t>(segment)].eval(theta);
}

ParetoVerdict pareto_compare(const EquilibriumOutcome& candidate,
                             const EquilibriumOutcome& baseline, const MarketConfig& config) {
    require_same_config(candidate.config, config);
    require_same_config(baseline.config, config);

    ParetoVerdict verdict;
    verdict.ir_A = candidate.pi_A >= baseline.pi_A;
    verdict.ir_B = candidate.pi_B >= baseline.pi_B;
    verdict.jointly_ir = candidate.pi_A + candidate.pi_B >= baseline.pi_A + baseline.pi_B;
    if (!verdict.ir_A)
        verdict.firm_witnesses.push_back("pi_A falls from " + rat_to_string(baseline.pi_A) +
                                         " to " + rat_to_string(candidate.pi_A));
    if (!verdict.ir_B)
        verdict.firm_witnesses.push_back("pi_B falls from " + rat_to_string(baseline.pi_B) +
                                         " to " + rat_to_string(candidate.pi_B));
    if (!verdict.jointly_ir)
        verdict.firm_witnesses.push_back(
            "joint profit falls from " + rat_to_string(baseline.pi_A + baseline.pi_B) + " to " +
            rat_to_string(candidate.pi_A + candidate.pi_B));

    // Consumer condition, segment by segment: both welfare functions are
    // piecewise affine, so on every cell between consecutive breakpoints the
    // difference is affine and its sign is decided by the cell-endpoint
    // closure values.
    verdict.consumers_no_worse = true;
    for (SegKind k : all_segments) {
        if (config.mass(k) == Rat(0)) continue; // no consumers live here
        const PiecewiseLinearFn& cf = candidate.welfare[static_cast<size_t>(k)];
        const PiecewiseLinearFn& bf = baseline.welfare[static_cast<size_t>(k)];
        std::vector<Rat> bps = cf.breakpoints();
        for (const Rat& b : bf.breakpoints()) bps.push_back(b);
        std::sort(bps.begin(), bps.end());
        bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
        Rat worst(0);
        bool worst_set = false;
        Rat worst_theta(0);
        for (size_t i = 0; i + 1 < bps.size(); ++i) {
            const Rat& lo = bps[i];
            const Rat& hi = bps[i + 1];
            if (!(lo < hi)) continue;
            for (const Rat& at : {lo, hi}) {
                Rat diff = piece_value(cf, lo, hi, at) - piece_value(bf, lo, hi, at);
                if (!worst_set || diff < worst) {
                    worst = diff;
                    worst_theta = at;
                    worst_set = true;
                }
            }
        }
        if (worst_set && worst < Rat(0)) {
            verdict.consumers_no_worse = false;
            verdict.consumer_witnesses.push_back(ParetoWitness{k, worst_theta, -worst});
        }
    }

    verdict.pareto_improving = verdict.ir_A && verdict.ir_B && verdict.consumers_no_worse;
    if (verdict.pareto_improving) {
        bool firm_gain = candidate.pi_A > baseline.pi_A || candidate.pi_B > baseline.pi_B;
        bool cw_gain = candidate.cw > baseline.cw;
        verdict.strict = firm_gain || cw_gain;
    }
    return verdict;
}

} // namespace hotshare
