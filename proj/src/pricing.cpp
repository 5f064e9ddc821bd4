#include "hotshare/pricing.hpp"

#include <algorithm>

#include "hotshare/detail/engine.hpp"
#include "hotshare/errors.hpp"

namespace hotshare {

namespace {

Rat dist_to(Firm firm, const Rat& theta) {
    return firm == Firm::A ? theta : Rat(1) - theta;
}

// Append a run, merging with the previous one when winner and price agree.
void push_run(std::vector<Run>& runs, Rat x0, Rat x1, Firm winner, Rat slope, Rat icept) {
    if (!(x0 < x1)) return;
    if (!runs.empty()) {
        Run& b = runs.back();
        if (b.x1 == x0 && b.winner == winner && b.price_slope == slope && b.price_icept == icept) {
            b.x1 = x1;
            return;
        }
    }
    runs.push_back(Run{std::move(x0), std::move(x1), winner, std::move(slope), std::move(icept)});
}

void push_piece(std::vector<PLPiece>& ps, Rat x0, Rat x1, Rat slope, Rat icept) {
    if (!(x0 < x1)) return;
    if (!ps.empty()) {
        PLPiece& b = ps.back();
        if (b.x1 == x0 && b.slope == slope && b.icept == icept) {
            b.x1 = x1;
            return;
        }
    }
    ps.push_back(PLPiece{std::move(x0), std::move(x1), std::move(slope), std::move(icept)});
}

} // namespace

const Run& SegmentAllocation::run_at(const Rat& theta) const {
    if (theta < Rat(0) || theta > Rat(1)) throw DomainError("location outside [0,1]");
    for (const Run& r : runs)
        if (theta < r.x1 || (r.x1 == Rat(1) && theta == Rat(1))) return r;
    throw DomainError("allocation runs do not cover the location");
}

Rat match_price(Firm firm, const Rat& theta, const Rat& rival_offer, const MarketConfig& config) {
    if (theta < Rat(0) || theta > Rat(1)) throw DomainError("location outside [0,1]");
    if (rival_offer < Rat(0)) throw DomainError("negative rival offer");
    Firm rival = firm == Firm::A ? Firm::B : Firm::A;
    Rat p = rival_offer + config.t * (dist_to(rival, theta) - dist_to(firm, theta));
    return p > Rat(0) ? p : Rat(0);
}

DuelOutcome duel_prices(const Rat& theta, const MarketConfig& config) {
    if (theta < Rat(0) || theta > Rat(1)) throw DomainError("location outside [0,1]");
    Rat gap = config.t * rat_abs(Rat(1) - theta * 2);
    // theta = 1/2 ties to B.
    if (theta * 2 < Rat(1)) return DuelOutcome{gap, Rat(0), Firm::A};
    return DuelOutcome{Rat(0), gap, Firm::B};
}

StageOutcome personalized_stage(const Rat& p_A, const Rat& p_B, const SharingMechanism& mechanism,
                                const MarketConfig& config) {
    if (p_A < Rat(0) || p_B < Rat(0)) throw DomainError("negative uniform price");
    const Rat zero(0), one(1), half = frac(1, 2);
    const Rat& t = config.t;
    const Rat two_t = t * 2;

    StageOutcome out;

    // Cuts, clamped to [0,1].
    Rat mu = clamp01(half - p_A / two_t);            // A's uniform reach on S_B
    Rat nu = clamp01(half + p_B / two_t);            // A's match reach on S_A
    Rat mu3 = clamp01(half - (p_A - p_B) / two_t);   // uniform-vs-uniform cut

    for (SegKind k : all_segments) {
        SegmentAllocation alloc{k, {}};
        auto duel_runs = [&](const Rat& c, const Rat& d) {
            Rat lo = rat_min(d, rat_max(c, half));
            // A wins strictly left of 1/2 at t(1-2theta); B from 1/2 on at t(2theta-1).
            push_run(alloc.runs, c, lo, Firm::A, -two_t, t);
            push_run(alloc.runs, lo, d, Firm::B, two_t, -t);
        };
        switch (k) {
            case SegKind::Both:
                duel_runs(zero, one);
                break;
            case SegKind::BOnly: {
                // Walk [0,1] interleaving unshared pieces with M_B duels.
                const IntervalSet& M = mechanism.share_B_to_A;
                Rat cursor = zero;
                auto unshared = [&](const Rat& c, const Rat& d) {
                    Rat split = rat_min(d, rat_max(c, mu));
                    push_run(alloc.runs, c, split, Firm::A, zero, p_A);
                    // B's match p_A - t(1-2theta), nonnegative from mu on
                    push_run(alloc.runs, split, d, Firm::B, two_t, p_A - t);
                };
                for (const auto& [a, b] : M.intervals()) {
                    unshared(cursor, a);
                    duel_runs(a, b);
                    cursor = b;
                }
                unshared(cursor, one);
                break;
            }
            case SegKind::AOnly: {
                const IntervalSet& M = mechanism.share_A_to_B;
                Rat cursor = zero;
                auto unshared = [&](const Rat& c, const Rat& d) {
                    Rat split = rat_min(d, rat_max(c, nu));
                    // A's match p_B + t(1-2theta), nonnegative up to nu
                    push_run(alloc.runs, c, split, Firm::A, -two_t, p_B + t);
                    push_run(alloc.runs, split, d, Firm::B, zero, p_B);
                };
                for (const auto& [a, b] : M.intervals()) {
                    unshared(cursor, a);
                    duel_runs(a, b);
                    cursor = b;
                }
                unshared(cursor, one);
                break;
            }
            case SegKind::Neither:
                push_run(alloc.runs, zero, mu3, Firm::A, zero, p_A);
                push_run(alloc.runs, mu3, one, Firm::B, zero, p_B);
                break;
        }
        out.allocation.push_back(std::move(alloc));
    }

    // Personalized schedules on the knowledge partition. Losing offers are
    // recorded as 0 (floored), so schedules stay nonnegative.
    auto knowledge = knowledge_partition(mechanism);
    for (Firm firm : {Firm::A, Firm::B}) {
        for (SegKind k : all_segments) {
            const SegmentKnowledge& kn = knowledge[static_cast<size_t>(k)];
            IntervalSet domain = firm == Firm::A ? kn.known_to_A : kn.known_to_B;
            std::vector<PLPiece> pieces;
            const SegmentAllocation& alloc = out.allocation[static_cast<size_t>(k)];
            for (const auto& [a, b] : domain.intervals()) {
                for (const Run& r : alloc.runs) {
                    Rat lo = rat_max(a, r.x0), hi = rat_min(b, r.x1);
                    if (!(lo < hi)) continue;
                    if (r.winner == firm) {
                        // The firm's winning offer on consumers it knows.
                        push_piece(pieces, lo, hi, r.price_slope, r.price_icept);
                    } else {
                        // Losing side: the indifference price is <= 0 here, so
                        // the recorded offer is the floor 0.
                        push_piece(pieces, lo, hi, zero, zero);
                    }
                }
            }
            out.schedules.push_back(
                MaskedSchedule{firm, k, std::move(domain), PiecewiseLinearFn(std::move(pieces))});
        }
    }
    return out;
}

Rat uniform_demand(Firm firm, const Rat& p_self, const Rat& p_rival,
                   const SharingMechanism& mechanism, const MarketConfig& config) {
    if (p_self < Rat(0) || p_rival < Rat(0)) throw DomainError("negative uniform price");
    detail::Eng<Rat> eng(config, mechanism);
    return eng.demand(firm, p_self, p_rival);
}

BestResponse best_response_uniform(Firm firm, const Rat& p_rival, const SharingMechanism& mechanism,
                                   const MarketConfig& config) {
    if (p_rival < Rat(0)) throw DomainError("negative rival price");
    detail::Eng<Rat> eng(config, mechanism);
    auto br = eng.best_response(firm, p_rival);
    return BestResponse{br.price, br.profit, br.degenerate};
}

} // namespace hotshare
