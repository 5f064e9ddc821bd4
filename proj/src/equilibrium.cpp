#include "hotshare/equilibrium.hpp"

#include <algorithm>
#include <sstream>

#include "hotshare/detail/engine.hpp"
#include "hotshare/errors.hpp"
#include "hotshare/mechanisms.hpp"

namespace hotshare {

namespace {

// Pointwise realized utility per segment, straight from the allocation runs.
// Pieces may be discontinuous at run boundaries (welfare can jump where a
// shared interval starts or ends).
std::vector<PiecewiseLinearFn> welfare_from_runs(const std::vector<SegmentAllocation>& allocation,
                                                 const MarketConfig& config) {
    std::vector<PiecewiseLinearFn> out;
    out.reserve(allocation.size());
    for (const SegmentAllocation& alloc : allocation) {
        std::vector<PLPiece> pieces;
        for (const Run& r : alloc.runs) {
            // distance to the winner: theta for A, 1 - theta for B
            Rat ds = r.winner == Firm::A ? Rat(1) : Rat(-1);
            Rat di = r.winner == Firm::A ? Rat(0) : Rat(1);
            Rat slope = -r.price_slope - config.t * ds;
            Rat icept = config.v - r.price_icept - config.t * di;
            if (!pieces.empty() && pieces.back().x1 == r.x0 && pieces.back().slope == slope &&
                pieces.back().icept == icept) {
                pieces.back().x1 = r.x1;
            } else {
                pieces.push_back(PLPiece{r.x0, r.x1, slope, icept});
            }
        }
        out.push_back(PiecewiseLinearFn(std::move(pieces)));
    }
    return out;
}

Rat rat_floor(const Rat& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rat(q);
}

// Simplest rational (smallest denominator) in the closed interval [lo, hi],
// by Stern-Brocot descent. Used to round a floating-point iteration limit to
// the exact equilibrium candidate it approximates.
Rat simplest_in(const Rat& lo, const Rat& hi) {
    if (lo <= Rat(0) && Rat(0) <= hi) return Rat(0);
    if (hi < Rat(0)) return -simplest_in(-hi, -lo);
    Rat fl = rat_floor(lo);
    Rat ce = lo == fl ? fl : fl + 1;
    if (ce <= hi) return ce;
    return fl + Rat(1) / simplest_in(Rat(1) / (hi - fl), Rat(1) / (lo - fl));
}

EquilibriumOutcome assemble(const MarketConfig& config, const SharingMechanism& mechanism,
                            const Rat& p_A, const Rat& p_B, Rat pi_A, Rat pi_B, Rat cw,
                            Rat transport, SolverDiagnostics diagnostics) {
    StageOutcome stage = personalized_stage(p_A, p_B, mechanism, config);
    EquilibriumOutcome out;
    out.config = config;
    out.mechanism = mechanism;
    out.prices = PriceSystem{p_A, p_B, std::move(stage.schedules)};
    out.allocation = std::move(stage.allocation);
    out.pi_A = std::move(pi_A);
    out.pi_B = std::move(pi_B);
    out.cw = std::move(cw);
    out.transport = std::move(transport);
    out.welfare = welfare_from_runs(out.allocation, config);
    out.diagnostics = std::move(diagnostics);
    return out;
}

} // namespace

EquilibriumOutcome solve_equilibrium(const SharingMechanism& mechanism, const MarketConfig& config,
                                     const SolveOptions& options) {
    validate_market(config);
    detail::Eng<Rat> eng(config, mechanism);

    Rat p_A, p_B;
    SolverDiagnostics diag;

    detail::SolveResult<Rat> res;
    if (!options.force_iteration) res = eng.solve_enumerate();

    if (res.ok) {
        p_A = res.p_A;
        p_B = res.p_B;
        diag.method = "enumeration";
        diag.certified = std::move(res.certified);
        diag.degenerate_A = res.degenerate_A;
        diag.degenerate_B = res.degenerate_B;
    } else {
        // Fallback: damped simultaneous best-response iteration in floating
        // point, then exact undamped polishing and certification.
        detail::Eng<double> feng(config, mechanism);
        double t_f = feng.t;
        auto it = feng.iterate(t_f, t_f, options.damping, options.max_iterations,
                               options.tolerance);
        if (!it.converged) {
            std::ostringstream msg;
            msg << "best-response iteration did not converge after " << it.iterations
                << " steps (last prices " << it.p_A << ", " << it.p_B << ")";
            throw NonConvergence(msg.str());
        }
        // The iterate is a double within `tolerance` of the fixed point; the
        // exact best-response map contracts but only reaches the fixed point
        // in the limit. Round each candidate to the simplest rational nearby
        // and let exact certification be the gate: a wrong rounding cannot
        // certify, it just sends us around the polish loop again.
        Rat pa(it.p_A), pb(it.p_B);
        const Rat radii[] = {eng.t / 1000000000, eng.t / 1000000};
        auto snap_certify = [&](const Rat& a, const Rat& b) -> bool {
            for (const Rat& r : radii) {
                Rat sa = simplest_in(rat_max(a - r, Rat(0)), a + r);
                Rat sb = simplest_in(rat_max(b - r, Rat(0)), b + r);
                if (eng.certify(sa, sb)) {
                    pa = sa;
                    pb = sb;
                    return true;
                }
            }
            return false;
        };
        bool certified = eng.certify(pa, pb) || snap_certify(pa, pb);
        std::vector<std::pair<Rat, Rat>> trail;
        for (int round = 0; round < 8 && !certified; ++round) {
            Rat na = eng.best_response(Firm::A, pb).price;
            Rat nb = eng.best_response(Firm::B, na).price;
            pa = na;
            pb = nb;
            trail.emplace_back(pa, pb);
            certified = eng.certify(pa, pb) || snap_certify(pa, pb);
        }
        if (!certified) {
            std::ostringstream msg;
            msg << "iteration converged near (" << it.p_A << ", " << it.p_B
                << ") but no exact candidate certifies; polish trajectory:";
            for (auto& [a, b] : trail)
                msg << " (" << rat_to_string(a) << ", " << rat_to_string(b) << ")";
            throw NoPureEquilibrium(msg.str());
        }
        p_A = pa;
        p_B = pb;
        diag.method = "iteration";
        diag.iterations = it.iterations;
        diag.certified = {{p_A, p_B}};
        diag.degenerate_A = eng.best_response(Firm::A, p_B).degenerate;
        diag.degenerate_B = eng.best_response(Firm::B, p_A).degenerate;
    }

    detail::Metrics<Rat> m = eng.metrics(p_A, p_B);
    return assemble(config, mechanism, p_A, p_B, m.pi_A, m.pi_B, m.cw, m.transport,
                    std::move(diag));
}

// --- closed-form reference table ---------------------------------------------

Scenario scenario_from_name(const std::string& name) {
    if (name == "1seg-none") return Scenario::OneSegNone;
    if (name == "1seg-full") return Scenario::OneSegFull;
    if (name == "1seg-eps") return Scenario::OneSegEps;
    if (name == "1seg-firmopt") return Scenario::OneSegFirmOpt;
    if (name == "2seg-consumeropt") return Scenario::TwoSegConsumerOpt;
    if (name == "2seg-firmopt") return Scenario::TwoSegFirmOpt;
    if (name == "4seg-none") return Scenario::FourSegNone;
    if (name == "4seg-full") return Scenario::FourSegFull;
    if (name == "4seg-consumeropt") return Scenario::FourSegConsumerOpt;
    if (name == "4seg-firmopt") return Scenario::FourSegFirmOpt;
    throw UnknownScenario("unknown scenario: " + name);
}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::OneSegNone: return "1seg-none";
        case Scenario::OneSegFull: return "1seg-full";
        case Scenario::OneSegEps: return "1seg-eps";
        case Scenario::OneSegFirmOpt: return "1seg-firmopt";
        case Scenario::TwoSegConsumerOpt: return "2seg-consumeropt";
        case Scenario::TwoSegFirmOpt: return "2seg-firmopt";
        case Scenario::FourSegNone: return "4seg-none";
        case Scenario::FourSegFull: return "4seg-full";
        case Scenario::FourSegConsumerOpt: return "4seg-consumeropt";
        case Scenario::FourSegFirmOpt: return "4seg-firmopt";
    }
    throw UnknownScenario("unknown scenario enum value");
}

const std::vector<Scenario>& all_scenarios() {
    static const std::vector<Scenario> list = {
        Scenario::OneSegNone,        Scenario::OneSegFull,
        Scenario::OneSegEps,         Scenario::OneSegFirmOpt,
        Scenario::TwoSegConsumerOpt, Scenario::TwoSegFirmOpt,
        Scenario::FourSegNone,       Scenario::FourSegFull,
        Scenario::FourSegConsumerOpt, Scenario::FourSegFirmOpt,
    };
    return list;
}

MarketConfig scenario_config(Scenario scenario, const Rat& v, const Rat& t) {
    switch (scenario) {
        case Scenario::OneSegNone:
        case Scenario::OneSegFull:
        case Scenario::OneSegEps:
        case Scenario::OneSegFirmOpt: return MarketConfig::one_segment(v, t);
        case Scenario::TwoSegConsumerOpt:
        case Scenario::TwoSegFirmOpt: return MarketConfig::two_segment(v, t);
        default: return MarketConfig::four_segment(v, t);
    }
}

SharingMechanism scenario_mechanism(Scenario scenario, const Rat& eps) {
    switch (scenario) {
        case Scenario::OneSegNone:
        case Scenario::FourSegNone: return SharingMechanism::none();
        case Scenario::OneSegFull:
        case Scenario::FourSegFull: return SharingMechanism::full();
        case Scenario::OneSegEps:
            return SharingMechanism{IntervalSet::single(eps, frac(1, 2)), IntervalSet::empty_set()};
        case Scenario::OneSegFirmOpt:
            return SharingMechanism{IntervalSet::single(frac(1, 4), frac(3, 8)),
                                    IntervalSet::empty_set()};
        case Scenario::TwoSegConsumerOpt:
            return product_mechanism(SharingMechanism{
                IntervalSet::single(frac(1, 4), frac(1, 2)), IntervalSet::empty_set()});
        case Scenario::TwoSegFirmOpt:
            return product_mechanism(SharingMechanism{
                IntervalSet::single(frac(1, 4), frac(3, 8)), IntervalSet::empty_set()});
        case Scenario::FourSegConsumerOpt:
            return SharingMechanism{IntervalSet::single(frac(1, 6), frac(1, 2)),
                                    IntervalSet::single(frac(1, 2), frac(5, 6))};
        case Scenario::FourSegFirmOpt:
            return SharingMechanism{IntervalSet::single(frac(1, 6), frac(1, 3)),
                                    IntervalSet::single(frac(2, 3), frac(5, 6))};
    }
    throw UnknownScenario("unknown scenario enum value");
}

EquilibriumOutcome closed_form_reference(Scenario scenario, const Rat& v, const Rat& t,
                                         const Rat& eps) {
    if (scenario == Scenario::OneSegEps && (eps <= Rat(0) || eps > frac(1, 4)))
        throw BadParam("1seg-eps reference requires eps in (0, 1/4]");

    MarketConfig config = validate_market(scenario_config(scenario, v, t));
    SharingMechanism mech = scenario_mechanism(scenario, eps);

    Rat p_A, p_B, pi_A, pi_B, cw_gap; // cw = v - cw_gap * t
    bool deg_A = false, deg_B = false;
    switch (scenario) {
        case Scenario::OneSegNone:
            p_A = t / 2;
            p_B = 0;
            deg_B = true;
            pi_A = t / 8;
            pi_B = t * frac(9, 16);
            cw_gap = 1;
            break;
        case Scenario::OneSegFull:
            p_A = 0;
            p_B = 0;
            deg_A = deg_B = true;
            pi_A = t / 4;
            pi_B = t / 4;
            cw_gap = frac(3, 4);
            break;
        case Scenario::OneSegEps:
            p_A = t * (Rat(1) - eps * 2);
            p_B = 0;
            deg_B = true;
            pi_A = t * (frac(1, 4) - eps * eps);
            pi_B = t * (frac(3, 4) - eps);
            cw_gap = frac(5, 4) - eps - eps * eps;
            break;
        case Scenario::OneSegFirmOpt:
            p_A = t / 2;
            p_B = 0;
            deg_B = true;
            pi_A = t * frac(11, 64);
            pi_B = t * frac(35, 64);
            cw_gap = frac(63, 64);
            break;
        case Scenario::TwoSegConsumerOpt:
            p_A = p_B = t / 2;
            pi_A = pi_B = t * frac(11, 32);
            cw_gap = frac(15, 16);
            break;
        case Scenario::TwoSegFirmOpt:
            p_A = p_B = t / 2;
            pi_A = pi_B = t * frac(23, 64);
            cw_gap = frac(63, 64);
            break;
        case Scenario::FourSegNone:
            p_A = p_B = t * frac(2, 3);
            pi_A = pi_B = t * frac(25, 72);
            cw_gap = 1;
            break;
        case Scenario::FourSegFull:
            p_A = p_B = t;
            pi_A = pi_B = t * frac(5, 16);
            cw_gap = frac(7, 8);
            break;
        case Scenario::FourSegConsumerOpt:
            p_A = p_B = t * frac(2, 3);
            pi_A = pi_B = t * frac(25, 72);
            cw_gap = frac(17, 18);
            break;
        case Scenario::FourSegFirmOpt:
            // CW carries the exactly integrated gain t/72 per side over the
            // stated baseline v - t (see docs/derivations.md).
            p_A = p_B = t * frac(2, 3);
            pi_A = pi_B = t * frac(13, 36);
            cw_gap = frac(71, 72);
            break;
    }

    Rat cw = v - cw_gap * t;
    Rat transport = v - pi_A - pi_B - cw; // surplus identity, by construction
    SolverDiagnostics diag;
    diag.method = "reference";
    diag.degenerate_A = deg_A;
    diag.degenerate_B = deg_B;
    diag.certified = {{p_A, p_B}};
    return assemble(config, mech, p_A, p_B, std::move(pi_A), std::move(pi_B), std::move(cw),
                    std::move(transport), std::move(diag));
}

} // namespace hotshare
