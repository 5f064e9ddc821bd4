#include "hotshare/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <tuple>

#include "hotshare/detail/engine.hpp"
#include "hotshare/errors.hpp"

namespace hotshare {

SharingMechanism canonical_mechanism(const std::string& name, const MarketConfig& config,
                                     const Rat& eps, bool allow_out_of_range) {
    (void)config; // interval shapes are config-independent
    if (name == "no-sharing") return SharingMechanism::none();
    if (name == "full-sharing") return SharingMechanism::full();
    if (name == "1seg-eps") {
        if (!allow_out_of_range && (eps <= Rat(0) || eps > frac(1, 4)))
            throw BadParam("1seg-eps requires eps in (0, 1/4] (pass the override to extrapolate)");
        if (eps <= Rat(0) || eps >= frac(1, 2))
            throw BadParam("1seg-eps interval [eps, 1/2) requires eps in (0, 1/2)");
        return SharingMechanism{IntervalSet::single(eps, frac(1, 2)), IntervalSet::empty_set()};
    }
    if (name == "1seg-firmopt")
        return SharingMechanism{IntervalSet::single(frac(1, 4), frac(3, 8)),
                                IntervalSet::empty_set()};
    if (name == "2seg-consumeropt")
        return product_mechanism(SharingMechanism{IntervalSet::single(frac(1, 4), frac(1, 2)),
                                                  IntervalSet::empty_set()});
    if (name == "2seg-firmopt")
        return product_mechanism(SharingMechanism{IntervalSet::single(frac(1, 4), frac(3, 8)),
                                                  IntervalSet::empty_set()});
    if (name == "4seg-consumeropt")
        return SharingMechanism{IntervalSet::single(frac(1, 6), frac(1, 2)),
                                IntervalSet::single(frac(1, 2), frac(5, 6))};
    if (name == "4seg-firmopt")
        return SharingMechanism{IntervalSet::single(frac(1, 6), frac(1, 3)),
                                IntervalSet::single(frac(2, 3), frac(5, 6))};
    throw BadParam("unknown canonical mechanism: " + name);
}

SharingMechanism product_mechanism(const SharingMechanism& m) {
    if (!m.share_A_to_B.empty())
        throw BadParam("product construction expects a mechanism sharing on the B side only");
    return SharingMechanism{m.share_B_to_A, m.share_B_to_A.mirror()};
}

double EpsilonWindow::lower_endpoint_approx() const { return (std::sqrt(2.0) - 1.0) / 2.0; }

EpsilonWindow epsilon_window() { return EpsilonWindow{}; }

AppendixResult appendix_firm_optimal(const MarketConfig& config) {
    validate_market(config);
    EquilibriumOutcome base = solve_equilibrium(SharingMechanism::none(), config);
    const Rat& t = config.t;
    const Rat& p_A = base.prices.p_A;
    const Rat& p_B = base.prices.p_B;
    const Rat two_t = t * 2;

    AppendixPlan plan;
    plan.alpha1 = frac(1, 2) - p_A / two_t;
    plan.alpha2 = frac(1, 2) + p_B / two_t;
    Rat hi_B = (Rat(1) + plan.alpha1 * 2) / 4;
    Rat lo_A = (Rat(1) + plan.alpha2 * 2) / 4;
    plan.interval_B = plan.alpha1 < hi_B ? IntervalSet::single(plan.alpha1, hi_B)
                                         : IntervalSet::empty_set();
    plan.interval_A = lo_A < plan.alpha2 ? IntervalSet::single(lo_A, plan.alpha2)
                                         : IntervalSet::empty_set();

    const Rat& q_A = config.mass(SegKind::AOnly);
    const Rat& q_B = config.mass(SegKind::BOnly);
    const DensitySpec& f_A = config.density(SegKind::AOnly);
    const DensitySpec& f_B = config.density(SegKind::BOnly);

    // A gains the duel revenue t(1-2theta) on the set B shares; A loses its
    // match revenue p_B + t(1-2theta) on the set it shares. Symmetrically for
    // B with p_A - t(1-2theta) on the B-side set.
    auto over = [](const IntervalSet& s, const DensitySpec& f, const Rat& slope, const Rat& icept) {
        Rat acc(0);
        for (const auto& [a, b] : s.intervals()) acc += f.integrate_linear(a, b, slope, icept);
        return acc;
    };
    plan.ir_lhs_A = q_B * over(plan.interval_B, f_B, -two_t, t);
    plan.ir_rhs_A = q_A * over(plan.interval_A, f_A, -two_t, p_B + t);
    plan.ir_lhs_B = q_A * over(plan.interval_A, f_A, two_t, -t);
    plan.ir_rhs_B = q_B * over(plan.interval_B, f_B, two_t, p_A - t);

    AppendixResult res;
    res.mechanism = SharingMechanism{plan.interval_B, plan.interval_A};
    res.ir_ok = plan.ir_lhs_A >= plan.ir_rhs_A && plan.ir_lhs_B >= plan.ir_rhs_B;
    res.plan = std::move(plan);
    return res;
}

std::pair<Rat, Rat> no_sharing_prices_general(const Rat& q_A, const Rat& q_B, const Rat& q_N,
                                              const Rat& t) {
    if (q_A <= Rat(0) || q_B <= Rat(0) || q_N < Rat(0) || q_A + q_B + q_N > Rat(1))
        throw BadMasses("need q_A > 0, q_B > 0, q_neither >= 0, sum at most 1");
    if (t <= Rat(0)) throw BadParam("transport cost must be positive");
    Rat den = (q_B * q_A + q_B * q_N + q_A * q_N) * 4 + q_N * q_N * 3;
    Rat num_A = (q_B * q_A + q_B * q_N) * 2 + q_A * q_N * 3 + q_N * q_N * 3;
    Rat num_B = (q_A * q_B + q_A * q_N) * 2 + q_B * q_N * 3 + q_N * q_N * 3;
    return {t * num_A / den, t * num_B / den};
}

bool mass_ratio_ir_check(const Rat& q_A, const Rat& q_B) {
    if (q_A <= Rat(0) || q_B <= Rat(0)) throw BadMasses("need q_A > 0 and q_B > 0");
    return q_B * 3 >= q_A && q_A * 3 >= q_B;
}

// --- search ---------------------------------------------------------------------

SearchConstraint search_constraint_from_name(const std::string& name) {
    if (name == "no-harm") return SearchConstraint::NoHarm;
    if (name == "joint-ir") return SearchConstraint::JointIR;
    if (name == "none") return SearchConstraint::None;
    throw BadParam("unknown search constraint: " + name + " (want no-harm, joint-ir, or none)");
}

SearchObjective search_objective_from_name(const std::string& name) {
    if (name == "profit") return SearchObjective::JointProfit;
    if (name == "cw") return SearchObjective::ConsumerWelfare;
    throw BadParam("unknown search objective: " + name + " (want profit or cw)");
}

SearchEngine::SearchEngine(const MarketConfig& config, const Rat& resolution)
    : config_(validate_market(config)), resolution_(resolution) {
    if (resolution <= Rat(0) || resolution > frac(1, 2))
        throw BadParam("search resolution must lie in (0, 1/2]");
    Rat inv = Rat(1) / resolution;
    if (inv.get_den() != 1)
        throw BadParam("search resolution must divide 1 (got " + rat_to_string(resolution) + ")");
    if (inv.get_num() > 250) throw BadParam("search resolution finer than 1/250 is not supported");
    k_ = static_cast<int>(inv.get_num().get_si());

    baseline_ = solve_equilibrium(SharingMechanism::none(), config_);

    const double pa0 = detail::conv<double>(baseline_.prices.p_A);
    const double pb0 = detail::conv<double>(baseline_.prices.p_B);
    const double t_f = detail::conv<double>(config_.t);
    base_joint_ = detail::conv<double>(baseline_.pi_A + baseline_.pi_B);
    base_cw_ = detail::conv<double>(baseline_.cw);
    tol_ = 1e-9 * t_f;

    auto side = [&](SegKind k) {
        std::vector<std::pair<std::uint8_t, std::uint8_t>> out;
        out.push_back({0, 0}); // empty set
        if (config_.mass(k) > Rat(0))
            for (int i = 0; i < k_; ++i)
                for (int j = i + 1; j <= k_; ++j)
                    out.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
        return out;
    };
    auto sides_B = side(SegKind::BOnly);
    auto sides_A = side(SegKind::AOnly);
    records_.reserve(sides_B.size() * sides_A.size());

    const double gs_tol = 1e-12 * t_f;
    for (auto [a, b] : sides_B) {
        for (auto [c, d] : sides_A) {
            SharingMechanism mech{
                a == b ? IntervalSet::empty_set() : IntervalSet::single(grid(a), grid(b)),
                c == d ? IntervalSet::empty_set() : IntervalSet::single(grid(c), grid(d))};
            detail::Eng<double> eng(config_, mech);
            double pa = pa0, pb = pb0;
            bool settled = false;
            for (int it = 0; it < 60 && !settled; ++it) {
                double na = eng.best_response(Firm::A, pb).price;
                double nb = eng.best_response(Firm::B, na).price;
                settled = std::abs(na - pa) <= gs_tol && std::abs(nb - pb) <= gs_tol;
                pa = na;
                pb = nb;
            }
            if (!settled) {
                auto itr = eng.iterate(pa0, pb0, 0.5, 4000, 1e-13);
                pa = eng.best_response(Firm::A, itr.p_B).price;
                pb = eng.best_response(Firm::B, pa).price;
            }
            Record rec;
            rec.a = a;
            rec.b = b;
            rec.c = c;
            rec.d = d;
            rec.certified = eng.certify(pa, pb);
            auto m = eng.metrics(pa, pb);
            rec.joint = m.pi_A + m.pi_B;
            rec.cw = m.cw;
            rec.harm = eng.harm_min(pa, pb, pa0, pb0);
            records_.push_back(rec);
        }
    }
}

SharingMechanism SearchEngine::mechanism_of(const Record& r) const {
    return SharingMechanism{
        r.a == r.b ? IntervalSet::empty_set() : IntervalSet::single(grid(r.a), grid(r.b)),
        r.c == r.d ? IntervalSet::empty_set() : IntervalSet::single(grid(r.c), grid(r.d))};
}

bool SearchEngine::feasible(const Record& r, SearchConstraint c) const {
    switch (c) {
        case SearchConstraint::NoHarm: return r.harm >= -tol_;
        case SearchConstraint::JointIR: return r.joint >= base_joint_ - tol_;
        case SearchConstraint::None: return true;
    }
    return false;
}

SearchResult SearchEngine::run(SearchConstraint constraint, SearchObjective objective) const {
    SearchResult result;
    result.stats.mechanisms_scanned = records_.size();

    auto fobj = [&](const Record& r) {
        return objective == SearchObjective::JointProfit ? r.joint : r.cw;
    };
    auto lex = [](const Record& r) { return std::make_tuple(r.a, r.b, r.c, r.d); };

    Rat base_joint_x = baseline_.pi_A + baseline_.pi_B;
    bool have_best = false;
    Rat best_obj(0);
    std::tuple<int, int, int, int> best_lex;
    EquilibriumOutcome best_outcome;
    SharingMechanism best_mech;

    auto consider_exact = [&](const Record& r) {
        SharingMechanism mech = mechanism_of(r);
        EquilibriumOutcome outcome = solve_equilibrium(mech, config_);
        result.stats.exact_solves++;
        bool ok = true;
        switch (constraint) {
            case SearchConstraint::NoHarm:
                ok = pareto_compare(outcome, baseline_, config_).consumers_no_worse;
                break;
            case SearchConstraint::JointIR:
                ok = outcome.pi_A + outcome.pi_B >= base_joint_x;
                break;
            case SearchConstraint::None: break;
        }
        if (!ok) return;
        Rat obj = objective == SearchObjective::JointProfit ? outcome.pi_A + outcome.pi_B
                                                            : outcome.cw;
        if (!have_best || obj > best_obj || (obj == best_obj && lex(r) < best_lex)) {
            have_best = true;
            best_obj = std::move(obj);
            best_lex = lex(r);
            best_outcome = std::move(outcome);
            best_mech = std::move(mech);
        }
    };

    // Records the float scan could not certify get the exact treatment
    // unconditionally: the prefilter must never hide the optimum.
    std::vector<const Record*> sorted;
    sorted.reserve(records_.size());
    for (const Record& r : records_) {
        if (!r.certified) {
            result.stats.float_failures++;
            consider_exact(r);
        } else if (feasible(r, constraint)) {
            result.stats.feasible++;
            sorted.push_back(&r);
        }
    }
    std::sort(sorted.begin(), sorted.end(), [&](const Record* x, const Record* y) {
        double fx = fobj(*x), fy = fobj(*y);
        if (fx != fy) return fx > fy;
        return lex(*x) < lex(*y);
    });

    const double delta = 1e-6 * detail::conv<double>(config_.t);
    for (const Record* r : sorted) {
        if (have_best && fobj(*r) < detail::conv<double>(best_obj) - delta) break;
        consider_exact(*r);
    }
    if (!have_best)
        throw NoPureEquilibrium("search found no feasible mechanism (baseline should qualify)");

    result.best = best_mech;
    result.best_outcome = best_outcome;
    result.best_verdict = pareto_compare(best_outcome, baseline_, config_);
    result.best_objective = best_obj;

    // Non-dominated (joint, CW) pairs among the scan-feasible records.
    std::vector<const Record*> pts = sorted;
    std::sort(pts.begin(), pts.end(), [&](const Record* x, const Record* y) {
        if (x->joint != y->joint) return x->joint > y->joint;
        if (x->cw != y->cw) return x->cw > y->cw;
        return lex(*x) < lex(*y);
    });
    double best_cw = -1e300;
    for (const Record* r : pts) {
        if (r->cw > best_cw) {
            best_cw = r->cw;
            result.frontier.push_back(FrontierPoint{mechanism_of(*r), r->joint, r->cw});
        }
    }
    std::reverse(result.frontier.begin(), result.frontier.end()); // ascending joint
    return result;
}

void SearchEngine::write_all_points(std::ostream& os) const {
    os << "share_B_lo,share_B_hi,share_A_lo,share_A_hi,joint,CW,min_consumer_gain,certified\n";
    char buf[128];
    for (const Record& r : records_) {
        std::string bl, bh, al, ah;
        if (r.a != r.b) {
            bl = rat_to_string(grid(r.a));
            bh = rat_to_string(grid(r.b));
        }
        if (r.c != r.d) {
            al = rat_to_string(grid(r.c));
            ah = rat_to_string(grid(r.d));
        }
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%d", r.joint, r.cw, r.harm,
                      r.certified ? 1 : 0);
        os << bl << ',' << bh << ',' << al << ',' << ah << ',' << buf << '\n';
    }
}

SearchResult search_interval_mechanisms(const MarketConfig& config, SearchConstraint constraint,
                                        SearchObjective objective, const Rat& resolution) {
    return SearchEngine(config, resolution).run(constraint, objective);
}

} // namespace hotshare
