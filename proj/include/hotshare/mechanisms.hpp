#pragma once

// Canonical mechanism constructors, the two-segment product construction, the
// epsilon-window arithmetic, general-distribution firm-optimal plans with IR
// integral checks, closed-form no-sharing prices, and the constrained grid
// search over single-interval-per-side mechanisms.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hotshare/equilibrium.hpp"
#include "hotshare/market.hpp"
#include "hotshare/welfare.hpp"

namespace hotshare {

// Named mechanisms. `eps` is consulted only by "1seg-eps" and must lie in
// (0, 1/4] unless allow_out_of_range is set (results outside that range are
// solver output, not closed-form-backed).
// Names: "no-sharing", "full-sharing", "1seg-eps", "1seg-firmopt",
// "2seg-consumeropt", "2seg-firmopt", "4seg-consumeropt", "4seg-firmopt".
SharingMechanism canonical_mechanism(const std::string& name, const MarketConfig& config,
                                     const Rat& eps = Rat(0), bool allow_out_of_range = false);

// Two-segment product construction: B shares m's set on S_B and A shares its
// mirror image on S_A. Requires m to share on the B side only.
SharingMechanism product_mechanism(const SharingMechanism& m);

// The exact solution window of 1/4 < eps + eps^2 < 5/16. The upper endpoint
// is exactly 1/4; the lower endpoint (sqrt(2)-1)/2 is irrational, so the
// window is exposed through exact sign checks plus a float approximation.
struct EpsilonWindow {
    bool lower_ok(const Rat& eps) const { return eps * eps + eps > frac(1, 4); }
    bool upper_ok(const Rat& eps) const { return eps * eps + eps < frac(5, 16); }
    bool contains(const Rat& eps) const { return lower_ok(eps) && upper_ok(eps); }
    Rat upper_endpoint() const { return frac(1, 4); }
    double lower_endpoint_approx() const; // (sqrt(2) - 1) / 2
};
EpsilonWindow epsilon_window();

// Firm-optimal sharing plan for general piecewise-constant densities, built
// from the no-sharing equilibrium prices.
struct AppendixPlan {
    Rat alpha1, alpha2; // 1/2 - p_A/(2t) and 1/2 + p_B/(2t)
    IntervalSet interval_B; // [alpha1, (1+2*alpha1)/4) on S_B
    IntervalSet interval_A; // [(1+2*alpha2)/4, alpha2) on S_A
    // IR integral inequalities: lhs = what the firm gains on the rival's
    // shared set, rhs = what it loses on its own shared set.
    Rat ir_lhs_A, ir_rhs_A;
    Rat ir_lhs_B, ir_rhs_B;
};

struct AppendixResult {
    AppendixPlan plan;
    SharingMechanism mechanism;
    bool ir_ok; // both integral inequalities hold
};

AppendixResult appendix_firm_optimal(const MarketConfig& config);

// Closed-form no-sharing uniform prices for uniform densities and masses
// (q_A, q_B, q_N) with q_A, q_B > 0 (q_AB fills the remainder).
std::pair<Rat, Rat> no_sharing_prices_general(const Rat& q_A, const Rat& q_B, const Rat& q_N,
                                              const Rat& t);

// 3*q_B >= q_A >= q_B/3.
bool mass_ratio_ir_check(const Rat& q_A, const Rat& q_B);

// --- constrained grid search ---------------------------------------------------

enum class SearchConstraint {
    NoHarm,  // no consumer pointwise worse off than under no sharing
    JointIR, // pi_A + pi_B weakly above the no-sharing sum
    None,    // unconstrained
};
enum class SearchObjective { JointProfit, ConsumerWelfare };

SearchConstraint search_constraint_from_name(const std::string& name); // no-harm|joint-ir|none
SearchObjective search_objective_from_name(const std::string& name);   // profit|cw

struct FrontierPoint {
    SharingMechanism mechanism;
    double joint, cw; // scan-precision values
};

struct SearchStats {
    size_t mechanisms_scanned = 0;
    size_t feasible = 0;       // under the requested constraint, scan precision
    size_t exact_solves = 0;   // finalists re-solved exactly
    size_t float_failures = 0; // scan could not certify an equilibrium (exact-solved instead)
};

struct SearchResult {
    SharingMechanism best;
    EquilibriumOutcome best_outcome; // exact
    ParetoVerdict best_verdict;      // vs the no-sharing baseline
    Rat best_objective;              // exact objective value of `best`
    std::vector<FrontierPoint> frontier; // non-dominated (joint, CW) pairs among feasible
    SearchStats stats;
};

// Scans every single-interval-per-side mechanism with endpoints on the grid
// {0, r, 2r, ..., 1} once (fast floating-point prefilter), then answers
// (constraint, objective) queries by re-solving near-optimal finalists with
// the exact engine. Sides whose segment carries zero mass only contribute the
// empty set. The empty mechanism is always scanned, so a result always
// exists under every constraint.
class SearchEngine {
public:
    SearchEngine(const MarketConfig& config, const Rat& resolution);

    SearchResult run(SearchConstraint constraint, SearchObjective objective) const;

    // Every scanned point as CSV (endpoints, joint, CW, feasibility flags).
    void write_all_points(std::ostream& os) const;

    const EquilibriumOutcome& baseline() const { return baseline_; }

private:
    struct Record {
        double joint, cw;
        double harm; // min consumer utility change vs baseline
        std::uint8_t a, b, c, d; // grid indices; a==b / c==d encode an empty side
        bool certified;
    };

    Rat grid(std::uint8_t i) const { return resolution_ * i; }
    SharingMechanism mechanism_of(const Record& r) const;
    bool feasible(const Record& r, SearchConstraint c) const;

    MarketConfig config_;
    Rat resolution_;
    int k_ = 0;
    EquilibriumOutcome baseline_;
    double base_joint_ = 0, base_cw_ = 0, tol_ = 0;
    std::vector<Record> records_;
};

// One-shot convenience wrapper around SearchEngine.
SearchResult search_interval_mechanisms(const MarketConfig& config, SearchConstraint constraint,
                                        SearchObjective objective, const Rat& resolution);

} // namespace hotshare
