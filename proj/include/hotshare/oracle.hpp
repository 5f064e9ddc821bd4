#pragma once

// Independent floating-point brute force: best-response dynamics on a
// discrete price grid, with the personalized stage re-derived per grid
// consumer from raw utility comparisons, plus midpoint-Riemann
// re-integration of exact outcomes. Deliberately shares no code path with
// the exact engine.

#include <utility>
#include <vector>

#include "hotshare/equilibrium.hpp"
#include "hotshare/market.hpp"

namespace hotshare {

struct OracleOutcome {
    double p_A = 0, p_B = 0;   // settled uniform prices (grid points)
    double pi_A = 0, pi_B = 0; // Riemann-sum profits at those prices
    double cw = 0;             // Riemann-sum consumer welfare
    bool converged = false;
    int rounds = 0;
    // One full period of (p_A, p_B) states when the dynamics cycle instead
    // of settling. Reported, never thrown: the exact engine result stands.
    std::vector<std::pair<double, double>> cycle;
};

// Best-response dynamics on the price grid {0, step, ..., <= v}, starting
// from (t, t), with consumer_grid_n midpoint consumers per nonempty segment.
// pre: price_grid_step > 0, consumer_grid_n >= 1000 (BadParam).
OracleOutcome grid_equilibrium(const SharingMechanism& mechanism, const MarketConfig& config,
                               double price_grid_step, int consumer_grid_n);

// Same, from an explicit starting price pair (snapped to the grid).
OracleOutcome grid_equilibrium_from(const SharingMechanism& mechanism, const MarketConfig& config,
                                    double price_grid_step, int consumer_grid_n, double start_A,
                                    double start_B);

struct RiemannReport {
    double pi_A_dev = 0, pi_B_dev = 0, cw_dev = 0;
    double max_dev = 0; // largest of the three absolute deviations
};

// Recomputes profits and consumer welfare from the outcome's allocation by
// n-point midpoint sums per segment and reports absolute deviations from the
// outcome's exact values. pre: n >= 1000 (BadParam).
RiemannReport riemann_check(const EquilibriumOutcome& outcome, const MarketConfig& config, int n);

} // namespace hotshare
