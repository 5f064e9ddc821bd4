#pragma once

#include <array>
#include <string>
#include <vector>

#include "hotshare/interval_set.hpp"
#include "hotshare/rational.hpp"

namespace hotshare {

// The two firms sit at the ends of the unit interval.
enum class Firm { A, B }; // theta_A = 0, theta_B = 1

inline const char* firm_name(Firm f) { return f == Firm::A ? "A" : "B"; }

// Consumer segments, keyed by which firms natively know locations there.
enum class SegKind { AOnly = 0, BOnly = 1, Neither = 2, Both = 3 };
inline constexpr std::array<SegKind, 4> all_segments = {
    SegKind::AOnly, SegKind::BOnly, SegKind::Neither, SegKind::Both};

const char* segment_name(SegKind k);          // "A-only", "B-only", "neither", "both"
SegKind segment_from_name(const std::string&); // throws ParseError

// Density over [0,1]: uniform, or piecewise constant on 0 = x0 < ... < xk = 1.
// Must integrate to exactly 1 (segment mass is carried separately).
struct DensitySpec {
    std::vector<Rat> breakpoints; // size k+1, first 0, last 1
    std::vector<Rat> levels;      // size k, nonnegative

    static DensitySpec uniform();
    static DensitySpec piecewise(std::vector<Rat> breakpoints, std::vector<Rat> levels);

    bool is_uniform() const;
    Rat cdf(const Rat& y) const;         // integral over [0, clamp01(y))
    Rat level_at(const Rat& theta) const; // density value (right-continuous, last piece closed)
    // Integral of (slope*theta + intercept) * density over [lo, hi).
    Rat integrate_linear(const Rat& lo, const Rat& hi, const Rat& slope, const Rat& intercept) const;
    // Measure of an interval set under this density.
    Rat measure(const IntervalSet& s) const;

    bool operator==(const DensitySpec&) const = default;
};

struct SegmentSpec {
    SegKind kind = SegKind::Neither;
    Rat mass;            // q_i >= 0
    DensitySpec density; // integrates to 1

    bool operator==(const SegmentSpec&) const = default;
};

// Market primitives: valuation v, transport cost t, and the four segments.
struct MarketConfig {
    Rat v;
    Rat t;
    std::array<SegmentSpec, 4> segments; // indexed by SegKind

    const SegmentSpec& seg(SegKind k) const { return segments[static_cast<size_t>(k)]; }
    SegmentSpec& seg(SegKind k) { return segments[static_cast<size_t>(k)]; }
    const Rat& mass(SegKind k) const { return seg(k).mass; }
    const DensitySpec& density(SegKind k) const { return seg(k).density; }

    bool operator==(const MarketConfig&) const = default;

    // Uniform-density config helpers used by reference scenarios and tests.
    static MarketConfig uniform(const Rat& v, const Rat& t,
                                const Rat& qA, const Rat& qB, const Rat& qN, const Rat& qD);
    static MarketConfig one_segment(const Rat& v, const Rat& t);  // all mass on B-only
    static MarketConfig two_segment(const Rat& v, const Rat& t);  // half A-only, half B-only
    static MarketConfig four_segment(const Rat& v, const Rat& t); // even quarters
};

// Data-sharing mechanism: what B reveals to A on S_B, and A to B on S_A.
struct SharingMechanism {
    IntervalSet share_B_to_A; // subset of S_B locations
    IntervalSet share_A_to_B; // subset of S_A locations

    static SharingMechanism none() { return {}; }
    static SharingMechanism full() {
        return {IntervalSet::full(), IntervalSet::full()};
    }

    bool operator==(const SharingMechanism&) const = default;
    std::string to_string() const;
};

// Throws CoverageViolation / MassViolation / DensityViolation; returns the
// config unchanged when every invariant holds.
const MarketConfig& validate_market(const MarketConfig& config);

// v - price - t*|theta - theta_firm|; DomainError outside the domain.
Rat consumer_utility(const Rat& theta, Firm firm, const Rat& price, const MarketConfig& config);

// Which locations each firm knows on each segment once the mechanism runs.
struct SegmentKnowledge {
    IntervalSet known_to_A;
    IntervalSet known_to_B;
};
std::array<SegmentKnowledge, 4> knowledge_partition(const SharingMechanism& mechanism);

} // namespace hotshare
