#pragma once

#include <utility>
#include <vector>

#include "hotshare/rational.hpp"

namespace hotshare {

// Finite union of half-open intervals [a,b) inside [0,1], kept sorted and
// disjoint. An interval ending at b = 1 is treated as closed at 1, so the
// full set [0,1] is representable. Construction normalizes arbitrary input
// (unsorted, overlapping, touching) into this canonical form; normalization
// is idempotent.
class IntervalSet {
public:
    using Interval = std::pair<Rat, Rat>; // [first, second)

    IntervalSet() = default;

    // Normalizing constructor: clips to [0,1], drops empty pieces, sorts,
    // merges overlapping and touching pieces.
    static IntervalSet normalized(std::vector<Interval> raw);

    // Convenience for a single interval [a,b).
    static IntervalSet single(const Rat& a, const Rat& b);

    static IntervalSet empty_set() { return IntervalSet(); }
    static IntervalSet full() { return single(Rat(0), Rat(1)); }

    bool empty() const { return iv_.empty(); }
    const std::vector<Interval>& intervals() const { return iv_; }

    // Lebesgue measure.
    Rat measure() const;

    // Membership under the half-open convention (b = 1 counts as closed).
    bool contains(const Rat& theta) const;

    // Set algebra within [0,1].
    IntervalSet complement() const;
    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet intersect(const IntervalSet& other) const;

    // Mirror image {1 - x : x in set}; the reflected right-closed intervals
    // are stored in the half-open canon (measure-equivalent).
    IntervalSet mirror() const;

    // Endpoints, in order (used as breakpoints by the pricing machinery).
    std::vector<Rat> endpoints() const;

    bool operator==(const IntervalSet& o) const { return iv_ == o.iv_; }
    bool operator!=(const IntervalSet& o) const { return !(*this == o); }

    std::string to_string() const; // e.g. "[1/6,1/3) u [2/3,5/6)"

private:
    std::vector<Interval> iv_;
};

} // namespace hotshare
