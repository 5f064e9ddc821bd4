#pragma once

#include <vector>

#include "hotshare/rational.hpp"

namespace hotshare {

// Piecewise-linear function over sub-intervals of [0,1]. Pieces are sorted
// and non-overlapping; each piece is half-open [x0,x1) except that the piece
// ending at 1 also covers theta = 1. Pieces need not be contiguous (a
// personalized schedule exists only where the firm knows the consumer), and
// values may jump across a shared-set boundary.
struct PLPiece {
    Rat x0, x1;       // [x0, x1)
    Rat slope, icept; // value = slope*theta + icept

    bool operator==(const PLPiece&) const = default;
};

class PiecewiseLinearFn {
public:
    PiecewiseLinearFn() = default;
    explicit PiecewiseLinearFn(std::vector<PLPiece> pieces) : pieces_(std::move(pieces)) {}

    const std::vector<PLPiece>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }

    // Value at theta; DomainError if theta is outside every piece.
    Rat eval(const Rat& theta) const;
    bool covers(const Rat& theta) const;

    // All piece endpoints, sorted, deduplicated.
    std::vector<Rat> breakpoints() const;

    // Smallest value over the closure of every piece (endpoints included even
    // when the piece is half-open, i.e. the infimum over piece interiors).
    Rat min_over_closure() const;

    void append(PLPiece p) { pieces_.push_back(std::move(p)); }

    bool operator==(const PiecewiseLinearFn&) const = default;

private:
    std::vector<PLPiece> pieces_;
};

} // namespace hotshare
