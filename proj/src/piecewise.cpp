#include "hotshare/piecewise.hpp"

#include <algorithm>

#include "hotshare/errors.hpp"

namespace hotshare {

Rat PiecewiseLinearFn::eval(const Rat& theta) const {
    for (auto& p : pieces_) {
        if (theta >= p.x0 && (theta < p.x1 || (theta == p.x1 && p.x1 == 1)))
            return p.slope * theta + p.icept;
    }
    throw DomainError("piecewise function not defined at " + rat_to_string(theta));
}

bool PiecewiseLinearFn::covers(const Rat& theta) const {
    for (auto& p : pieces_)
        if (theta >= p.x0 && (theta < p.x1 || (theta == p.x1 && p.x1 == 1)))
            return true;
    return false;
}

std::vector<Rat> PiecewiseLinearFn::breakpoints() const {
    std::vector<Rat> out;
    for (auto& p : pieces_) {
        out.push_back(p.x0);
        out.push_back(p.x1);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rat PiecewiseLinearFn::min_over_closure() const {
    if (pieces_.empty()) throw DomainError("min of empty piecewise function");
    bool first = true;
    Rat best(0);
    for (auto& p : pieces_) {
        Rat at0 = p.slope * p.x0 + p.icept;
        Rat at1 = p.slope * p.x1 + p.icept;
        Rat lo = rat_min(at0, at1);
        if (first || lo < best) {
            best = lo;
            first = false;
        }
    }
    return best;
}

} // namespace hotshare
