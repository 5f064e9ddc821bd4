#include "hotshare/interval_set.hpp"

#include <algorithm>

namespace hotshare {

IntervalSet IntervalSet::normalized(std::vector<Interval> raw) {
    std::vector<Interval> clipped;
    clipped.reserve(raw.size());
    for (auto& [a, b] : raw) {
        Rat lo = rat_max(a, Rat(0));
        Rat hi = rat_min(b, Rat(1));
        if (lo < hi) clipped.emplace_back(lo, hi);
    }
    std::sort(clipped.begin(), clipped.end());
    IntervalSet out;
    for (auto& iv : clipped) {
        if (!out.iv_.empty() && iv.first <= out.iv_.back().second) {
            // overlapping or touching: merge
            if (iv.second > out.iv_.back().second) out.iv_.back().second = iv.second;
        } else {
            out.iv_.push_back(iv);
        }
    }
    return out;
}

IntervalSet IntervalSet::single(const Rat& a, const Rat& b) {
    return normalized({{a, b}});
}

Rat IntervalSet::measure() const {
    Rat m(0);
    for (auto& [a, b] : iv_) m += b - a;
    return m;
}

bool IntervalSet::contains(const Rat& theta) const {
    for (auto& [a, b] : iv_) {
        if (theta < a) return false;
        if (theta < b) return true;
        if (theta == b && b == 1) return true; // right end at 1 is closed
    }
    return false;
}

IntervalSet IntervalSet::complement() const {
    IntervalSet out;
    Rat cursor(0);
    for (auto& [a, b] : iv_) {
        if (cursor < a) out.iv_.emplace_back(cursor, a);
        cursor = b;
    }
    if (cursor < 1) out.iv_.emplace_back(cursor, Rat(1));
    return out;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    std::vector<Interval> all = iv_;
    all.insert(all.end(), other.iv_.begin(), other.iv_.end());
    return normalized(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    IntervalSet out;
    for (auto& [a, b] : iv_)
        for (auto& [c, d] : other.iv_) {
            Rat lo = rat_max(a, c);
            Rat hi = rat_min(b, d);
            if (lo < hi) out.iv_.emplace_back(lo, hi);
        }
    std::sort(out.iv_.begin(), out.iv_.end());
    return out;
}

IntervalSet IntervalSet::mirror() const {
    std::vector<Interval> flipped;
    flipped.reserve(iv_.size());
    for (auto& [a, b] : iv_) flipped.emplace_back(Rat(1) - b, Rat(1) - a);
    return normalized(std::move(flipped));
}

std::vector<Rat> IntervalSet::endpoints() const {
    std::vector<Rat> out;
    out.reserve(iv_.size() * 2);
    for (auto& [a, b] : iv_) {
        out.push_back(a);
        out.push_back(b);
    }
    return out;
}

std::string IntervalSet::to_string() const {
    if (iv_.empty()) return "{}";
    std::string s;
    for (size_t i = 0; i < iv_.size(); ++i) {
        if (i) s += " u ";
        s += "[" + rat_to_string(iv_[i].first) + "," + rat_to_string(iv_[i].second) + ")";
    }
    return s;
}

} // namespace hotshare
