#include "hotshare/market.hpp"

#include <algorithm>

#include "hotshare/errors.hpp"

namespace hotshare {

const char* segment_name(SegKind k) {
    switch (k) {
        case SegKind::AOnly: return "A-only";
        case SegKind::BOnly: return "B-only";
        case SegKind::Neither: return "neither";
        case SegKind::Both: return "both";
    }
    return "?";
}

SegKind segment_from_name(const std::string& s) {
    if (s == "A-only") return SegKind::AOnly;
    if (s == "B-only") return SegKind::BOnly;
    if (s == "neither") return SegKind::Neither;
    if (s == "both") return SegKind::Both;
    throw ParseError("unknown segment kind: '" + s + "' (want A-only|B-only|neither|both)");
}

// ---------------------------------------------------------------------------
// DensitySpec

DensitySpec DensitySpec::uniform() {
    DensitySpec d;
    d.breakpoints = {Rat(0), Rat(1)};
    d.levels = {Rat(1)};
    return d;
}

DensitySpec DensitySpec::piecewise(std::vector<Rat> breakpoints, std::vector<Rat> levels) {
    DensitySpec d;
    d.breakpoints = std::move(breakpoints);
    d.levels = std::move(levels);
    return d;
}

bool DensitySpec::is_uniform() const {
    return levels.size() == 1 && levels[0] == 1;
}

Rat DensitySpec::cdf(const Rat& y_in) const {
    Rat y = clamp01(y_in);
    Rat acc(0);
    for (size_t i = 0; i < levels.size(); ++i) {
        const Rat& lo = breakpoints[i];
        const Rat& hi = breakpoints[i + 1];
        if (y <= lo) break;
        acc += levels[i] * (rat_min(y, hi) - lo);
    }
    return acc;
}

Rat DensitySpec::level_at(const Rat& theta) const {
    for (size_t i = 0; i < levels.size(); ++i) {
        if (theta < breakpoints[i + 1] || (i + 1 == levels.size() && theta <= breakpoints[i + 1]))
            if (theta >= breakpoints[i]) return levels[i];
    }
    throw DomainError("density queried outside [0,1]");
}

Rat DensitySpec::integrate_linear(const Rat& lo_in, const Rat& hi_in,
                                  const Rat& slope, const Rat& intercept) const {
    Rat lo = clamp01(lo_in), hi = clamp01(hi_in);
    if (hi <= lo) return Rat(0);
    Rat acc(0);
    for (size_t i = 0; i < levels.size(); ++i) {
        Rat a = rat_max(lo, breakpoints[i]);
        Rat b = rat_min(hi, breakpoints[i + 1]);
        if (a < b)
            acc += levels[i] * (intercept * (b - a) + slope * (b * b - a * a) / 2);
    }
    return acc;
}

Rat DensitySpec::measure(const IntervalSet& s) const {
    Rat acc(0);
    for (auto& [a, b] : s.intervals()) acc += cdf(b) - cdf(a);
    return acc;
}

// ---------------------------------------------------------------------------
// MarketConfig

MarketConfig MarketConfig::uniform(const Rat& v, const Rat& t,
                                   const Rat& qA, const Rat& qB, const Rat& qN, const Rat& qD) {
    MarketConfig c;
    c.v = v;
    c.t = t;
    c.seg(SegKind::AOnly)  = {SegKind::AOnly,  qA, DensitySpec::uniform()};
    c.seg(SegKind::BOnly)  = {SegKind::BOnly,  qB, DensitySpec::uniform()};
    c.seg(SegKind::Neither) = {SegKind::Neither, qN, DensitySpec::uniform()};
    c.seg(SegKind::Both)   = {SegKind::Both,   qD, DensitySpec::uniform()};
    return c;
}

MarketConfig MarketConfig::one_segment(const Rat& v, const Rat& t) {
    return uniform(v, t, Rat(0), Rat(1), Rat(0), Rat(0));
}

MarketConfig MarketConfig::two_segment(const Rat& v, const Rat& t) {
    return uniform(v, t, frac(1, 2), frac(1, 2), Rat(0), Rat(0));
}

MarketConfig MarketConfig::four_segment(const Rat& v, const Rat& t) {
    return uniform(v, t, frac(1, 4), frac(1, 4), frac(1, 4), frac(1, 4));
}

std::string SharingMechanism::to_string() const {
    return "B->A on S_B: " + share_B_to_A.to_string() +
           "; A->B on S_A: " + share_A_to_B.to_string();
}

const MarketConfig& validate_market(const MarketConfig& config) {
    if (!(config.t > 0))
        throw CoverageViolation("transport cost must be positive, got t=" + rat_to_string(config.t));
    if (!(config.v > 2 * config.t))
        throw CoverageViolation("market not covered: need v > 2t, got v=" + rat_to_string(config.v) +
                                ", t=" + rat_to_string(config.t));
    Rat total(0);
    for (SegKind k : all_segments) {
        const SegmentSpec& s = config.seg(k);
        if (s.kind != k)
            throw MassViolation(std::string("segment slot ") + segment_name(k) +
                                " holds kind " + segment_name(s.kind));
        if (s.mass < 0)
            throw MassViolation(std::string("negative mass on ") + segment_name(k));
        total += s.mass;

        const DensitySpec& d = s.density;
        if (d.breakpoints.size() < 2 || d.levels.size() + 1 != d.breakpoints.size())
            throw DensityViolation(std::string("malformed density on ") + segment_name(k));
        if (d.breakpoints.front() != 0 || d.breakpoints.back() != 1)
            throw DensityViolation(std::string("density breakpoints must span [0,1] on ") + segment_name(k));
        Rat integral(0);
        for (size_t i = 0; i < d.levels.size(); ++i) {
            if (d.levels[i] < 0)
                throw DensityViolation(std::string("negative density level on ") + segment_name(k));
            if (!(d.breakpoints[i] < d.breakpoints[i + 1]))
                throw DensityViolation(std::string("density breakpoints not increasing on ") + segment_name(k));
            integral += d.levels[i] * (d.breakpoints[i + 1] - d.breakpoints[i]);
        }
        if (integral != 1)
            throw DensityViolation(std::string("density integrates to ") + rat_to_string(integral) +
                                   " != 1 on " + segment_name(k));
    }
    if (total != 1)
        throw MassViolation("segment masses sum to " + rat_to_string(total) + " != 1");
    return config;
}

Rat consumer_utility(const Rat& theta, Firm firm, const Rat& price, const MarketConfig& config) {
    if (theta < 0 || theta > 1)
        throw DomainError("location outside [0,1]: " + rat_to_string(theta));
    if (price < 0)
        throw DomainError("negative price: " + rat_to_string(price));
    Rat dist = firm == Firm::A ? theta : Rat(1) - theta;
    return config.v - price - config.t * dist;
}

std::array<SegmentKnowledge, 4> knowledge_partition(const SharingMechanism& mechanism) {
    std::array<SegmentKnowledge, 4> out;
    out[static_cast<size_t>(SegKind::AOnly)]  = {IntervalSet::full(), mechanism.share_A_to_B};
    out[static_cast<size_t>(SegKind::BOnly)]  = {mechanism.share_B_to_A, IntervalSet::full()};
    out[static_cast<size_t>(SegKind::Neither)] = {IntervalSet::empty_set(), IntervalSet::empty_set()};
    out[static_cast<size_t>(SegKind::Both)]   = {IntervalSet::full(), IntervalSet::full()};
    return out;
}

} // namespace hotshare
