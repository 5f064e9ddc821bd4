#pragma once

// Scalar-generic pricing core: demand, uniform-price best responses,
// branch-pair equilibrium candidates, certification, iteration and outcome
// metrics, written once over a scalar type S.
//
//   S = Rat    -> the exact engine behind the public pricing/equilibrium ops.
//   S = double -> the search fast-scan prefilter (mechanisms module).
//
// The float instantiation never decides anything on its own: the search
// re-solves every near-optimal candidate with S = Rat before reporting.
// The verification oracle deliberately does NOT use this header.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "hotshare/market.hpp"

namespace hotshare::detail {

template <class S> inline S conv(const Rat& x);
template <> inline Rat conv<Rat>(const Rat& x) { return x; }
template <> inline double conv<double>(const Rat& x) { return x.get_d(); }

template <class S> struct Tol;
template <> struct Tol<Rat> {
    static bool close(const Rat& a, const Rat& b, const Rat&) { return a == b; }
};
template <> struct Tol<double> {
    static bool close(double a, double b, double scale) {
        return std::abs(a - b) <= 1e-9 * scale;
    }
};

// Piecewise-constant density over [0,1] in scalar S.
template <class S>
struct Dens {
    std::vector<S> xs; // breakpoints, first 0, last 1
    std::vector<S> ls; // levels

    S cdf(const S& y) const {
        S acc(0);
        for (size_t i = 0; i < ls.size(); ++i) {
            if (y <= xs[i]) break;
            S hi = y < xs[i + 1] ? y : xs[i + 1];
            acc += ls[i] * (hi - xs[i]);
        }
        return acc;
    }
    // integral of (slope*theta + icept) * density over [lo, hi)
    S int_lin(const S& lo, const S& hi, const S& slope, const S& icept) const {
        if (!(lo < hi)) return S(0);
        S acc(0);
        for (size_t i = 0; i < ls.size(); ++i) {
            S a = lo > xs[i] ? lo : xs[i];
            S b = hi < xs[i + 1] ? hi : xs[i + 1];
            if (a < b) acc += ls[i] * (icept * (b - a) + slope * (b * b - a * a) / 2);
        }
        return acc;
    }
};

// One-dimensional piecewise-linear map y -> value, given by cell anchors.
template <class S>
struct PW {
    std::vector<S> bp;  // n+1 breakpoints spanning [0,1]
    std::vector<S> val; // value at bp[i], i = 0..n
    std::vector<S> sl;  // slope on [bp[i], bp[i+1]]

    S eval(const S& y) const {
        if (y <= bp.front()) return val.front();
        for (size_t i = 0; i + 1 < bp.size(); ++i)
            if (y <= bp[i + 1]) return val[i] + sl[i] * (y - bp[i]);
        return val.back();
    }
};

template <class S>
struct BrResult {
    S price{0};
    S profit{0};
    bool degenerate = false; // uniform demand identically zero
};

template <class S>
struct Metrics {
    S pi_A{0}, pi_B{0}, cw{0};
    S transport{0}; // t * E[distance to assigned firm]
};

template <class S>
struct SolveResult {
    S p_A{0}, p_B{0};
    bool ok = false;
    std::vector<std::pair<S, S>> certified; // all certified price pairs, sorted
    bool degenerate_A = false, degenerate_B = false;
};

template <class S>
struct Eng {
    S v, t, half, two_t;
    S qA, qB, qN, qD;
    Dens<S> fA, fB, fN, fD;
    std::vector<std::pair<S, S>> MB, MA;   // shared sets (sorted, disjoint)
    std::vector<std::pair<S, S>> MBc, MAc; // complements within [0,1]
    PW<S> mB; // y -> measure of [0,y) \ M_B under f_B (A's uniform reach on S_B)
    PW<S> gA; // y -> measure of (y,1] \ M_A under f_A (B's uniform reach on S_A)
    // f_N cdf is used directly via fN.cdf.

    Eng(const MarketConfig& cfg, const SharingMechanism& mech) {
        v = conv<S>(cfg.v);
        t = conv<S>(cfg.t);
        half = S(1) / S(2);
        two_t = t * 2;
        qA = conv<S>(cfg.mass(SegKind::AOnly));
        qB = conv<S>(cfg.mass(SegKind::BOnly));
        qN = conv<S>(cfg.mass(SegKind::Neither));
        qD = conv<S>(cfg.mass(SegKind::Both));
        auto dens = [](const DensitySpec& d) {
            Dens<S> out;
            for (auto& x : d.breakpoints) out.xs.push_back(conv<S>(x));
            for (auto& l : d.levels) out.ls.push_back(conv<S>(l));
            return out;
        };
        fA = dens(cfg.density(SegKind::AOnly));
        fB = dens(cfg.density(SegKind::BOnly));
        fN = dens(cfg.density(SegKind::Neither));
        fD = dens(cfg.density(SegKind::Both));
        auto ivs = [](const IntervalSet& s) {
            std::vector<std::pair<S, S>> out;
            for (auto& [a, b] : s.intervals()) out.emplace_back(conv<S>(a), conv<S>(b));
            return out;
        };
        MB = ivs(mech.share_B_to_A);
        MA = ivs(mech.share_A_to_B);
        MBc = ivs(mech.share_B_to_A.complement());
        MAc = ivs(mech.share_A_to_B.complement());
        build_measures();
    }

    // --- structure ----------------------------------------------------------

    void build_measures() {
        auto merged = [](const Dens<S>& f, const std::vector<std::pair<S, S>>& M) {
            std::vector<S> pts = f.xs;
            for (auto& [a, b] : M) {
                pts.push_back(a);
                pts.push_back(b);
            }
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            return pts;
        };
        auto inside = [](const std::vector<std::pair<S, S>>& M, const S& lo, const S& hi) {
            for (auto& [a, b] : M)
                if (a <= lo && hi <= b) return true;
            return false;
        };
        auto level = [](const Dens<S>& f, const S& lo, const S& hi) {
            for (size_t i = 0; i < f.ls.size(); ++i)
                if (f.xs[i] <= lo && hi <= f.xs[i + 1]) return f.ls[i];
            return S(0); // unreachable on well-formed input
        };

        // mB: cumulative measure of [0,y) \ M_B
        mB.bp = merged(fB, MB);
        mB.val.assign(mB.bp.size(), S(0));
        mB.sl.assign(mB.bp.size() - 1, S(0));
        for (size_t i = 0; i + 1 < mB.bp.size(); ++i) {
            S s = inside(MB, mB.bp[i], mB.bp[i + 1]) ? S(0) : level(fB, mB.bp[i], mB.bp[i + 1]);
            mB.sl[i] = s;
            mB.val[i + 1] = mB.val[i] + s * (mB.bp[i + 1] - mB.bp[i]);
        }

        // gA: measure of (y,1] \ M_A, decreasing in y
        gA.bp = merged(fA, MA);
        gA.val.assign(gA.bp.size(), S(0));
        gA.sl.assign(gA.bp.size() - 1, S(0));
        std::vector<S> seg(gA.bp.size() - 1);
        for (size_t i = 0; i + 1 < gA.bp.size(); ++i) {
            S s = inside(MA, gA.bp[i], gA.bp[i + 1]) ? S(0) : level(fA, gA.bp[i], gA.bp[i + 1]);
            gA.sl[i] = -s;
            seg[i] = s * (gA.bp[i + 1] - gA.bp[i]);
        }
        S acc(0);
        for (size_t i = gA.bp.size() - 1; i-- > 0;) {
            acc += seg[i];
            gA.val[i] = acc;
        }
    }

    // --- demand and best response -------------------------------------------

    S clamp01(const S& x) const {
        if (x < S(0)) return S(0);
        if (x > S(1)) return S(1);
        return x;
    }

    S mu_of(const S& p) const { return half - p / two_t; }               // A's cut on S_B
    S nu_of(const S& p) const { return half + p / two_t; }               // A's match reach on S_A
    S mu3_of(const S& pa, const S& pb) const { return half - (pa - pb) / two_t; }

    S demand(Firm firm, const S& p, const S& pr) const {
        if (firm == Firm::A) {
            S d = qB * mB.eval(clamp01(mu_of(p)));
            if (qN > S(0)) d += qN * fN.cdf(clamp01(mu3_of(p, pr)));
            return d;
        }
        S d = qA * gA.eval(clamp01(nu_of(p)));
        if (qN > S(0)) d += qN * (S(1) - fN.cdf(clamp01(mu3_of(pr, p))));
        return d;
    }

    S profit_uniform(Firm firm, const S& p, const S& pr) const {
        return p * demand(firm, p, pr);
    }

    std::vector<S> kinks(Firm firm, const S& pr) const {
        std::vector<S> ks;
        ks.push_back(S(0));
        if (firm == Firm::A) {
            if (qB > S(0))
                for (auto& x : mB.bp) {
                    S p = t * (S(1) - x * 2);
                    if (p > S(0)) ks.push_back(p);
                }
            if (qN > S(0))
                for (auto& z : fN.xs) {
                    S p = pr + t * (S(1) - z * 2);
                    if (p > S(0)) ks.push_back(p);
                }
        } else {
            if (qA > S(0))
                for (auto& y : gA.bp) {
                    S p = t * (y * 2 - S(1));
                    if (p > S(0)) ks.push_back(p);
                }
            if (qN > S(0))
                for (auto& z : fN.xs) {
                    S p = pr - t * (S(1) - z * 2);
                    if (p > S(0)) ks.push_back(p);
                }
        }
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        return ks;
    }

    // Exact global argmax of p * demand over p >= 0: the profit is piecewise
    // concave-quadratic between kinks, so kink prices plus interior vertices
    // cover every maximizer. Ties break toward the lowest price.
    BrResult<S> best_response(Firm firm, const S& pr) const {
        std::vector<S> ks = kinks(firm, pr);
        BrResult<S> best;
        best.price = S(0);
        best.profit = S(0);
        auto consider = [&](const S& p) {
            S pi = profit_uniform(firm, p, pr);
            if (pi > best.profit || (pi == best.profit && p < best.price)) {
                best.profit = pi;
                best.price = p;
            }
        };
        std::vector<S> dvals(ks.size());
        for (size_t i = 0; i < ks.size(); ++i) dvals[i] = demand(firm, ks[i], pr);
        for (size_t i = 0; i < ks.size(); ++i) consider(ks[i]);
        for (size_t i = 0; i + 1 < ks.size(); ++i) {
            S w = ks[i + 1] - ks[i];
            if (!(w > S(0))) continue;
            S s = (dvals[i + 1] - dvals[i]) / w;
            if (s == S(0)) continue; // profit linear on the cell; endpoints cover it
            // profit = p*(D_i + s*(p - k_i)); vertex at p* = k_i/2 - D_i/(2s)
            S pstar = ks[i] / 2 - dvals[i] / (s * 2);
            if (ks[i] < pstar && pstar < ks[i + 1]) consider(pstar);
        }
        if (best.profit == S(0)) {
            best.price = S(0);
            best.degenerate = true;
        }
        return best;
    }

    // --- branch-pair equilibrium candidates -----------------------------------

    struct Aff {
        S alpha, beta; // own price = alpha + beta * rival price
    };

    struct Cell {
        S anchor, value, slope; // f(y) = value + slope*(y - anchor) on the cell
    };

    std::vector<Cell> cells_of(const PW<S>& pw, bool add_zero_virtual, bool add_one_virtual,
                               const S& virt_hi_value) const {
        std::vector<Cell> cs;
        if (add_zero_virtual) cs.push_back({S(0), S(0), S(0)});
        for (size_t i = 0; i + 1 < pw.bp.size(); ++i)
            cs.push_back({pw.bp[i], pw.val[i], pw.sl[i]});
        if (add_one_virtual) cs.push_back({S(1), virt_hi_value, S(0)});
        return cs;
    }

    std::vector<Aff> affine_candidates(Firm firm) const {
        std::vector<Aff> out;
        out.push_back({S(0), S(0)});
        if (firm == Firm::A) {
            if (qB > S(0))
                for (auto& x : mB.bp) {
                    S p = t * (S(1) - x * 2);
                    if (p > S(0)) out.push_back({p, S(0)});
                }
            if (qN > S(0))
                for (auto& z : fN.xs) out.push_back({t * (S(1) - z * 2), S(1)});
            // FOC vertices per (mu-cell, mu3-cell); profit = p*(c0 + c1 p + c2 pr)
            PW<S> FNpw;
            FNpw.bp = fN.xs;
            FNpw.val.resize(fN.xs.size());
            FNpw.sl = fN.ls;
            for (size_t i = 0; i < fN.xs.size(); ++i) FNpw.val[i] = fN.cdf(fN.xs[i]);
            auto mcells = cells_of(mB, true, false, S(0));
            auto ncells = cells_of(FNpw, true, true, S(1));
            for (auto& mc : mcells)
                for (auto& nc : ncells) {
                    S c0 = qB * (mc.value + mc.slope * (half - mc.anchor)) +
                           qN * (nc.value + nc.slope * (half - nc.anchor));
                    S c1 = -(qB * mc.slope + qN * nc.slope) / two_t;
                    S c2 = qN * nc.slope / two_t;
                    if (c1 == S(0)) continue;
                    out.push_back({-c0 / (c1 * 2), -c2 / (c1 * 2)});
                }
        } else {
            if (qA > S(0))
                for (auto& y : gA.bp) {
                    S p = t * (y * 2 - S(1));
                    if (p > S(0)) out.push_back({p, S(0)});
                }
            if (qN > S(0))
                for (auto& z : fN.xs) out.push_back({-t * (S(1) - z * 2), S(1)});
            PW<S> FNpw;
            FNpw.bp = fN.xs;
            FNpw.val.resize(fN.xs.size());
            FNpw.sl = fN.ls;
            for (size_t i = 0; i < fN.xs.size(); ++i) FNpw.val[i] = fN.cdf(fN.xs[i]);
            auto gcells = cells_of(gA, false, true, S(0));
            auto ncells = cells_of(FNpw, true, true, S(1));
            for (auto& gc : gcells)
                for (auto& nc : ncells) {
                    // D_B = qA*(g_i + sg*(nu - y_i)) + qN*(1 - F_j - l_j*(mu3 - z_j))
                    S c0 = qA * (gc.value + gc.slope * (half - gc.anchor)) +
                           qN * (S(1) - nc.value - nc.slope * (half - nc.anchor));
                    S c1 = (qA * gc.slope - qN * nc.slope) / two_t;
                    S c2 = qN * nc.slope / two_t;
                    if (c1 == S(0)) continue;
                    out.push_back({-c0 / (c1 * 2), -c2 / (c1 * 2)});
                }
        }
        return out;
    }

    // A price pair certifies when each price attains its firm's global
    // best-response profit (degenerate demand forces the conventional 0).
    bool certify(const S& pa, const S& pb) const {
        BrResult<S> ba = best_response(Firm::A, pb);
        if (ba.degenerate) {
            if (!Tol<S>::close(pa, S(0), t)) return false;
        } else if (!Tol<S>::close(profit_uniform(Firm::A, pa, pb), ba.profit, t)) {
            return false;
        }
        BrResult<S> bb = best_response(Firm::B, pa);
        if (bb.degenerate) {
            if (!Tol<S>::close(pb, S(0), t)) return false;
        } else if (!Tol<S>::close(profit_uniform(Firm::B, pb, pa), bb.profit, t)) {
            return false;
        }
        return true;
    }

    // Exhaustive branch-pair enumeration: every equilibrium price sits on a
    // kink or an interior first-order vertex, each affine in the rival price,
    // so solving all affine pairs covers all pure equilibria.
    SolveResult<S> solve_enumerate() const {
        std::vector<Aff> ca = affine_candidates(Firm::A);
        std::vector<Aff> cb = affine_candidates(Firm::B);
        std::vector<std::pair<S, S>> pairs;
        pairs.reserve(ca.size() * cb.size());
        for (auto& a : ca)
            for (auto& b : cb) {
                S denom = S(1) - a.beta * b.beta;
                if (denom == S(0)) continue;
                S pa = (a.alpha + a.beta * b.alpha) / denom;
                S pb = b.alpha + b.beta * pa;
                if (pa < S(0) || pb < S(0)) continue;
                pairs.emplace_back(pa, pb);
            }
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

        SolveResult<S> res;
        for (auto& [pa, pb] : pairs) {
            // fast reject: a positive price with zero demand is never a best
            // response unless the whole demand is degenerate
            if (pa > S(0) && demand(Firm::A, pa, pb) == S(0)) {
                if (!best_response(Firm::A, pb).degenerate) continue;
            }
            if (certify(pa, pb)) res.certified.emplace_back(pa, pb);
        }
        if (!res.certified.empty()) {
            res.ok = true;
            res.p_A = res.certified.front().first;
            res.p_B = res.certified.front().second;
            res.degenerate_A = best_response(Firm::A, res.p_B).degenerate;
            res.degenerate_B = best_response(Firm::B, res.p_A).degenerate;
        }
        return res;
    }

    // Damped simultaneous best-response iteration (fallback path; the exact
    // solver runs this in double and polishes the limit exactly).
    struct IterResult {
        S p_A, p_B;
        int iterations = 0;
        bool converged = false;
    };
    IterResult iterate(S pa, S pb, const S& damping, int max_iter, const S& tol) const {
        IterResult r;
        for (int k = 0; k < max_iter; ++k) {
            S na = best_response(Firm::A, pb).price;
            S nb = best_response(Firm::B, pa).price;
            S xa = pa + damping * (na - pa);
            S xb = pb + damping * (nb - pb);
            S delta = std::max<S>(xa > pa ? xa - pa : pa - xa, xb > pb ? xb - pb : pb - xb);
            pa = xa;
            pb = xb;
            r.iterations = k + 1;
            if (delta < tol * t) {
                r.converged = true;
                break;
            }
        }
        r.p_A = pa;
        r.p_B = pb;
        return r;
    }

    // --- outcome metrics -------------------------------------------------------

    Metrics<S> metrics(const S& pa, const S& pb) const {
        Metrics<S> m;
        S one(1);

        // S_AB and any duel sub-interval: nearer firm wins at t*|1-2theta|.
        auto duel = [&](const Dens<S>& f, const S& q, const S& lo, const S& hi, Metrics<S>& acc) {
            if (!(q > S(0)) || !(lo < hi)) return;
            S a = lo, b = hi < half ? hi : half;
            if (a < b) { // A wins, price t(1-2theta), distance theta
                acc.pi_A += q * f.int_lin(a, b, -two_t, t);
                acc.cw += q * f.int_lin(a, b, t, v - t);
                acc.transport += q * f.int_lin(a, b, t, S(0));
            }
            a = lo > half ? lo : half;
            b = hi;
            if (a < b) { // B wins, price t(2theta-1), distance 1-theta
                acc.pi_B += q * f.int_lin(a, b, two_t, -t);
                acc.cw += q * f.int_lin(a, b, -t, v);
                acc.transport += q * f.int_lin(a, b, -t, t);
            }
        };

        duel(fD, qD, S(0), one, m);

        // S_B: A's uniform below the cut outside M_B, B matches above, duel inside M_B.
        if (qB > S(0)) {
            S mu = clamp01(mu_of(pa));
            for (auto& [c, d] : MBc) {
                S bsplit = mu < c ? c : (mu > d ? d : mu);
                if (c < bsplit) { // A at uniform price
                    m.pi_A += qB * pa * (fB.cdf(bsplit) - fB.cdf(c));
                    m.transport += qB * fB.int_lin(c, bsplit, t, S(0));
                }
                if (bsplit < d) { // B at the match price pa - t(1-2theta)
                    m.pi_B += qB * fB.int_lin(bsplit, d, two_t, pa - t);
                    m.transport += qB * fB.int_lin(bsplit, d, -t, t);
                }
                // utility is v - pa - t*theta on the whole unshared range
                m.cw += qB * fB.int_lin(c, d, -t, v - pa);
            }
            for (auto& [c, d] : MB) duel(fB, qB, c, d, m);
        }

        // S_A mirrored: A matches up to nu outside M_A, B's uniform beyond.
        if (qA > S(0)) {
            S nu = clamp01(nu_of(pb));
            for (auto& [c, d] : MAc) {
                S split = nu < c ? c : (nu > d ? d : nu);
                if (c < split) { // A at match price pb + t(1-2theta)
                    m.pi_A += qA * fA.int_lin(c, split, -two_t, pb + t);
                    m.transport += qA * fA.int_lin(c, split, t, S(0));
                }
                if (split < d) { // B at uniform
                    m.pi_B += qA * pb * (fA.cdf(d) - fA.cdf(split));
                    m.transport += qA * fA.int_lin(split, d, -t, t);
                }
                m.cw += qA * fA.int_lin(c, d, t, v - pb - t);
            }
            for (auto& [c, d] : MA) duel(fA, qA, c, d, m);
        }

        // S_@: uniform against uniform, cut at mu3.
        if (qN > S(0)) {
            S mu3 = clamp01(mu3_of(pa, pb));
            m.pi_A += qN * pa * fN.cdf(mu3);
            m.pi_B += qN * pb * (one - fN.cdf(mu3));
            m.cw += qN * fN.int_lin(S(0), mu3, -t, v - pa);
            m.cw += qN * fN.int_lin(mu3, one, t, v - pb - t);
            m.transport += qN * fN.int_lin(S(0), mu3, t, S(0));
            m.transport += qN * fN.int_lin(mu3, one, -t, t);
        }
        return m;
    }

    // --- pointwise comparison against a baseline --------------------------------

    bool in_set(const std::vector<std::pair<S, S>>& M, const S& th) const {
        for (auto& [a, b] : M) {
            if (th < a) return false;
            if (th < b || (th == b && b == S(1))) return true;
        }
        return false;
    }

    S tent(const S& th) const { return v - t * (th > half ? th : S(1) - th); }

    S utility(SegKind k, const S& th, const S& pa, const S& pb,
              const std::vector<std::pair<S, S>>& mb, const std::vector<std::pair<S, S>>& ma) const {
        switch (k) {
            case SegKind::Both: return tent(th);
            case SegKind::BOnly: return in_set(mb, th) ? tent(th) : v - pa - t * th;
            case SegKind::AOnly: return in_set(ma, th) ? tent(th) : v - pb - t * (S(1) - th);
            case SegKind::Neither: {
                S ua = pa + t * th, ub = pb + t * (S(1) - th);
                return v - (ua < ub ? ua : ub);
            }
        }
        return S(0);
    }

    // min over every consumer of (utility here) - (utility under no sharing at
    // baseline prices). Piecewise-affine in theta on cells between breakpoints,
    // so three interior samples per cell recover the closure minimum exactly.
    S harm_min(const S& pa, const S& pb, const S& pa0, const S& pb0) const {
        static const std::vector<std::pair<S, S>> empty_set;
        S best(0);
        bool first = true;
        auto scan = [&](SegKind k, const std::vector<std::pair<S, S>>& mset) {
            S q = k == SegKind::BOnly ? qB : (k == SegKind::AOnly ? qA : qN);
            if (!(q > S(0))) return;
            std::vector<S> bps = {S(0), S(1), half};
            for (auto& [a, b] : mset) {
                bps.push_back(a);
                bps.push_back(b);
            }
            if (k == SegKind::Neither) {
                bps.push_back(clamp01(mu3_of(pa, pb)));
                bps.push_back(clamp01(mu3_of(pa0, pb0)));
            }
            std::sort(bps.begin(), bps.end());
            bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
            auto diff = [&](const S& th) {
                return utility(k, th, pa, pb, k == SegKind::BOnly ? mset : empty_set,
                               k == SegKind::AOnly ? mset : empty_set) -
                       utility(k, th, pa0, pb0, empty_set, empty_set);
            };
            for (size_t i = 0; i + 1 < bps.size(); ++i) {
                if (!(bps[i] < bps[i + 1])) continue;
                S w = bps[i + 1] - bps[i];
                S q1 = bps[i] + w / 4, mid = bps[i] + w / 2, q3 = bps[i + 1] - w / 4;
                S d1 = diff(q1), dm = diff(mid), d3 = diff(q3);
                S at_lo = d1 * 2 - dm; // affine extrapolation to the cell ends
                S at_hi = d3 * 2 - dm;
                S lo = at_lo < at_hi ? at_lo : at_hi;
                if (first || lo < best) {
                    best = lo;
                    first = false;
                }
            }
        };
        scan(SegKind::BOnly, MB);
        scan(SegKind::AOnly, MA);
        scan(SegKind::Neither, empty_set);
        // S_AB is a duel under both mechanisms: difference identically zero.
        if (first) best = S(0);
        return best;
    }
};

} // namespace hotshare::detail
