#include "hotshare/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "hotshare/errors.hpp"

namespace hotshare {

namespace {

// Compensated accumulator: the 10^6-point sums must not drown the 1e-5*t
// deviation bound in rounding noise.
struct Kahan {
    double sum = 0, carry = 0;
    void add(double x) {
        double y = x - carry;
        double u = sum + y;
        carry = (u - sum) - y;
        sum = u;
    }
};

struct GridConsumer {
    double theta = 0;
    double w = 0; // segment mass * density level / n
    bool known_A = false, known_B = false;
};

std::vector<std::pair<double, double>> to_double(const IntervalSet& s) {
    std::vector<std::pair<double, double>> out;
    for (const auto& [a, b] : s.intervals()) out.push_back({a.get_d(), b.get_d()});
    return out;
}

bool member(const std::vector<std::pair<double, double>>& s, double theta) {
    for (const auto& [a, b] : s)
        if (theta >= a && theta < b) return true;
    return false;
}

struct Model {
    double v = 0, t = 0;
    std::vector<GridConsumer> all;

    Model(const SharingMechanism& mechanism, const MarketConfig& config, int n) {
        v = config.v.get_d();
        t = config.t.get_d();
        auto m_B = to_double(mechanism.share_B_to_A);
        auto m_A = to_double(mechanism.share_A_to_B);
        for (SegKind k : all_segments) {
            const SegmentSpec& seg = config.seg(k);
            if (seg.mass == Rat(0)) continue;
            double mass = seg.mass.get_d();
            std::vector<std::pair<double, double>> dens; // (breakpoint, level)
            for (size_t i = 0; i + 1 < seg.density.breakpoints.size(); ++i)
                dens.push_back({seg.density.breakpoints[i + 1].get_d(),
                                seg.density.levels[i].get_d()});
            size_t piece = 0;
            for (int i = 0; i < n; ++i) {
                GridConsumer c;
                c.theta = (i + 0.5) / n;
                while (piece + 1 < dens.size() && c.theta >= dens[piece].first) ++piece;
                c.w = mass * dens[piece].second / n;
                switch (k) {
                    case SegKind::AOnly:
                        c.known_A = true;
                        c.known_B = member(m_A, c.theta);
                        break;
                    case SegKind::BOnly:
                        c.known_B = true;
                        c.known_A = member(m_B, c.theta);
                        break;
                    case SegKind::Neither: break;
                    case SegKind::Both: c.known_A = c.known_B = true; break;
                }
                all.push_back(c);
            }
        }
    }

    // Revenue-threshold scan for one firm's uniform price: the firm sells to
    // a grid consumer at price p iff p < tau (strict: ties go to the rival's
    // personalized offer) or p <= tau (weak: this firm wins uniform ties on
    // S_neither), and the consumer still participates (p <= cap).
    double best_uniform(bool for_A, double rival_uniform) const {
        std::vector<std::pair<double, double>> strict, weak; // (threshold, weight)
        for (const GridConsumer& c : all) {
            bool mine = for_A ? c.known_A : c.known_B;
            if (mine) continue; // personalized elsewhere; constant in own uniform price
            double near = for_A ? c.theta : 1 - c.theta;
            double gap = t * (1 - 2 * near); // rival travels this much farther
            double cap = v - t * near;
            bool rival_knows = for_A ? c.known_B : c.known_A;
            if (rival_knows)
                strict.push_back({std::min(gap, cap), c.w});
            else if (for_A)
                strict.push_back({std::min(rival_uniform + gap, cap), c.w});
            else
                weak.push_back({std::min(rival_uniform + gap, cap), c.w});
        }
        auto prep = [](std::vector<std::pair<double, double>>& list) {
            std::sort(list.begin(), list.end());
            std::vector<double> prefix(list.size() + 1, 0);
            for (size_t i = 0; i < list.size(); ++i) prefix[i + 1] = prefix[i] + list[i].second;
            return prefix;
        };
        auto prefix_s = prep(strict);
        auto prefix_w = prep(weak);
        auto demand = [&](double p) {
            size_t i = std::upper_bound(strict.begin(), strict.end(),
                                        std::make_pair(p, 1e300)) -
                       strict.begin();
            size_t j = std::lower_bound(weak.begin(), weak.end(), std::make_pair(p, -1e300)) -
                       weak.begin();
            return (prefix_s.back() - prefix_s[i]) + (prefix_w.back() - prefix_w[j]);
        };
        double best_p = 0, best_rev = 0;
        for (double p = 0; p <= v; p += step) {
            double rev = p * demand(p);
            if (rev > best_rev) {
                best_rev = rev;
                best_p = p;
            }
        }
        return best_p;
    }

    // Who serves a grid consumer at uniform prices (pa, pb), and at what
    // price. Personalized offers are re-derived from utility comparisons.
    // A match price leaves the consumer exactly indifferent, so the
    // personalizing firm must win ties with a rounding cushion — bare float
    // equality would flip sales at random. Returns {0 = A, 1 = B, -1 = no
    // sale} and the price paid.
    std::pair<int, double> sale(const GridConsumer& c, double pa, double pb) const {
        double tie = 1e-9 * t;
        double dA = c.theta, dB = 1 - c.theta;
        int winner;
        double price;
        if (c.known_A && c.known_B) {
            winner = 2 * c.theta < 1 ? 0 : 1;
            price = t * std::abs(dB - dA);
        } else if (c.known_A && !c.known_B) {
            double match = std::max(0.0, pb + t * (dB - dA));
            if (v - match - t * dA >= v - pb - t * dB - tie) {
                winner = 0;
                price = match;
            } else {
                winner = 1;
                price = pb;
            }
        } else if (!c.known_A && c.known_B) {
            double match = std::max(0.0, pa + t * (dA - dB));
            if (v - match - t * dB >= v - pa - t * dA - tie) {
                winner = 1;
                price = match;
            } else {
                winner = 0;
                price = pa;
            }
        } else {
            if (v - pa - t * dA > v - pb - t * dB) {
                winner = 0;
                price = pa;
            } else {
                winner = 1;
                price = pb;
            }
        }
        double dist = winner == 0 ? dA : dB;
        if (v - price - t * dist < 0) return {-1, 0.0};
        return {winner, price};
    }

    double step = 0;
};

} // namespace

OracleOutcome grid_equilibrium_from(const SharingMechanism& mechanism, const MarketConfig& config,
                                    double price_grid_step, int consumer_grid_n, double start_A,
                                    double start_B) {
    validate_market(config);
    if (!(price_grid_step > 0)) throw BadParam("price grid step must be positive");
    if (consumer_grid_n < 1000) throw BadParam("consumer grid needs at least 1000 points");

    Model m(mechanism, config, consumer_grid_n);
    m.step = price_grid_step;
    auto snap = [&](double p) {
        return std::min(m.v, std::max(0.0, std::round(p / m.step) * m.step));
    };

    OracleOutcome out;
    double pa = snap(start_A), pb = snap(start_B);
    std::vector<std::pair<double, double>> history{{pa, pb}};
    const int max_rounds = 500;
    for (int round = 1; round <= max_rounds; ++round) {
        out.rounds = round;
        double na = m.best_uniform(true, pb);
        double nb = m.best_uniform(false, na);
        if (na == pa && nb == pb) {
            out.converged = true;
            break;
        }
        pa = na;
        pb = nb;
        auto hit = std::find(history.begin(), history.end(), std::make_pair(pa, pb));
        if (hit != history.end()) {
            out.cycle.assign(hit, history.end());
            break;
        }
        history.push_back({pa, pb});
    }
    out.p_A = pa;
    out.p_B = pb;

    Kahan spi_A, spi_B, scw;
    for (const GridConsumer& c : m.all) {
        auto [winner, price] = m.sale(c, pa, pb);
        if (winner < 0) continue;
        (winner == 0 ? spi_A : spi_B).add(c.w * price);
        scw.add(c.w * (m.v - price - m.t * (winner == 0 ? c.theta : 1 - c.theta)));
    }
    out.pi_A = spi_A.sum;
    out.pi_B = spi_B.sum;
    out.cw = scw.sum;
    return out;
}

OracleOutcome grid_equilibrium(const SharingMechanism& mechanism, const MarketConfig& config,
                               double price_grid_step, int consumer_grid_n) {
    double t = config.t.get_d();
    return grid_equilibrium_from(mechanism, config, price_grid_step, consumer_grid_n, t, t);
}

RiemannReport riemann_check(const EquilibriumOutcome& outcome, const MarketConfig& config, int n) {
    validate_market(config);
    if (n < 1000) throw BadParam("Riemann check needs at least 1000 points");

    double v = config.v.get_d();
    double t = config.t.get_d();
    Kahan spi_A, spi_B, scw;
    for (SegKind k : all_segments) {
        const SegmentSpec& seg = config.seg(k);
        if (seg.mass == Rat(0)) continue;
        double mass = seg.mass.get_d();

        struct DRun {
            double x1, slope, icept;
            bool is_A;
        };
        std::vector<DRun> runs;
        for (const Run& r : outcome.allocation[static_cast<size_t>(k)].runs)
            runs.push_back({r.x1.get_d(), r.price_slope.get_d(), r.price_icept.get_d(),
                            r.winner == Firm::A});
        std::vector<std::pair<double, double>> dens;
        for (size_t i = 0; i + 1 < seg.density.breakpoints.size(); ++i)
            dens.push_back(
                {seg.density.breakpoints[i + 1].get_d(), seg.density.levels[i].get_d()});

        size_t run = 0, piece = 0;
        for (int i = 0; i < n; ++i) {
            double theta = (i + 0.5) / n;
            while (run + 1 < runs.size() && theta >= runs[run].x1) ++run;
            while (piece + 1 < dens.size() && theta >= dens[piece].first) ++piece;
            double w = mass * dens[piece].second / n;
            double price = runs[run].slope * theta + runs[run].icept;
            double dist = runs[run].is_A ? theta : 1 - theta;
            (runs[run].is_A ? spi_A : spi_B).add(w * price);
            scw.add(w * (v - price - t * dist));
        }
    }

    RiemannReport rep;
    rep.pi_A_dev = std::abs(spi_A.sum - outcome.pi_A.get_d());
    rep.pi_B_dev = std::abs(spi_B.sum - outcome.pi_B.get_d());
    rep.cw_dev = std::abs(scw.sum - outcome.cw.get_d());
    rep.max_dev = std::max({rep.pi_A_dev, rep.pi_B_dev, rep.cw_dev});
    return rep;
}

} // namespace hotshare
