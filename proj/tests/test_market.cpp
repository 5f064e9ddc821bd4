#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hotshare/errors.hpp"
#include "hotshare/market.hpp"

using namespace hotshare;

TEST_CASE("market validation accepts covered markets and rejects the rest") {
    // Even quarters at (v,t) = (3,1): valid.
    CHECK_NOTHROW(validate_market(MarketConfig::uniform(Rat(3), Rat(1), frac(1, 4), frac(1, 4), frac(1, 4), frac(1, 4))));
    // Two-segment split: valid.
    CHECK_NOTHROW(validate_market(MarketConfig::uniform(Rat(3), Rat(1), frac(1, 2), frac(1, 2), Rat(0), Rat(0))));
    // v = 2t violates strict coverage v > 2t.
    CHECK_THROWS_AS(validate_market(MarketConfig::uniform(Rat(2), Rat(1), frac(1, 4), frac(1, 4), frac(1, 4), frac(1, 4))),
                    CoverageViolation);
    CHECK_THROWS_AS(validate_market(MarketConfig::uniform(frac(3, 2), Rat(1), Rat(1), Rat(0), Rat(0), Rat(0))),
                    CoverageViolation);
    // t <= 0 is also a coverage/domain failure.
    CHECK_THROWS_AS(validate_market(MarketConfig::uniform(Rat(3), Rat(0), frac(1, 2), frac(1, 2), Rat(0), Rat(0))),
                    CoverageViolation);

    // Masses must be nonnegative and sum to exactly 1.
    CHECK_THROWS_AS(validate_market(MarketConfig::uniform(Rat(3), Rat(1), frac(1, 2), frac(1, 2), frac(1, 10), Rat(0))),
                    MassViolation);
    MarketConfig neg = MarketConfig::uniform(Rat(3), Rat(1), frac(1, 2), frac(1, 2), Rat(0), Rat(0));
    neg.seg(SegKind::Neither).mass = frac(-1, 10);
    neg.seg(SegKind::AOnly).mass = frac(3, 5);
    CHECK_THROWS_AS(validate_market(neg), MassViolation);

    // Densities must integrate to exactly 1.
    MarketConfig bad = MarketConfig::one_segment(Rat(3), Rat(1));
    bad.seg(SegKind::BOnly).density =
        DensitySpec::piecewise({Rat(0), frac(1, 2), Rat(1)}, {Rat(1), Rat(1) + frac(1, 100)});
    CHECK_THROWS_AS(validate_market(bad), DensityViolation);
    MarketConfig negd = MarketConfig::one_segment(Rat(3), Rat(1));
    negd.seg(SegKind::BOnly).density =
        DensitySpec::piecewise({Rat(0), frac(1, 2), Rat(1)}, {Rat(3), Rat(-1)});
    CHECK_THROWS_AS(validate_market(negd), DensityViolation);

    // validate_market returns its argument for chaining.
    MarketConfig ok = MarketConfig::four_segment(Rat(3), Rat(1));
    CHECK(&validate_market(ok) == &ok);
}

TEST_CASE("market helpers build the canonical configurations") {
    MarketConfig one = MarketConfig::one_segment(Rat(3), Rat(1));
    CHECK(one.mass(SegKind::BOnly) == Rat(1));
    CHECK(one.mass(SegKind::AOnly) == Rat(0));
    CHECK(one.density(SegKind::BOnly).is_uniform());

    MarketConfig two = MarketConfig::two_segment(Rat(3), Rat(1));
    CHECK(two.mass(SegKind::AOnly) == frac(1, 2));
    CHECK(two.mass(SegKind::BOnly) == frac(1, 2));
    CHECK(two.mass(SegKind::Neither) == Rat(0));

    MarketConfig four = MarketConfig::four_segment(Rat(3), Rat(1));
    for (SegKind k : all_segments) CHECK(four.mass(k) == frac(1, 4));
    CHECK(four.v == Rat(3));
    CHECK(four.t == Rat(1));
}

TEST_CASE("consumer utility: v - p - t*distance") {
    MarketConfig cfg = MarketConfig::four_segment(Rat(3), Rat(1));
    CHECK(consumer_utility(Rat(0), Firm::A, frac(1, 2), cfg) == frac(5, 2));
    CHECK(consumer_utility(frac(1, 4), Firm::B, Rat(0), cfg) == frac(9, 4));
    // Indifference pair: theta = 1/4 facing B at 0 equals facing A at t/2.
    CHECK(consumer_utility(frac(1, 4), Firm::B, Rat(0), cfg) ==
          consumer_utility(frac(1, 4), Firm::A, frac(1, 2), cfg));
    // Scaling in t moves the transport term only.
    MarketConfig cfg2 = MarketConfig::four_segment(Rat(6), Rat(2));
    CHECK(consumer_utility(frac(1, 4), Firm::B, Rat(0), cfg2) == Rat(6) - frac(3, 2));

    CHECK_THROWS_AS(consumer_utility(frac(-1, 10), Firm::A, Rat(0), cfg), DomainError);
    CHECK_THROWS_AS(consumer_utility(frac(11, 10), Firm::B, Rat(0), cfg), DomainError);
    CHECK_THROWS_AS(consumer_utility(frac(1, 2), Firm::A, frac(-1, 10), cfg), DomainError);
}

TEST_CASE("knowledge partition reflects the mechanism") {
    auto idx = [](SegKind k) { return static_cast<size_t>(k); };

    // No sharing: each firm knows exactly its native segments.
    auto base = knowledge_partition(SharingMechanism::none());
    CHECK(base[idx(SegKind::BOnly)].known_to_A.empty());
    CHECK(base[idx(SegKind::BOnly)].known_to_B == IntervalSet::full());
    CHECK(base[idx(SegKind::AOnly)].known_to_A == IntervalSet::full());
    CHECK(base[idx(SegKind::AOnly)].known_to_B.empty());
    CHECK(base[idx(SegKind::Neither)].known_to_A.empty());
    CHECK(base[idx(SegKind::Neither)].known_to_B.empty());
    CHECK(base[idx(SegKind::Both)].known_to_A == IntervalSet::full());
    CHECK(base[idx(SegKind::Both)].known_to_B == IntervalSet::full());

    // Full sharing: everything native becomes common knowledge; nobody
    // learns the anonymous segment.
    auto full = knowledge_partition(SharingMechanism::full());
    CHECK(full[idx(SegKind::BOnly)].known_to_A == IntervalSet::full());
    CHECK(full[idx(SegKind::AOnly)].known_to_B == IntervalSet::full());
    CHECK(full[idx(SegKind::Neither)].known_to_A.empty());
    CHECK(full[idx(SegKind::Neither)].known_to_B.empty());

    // Partial interval: A learns [1/4,1/2) on S_B, keeps everything it had.
    SharingMechanism m{IntervalSet::single(frac(1, 4), frac(1, 2)), IntervalSet::empty_set()};
    auto part = knowledge_partition(m);
    CHECK(part[idx(SegKind::BOnly)].known_to_A == IntervalSet::single(frac(1, 4), frac(1, 2)));
    CHECK(part[idx(SegKind::BOnly)].known_to_B == IntervalSet::full());
    CHECK(part[idx(SegKind::AOnly)].known_to_B.empty());
}

TEST_CASE("density spec: uniform and piecewise exact integration") {
    DensitySpec u = DensitySpec::uniform();
    CHECK(u.is_uniform());
    CHECK(u.cdf(frac(3, 8)) == frac(3, 8));
    CHECK(u.cdf(frac(3, 2)) == Rat(1));   // clamped
    CHECK(u.cdf(frac(-1, 2)) == Rat(0));
    CHECK(u.integrate_linear(Rat(0), Rat(1), Rat(2), Rat(0)) == Rat(1)); // int 2θ dθ
    CHECK(u.integrate_linear(frac(1, 4), frac(1, 2), Rat(0), Rat(4)) == Rat(1));
    CHECK(u.measure(IntervalSet::single(frac(1, 6), frac(1, 3))) == frac(1, 6));

    // Step density 3/2 on [0,1/2), 1/2 on [1/2,1].
    DensitySpec d = DensitySpec::piecewise({Rat(0), frac(1, 2), Rat(1)}, {frac(3, 2), frac(1, 2)});
    CHECK_FALSE(d.is_uniform());
    CHECK(d.cdf(frac(1, 2)) == frac(3, 4));
    CHECK(d.cdf(Rat(1)) == Rat(1));
    CHECK(d.cdf(frac(3, 4)) == frac(7, 8));
    CHECK(d.level_at(frac(1, 4)) == frac(3, 2));
    CHECK(d.level_at(frac(1, 2)) == frac(1, 2)); // right-continuous
    CHECK(d.level_at(Rat(1)) == frac(1, 2));     // last piece closed
    // ∫ 2θ f(θ) dθ over [1/4,3/4) = 3/2·(1/4−1/16) + 1/2·(9/16−1/4) = 9/32 + 5/32.
    CHECK(d.integrate_linear(frac(1, 4), frac(3, 4), Rat(2), Rat(0)) == frac(14, 32));
    // Degenerate range integrates to zero.
    CHECK(d.integrate_linear(frac(1, 2), frac(1, 2), Rat(5), Rat(7)) == Rat(0));
    CHECK(d.measure(IntervalSet::single(Rat(0), frac(1, 4))) == frac(3, 8));
    CHECK(d.measure(IntervalSet::full()) == Rat(1));
}

TEST_CASE("segment names round-trip") {
    for (SegKind k : all_segments) CHECK(segment_from_name(segment_name(k)) == k);
    CHECK(segment_from_name("B-only") == SegKind::BOnly);
    CHECK(segment_from_name("neither") == SegKind::Neither);
    CHECK_THROWS_AS(segment_from_name("C-only"), ParseError);
}
