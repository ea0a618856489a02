#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "cyclewalk/walk.hpp"

using namespace cyclewalk;

TEST_CASE("same seed replays the same trajectory") {
    const auto cls = ConjugacyClass::parse("k2=1,k3=1");
    auto r1 = replica_stream(99, 4);
    auto r2 = replica_stream(99, 4);
    WalkState a(cls, 200), b(cls, 200);
    a.advance(r1, 500);
    b.advance(r2, 500);
    const auto ca = a.checkpoint(4), cb = b.checkpoint(4);
    REQUIRE(ca.cycle_count == cb.cycle_count);
    REQUIRE(ca.component_count == cb.component_count);
    REQUIRE(ca.largest_cycle == cb.largest_cycle);
    REQUIRE(ca.frag_count == cb.frag_count);
    REQUIRE(a.permutation().to_vector() == b.permutation().to_vector());
}

TEST_CASE("checkpoint fields agree with the underlying structures") {
    const auto cls = ConjugacyClass::parse("k3=1");
    auto rng = replica_stream(7, 0);
    WalkState walk(cls, 150);
    walk.advance(rng, 400);
    auto rec = walk.checkpoint(3);
    REQUIRE(rec.replica == 3);
    REQUIRE(rec.steps == 400);
    REQUIRE(rec.cycle_count == walk.permutation().cycle_count());
    REQUIRE(rec.component_count == walk.components().component_count());
    REQUIRE(rec.largest_cycle == walk.permutation().largest_cycle());
    REQUIRE(rec.largest_component == walk.components().largest_component());
    const std::uint64_t deficit = 150 - rec.cycle_count;
    REQUIRE(rec.lower_bound_dist == (deficit + 1) / 2);  // weight 2 for a 3-cycle
    REQUIRE(walk.permutation().consistent());
    REQUIRE(walk.components().consistent());
}

TEST_CASE("cycle count bookkeeping identity") {
    // Every elementary transposition moves the cycle count by exactly one:
    //   N = n - steps * weight + 2 * fragmentations.
    for (const char* desc : {"k2=1", "k3=1", "k2=1,k3=1"}) {
        const auto cls = ConjugacyClass::parse(desc);
        auto rng = replica_stream(11, 2);
        WalkState walk(cls, 120);
        walk.advance(rng, 600);
        const auto rec = walk.checkpoint();
        const std::int64_t expected = 120 -
                                      static_cast<std::int64_t>(600) * cls.transposition_weight() +
                                      2 * static_cast<std::int64_t>(rec.frag_count);
        REQUIRE(static_cast<std::int64_t>(rec.cycle_count) == expected);
    }
}

TEST_CASE("coupling holds along a dense fuzz at small n") {
    // advance() throws CouplingViolation if the invariant ever fails; run far
    // past criticality so fragmentation churn is heavy.
    for (const char* desc : {"k2=1", "k3=1", "k2=2", "k4=1"}) {
        const auto cls = ConjugacyClass::parse(desc);
        auto rng = replica_stream(23, 1);
        WalkState walk(cls, 64);
        REQUIRE_NOTHROW(walk.advance(rng, 20000));
        REQUIRE(walk.permutation().cycle_count() >= walk.components().component_count());
        REQUIRE(walk.max_cycle_excess() < 64);
    }
}

TEST_CASE("small fragment counter only counts small pieces") {
    const auto cls = ConjugacyClass::parse("k2=1");
    auto rng = replica_stream(31, 0);
    WalkState walk(cls, 400);
    walk.advance(rng, 4000);
    REQUIRE(walk.frag_small_count() <= walk.frag_count());
}

TEST_CASE("walk rejects undersized ground sets") {
    const auto cls = ConjugacyClass::parse("k5=2");
    REQUIRE_THROWS_AS(WalkState(cls, 9), std::invalid_argument);
}
