#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "cyclewalk/cayley_bfs.hpp"
#include "cyclewalk/conjugacy_class.hpp"

using namespace cyclewalk;

TEST_CASE("descriptor parsing round-trips") {
    const auto cls = ConjugacyClass::parse("k3=2,k2=1");
    REQUIRE(cls.to_string() == "k2=1,k3=2");
    REQUIRE(cls.count(2) == 1);
    REQUIRE(cls.count(3) == 2);
    REQUIRE(cls.count(5) == 0);
    REQUIRE_THROWS_AS(ConjugacyClass::parse("k1=1"), std::invalid_argument);
    REQUIRE_THROWS_AS(ConjugacyClass::parse(""), std::invalid_argument);
    REQUIRE_THROWS_AS(ConjugacyClass::parse("k2=0"), std::invalid_argument);
    REQUIRE_THROWS_AS(ConjugacyClass::parse("k2=1,k2=2"), std::invalid_argument);
    REQUIRE(ConjugacyClass::parse("k2=0,k3=1").to_string() == "k3=1");
}

TEST_CASE("derived constants") {
    const auto t = ConjugacyClass::parse("k2=1");
    REQUIRE(t.support_size() == 2);
    REQUIRE(t.transposition_weight() == 1);
    REQUIRE(t.pair_rate() == 2.0);
    REQUIRE(t.critical_time() == 0.5);
    REQUIRE(t.is_single_transposition());

    const auto mixed = ConjugacyClass::parse("k2=1,k3=2");
    REQUIRE(mixed.support_size() == 2 + 6);
    REQUIRE(mixed.transposition_weight() == 1 + 4);
    REQUIRE(mixed.pair_rate() == 2.0 + 12.0);
    REQUIRE(mixed.critical_time() == Catch::Approx(1.0 / 14.0));
    REQUIRE(!mixed.is_single_cycle());
    REQUIRE(mixed.max_cycle_length() == 3);
    REQUIRE(mixed.cycle_lengths_desc() == std::vector<std::uint32_t>{3, 3, 2});
}

TEST_CASE("class_size against known formulas") {
    const auto t = ConjugacyClass::parse("k2=1");
    REQUIRE(t.class_size(6) == 15);  // C(6,2)
    const auto c3 = ConjugacyClass::parse("k3=1");
    REQUIRE(c3.class_size(6) == 40);  // 2 C(6,3)
    const auto c5 = ConjugacyClass::parse("k5=1");
    REQUIRE(c5.class_size(5) == 24);  // (5-1)!
    REQUIRE_THROWS_AS(t.class_size(1), std::invalid_argument);
}

TEST_CASE("class_size against exhaustive enumeration") {
    // Count group elements with the right cycle type directly.
    for (std::uint32_t n = 4; n <= 7; ++n) {
        for (const char* desc : {"k2=1", "k3=1", "k2=2", "k2=1,k3=1", "k4=1"}) {
            const auto cls = ConjugacyClass::parse(desc);
            if (cls.support_size() > n) continue;
            const auto members = enumerate_class(n, cls);
            REQUIRE(BigInt(members.size()) == cls.class_size(n));
        }
    }
}
