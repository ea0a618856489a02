#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cyclewalk/rng.hpp"

using namespace cyclewalk;

TEST_CASE("streams replay bit for bit") {
    auto a = replica_stream(42, 3);
    auto b = replica_stream(42, 3);
    for (int i = 0; i < 1000; ++i) REQUIRE(a() == b());
}

TEST_CASE("distinct replicas get distinct streams") {
    auto a = replica_stream(42, 0);
    auto b = replica_stream(42, 1);
    int agree = 0;
    for (int i = 0; i < 64; ++i) agree += (a() == b());
    REQUIRE(agree == 0);
}

TEST_CASE("replica 0 is decoupled from the raw seed") {
    auto raw = SplitMix64(42);
    auto rep = replica_stream(42, 0);
    REQUIRE(raw() != rep());
}

TEST_CASE("uniform_below stays in range and covers small supports") {
    auto rng = replica_stream(7, 0);
    std::vector<int> hits(5, 0);
    for (int i = 0; i < 50000; ++i) {
        const auto v = uniform_below(rng, 5);
        REQUIRE(v < 5);
        ++hits[static_cast<std::size_t>(v)];
    }
    // chi-square against uniform, 4 dof; 18.47 is the 0.1% tail.
    double chi2 = 0;
    for (int h : hits) chi2 += (h - 10000.0) * (h - 10000.0) / 10000.0;
    REQUIRE(chi2 < 18.47);
}

TEST_CASE("uniform_below handles bounds near 2^63") {
    auto rng = replica_stream(7, 1);
    const std::uint64_t bound = (1ULL << 63) + 12345;
    for (int i = 0; i < 100; ++i) REQUIRE(uniform_below(rng, bound) < bound);
}

TEST_CASE("uniform01 lies in [0,1)") {
    auto rng = replica_stream(7, 2);
    for (int i = 0; i < 10000; ++i) {
        const double u = uniform01(rng);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("poisson matches its mean and variance") {
    auto rng = replica_stream(11, 0);
    const double lambda = 6.5;
    const int samples = 40000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < samples; ++i) {
        const auto v = static_cast<double>(poisson(rng, lambda));
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / samples;
    const double var = sumsq / samples - mean * mean;
    REQUIRE(std::abs(mean - lambda) < 0.1);   // ~8 standard errors wide
    REQUIRE(std::abs(var - lambda) < 0.35);
    REQUIRE(poisson(rng, 0.0) == 0);
    REQUIRE(poisson(rng, -1.0) == 0);
}
