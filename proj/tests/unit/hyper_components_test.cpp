#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "cyclewalk/hyper_components.hpp"
#include "cyclewalk/rng.hpp"

using namespace cyclewalk;

namespace {

// Independent component audit: partition vertices by repeated merging over
// the raw edge list, then recompute every statistic from scratch.
struct BruteForce {
    std::uint32_t n;
    std::vector<std::vector<std::uint32_t>> edges;

    std::vector<std::uint32_t> component_ids() const {
        std::vector<std::uint32_t> id(n);
        for (std::uint32_t v = 0; v < n; ++v) id[v] = v;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& e : edges) {
                std::uint32_t lo = id[e[0]];
                for (auto v : e) lo = std::min(lo, id[v]);
                for (auto v : e)
                    if (id[v] != lo) {
                        // relabel v's whole current group
                        const std::uint32_t old = id[v];
                        for (std::uint32_t w = 0; w < n; ++w)
                            if (id[w] == old) id[w] = lo;
                        changed = true;
                    }
            }
        }
        return id;
    }

    struct Comp {
        std::uint32_t vertices = 0;
        std::uint32_t edge_count = 0;
        std::int64_t weight = 0;  // sum (|e|-1)
    };

    std::map<std::uint32_t, Comp> components() const {
        const auto id = component_ids();
        std::map<std::uint32_t, Comp> comp;
        for (std::uint32_t v = 0; v < n; ++v) ++comp[id[v]].vertices;
        for (const auto& e : edges) {
            comp[id[e[0]]].edge_count += 1;
            comp[id[e[0]]].weight += static_cast<std::int64_t>(e.size()) - 1;
        }
        return comp;
    }
};

}  // namespace

TEST_CASE("randomized audit against a from-scratch recomputation") {
    const std::uint32_t n = 30;
    auto rng = replica_stream(77, 0);
    HyperComponents::Options opt;
    opt.full_edge_log = true;
    opt.watch = {0, 5, 7};
    HyperComponents hc(n, opt);
    BruteForce bf{n, {}};

    for (int round = 0; round < 220; ++round) {
        const auto d = static_cast<std::uint32_t>(2 + uniform_below(rng, 3));
        std::vector<std::uint32_t> edge;
        while (edge.size() < d) {
            const auto v = static_cast<std::uint32_t>(uniform_below(rng, n));
            if (std::find(edge.begin(), edge.end(), v) == edge.end()) edge.push_back(v);
        }
        hc.add_hyperedge(edge);
        bf.edges.push_back(edge);

        const auto comps = bf.components();
        REQUIRE(hc.component_count() == comps.size());
        REQUIRE(hc.consistent());

        std::uint32_t largest = 0;
        std::map<std::uint32_t, std::uint64_t> census_expect;
        for (const auto& [root, c] : comps) {
            largest = std::max(largest, c.vertices);
            if (c.weight - c.vertices == -1) ++census_expect[c.edge_count];
        }
        REQUIRE(hc.largest_component() == largest);
        REQUIRE(hc.hypertree_census() == census_expect);

        const auto id = bf.component_ids();
        for (std::uint32_t v = 0; v < n; ++v) {
            const auto& c = comps.at(id[v]);
            REQUIRE(hc.component_size(v) == c.vertices);
            REQUIRE(hc.component_edges(v) == c.edge_count);
            REQUIRE(hc.excess(v) == c.weight - c.vertices);
        }

        std::map<std::uint32_t, std::uint64_t> good_expect;
        for (const auto& e : bf.edges) {
            const auto& c = comps.at(id[e[0]]);
            if (c.weight - c.vertices == -1) ++good_expect[static_cast<std::uint32_t>(e.size())];
        }
        REQUIRE(hc.good_edge_counts() == good_expect);

        for (std::uint32_t v : opt.watch) {
            std::uint64_t deg = 0;
            for (const auto& e : bf.edges)
                if (std::find(e.begin(), e.end(), v) != e.end()) deg += e.size() - 1;
            REQUIRE(hc.degree(v) == deg);
        }
    }
    REQUIRE(hc.edges() == bf.edges);
}

TEST_CASE("excess drives the classification") {
    HyperComponents hc(6);
    std::vector<std::uint32_t> e1 = {0, 1}, e2 = {1, 2}, e3 = {0, 2}, e4 = {0, 3};
    hc.add_hyperedge(e1);
    REQUIRE(hc.classify(0) == ComponentClass::hypertree);
    hc.add_hyperedge(e2);
    REQUIRE(hc.classify(2) == ComponentClass::hypertree);
    hc.add_hyperedge(e3);  // closes the triangle
    REQUIRE(hc.classify(1) == ComponentClass::unicyclic);
    hc.add_hyperedge(e3);  // doubled edge pushes it complex
    REQUIRE(hc.classify(1) == ComponentClass::complex_structure);
    hc.add_hyperedge(e4);  // attaching a pendant keeps it complex
    REQUIRE(hc.classify(3) == ComponentClass::complex_structure);
    REQUIRE(hc.classify(5) == ComponentClass::hypertree);  // isolated vertex
}

TEST_CASE("a single hyperedge on d fresh vertices is a hypertree") {
    HyperComponents hc(8);
    std::vector<std::uint32_t> e = {3, 1, 6, 7};
    hc.add_hyperedge(e);
    REQUIRE(hc.component_count() == 8 - 3);
    REQUIRE(hc.largest_component() == 4);
    REQUIRE(hc.excess(3) == -1);
    const auto census = hc.hypertree_census();
    REQUIRE(census.at(0) == 4);  // the four untouched vertices
    REQUIRE(census.at(1) == 1);
}

TEST_CASE("input validation") {
    HyperComponents hc(5);
    std::vector<std::uint32_t> tiny = {2};
    std::vector<std::uint32_t> dup = {1, 1};
    std::vector<std::uint32_t> range = {1, 9};
    REQUIRE_THROWS_AS(hc.add_hyperedge(tiny), std::invalid_argument);
    REQUIRE_THROWS_AS(hc.add_hyperedge(dup), std::invalid_argument);
    REQUIRE_THROWS_AS(hc.add_hyperedge(range), std::invalid_argument);
    REQUIRE_THROWS_AS(hc.degree(3), std::out_of_range);  // only 0 is watched
    REQUIRE_THROWS_AS(hc.edges(), std::logic_error);     // log disabled
    HyperComponents::Options bad;
    bad.watch = {11};
    REQUIRE_THROWS_AS(HyperComponents(5, bad), std::invalid_argument);
}
