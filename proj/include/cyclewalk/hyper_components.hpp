#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

namespace cyclewalk {

// Component shape by excess = sum(|edge|-1) - vertices:
//   -1 tree-like, 0 exactly one cycle, >0 strictly more edges than a tree.
enum class ComponentClass : std::uint8_t { hypertree, unicyclic, complex_structure };

struct ComponentsSnapshot {
    std::uint64_t component_count = 0;                       // includes isolated vertices
    std::uint32_t largest_component = 0;                     // vertex count
    std::map<std::uint32_t, std::uint64_t> hypertree_census; // h -> #tree components with h edges
    std::map<std::uint32_t, std::uint64_t> good_edge_counts; // j -> #j-edges inside tree components
};

// Union-find over n vertices absorbing one hyperedge per applied cycle.
// Tracks, per component root: vertex count, hyperedge count, and total edge
// weight sum(|e|-1), which together give the excess classification.
class HyperComponents {
public:
    struct Options {
        bool full_edge_log = false;           // keep every edge's vertex list
        std::vector<std::uint32_t> watch = {0};  // vertices with exact degree counters
    };

    explicit HyperComponents(std::uint32_t n) : HyperComponents(n, Options()) {}

    HyperComponents(std::uint32_t n, Options opt)
        : n_(n), opt_(std::move(opt)), parent_(n), rank_(n, 0), comp_vertices_(n, 1),
          comp_edges_(n, 0), comp_weight_(n, 0), component_count_(n), largest_(n ? 1 : 0) {
        if (n == 0) throw std::invalid_argument("HyperComponents: n must be positive");
        for (std::uint32_t v = 0; v < n; ++v) parent_[v] = v;
        std::sort(opt_.watch.begin(), opt_.watch.end());
        opt_.watch.erase(std::unique(opt_.watch.begin(), opt_.watch.end()), opt_.watch.end());
        for (std::uint32_t v : opt_.watch)
            if (v >= n) throw std::invalid_argument("HyperComponents: watched vertex out of range");
        watch_degree_.assign(opt_.watch.size(), 0);
    }

    std::uint32_t size() const { return n_; }
    std::uint64_t component_count() const { return component_count_; }
    std::uint32_t largest_component() const { return largest_; }
    std::uint64_t edge_count() const { return edge_sizes_.size(); }

    // Absorbs one hyperedge on >= 2 distinct vertices.
    void add_hyperedge(std::span<const std::uint32_t> vertices) {
        const std::size_t d = vertices.size();
        if (d < 2) throw std::invalid_argument("add_hyperedge: need at least 2 vertices");
        for (std::size_t a = 0; a < d; ++a) {
            if (vertices[a] >= n_) throw std::invalid_argument("add_hyperedge: vertex out of range");
            for (std::size_t b = a + 1; b < d; ++b)
                if (vertices[a] == vertices[b])
                    throw std::invalid_argument("add_hyperedge: repeated vertex");
        }
        // Merge all distinct component roots touched by the edge.
        std::uint32_t root = find(vertices[0]);
        for (std::size_t a = 1; a < d; ++a) {
            const std::uint32_t r = find(vertices[a]);
            if (r == root) continue;
            root = link(root, r);
            --component_count_;
        }
        comp_edges_[root] += 1;
        comp_weight_[root] += d - 1;
        largest_ = std::max(largest_, comp_vertices_[root]);
        if (excess_of_root(root) < -1)
            throw std::logic_error("add_hyperedge: component excess fell below -1");
        for (std::uint32_t v : vertices) {
            const auto it = std::lower_bound(opt_.watch.begin(), opt_.watch.end(), v);
            if (it != opt_.watch.end() && *it == v)
                watch_degree_[static_cast<std::size_t>(it - opt_.watch.begin())] += d - 1;
        }
        edge_sizes_.push_back(static_cast<std::uint32_t>(d));
        edge_rep_.push_back(vertices[0]);
        if (opt_.full_edge_log) edge_log_.emplace_back(vertices.begin(), vertices.end());
    }

    std::uint32_t component_size(std::uint32_t v) { return comp_vertices_[find(v)]; }
    std::uint32_t component_edges(std::uint32_t v) { return comp_edges_[find(v)]; }

    std::int64_t excess(std::uint32_t v) { return excess_of_root(find(v)); }

    ComponentClass classify(std::uint32_t v) {
        const std::int64_t ex = excess(v);
        if (ex == -1) return ComponentClass::hypertree;
        if (ex == 0) return ComponentClass::unicyclic;
        return ComponentClass::complex_structure;
    }

    // Degree sum(|e|-1) over edges incident to a watched vertex.
    std::uint64_t degree(std::uint32_t v) const {
        const auto it = std::lower_bound(opt_.watch.begin(), opt_.watch.end(), v);
        if (it == opt_.watch.end() || *it != v)
            throw std::out_of_range("degree: vertex is not in the watch set");
        return watch_degree_[static_cast<std::size_t>(it - opt_.watch.begin())];
    }

    // h -> number of tree components with exactly h edges (isolated vertices
    // land at h = 0).
    std::map<std::uint32_t, std::uint64_t> hypertree_census() {
        std::map<std::uint32_t, std::uint64_t> census;
        for (std::uint32_t v = 0; v < n_; ++v)
            if (find(v) == v && excess_of_root(v) == -1) ++census[comp_edges_[v]];
        return census;
    }

    // j -> number of logged j-edges whose component is currently a hypertree.
    std::map<std::uint32_t, std::uint64_t> good_edge_counts() {
        std::map<std::uint32_t, std::uint64_t> counts;
        for (std::size_t e = 0; e < edge_sizes_.size(); ++e)
            if (excess_of_root(find(edge_rep_[e])) == -1) ++counts[edge_sizes_[e]];
        return counts;
    }

    ComponentsSnapshot snapshot() {
        ComponentsSnapshot snap;
        snap.component_count = component_count_;
        snap.largest_component = largest_;
        snap.hypertree_census = hypertree_census();
        snap.good_edge_counts = good_edge_counts();
        return snap;
    }

    // Vertex lists of all edges; only available under full_edge_log.
    const std::vector<std::vector<std::uint32_t>>& edges() const {
        if (!opt_.full_edge_log)
            throw std::logic_error("edges: full_edge_log was not enabled");
        return edge_log_;
    }

    // Structural audit of the aggregate counters.
    bool consistent() {
        std::uint64_t roots = 0, vertices = 0;
        std::uint32_t largest_seen = 0;
        std::uint64_t edges_seen = 0;
        for (std::uint32_t v = 0; v < n_; ++v) {
            if (find(v) != v) continue;
            ++roots;
            vertices += comp_vertices_[v];
            largest_seen = std::max(largest_seen, comp_vertices_[v]);
            edges_seen += comp_edges_[v];
            if (excess_of_root(v) < -1) return false;
        }
        return roots == component_count_ && vertices == n_ && largest_seen == largest_ &&
               edges_seen == edge_sizes_.size();
    }

private:
    std::uint32_t find(std::uint32_t v) {
        std::uint32_t root = v;
        while (parent_[root] != root) root = parent_[root];
        while (parent_[v] != root) {
            const std::uint32_t up = parent_[v];
            parent_[v] = root;
            v = up;
        }
        return root;
    }

    // Union by rank; aggregates move to the surviving root.
    std::uint32_t link(std::uint32_t a, std::uint32_t b) {
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        comp_vertices_[a] += comp_vertices_[b];
        comp_edges_[a] += comp_edges_[b];
        comp_weight_[a] += comp_weight_[b];
        return a;
    }

    std::int64_t excess_of_root(std::uint32_t root) const {
        return static_cast<std::int64_t>(comp_weight_[root]) -
               static_cast<std::int64_t>(comp_vertices_[root]);
    }

    std::uint32_t n_;
    Options opt_;
    std::vector<std::uint32_t> parent_, rank_;
    std::vector<std::uint32_t> comp_vertices_, comp_edges_;
    std::vector<std::uint64_t> comp_weight_;
    std::uint64_t component_count_;
    std::uint32_t largest_;
    std::vector<std::uint32_t> edge_sizes_;
    std::vector<std::uint32_t> edge_rep_;
    std::vector<std::vector<std::uint32_t>> edge_log_;
    std::vector<std::uint64_t> watch_degree_;
};

}  // namespace cyclewalk
