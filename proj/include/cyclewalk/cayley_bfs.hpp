#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "conjugacy_class.hpp"
#include "distance.hpp"

namespace cyclewalk {

// Exact word-length oracle on small symmetric groups: enumerate the whole
// group, index permutations by Lehmer code, and run breadth-first search from
// the identity over class moves.  Only sensible for n up to about 10.

class SmallGroupTable {
public:
    explicit SmallGroupTable(std::uint32_t n) : n_(n) {
        if (n == 0 || n > 10)
            throw std::invalid_argument("SmallGroupTable: n must be in [1, 10]");
        fact_.resize(n + 1, 1);
        for (std::uint32_t i = 1; i <= n; ++i) fact_[i] = fact_[i - 1] * i;
    }

    std::uint32_t n() const { return n_; }
    std::uint64_t size() const { return fact_[n_]; }

    std::uint64_t rank(const std::vector<std::uint32_t>& p) const {
        std::uint64_t r = 0;
        for (std::uint32_t i = 0; i < n_; ++i) {
            std::uint32_t smaller = 0;
            for (std::uint32_t j = i + 1; j < n_; ++j) smaller += p[j] < p[i];
            r += smaller * fact_[n_ - 1 - i];
        }
        return r;
    }

    std::vector<std::uint32_t> unrank(std::uint64_t r) const {
        std::vector<std::uint32_t> pool(n_), out(n_);
        for (std::uint32_t i = 0; i < n_; ++i) pool[i] = i;
        for (std::uint32_t i = 0; i < n_; ++i) {
            const std::uint64_t f = fact_[n_ - 1 - i];
            const auto idx = static_cast<std::size_t>(r / f);
            r %= f;
            out[i] = pool[idx];
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
        }
        return out;
    }

private:
    std::uint32_t n_;
    std::vector<std::uint64_t> fact_;
};

// All permutations of S_n whose nontrivial cycle lengths match the class.
inline std::vector<std::vector<std::uint32_t>> enumerate_class(std::uint32_t n,
                                                               const ConjugacyClass& cls) {
    if (cls.support_size() > n)
        throw std::invalid_argument("enumerate_class: class support exceeds n");
    const auto want = cls.cycle_lengths_desc();
    SmallGroupTable tab(n);
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint64_t r = 0; r < tab.size(); ++r) {
        auto p = tab.unrank(r);
        std::vector<std::uint32_t> lens;
        for (const auto& c : cycles_of(p))
            if (c.size() >= 2) lens.push_back(static_cast<std::uint32_t>(c.size()));
        std::sort(lens.begin(), lens.end(), std::greater<>());
        if (lens == want) out.push_back(std::move(p));
    }
    return out;
}

// dist[rank] = minimal number of class moves from the identity, or
// UINT32_MAX for permutations outside the generated subgroup.
inline std::vector<std::uint32_t> bfs_distances(std::uint32_t n, const ConjugacyClass& cls) {
    SmallGroupTable tab(n);
    const auto moves = enumerate_class(n, cls);
    if (moves.empty()) throw std::invalid_argument("bfs_distances: empty move set");
    std::vector<std::uint32_t> dist(tab.size(), UINT32_MAX);
    std::deque<std::uint64_t> queue;
    dist[tab.rank(identity_perm(n))] = 0;
    queue.push_back(tab.rank(identity_perm(n)));
    while (!queue.empty()) {
        const std::uint64_t r = queue.front();
        queue.pop_front();
        const auto p = tab.unrank(r);
        const std::uint32_t d = dist[r];
        for (const auto& g : moves) {
            const std::uint64_t s = tab.rank(compose(g, p));
            if (dist[s] == UINT32_MAX) {
                dist[s] = d + 1;
                queue.push_back(s);
            }
        }
    }
    return dist;
}

}  // namespace cyclewalk
