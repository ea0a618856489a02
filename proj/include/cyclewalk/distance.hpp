#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "conjugacy_class.hpp"

namespace cyclewalk {

// ---------------------------------------------------------------------------
// Plain-vector permutation helpers (x -> sigma[x]); used by the factorization
// routines and by tests as an independent composition oracle.
// ---------------------------------------------------------------------------

inline std::vector<std::uint32_t> identity_perm(std::uint32_t n) {
    std::vector<std::uint32_t> p(n);
    for (std::uint32_t x = 0; x < n; ++x) p[x] = x;
    return p;
}

// (f o g)(x) = f[g[x]]  (f acts after g).
inline std::vector<std::uint32_t> compose(const std::vector<std::uint32_t>& f,
                                          const std::vector<std::uint32_t>& g) {
    if (f.size() != g.size()) throw std::invalid_argument("compose: size mismatch");
    std::vector<std::uint32_t> out(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) out[x] = f[g[x]];
    return out;
}

inline std::vector<std::uint32_t> cycle_to_perm(std::uint32_t n,
                                                const std::vector<std::uint32_t>& cycle) {
    std::vector<std::uint32_t> p = identity_perm(n);
    for (std::size_t i = 0; i < cycle.size(); ++i)
        p[cycle[i]] = cycle[(i + 1) % cycle.size()];
    return p;
}

// Cycle decomposition of a plain vector, fixed points included, each cycle
// starting at its minimum, cycles ordered by minimum.
inline std::vector<std::vector<std::uint32_t>> cycles_of(const std::vector<std::uint32_t>& p) {
    std::vector<bool> seen(p.size(), false);
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint32_t x = 0; x < p.size(); ++x) {
        if (seen[x]) continue;
        std::vector<std::uint32_t> cyc;
        for (std::uint32_t y = x;;) {
            seen[y] = true;
            cyc.push_back(y);
            y = p[y];
            if (y == x) break;
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

// Product of the factors applied left-outermost: result = f1 o f2 o ... o fm.
inline std::vector<std::uint32_t> compose_factors(
    std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& factors) {
    std::vector<std::uint32_t> acc = identity_perm(n);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it)
        acc = compose(cycle_to_perm(n, *it), acc);
    return acc;
}

// Every step changes the cycle count by at most transposition_weight, so any
// word for sigma has at least ceil((n - #cycles) / weight) letters.
inline std::uint64_t distance_lower_bound(const std::vector<std::uint32_t>& sigma,
                                          const ConjugacyClass& cls) {
    const std::uint64_t deficit = sigma.size() - cycles_of(sigma).size();
    const std::uint32_t w = cls.transposition_weight();
    return (deficit + w - 1) / w;
}

// ---------------------------------------------------------------------------
// Explicit 3-cycle factorizations.
// ---------------------------------------------------------------------------

// (c0 c1 ... c_{2r}) = (c0 c1 c2)(c2 c3 c4)...(c_{2r-2} c_{2r-1} c_{2r}),
// consecutive factors sharing one pivot; r factors for an odd cycle.
inline std::vector<std::vector<std::uint32_t>> factor_odd_cycle(
    std::span<const std::uint32_t> cycle) {
    if (cycle.size() < 3 || cycle.size() % 2 == 0)
        throw std::invalid_argument("factor_odd_cycle: need odd length >= 3");
    std::vector<std::vector<std::uint32_t>> out;
    for (std::size_t i = 0; i + 2 < cycle.size(); i += 2)
        out.push_back({cycle[i], cycle[i + 1], cycle[i + 2]});
    return out;
}

// Two disjoint even cycles cost one extra generator: split off the leading
// transpositions, write (a0 a1)(b0 b1) = (a0 a1 b0)(a1 b0 b1), and finish the
// two odd tails with pivot chains.  (len(A) + len(B)) / 2 factors in total.
inline std::vector<std::vector<std::uint32_t>> factor_even_pair(
    std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    if (a.size() < 2 || a.size() % 2 != 0 || b.size() < 2 || b.size() % 2 != 0)
        throw std::invalid_argument("factor_even_pair: need two even-length cycles");
    std::vector<std::vector<std::uint32_t>> out;
    out.push_back({a[0], a[1], b[0]});
    out.push_back({a[1], b[0], b[1]});
    if (a.size() > 2) {
        auto tail = factor_odd_cycle(a.subspan(1));
        out.insert(out.end(), tail.begin(), tail.end());
    }
    if (b.size() > 2) {
        auto tail = factor_odd_cycle(b.subspan(1));
        out.insert(out.end(), tail.begin(), tail.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// General k-cycle factorization.
// ---------------------------------------------------------------------------

struct FactorizationResult {
    std::vector<std::vector<std::uint32_t>> factors;
    std::uint64_t lower_bound = 0;    // ceil((n - #cycles) / (k-1))
    std::uint64_t residue_count = 0;  // cycles with length not 1 mod (k-1)
    // (length - lower_bound) / residue_count when residues exist, else 0.
    double overhead_per_residue = 0.0;
};

namespace detail {

inline std::vector<std::uint32_t> inverse_cycle(const std::vector<std::uint32_t>& c) {
    std::vector<std::uint32_t> inv;
    inv.reserve(c.size());
    inv.push_back(c[0]);
    for (std::size_t i = c.size(); i-- > 1;) inv.push_back(c[i]);
    return inv;
}

// Sparse permutation used to destroy one block of cycles; keys are created on
// demand so pads enter the domain when a move first touches them.
using SparsePerm = std::map<std::uint32_t, std::uint32_t>;

inline void apply_cycle_sparse(SparsePerm& pi, const std::vector<std::uint32_t>& g) {
    for (std::uint32_t e : g) pi.emplace(e, e);
    std::map<std::uint32_t, std::uint32_t> step;
    for (std::size_t i = 0; i < g.size(); ++i) step[g[i]] = g[(i + 1) % g.size()];
    for (auto& [x, y] : pi) {
        const auto it = step.find(y);
        if (it != step.end()) y = it->second;
    }
}

inline std::vector<std::vector<std::uint32_t>> sparse_nontrivial_cycles(const SparsePerm& pi) {
    std::vector<std::vector<std::uint32_t>> out;
    std::map<std::uint32_t, bool> seen;
    for (const auto& [x, y] : pi) {
        if (seen[x] || y == x) continue;
        std::vector<std::uint32_t> cyc;
        for (std::uint32_t z = x;;) {
            seen[z] = true;
            cyc.push_back(z);
            z = pi.at(z);
            if (z == x) break;
        }
        out.push_back(std::move(cyc));
    }
    // Longest first so peeling gets priority; ties by minimum element.
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
        return l.size() != r.size() ? l.size() > r.size() : l[0] < r[0];
    });
    return out;
}

// Lowest `count` elements outside the block's current support.
inline std::vector<std::uint32_t> pick_pads(const SparsePerm& pi, std::uint32_t n,
                                            std::uint32_t count) {
    std::vector<std::uint32_t> pads;
    for (std::uint32_t v = 0; v < n && pads.size() < count; ++v) {
        const auto it = pi.find(v);
        if (it != pi.end() && it->second != v) continue;
        pads.push_back(v);
    }
    if (pads.size() < count)
        throw std::domain_error("decompose: not enough free points for residue handling");
    return pads;
}

// Destroys the block permutation move by move, recording one k-cycle factor
// per move; by construction the recorded word composes back to the block.
//
// Moves: (a) peel the head of any cycle whose length is 1 mod (k-1) or at
// least k; (b) absorb an odd residue cycle plus pads into one exact k-cycle;
// (c) bridge two even residue cycles (plus pads) into one long cycle.  A lone
// even residue cycle falls back to (b), whose two pieces the loop then
// consumes; parity guarantees that case only arises for even k.
inline void destroy_block(SparsePerm pi, std::uint32_t k, std::uint32_t n,
                          std::vector<std::vector<std::uint32_t>>& factors) {
    for (int guard = 0; guard < 1000; ++guard) {
        auto cyc = sparse_nontrivial_cycles(pi);
        if (cyc.empty()) return;
        const auto& c = cyc.front();
        const std::uint32_t len = static_cast<std::uint32_t>(c.size());
        if ((len - 1) % (k - 1) == 0 || len >= k) {
            std::vector<std::uint32_t> head(c.begin(), c.begin() + k);
            factors.push_back(head);
            apply_cycle_sparse(pi, inverse_cycle(head));
            continue;
        }
        // Residue cycle shorter than k.
        std::vector<std::uint32_t> g;
        if (len % 2 == 0) {
            const auto other = std::find_if(cyc.begin() + 1, cyc.end(), [](const auto& d) {
                return d.size() % 2 == 0;
            });
            if (other != cyc.end()) {
                // Bridge the two even cycles at their heads.
                g = {c[0], (*other)[0]};
                for (std::uint32_t z : pick_pads(pi, n, k - 2)) g.push_back(z);
                factors.push_back(inverse_cycle(g));
                apply_cycle_sparse(pi, g);
                continue;
            }
        }
        // Absorb the cycle and pads into a single move.
        g = c;
        for (std::uint32_t z : pick_pads(pi, n, k - len)) g.push_back(z);
        factors.push_back(inverse_cycle(g));
        apply_cycle_sparse(pi, g);
    }
    throw std::logic_error("decompose: block reduction did not terminate");
}

}  // namespace detail

// Writes sigma as an ordered product of k-cycles (leftmost applied last).
//
// k = 3 uses the exact constructions above: odd cycles chain with shared
// pivots, even cycles pair up, giving length (n - #cycles)/2 + #evens/2 on
// the nose.  For k >= 4, cycles whose length is 1 mod (k-1) peel directly and
// each residue cycle costs a bounded number of pad-assisted extra moves.
//
// Throws if sigma is outside the group the k-cycles generate (odd permutation
// with odd k), or when no free points are left to pad a residue move.
inline FactorizationResult decompose_to_kcycles(const std::vector<std::uint32_t>& sigma,
                                                std::uint32_t k) {
    if (k < 3) throw std::invalid_argument("decompose_to_kcycles: k must be >= 3");
    const auto n = static_cast<std::uint32_t>(sigma.size());
    if (n < k) throw std::invalid_argument("decompose_to_kcycles: n must be >= k");
    const auto all_cycles = cycles_of(sigma);

    FactorizationResult res;
    std::uint64_t deficit = 0;
    std::vector<std::vector<std::uint32_t>> odd, even;  // nontrivial cycles by parity
    for (const auto& c : all_cycles) {
        if (c.size() < 2) continue;
        deficit += c.size() - 1;
        if ((c.size() - 1) % (k - 1) != 0) ++res.residue_count;
        (c.size() % 2 == 0 ? even : odd).push_back(c);
    }
    res.lower_bound = (deficit + k - 2) / (k - 1);

    if (k % 2 == 1 && deficit % 2 == 1)
        throw std::domain_error("decompose_to_kcycles: odd permutation, unreachable by odd k");

    if (k == 3) {
        if (even.size() % 2 != 0)
            throw std::logic_error("decompose_to_kcycles: parity bookkeeping failed");
        for (const auto& c : odd) {
            auto fs = factor_odd_cycle(c);
            res.factors.insert(res.factors.end(), fs.begin(), fs.end());
        }
        for (std::size_t i = 0; i + 1 < even.size(); i += 2) {
            auto fs = factor_even_pair(even[i], even[i + 1]);
            res.factors.insert(res.factors.end(), fs.begin(), fs.end());
        }
    } else {
        // Self-contained blocks: a block's pads may collide with other blocks'
        // support because every block's word nets to identity off its own
        // cycles, and distinct blocks move disjoint point sets.
        std::vector<std::vector<std::vector<std::uint32_t>>> blocks;
        for (auto& c : odd) blocks.push_back({std::move(c)});
        for (std::size_t i = 0; i + 1 < even.size(); i += 2)
            blocks.push_back({even[i], even[i + 1]});
        if (even.size() % 2 == 1) blocks.push_back({even.back()});
        for (const auto& block : blocks) {
            detail::SparsePerm pi;
            for (const auto& c : block)
                for (std::size_t i = 0; i < c.size(); ++i) pi[c[i]] = c[(i + 1) % c.size()];
            detail::destroy_block(std::move(pi), k, n, res.factors);
        }
    }

    if (res.residue_count > 0)
        res.overhead_per_residue =
            (static_cast<double>(res.factors.size()) - static_cast<double>(res.lower_bound)) /
            static_cast<double>(res.residue_count);
    return res;
}

// Checks that factors are genuine k-cycles over distinct in-range points and
// compose (leftmost outermost) to sigma.
inline bool verify_factorization(const std::vector<std::uint32_t>& sigma, std::uint32_t k,
                                 const std::vector<std::vector<std::uint32_t>>& factors) {
    const auto n = static_cast<std::uint32_t>(sigma.size());
    for (const auto& f : factors) {
        if (f.size() != k) return false;
        for (std::size_t a = 0; a < f.size(); ++a) {
            if (f[a] >= n) return false;
            for (std::size_t b = a + 1; b < f.size(); ++b)
                if (f[a] == f[b]) return false;
        }
    }
    return compose_factors(n, factors) == sigma;
}

}  // namespace cyclewalk
