#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

namespace cyclewalk {

// One transposition either merges two cycles or splits one in two.
struct StepEvent {
    enum class Kind : std::uint8_t { coagulation, fragmentation };
    Kind kind;
    // fragmentation: sizes of the piece containing the first / second point of
    // the transposition.  coagulation: piece_a = merged size, piece_b = 0.
    std::uint32_t piece_a = 0;
    std::uint32_t piece_b = 0;
};

// Permutation of {0, ..., n-1} maintained as doubly-linked cycles, with a
// stable label per cycle and size aggregates.  Composition convention: a
// newly applied transposition or cycle acts after the current permutation
// (outermost), so applying (i j) maps x to (i j)(sigma(x)).
//
// Fixed points count as 1-cycles: the identity has n cycles.
class Permutation {
public:
    explicit Permutation(std::uint32_t n)
        : n_(n), succ_(n), pred_(n), label_(n), size_(n, 1), num_cycles_(n) {
        if (n == 0) throw std::invalid_argument("Permutation: n must be positive");
        for (std::uint32_t x = 0; x < n; ++x) {
            succ_[x] = x;
            pred_[x] = x;
            label_[x] = x;
        }
        for (std::uint32_t x = 0; x < n; ++x) sizes_.insert(1);
    }

    std::uint32_t size() const { return n_; }
    std::uint32_t successor(std::uint32_t x) const { return succ_[x]; }
    std::uint32_t cycle_label(std::uint32_t x) const { return label_[x]; }
    std::uint32_t cycle_size(std::uint32_t label) const { return size_[label]; }
    std::uint32_t cycle_size_of(std::uint32_t x) const { return size_[label_[x]]; }
    std::uint32_t cycle_count() const { return num_cycles_; }
    std::uint32_t largest_cycle() const { return *sizes_.rbegin(); }
    const std::multiset<std::uint32_t>& cycle_size_multiset() const { return sizes_; }

    // Applies the transposition (i j) on top of the current permutation.
    StepEvent apply_transposition(std::uint32_t i, std::uint32_t j) {
        assert(i < n_ && j < n_ && i != j);
        const std::uint32_t li = label_[i], lj = label_[j];
        if (li != lj) {
            // Merge: relabel the smaller cycle before the pointers move, while
            // its orbit is still a closed loop.
            std::uint32_t small_label = li, big_label = lj;
            std::uint32_t small_start = i;
            if (size_[small_label] > size_[big_label]) {
                std::swap(small_label, big_label);
                small_start = j;
            }
            for (std::uint32_t x = small_start;;) {
                label_[x] = big_label;
                x = succ_[x];
                if (x == small_start) break;
            }
            rewire(i, j);
            const std::uint32_t merged = size_[li] + size_[lj];
            erase_size(size_[li]);
            erase_size(size_[lj]);
            sizes_.insert(merged);
            size_[big_label] = merged;
            size_[small_label] = 0;
            free_labels_.push_back(small_label);
            --num_cycles_;
            return {StepEvent::Kind::coagulation, merged, 0};
        }
        // Split: after rewiring, i and j sit on separate cycles.  Walk both in
        // lockstep so the cost is proportional to the smaller piece.
        const std::uint32_t whole = size_[li];
        rewire(i, j);
        std::uint32_t a = i, b = j;
        std::uint32_t ca = 1, cb = 1;
        bool small_is_i;
        std::uint32_t small_size;
        for (;;) {
            a = succ_[a];
            if (a == i) {
                small_is_i = true;
                small_size = ca;
                break;
            }
            ++ca;
            b = succ_[b];
            if (b == j) {
                small_is_i = false;
                small_size = cb;
                break;
            }
            ++cb;
        }
        const std::uint32_t fresh = free_labels_.back();
        free_labels_.pop_back();
        const std::uint32_t start = small_is_i ? i : j;
        for (std::uint32_t x = start;;) {
            label_[x] = fresh;
            x = succ_[x];
            if (x == start) break;
        }
        size_[fresh] = small_size;
        size_[li] = whole - small_size;
        erase_size(whole);
        sizes_.insert(small_size);
        sizes_.insert(whole - small_size);
        ++num_cycles_;
        const std::uint32_t piece_i = small_is_i ? small_size : whole - small_size;
        return {StepEvent::Kind::fragmentation, piece_i, whole - piece_i};
    }

    // Applies the cycle (x0 x1 ... x_{k-1}) on top of the current permutation,
    // i.e. the element written first maps to the one written second.  Emits
    // one StepEvent per constituent transposition (k-1 of them).
    void apply_cycle(std::span<const std::uint32_t> xs, std::vector<StepEvent>* events = nullptr) {
        const std::size_t k = xs.size();
        if (k < 2) throw std::invalid_argument("apply_cycle: need at least 2 points");
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                if (xs[a] == xs[b]) throw std::invalid_argument("apply_cycle: repeated point");
        // (x0 .. x_{k-1}) = (x0 x1)(x1 x2)...(x_{k-2} x_{k-1}) with the left
        // factor outermost, so the rightmost transposition is applied first.
        for (std::size_t m = k - 1; m >= 1; --m) {
            StepEvent ev = apply_transposition(xs[m - 1], xs[m]);
            if (events) events->push_back(ev);
        }
    }

    // Labels of cycles whose length is not congruent to 1 mod (k-1); these are
    // the cycles a pure k-cycle walk cannot finish off without pairing.
    // Fixed points never qualify.
    std::vector<std::uint32_t> residue_labels(std::uint32_t k) const {
        if (k < 3) throw std::invalid_argument("residue_labels: k must be >= 3");
        std::vector<std::uint32_t> out;
        for (std::uint32_t label = 0; label < n_; ++label)
            if (size_[label] > 0 && (size_[label] - 1) % (k - 1) != 0) out.push_back(label);
        return out;
    }

    // Full cycle decomposition; each cycle starts at its minimum element and
    // cycles are ordered by that minimum.  O(n), meant for I/O and tests.
    std::vector<std::vector<std::uint32_t>> cycles() const {
        std::vector<bool> seen(n_, false);
        std::vector<std::vector<std::uint32_t>> out;
        for (std::uint32_t x = 0; x < n_; ++x) {
            if (seen[x]) continue;
            std::vector<std::uint32_t> cyc;
            for (std::uint32_t y = x;;) {
                seen[y] = true;
                cyc.push_back(y);
                y = succ_[y];
                if (y == x) break;
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

    // One line per cycle, 1-based elements, cycles ordered by minimum element.
    void dump(std::ostream& os) const {
        for (const auto& cyc : cycles()) {
            for (std::size_t idx = 0; idx < cyc.size(); ++idx) {
                if (idx) os << ' ';
                os << cyc[idx] + 1;
            }
            os << '\n';
        }
    }

    // Copy of the underlying map x -> sigma(x).
    std::vector<std::uint32_t> to_vector() const { return succ_; }

    // Recomputes every aggregate from the successor array and compares.
    bool consistent() const {
        std::vector<std::uint32_t> visited_label(n_, n_);
        std::uint32_t cycles_seen = 0;
        std::multiset<std::uint32_t> sizes_seen;
        for (std::uint32_t x = 0; x < n_; ++x) {
            if (pred_[succ_[x]] != x) return false;
            if (visited_label[x] != n_) continue;
            std::uint32_t len = 0;
            const std::uint32_t lab = label_[x];
            for (std::uint32_t y = x;;) {
                if (label_[y] != lab) return false;
                visited_label[y] = lab;
                ++len;
                y = succ_[y];
                if (y == x) break;
            }
            if (size_[lab] != len) return false;
            sizes_seen.insert(len);
            ++cycles_seen;
        }
        return cycles_seen == num_cycles_ && sizes_seen == sizes_;
    }

private:
    void rewire(std::uint32_t i, std::uint32_t j) {
        const std::uint32_t pi = pred_[i], pj = pred_[j];
        succ_[pi] = j;
        succ_[pj] = i;
        pred_[j] = pi;
        pred_[i] = pj;
    }

    void erase_size(std::uint32_t s) { sizes_.erase(sizes_.find(s)); }

    std::uint32_t n_;
    std::vector<std::uint32_t> succ_, pred_, label_;
    std::vector<std::uint32_t> size_;  // by label; 0 marks a free label
    std::vector<std::uint32_t> free_labels_;
    std::multiset<std::uint32_t> sizes_;
    std::uint32_t num_cycles_;
};

}  // namespace cyclewalk
