#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "conjugacy_class.hpp"
#include "hyper_components.hpp"
#include "permutation.hpp"
#include "rng.hpp"

namespace cyclewalk {

// Thrown when the cycle count of the permutation drops below the component
// count of the coupled hypergraph, which the coupling forbids.
struct CouplingViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Draws the support of one step: support_size() distinct points, uniform by
// rejection, written to `points`.  Chunked by cycle_lengths_desc(), the first
// chunk is the longest cycle and so on; each chunk read left to right is the
// cycle's order.  Rotating each chunk so that its minimum comes first
// canonicalizes without changing the law, which stays uniform on the class.
inline void sample_step_into(const ConjugacyClass& cls, std::uint32_t n, SplitMix64& rng,
                             std::vector<std::uint32_t>& points) {
    const std::uint32_t m = cls.support_size();
    if (n < m) throw std::invalid_argument("sample_step: n smaller than class support");
    points.clear();
    while (points.size() < m) {
        const auto x = static_cast<std::uint32_t>(uniform_below(rng, n));
        bool fresh = true;
        for (std::uint32_t seen : points)
            if (seen == x) {
                fresh = false;
                break;
            }
        if (fresh) points.push_back(x);
    }
    std::size_t off = 0;
    for (std::uint32_t len : cls.cycle_lengths_desc()) {
        auto begin = points.begin() + static_cast<std::ptrdiff_t>(off);
        auto end = begin + len;
        std::rotate(begin, std::min_element(begin, end), end);
        off += len;
    }
}

// Uniform element of the class as a list of cycles, longest first.
inline std::vector<std::vector<std::uint32_t>> sample_step(const ConjugacyClass& cls,
                                                           std::uint32_t n, SplitMix64& rng) {
    std::vector<std::uint32_t> flat;
    sample_step_into(cls, n, rng, flat);
    std::vector<std::vector<std::uint32_t>> cycles;
    std::size_t off = 0;
    for (std::uint32_t len : cls.cycle_lengths_desc()) {
        cycles.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(off),
                            flat.begin() + static_cast<std::ptrdiff_t>(off + len));
        off += len;
    }
    return cycles;
}

struct TrajectoryRecord {
    std::uint32_t replica = 0;
    double t = 0.0;             // steps / n
    std::uint64_t steps = 0;
    std::uint64_t cycle_count = 0;       // of the permutation, fixed points included
    std::uint64_t component_count = 0;   // of the hypergraph, isolated vertices included
    std::uint32_t largest_cycle = 0;
    std::uint32_t largest_component = 0;
    std::uint64_t frag_count = 0;
    std::uint64_t frag_small_count = 0;  // fragmentations with a piece <= sqrt(n)
    std::uint64_t lower_bound_dist = 0;  // ceil((n - cycle_count) / transposition_weight)
};

// The permutation walk coupled to its hypergraph: every applied cycle also
// deposits one hyperedge on the same points.
class WalkState {
public:
    WalkState(const ConjugacyClass& cls, std::uint32_t n,
              HyperComponents::Options opt = HyperComponents::Options())
        : cls_(cls), n_(n), perm_(n), comps_(n, std::move(opt)),
          small_threshold_(static_cast<std::uint32_t>(std::floor(std::sqrt(double(n))))) {
        if (n < cls.support_size())
            throw std::invalid_argument("WalkState: n smaller than class support");
    }

    const ConjugacyClass& walk_class() const { return cls_; }
    std::uint32_t n() const { return n_; }
    const Permutation& permutation() const { return perm_; }
    Permutation& permutation() { return perm_; }
    HyperComponents& components() { return comps_; }
    std::uint64_t step_count() const { return step_count_; }
    double time() const { return static_cast<double>(step_count_) / n_; }
    std::uint64_t frag_count() const { return frag_count_; }
    std::uint64_t frag_small_count() const { return frag_small_count_; }
    // Running sup of (cycle count - component count) over all applied cycles.
    std::uint64_t max_cycle_excess() const { return max_excess_; }

    void advance(SplitMix64& rng, std::uint64_t steps) {
        for (std::uint64_t s = 0; s < steps; ++s) {
            sample_step_into(cls_, n_, rng, points_);
            std::size_t off = 0;
            for (std::uint32_t len : cls_.cycle_lengths_desc()) {
                const std::span<const std::uint32_t> cyc(points_.data() + off, len);
                events_.clear();
                perm_.apply_cycle(cyc, &events_);
                for (const StepEvent& ev : events_) {
                    if (ev.kind != StepEvent::Kind::fragmentation) continue;
                    ++frag_count_;
                    if (std::min(ev.piece_a, ev.piece_b) <= small_threshold_)
                        ++frag_small_count_;
                }
                comps_.add_hyperedge(cyc);
                const std::uint64_t cycles = perm_.cycle_count();
                const std::uint64_t comps = comps_.component_count();
                if (cycles < comps)
                    throw CouplingViolation(
                        "coupling violated: permutation has fewer cycles than the "
                        "hypergraph has components");
                max_excess_ = std::max(max_excess_, cycles - comps);
                off += len;
            }
            ++step_count_;
        }
    }

    TrajectoryRecord checkpoint(std::uint32_t replica = 0) {
        TrajectoryRecord rec;
        rec.replica = replica;
        rec.t = time();
        rec.steps = step_count_;
        rec.cycle_count = perm_.cycle_count();
        rec.component_count = comps_.component_count();
        rec.largest_cycle = perm_.largest_cycle();
        rec.largest_component = comps_.largest_component();
        rec.frag_count = frag_count_;
        rec.frag_small_count = frag_small_count_;
        const std::uint64_t deficit = n_ - rec.cycle_count;
        const std::uint32_t w = cls_.transposition_weight();
        rec.lower_bound_dist = (deficit + w - 1) / w;
        return rec;
    }

private:
    ConjugacyClass cls_;
    std::uint32_t n_;
    Permutation perm_;
    HyperComponents comps_;
    std::uint32_t small_threshold_;
    std::uint64_t step_count_ = 0;
    std::uint64_t frag_count_ = 0;
    std::uint64_t frag_small_count_ = 0;
    std::uint64_t max_excess_ = 0;
    std::vector<std::uint32_t> points_;
    std::vector<StepEvent> events_;
};

}  // namespace cyclewalk
