// Runs one replica of the transposition walk and prints, at a handful of
// times, the largest permutation cycle and largest hypergraph component next
// to the predicted giant fraction.  Past t = 1/2 both observables should
// track theta; before it they stay near zero.

#include <cstdio>

#include "cyclewalk/analytics.hpp"
#include "cyclewalk/rng.hpp"
#include "cyclewalk/walk.hpp"

int main() {
    const auto cls = cyclewalk::ConjugacyClass::parse("k2=1");
    const std::uint32_t n = 200000;

    cyclewalk::WalkState walk(cls, n);
    cyclewalk::SplitMix64 rng = cyclewalk::replica_stream(42, 0);

    std::printf("%6s %12s %12s %12s\n", "t", "cycle/n", "comp/n", "theta");
    for (int i = 1; i <= 8; ++i) {
        const double t = 0.2 * i;
        const auto target = static_cast<std::uint64_t>(t * n);
        walk.advance(rng, target - walk.step_count());
        const auto rec = walk.checkpoint();
        std::printf("%6.2f %12.4f %12.4f %12.4f\n", t,
                    double(rec.largest_cycle) / n, double(rec.largest_component) / n,
                    cyclewalk::giant_fraction(cls, t));
    }
    std::printf("critical time for this class: %.4f\n", cls.critical_time());
    return 0;
}
