#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "conjugacy_class.hpp"

namespace cyclewalk {

// ---------------------------------------------------------------------------
// Offspring structure of the coupled component process.
//
// Running the walk to time tn lays down, per unit of n, a Poisson number of
// j-edges for each cycle length j in the class.  Exploring a component from a
// fixed vertex branches like a Galton-Watson tree whose offspring probability
// generating function is
//     pgf(z) = exp(t * sum_j j k_j (z^{j-1} - 1)).
// ---------------------------------------------------------------------------

inline double offspring_pgf(const ConjugacyClass& cls, double t, double z) {
    if (t < 0) throw std::invalid_argument("offspring_pgf: t must be nonnegative");
    double acc = 0.0;
    for (const auto& [j, kj] : cls.counts()) {
        double zp = 1.0;
        for (std::uint32_t e = 0; e + 1 < j; ++e) zp *= z;  // z^{j-1}
        acc += static_cast<double>(j) * kj * (zp - 1.0);
    }
    return std::exp(t * acc);
}

// Asymptotic fraction of vertices in the giant component at time tn; equals
// one minus the smallest fixed point of the offspring pgf on [0, 1].
//
// Zero if and only if t <= critical_time (mean offspring at most one).  Above
// the critical time the fixed point is found by iterating the pgf from zero,
// which increases monotonically to the smallest root; near criticality that
// iteration stalls, so after 1000 rounds we fall back to bisection on
// pgf(z) - z, which is convex with exactly one sign change left of 1.
inline double giant_fraction(const ConjugacyClass& cls, double t) {
    if (t < 0) throw std::invalid_argument("giant_fraction: t must be nonnegative");
    if (t * cls.pair_rate() <= 1.0) return 0.0;
    double z = 0.0;
    for (int iter = 0; iter < 1000; ++iter) {
        const double next = offspring_pgf(cls, t, z);
        if (std::abs(next - z) < 1e-13) return 1.0 - next;
        z = next;
    }
    // Bisection bracket: pgf(z) - z stays positive below the root; just under
    // 1 it is negative because the slope at 1 exceeds 1 past criticality.
    double lo = z;
    double gap = 1e-9;
    double hi = 1.0 - gap;
    while (hi > lo && offspring_pgf(cls, t, hi) - hi >= 0.0 && gap > 1e-15) {
        gap *= 0.5;
        hi = 1.0 - gap;
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (offspring_pgf(cls, t, mid) - mid >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 1.0 - 0.5 * (lo + hi);
}

namespace detail {

// Adaptive Simpson quadrature with Richardson correction.
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol) {
    if (b <= a) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace detail

// Integral of 1 - giant_fraction(s)^2 over [0, t].  Below the critical time
// the integrand is exactly 1, so only the supercritical stretch is quadrature.
inline double survival_integral(const ConjugacyClass& cls, double t) {
    if (t < 0) throw std::invalid_argument("survival_integral: t must be nonnegative");
    const double tc = cls.critical_time();
    if (t <= tc) return t;
    const auto integrand = [&](double s) {
        const double th = giant_fraction(cls, s);
        return 1.0 - th * th;
    };
    return tc + detail::adaptive_simpson(integrand, tc, t, 1e-10);
}

// Expected component-count decrement of one applied class element once the
// giant occupies fraction theta.  A j-cycle's hyperedge touches j uniform
// points; with q = 1 - theta the decrement is j - m when m >= 1 of them hit
// the giant and j - 1 when all miss, so its mean is j*q - q^j.  (For j = 2
// this is the familiar 1 - theta^2; for j >= 3 it is strictly smaller than
// (j-1)(1 - theta^2) because consecutive pair merges within one hyperedge
// share an endpoint that is size-biased toward the giant.)
inline double merge_rate(const ConjugacyClass& cls, double t) {
    const double q = 1.0 - giant_fraction(cls, t);
    double sum = 0.0;
    for (const auto& [j, kj] : cls.counts())
        sum += double(kj) * (double(j) * q - std::pow(q, double(j)));
    return sum;
}

// Integral of the merge rate over [0, t]; below the critical time the rate
// is exactly the transposition weight, so only the supercritical stretch is
// quadrature.
inline double merge_integral(const ConjugacyClass& cls, double t) {
    if (t < 0) throw std::invalid_argument("merge_integral: t must be nonnegative");
    const double tc = cls.critical_time();
    const double w = cls.transposition_weight();
    if (t <= tc) return w * t;
    const auto integrand = [&](double s) { return merge_rate(cls, s); };
    return w * tc + detail::adaptive_simpson(integrand, tc, t, 1e-10);
}

// Limiting component density: component_count(tn)/n converges to
//   1 - integral_0^t merge_rate.
// Below the critical time this is the exact straight line 1 - weight * t.
inline double component_density(const ConjugacyClass& cls, double t) {
    return 1.0 - merge_integral(cls, t);
}

// Limiting distance profile (1 - component_density) / transposition_weight;
// equals t up to the critical time, strictly slower afterwards.
inline double distance_profile(const ConjugacyClass& cls, double t) {
    return merge_integral(cls, t) / cls.transposition_weight();
}

// ---------------------------------------------------------------------------
// Series route to the same limits, for pure d-cycle steps.  Summing the
// expected tree-component census gives
//   S(d, t) = sum_{h>=0} ((d-1)h+1)^{h-2} / h! * (dt)^h * e^{-dt((d-1)h+1)},
// the limit of component_count(tn)/n.  Terms are accumulated in the log
// domain; summation stops after three consecutive terms below 1e-15 or at a
// hard cap of 1e5 terms (near the critical time the terms decay only like
// h^{-5/2}, so the cap bounds the tail at ~1e-8).
// ---------------------------------------------------------------------------

inline double component_density_series(std::uint32_t d, double t) {
    if (d < 2) throw std::invalid_argument("component_density_series: d must be >= 2");
    if (t < 0) throw std::invalid_argument("component_density_series: t must be nonnegative");
    if (t == 0.0) return 1.0;
    const double log_floor = std::log(1e-15);
    const double logdt = std::log(static_cast<double>(d) * t);
    double sum = 0.0;
    int small_streak = 0;
    for (std::uint64_t h = 0; h < 100000; ++h) {
        const double r = static_cast<double>(d - 1) * h + 1.0;
        const double log_term = (static_cast<double>(h) - 2.0) * std::log(r) -
                                std::lgamma(static_cast<double>(h) + 1.0) +
                                static_cast<double>(h) * logdt - d * t * r;
        sum += std::exp(log_term);
        if (log_term < log_floor) {
            if (++small_streak == 3) break;
        } else {
            small_streak = 0;
        }
    }
    return sum;
}

// Series form of the distance profile for pure k-cycle steps:
//   (1 - S(k, t)) / (k - 1).
// For t below 1/(k(k-1)) the series collapses to exactly t.
inline double distance_profile_series(std::uint32_t k, double t) {
    if (k < 2) throw std::invalid_argument("distance_profile_series: k must be >= 2");
    return (1.0 - component_density_series(k, t)) / (k - 1);
}

// ---------------------------------------------------------------------------
// Exact tree-component counts.
// ---------------------------------------------------------------------------

// Number of connected d-uniform hypertrees with h edges on a fixed labeled
// vertex set of size (d-1)h + 1:
//   (r-1)! * r^{h-1} / (h! * ((d-1)!)^h).
// d = 2 collapses to Cayley's (h+1)^{h-1}.
inline BigInt hypertree_count(std::uint32_t d, std::uint32_t h) {
    if (d < 2) throw std::invalid_argument("hypertree_count: d must be >= 2");
    if (h == 0) return 1;
    const std::uint64_t r = static_cast<std::uint64_t>(d - 1) * h + 1;
    BigInt num = 1;
    for (std::uint64_t v = 2; v < r; ++v) num *= v;  // (r-1)!
    for (std::uint32_t e = 0; e + 1 < h; ++e) num *= r;
    BigInt den = 1;
    for (std::uint64_t v = 2; v <= h; ++v) den *= v;  // h!
    BigInt fact_dm1 = 1;
    for (std::uint32_t v = 2; v < d; ++v) fact_dm1 *= v;  // (d-1)!
    for (std::uint32_t e = 0; e < h; ++e) den *= fact_dm1;
    return num / den;
}

struct HypertreeExpectation {
    double exact = 0.0;       // finite-n expectation in the Poissonized model
    double asymptotic = 0.0;  // n r^{h-2} (dt)^h e^{-drt} / h!
};

namespace detail {

inline double log_binomial(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace detail

// Expected number of tree components with exactly h edges after tn uniform
// d-edge arrivals on n vertices.  Each of the C(n,d) possible edges is then
// present independently with probability p = 1 - exp(-tn / C(n,d)); a tree
// component on a fixed r-set needs its h edges present and every other edge
// meeting the set -- C(n,d) - C(n-r,d) - h of them -- absent:
//   C(n,r) * hypertree_count * p^h * (1-p)^(C(n,d) - C(n-r,d) - h).
// Evaluated through logarithms so large n and h stay finite.
inline HypertreeExpectation expected_hypertrees(std::uint32_t n, std::uint32_t d, double t,
                                                std::uint32_t h) {
    if (d < 2) throw std::invalid_argument("expected_hypertrees: d must be >= 2");
    if (t < 0) throw std::invalid_argument("expected_hypertrees: t must be nonnegative");
    const std::uint64_t r = static_cast<std::uint64_t>(d - 1) * h + 1;
    if (n < r || n < d) throw std::invalid_argument("expected_hypertrees: n too small");
    const double nd = n, rd = static_cast<double>(r), dd = d;

    HypertreeExpectation out;
    // Asymptotic form first; h = 0 gives n e^{-dt}.
    out.asymptotic = nd * std::exp((static_cast<double>(h) - 2.0) * std::log(rd) +
                                   (h > 0 ? h * std::log(dd * t) : 0.0) - dd * rd * t -
                                   std::lgamma(static_cast<double>(h) + 1.0));
    if (t == 0.0) out.asymptotic = (h == 0) ? nd : 0.0;

    const double log_slots = detail::log_binomial(nd, dd);       // log C(n,d)
    const double slots = std::exp(log_slots);
    const double p = -std::expm1(-t * nd / slots);
    if (p == 0.0) {
        out.exact = (h == 0) ? nd : 0.0;
        return out;
    }
    const double log_tau = std::lgamma(rd) + (static_cast<double>(h) - 1.0) * std::log(rd) -
                           std::lgamma(static_cast<double>(h) + 1.0) -
                           static_cast<double>(h) * std::lgamma(dd);
    // C(n,d) - C(n-r,d) computed as slots * (1 - exp(log ratio)) so the two
    // near-equal binomials never cancel; log(1-p) is -tn/C(n,d) exactly, so
    // the exponent times it stays finite even when both counts overflow.
    const double log_outside = detail::log_binomial(nd - rd, dd);  // log C(n-r,d)
    const double touching = slots * -std::expm1(log_outside - log_slots);
    const double absent_exponent = touching - static_cast<double>(h);
    double log_e = detail::log_binomial(nd, rd) + log_tau + absent_exponent * (-t * nd / slots);
    if (h > 0) log_e += h * std::log(p);
    out.exact = std::exp(log_e);
    return out;
}

// ---------------------------------------------------------------------------
// Derived thresholds and diagnostics.
// ---------------------------------------------------------------------------

// Which closed form to use for the general-class giant-cycle threshold; the
// two differ by a factor of 4^weight and "derivation" is the one consistent
// with the slow-phase lower bound argument.
enum class ThresholdVariant : std::uint8_t { derivation, displayed };

// Cycle-size threshold delta such that by time tn some permutation cycle
// whp exceeds delta * n.  For a single transposition the two-sided argument
// gives giant_fraction^2 / 8; general classes get
//   (1 / (t * 2^weight)) * integral_0^t giant_fraction(s)^2 ds
// (or the 2^weight variant when asked for).  Zero at or below criticality.
inline double giant_cycle_threshold(const ConjugacyClass& cls, double t,
                                    ThresholdVariant variant = ThresholdVariant::derivation) {
    if (t < 0) throw std::invalid_argument("giant_cycle_threshold: t must be nonnegative");
    const double tc = cls.critical_time();
    if (t <= tc) return 0.0;
    if (cls.is_single_transposition()) {
        const double th = giant_fraction(cls, t);
        return th * th / 8.0;
    }
    const auto integrand = [&](double s) {
        const double th = giant_fraction(cls, s);
        return th * th;
    };
    const double integral = detail::adaptive_simpson(integrand, tc, t, 1e-10);
    const double scale = std::exp2(static_cast<double>(cls.transposition_weight()));
    const double base = integral / t;
    return variant == ThresholdVariant::derivation ? base / scale : base * scale;
}

struct FeasibilityRatio {
    double exact = 0.0;  // limiting mismatch mass over giant-cycle mass
    double bound = 0.0;  // closed-form upper bound t (1-theta)^2 sum_j k_j j (j-2)
};

// Supercritical diagnostic for the relabeling argument: the ratio of the
// expected mass that a uniform class step moves outside the giant component
// to the giant-cycle mass itself.  Exact form (at vanishing slack):
//   sum_j j k_j t ((1-theta)^2 - (1-theta)^j) / theta.
inline FeasibilityRatio feasibility_ratio(const ConjugacyClass& cls, double t) {
    const double tc = cls.critical_time();
    if (t <= tc) throw std::domain_error("feasibility_ratio: defined only past the critical time");
    const double th = giant_fraction(cls, t);
    const double q = 1.0 - th;
    FeasibilityRatio out;
    double exact = 0.0, bound = 0.0;
    for (const auto& [j, kj] : cls.counts()) {
        double qj = 1.0;
        for (std::uint32_t e = 0; e < j; ++e) qj *= q;  // (1-theta)^j
        exact += static_cast<double>(j) * kj * t * (q * q - qj) / th;
        bound += static_cast<double>(kj) * j * (static_cast<double>(j) - 2.0);
    }
    out.exact = exact;
    out.bound = t * q * q * bound;
    return out;
}

// Limiting fragmentation rate per step: each step carries
// transposition_weight elementary transpositions, and past criticality each
// splits a cycle with asymptotic probability giant_fraction^2 / 2.
inline double fragmentation_rate(const ConjugacyClass& cls, double t) {
    const double th = giant_fraction(cls, t);
    return cls.transposition_weight() * th * th / 2.0;
}

// ---------------------------------------------------------------------------
// Tabulated profile over a time grid (shared integral state so a fine grid
// does not rescan [0, t] per point).
// ---------------------------------------------------------------------------

struct ProfileRow {
    double t = 0.0;
    double theta = 0.0;          // giant_fraction
    double u = 0.0;              // component_density
    double phi = 0.0;            // distance_profile
    double delta = 0.0;          // giant_cycle_threshold
    double m_ratio_exact = 0.0;  // NaN at or below the critical time
    double m_ratio_bound = 0.0;  // NaN at or below the critical time
};

inline std::vector<ProfileRow> analytic_profile(const ConjugacyClass& cls,
                                                const std::vector<double>& ts,
                                                ThresholdVariant variant = ThresholdVariant::derivation) {
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
        if (!(ts[i] < ts[i + 1]))
            throw std::invalid_argument("analytic_profile: grid must be strictly increasing");
    if (!ts.empty() && ts.front() < 0)
        throw std::invalid_argument("analytic_profile: grid must be nonnegative");
    const double tc = cls.critical_time();
    const double w = cls.transposition_weight();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto merged_rate = [&](double s) { return merge_rate(cls, s); };
    const auto th2 = [&](double s) {
        const double th = giant_fraction(cls, s);
        return th * th;
    };
    std::vector<ProfileRow> rows;
    rows.reserve(ts.size());
    double prev_t = 0.0, merged = 0.0, sq = 0.0;  // cumulative integrals from 0
    for (const double t : ts) {
        // Advance both integrals over [prev_t, t], splitting at the critical
        // time where the integrands switch off their closed forms.
        const double lo = std::max(prev_t, tc);
        const double hi = std::max(t, tc);
        merged += w * (std::min(t, tc) - std::min(prev_t, tc));  // subcritical stretch
        if (hi > lo) {
            merged += detail::adaptive_simpson(merged_rate, lo, hi, 1e-10);
            sq += detail::adaptive_simpson(th2, lo, hi, 1e-10);
        }
        prev_t = t;

        ProfileRow row;
        row.t = t;
        row.theta = giant_fraction(cls, t);
        row.phi = merged / w;
        row.u = 1.0 - merged;
        if (t <= tc) {
            row.delta = 0.0;
            row.m_ratio_exact = nan;
            row.m_ratio_bound = nan;
        } else {
            if (cls.is_single_transposition()) {
                row.delta = row.theta * row.theta / 8.0;
            } else {
                const double scale = std::exp2(static_cast<double>(cls.transposition_weight()));
                row.delta = variant == ThresholdVariant::derivation ? sq / t / scale
                                                                    : sq / t * scale;
            }
            const FeasibilityRatio fr = feasibility_ratio(cls, t);
            row.m_ratio_exact = fr.exact;
            row.m_ratio_bound = fr.bound;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace cyclewalk
