#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "analytics.hpp"
#include "cayley_bfs.hpp"
#include "conjugacy_class.hpp"
#include "cycle_notation.hpp"
#include "distance.hpp"
#include "walk.hpp"

namespace cyclewalk {

// Output directory resolution order: explicit config value, CYCLEWALK_OUT
// environment variable, current directory.
inline std::string default_out_dir() {
    if (const char* env = std::getenv("CYCLEWALK_OUT"); env && *env) return env;
    return ".";
}

struct ExperimentConfig {
    std::string experiment;
    std::string cls = "k2=1";
    std::uint32_t n = 1000;
    std::vector<double> t_grid;
    std::uint32_t replicas = 1;
    std::uint64_t seed = 1;
    bool poissonize = false;
    std::uint32_t threads = 1;
    double delta = 0.0;                  // tau-delta: cycle-length fraction
    double t_end = 0.0;                  // tau-delta / census horizon
    double window_lo = 0.0, window_hi = 0.0;
    std::vector<std::uint32_t> watch;    // degree experiment vertices
    std::uint32_t census_max_edges = 3;
    std::string out_dir;                 // empty = resolve via default_out_dir()
    std::string threshold_variant = "derivation";
    // Optional self-checks; disabled while NaN / zero / negative.
    double check_rel_tol = std::numeric_limits<double>::quiet_NaN();
    std::uint32_t check_min_pass = 0;
    std::int64_t expect_hits_min = -1;
    std::int64_t expect_hits_max = -1;
};

// "a:b:step" (inclusive of b up to rounding) or a comma-separated list.
inline std::vector<double> parse_time_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double a = 0, b = 0, h = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(text);
        if (!(is >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || h <= 0 || b < a)
            throw std::invalid_argument("time grid: expected start:stop:step");
        for (double t = a; t <= b + h * 1e-9; t += h) out.push_back(t);
    } else {
        std::istringstream is(text);
        std::string item;
        while (std::getline(is, item, ','))
            if (!item.empty()) out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("time grid: empty");
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) throw std::invalid_argument("time grid: must increase");
    if (out.front() < 0) throw std::invalid_argument("time grid: negative time");
    return out;
}

inline void apply_json(ExperimentConfig& cfg, const nlohmann::json& j) {
    if (j.contains("experiment")) cfg.experiment = j.at("experiment").get<std::string>();
    if (j.contains("class")) cfg.cls = j.at("class").get<std::string>();
    if (j.contains("n")) cfg.n = j.at("n").get<std::uint32_t>();
    if (j.contains("t_grid")) {
        const auto& g = j.at("t_grid");
        if (g.is_array()) {
            cfg.t_grid = g.get<std::vector<double>>();
        } else if (g.is_object()) {
            std::ostringstream os;
            os << g.at("start").get<double>() << ':' << g.at("stop").get<double>() << ':'
               << g.at("step").get<double>();
            cfg.t_grid = parse_time_grid(os.str());
        } else {
            cfg.t_grid = parse_time_grid(g.get<std::string>());
        }
    }
    if (j.contains("replicas")) cfg.replicas = j.at("replicas").get<std::uint32_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("poissonize")) cfg.poissonize = j.at("poissonize").get<bool>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<std::uint32_t>();
    if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
    if (j.contains("t_end")) cfg.t_end = j.at("t_end").get<double>();
    if (j.contains("window")) {
        const auto w = j.at("window").get<std::vector<double>>();
        if (w.size() != 2) throw std::invalid_argument("config: window needs [lo, hi]");
        cfg.window_lo = w[0];
        cfg.window_hi = w[1];
    }
    if (j.contains("watch")) cfg.watch = j.at("watch").get<std::vector<std::uint32_t>>();
    if (j.contains("census_max_edges"))
        cfg.census_max_edges = j.at("census_max_edges").get<std::uint32_t>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("threshold_variant"))
        cfg.threshold_variant = j.at("threshold_variant").get<std::string>();
    if (j.contains("check_rel_tol")) cfg.check_rel_tol = j.at("check_rel_tol").get<double>();
    if (j.contains("check_min_pass"))
        cfg.check_min_pass = j.at("check_min_pass").get<std::uint32_t>();
    if (j.contains("expect_hits_min"))
        cfg.expect_hits_min = j.at("expect_hits_min").get<std::int64_t>();
    if (j.contains("expect_hits_max"))
        cfg.expect_hits_max = j.at("expect_hits_max").get<std::int64_t>();
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config: " + path);
    nlohmann::json j;
    in >> j;
    ExperimentConfig cfg;
    apply_json(cfg, j);
    return cfg;
}

namespace detail {

// Stable text form for doubles so that reruns are byte-identical.
inline std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

// Work-stealing over replica ids via a shared counter; results keyed by id
// keep output order independent of the thread count.
template <typename Fn>
void parallel_replicas(std::uint32_t replicas, std::uint32_t threads, Fn&& fn) {
    threads = std::min(std::max(threads, 1u), std::max(replicas, 1u));
    if (threads <= 1) {
        for (std::uint32_t r = 0; r < replicas; ++r) fn(r);
        return;
    }
    std::atomic<std::uint32_t> next{0};
    std::exception_ptr error;
    std::mutex error_mx;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::uint32_t i = 0; i < threads; ++i) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint32_t r = next.fetch_add(1);
                if (r >= replicas) return;
                try {
                    fn(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mx);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

inline std::filesystem::path prepare_out(const ExperimentConfig& cfg) {
    const std::filesystem::path dir = cfg.out_dir.empty() ? default_out_dir() : cfg.out_dir;
    std::filesystem::create_directories(dir);
    return dir;
}

inline nlohmann::json config_echo(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["experiment"] = cfg.experiment;
    j["class"] = cfg.cls;
    j["n"] = cfg.n;
    j["replicas"] = cfg.replicas;
    j["seed"] = cfg.seed;
    j["poissonize"] = cfg.poissonize;
    return j;
}

struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
};

inline int finish(const std::filesystem::path& dir, const std::string& name,
                  nlohmann::json summary, const std::vector<Check>& checks) {
    bool all_pass = true;
    auto arr = nlohmann::json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        all_pass = all_pass && c.pass;
    }
    summary["checks"] = arr;
    summary["exit_code"] = all_pass ? 0 : 2;
    std::ofstream out(dir / (name + "_summary.json"));
    out << summary.dump(2) << '\n';
    return all_pass ? 0 : 2;
}

inline ThresholdVariant variant_from(const std::string& name) {
    if (name == "derivation") return ThresholdVariant::derivation;
    if (name == "displayed") return ThresholdVariant::displayed;
    throw std::invalid_argument("threshold_variant must be 'derivation' or 'displayed'");
}

// Step budget for grid time t: deterministic floor(t n + 1/2), or a Poisson
// increment drawn from the replica's own stream.
inline std::uint64_t grid_target(const ExperimentConfig& cfg, SplitMix64& rng, double t_prev,
                                 double t, std::uint64_t done) {
    if (!cfg.poissonize) return static_cast<std::uint64_t>(std::llround(t * cfg.n));
    return done + poisson(rng, (t - t_prev) * cfg.n);
}

}  // namespace detail

// --------------------------------------------------------------------------
// trajectory: replicas x time-grid observables with analytic companions.
// --------------------------------------------------------------------------
inline int run_trajectory(const ExperimentConfig& cfg) {
    const ConjugacyClass cls = ConjugacyClass::parse(cfg.cls);
    if (cfg.t_grid.empty()) throw std::invalid_argument("trajectory: t_grid required");
    const auto dir = detail::prepare_out(cfg);

    struct Pred {
        double u, theta, phi;
    };
    std::vector<Pred> pred;
    pred.reserve(cfg.t_grid.size());
    for (double t : cfg.t_grid)
        pred.push_back({component_density(cls, t), giant_fraction(cls, t),
                        distance_profile(cls, t)});

    std::vector<std::vector<TrajectoryRecord>> rows(cfg.replicas);
    std::atomic<std::uint64_t> max_gap{0};
    detail::parallel_replicas(cfg.replicas, cfg.threads, [&](std::uint32_t rid) {
        auto rng = replica_stream(cfg.seed, rid);
        WalkState walk(cls, cfg.n);
        std::uint64_t done = 0;
        double t_prev = 0.0;
        for (double t : cfg.t_grid) {
            const std::uint64_t target = detail::grid_target(cfg, rng, t_prev, t, done);
            walk.advance(rng, target - done);
            done = target;
            t_prev = t;
            auto rec = walk.checkpoint(rid);
            rec.t = t;  // grid time, not steps/n, so poissonized runs line up
            rows[rid].push_back(rec);
        }
        std::uint64_t seen = max_gap.load();
        while (walk.max_cycle_excess() > seen &&
               !max_gap.compare_exchange_weak(seen, walk.max_cycle_excess())) {
        }
    });

    std::ofstream csv(dir / "trajectory.csv");
    csv << "replica,t,steps,N,Nbar,lambda,L,frag,frag_small,lb_dist,u_pred,theta_pred,phi_pred\n";
    for (std::uint32_t rid = 0; rid < cfg.replicas; ++rid) {
        for (std::size_t i = 0; i < rows[rid].size(); ++i) {
            const auto& r = rows[rid][i];
            const auto& p = pred[i];
            csv << r.replica << ',' << detail::fmt(r.t) << ',' << r.steps << ','
                << r.cycle_count << ',' << r.component_count << ',' << r.largest_cycle << ','
                << r.largest_component << ',' << r.frag_count << ',' << r.frag_small_count << ','
                << r.lower_bound_dist << ',' << detail::fmt(p.u) << ',' << detail::fmt(p.theta)
                << ',' << detail::fmt(p.phi) << '\n';
        }
    }
    csv.close();

    nlohmann::json summary = detail::config_echo(cfg);
    summary["max_coupling_gap"] = max_gap.load();
    summary["gap_budget_n34"] = std::pow(double(cfg.n), 0.75);
    auto per_t = nlohmann::json::array();
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i) {
        double mean_n = 0, mean_nbar = 0, mean_l = 0;
        for (std::uint32_t rid = 0; rid < cfg.replicas; ++rid) {
            mean_n += double(rows[rid][i].cycle_count);
            mean_nbar += double(rows[rid][i].component_count);
            mean_l += double(rows[rid][i].largest_cycle);
        }
        const double r = std::max<double>(cfg.replicas, 1);
        per_t.push_back({{"t", cfg.t_grid[i]},
                         {"mean_N_over_n", mean_n / r / cfg.n},
                         {"mean_Nbar_over_n", mean_nbar / r / cfg.n},
                         {"mean_lambda_over_n", mean_l / r / cfg.n},
                         {"u_pred", pred[i].u},
                         {"theta_pred", pred[i].theta}});
    }
    summary["per_t"] = per_t;
    return detail::finish(dir, "trajectory", std::move(summary), {});
}

// --------------------------------------------------------------------------
// tau-delta: first time a cycle of length >= delta * n exists, per replica.
// --------------------------------------------------------------------------
inline int run_tau_delta(const ExperimentConfig& cfg) {
    const ConjugacyClass cls = ConjugacyClass::parse(cfg.cls);
    if (cfg.delta <= 0 || cfg.delta >= 1)
        throw std::invalid_argument("tau-delta: delta must lie in (0, 1)");
    if (cfg.t_end <= 0) throw std::invalid_argument("tau-delta: t_end required");
    const auto dir = detail::prepare_out(cfg);
    const auto threshold = static_cast<std::uint32_t>(std::ceil(cfg.delta * cfg.n));
    const auto max_steps = static_cast<std::uint64_t>(std::llround(cfg.t_end * cfg.n));

    struct Row {
        bool hit = false;
        double tau = -1.0;
        std::uint64_t steps = 0;
        std::uint32_t largest = 0;
    };
    std::vector<Row> rows(cfg.replicas);
    detail::parallel_replicas(cfg.replicas, cfg.threads, [&](std::uint32_t rid) {
        auto rng = replica_stream(cfg.seed, rid);
        WalkState walk(cls, cfg.n);
        Row row;
        for (std::uint64_t s = 0; s < max_steps; ++s) {
            walk.advance(rng, 1);
            if (walk.permutation().largest_cycle() >= threshold) {
                row.hit = true;
                row.tau = walk.time();
                break;
            }
        }
        row.steps = walk.step_count();
        row.largest = walk.permutation().largest_cycle();
        rows[rid] = row;
    });

    std::ofstream csv(dir / "tau_delta.csv");
    csv << "replica,hit,tau,steps,largest\n";
    std::int64_t hits = 0;
    for (std::uint32_t rid = 0; rid < cfg.replicas; ++rid) {
        const auto& r = rows[rid];
        hits += r.hit;
        csv << rid << ',' << int(r.hit) << ',' << detail::fmt(r.tau) << ',' << r.steps << ','
            << r.largest << '\n';
    }
    csv.close();

    nlohmann::json summary = detail::config_echo(cfg);
    summary["delta"] = cfg.delta;
    summary["t_end"] = cfg.t_end;
    summary["threshold_cycle_length"] = threshold;
    summary["hits"] = hits;
    std::vector<detail::Check> checks;
    if (cfg.expect_hits_min >= 0)
        checks.push_back({"hits_at_least",
                          hits >= cfg.expect_hits_min,
                          std::to_string(hits) + " >= " + std::to_string(cfg.expect_hits_min)});
    if (cfg.expect_hits_max >= 0)
        checks.push_back({"hits_at_most",
                          hits <= cfg.expect_hits_max,
                          std::to_string(hits) + " <= " + std::to_string(cfg.expect_hits_max)});
    return detail::finish(dir, "tau_delta", std::move(summary), checks);
}

// --------------------------------------------------------------------------
// window-frag: fragmentation counts inside [lo, hi] against the analytic
// rate, which integrates to n * (weight / 2) * int_lo^hi theta^2.
// --------------------------------------------------------------------------
inline int run_window_frag(const ExperimentConfig& cfg) {
    const ConjugacyClass cls = ConjugacyClass::parse(cfg.cls);
    if (!(cfg.window_lo >= 0 && cfg.window_hi > cfg.window_lo))
        throw std::invalid_argument("window-frag: need window [lo, hi) with hi > lo");
    const auto dir = detail::prepare_out(cfg);

    const double theta_sq_integral =
        (cfg.window_hi - cfg.window_lo) -
        (survival_integral(cls, cfg.window_hi) - survival_integral(cls, cfg.window_lo));
    const double predicted =
        double(cfg.n) * 0.5 * cls.transposition_weight() * theta_sq_integral;

    const double predicted_dnbar =
        double(cfg.n) * cls.transposition_weight() *
        (survival_integral(cls, cfg.window_hi) - survival_integral(cls, cfg.window_lo));

    struct Row {
        std::uint64_t frag = 0, frag_small = 0, dnbar = 0;
    };
    std::vector<Row> rows(cfg.replicas);
    detail::parallel_replicas(cfg.replicas, cfg.threads, [&](std::uint32_t rid) {
        auto rng = replica_stream(cfg.seed, rid);
        WalkState walk(cls, cfg.n);
        const auto s_lo = static_cast<std::uint64_t>(std::llround(cfg.window_lo * cfg.n));
        const auto s_hi = static_cast<std::uint64_t>(std::llround(cfg.window_hi * cfg.n));
        walk.advance(rng, s_lo);
        const std::uint64_t f0 = walk.frag_count(), fs0 = walk.frag_small_count();
        const std::uint64_t c0 = walk.components().component_count();
        walk.advance(rng, s_hi - s_lo);
        rows[rid] = {walk.frag_count() - f0, walk.frag_small_count() - fs0,
                     c0 - walk.components().component_count()};
    });

    std::ofstream csv(dir / "window_frag.csv");
    csv << "replica,t_lo,t_hi,frag,frag_small,dNbar,predicted_frag,predicted_dNbar\n";
    std::uint32_t within = 0;
    double small_sum = 0, frag_sum = 0;
    for (std::uint32_t rid = 0; rid < cfg.replicas; ++rid) {
        const auto& r = rows[rid];
        csv << rid << ',' << detail::fmt(cfg.window_lo) << ',' << detail::fmt(cfg.window_hi)
            << ',' << r.frag << ',' << r.frag_small << ',' << r.dnbar << ','
            << detail::fmt(predicted) << ',' << detail::fmt(predicted_dnbar) << '\n';
        frag_sum += double(r.frag);
        small_sum += double(r.frag_small);
        if (predicted > 0 &&
            std::abs(double(r.frag) / predicted - 1.0) <=
                (std::isnan(cfg.check_rel_tol) ? 0.15 : cfg.check_rel_tol))
            ++within;
    }
    csv.close();

    nlohmann::json summary = detail::config_echo(cfg);
    summary["window"] = {cfg.window_lo, cfg.window_hi};
    summary["predicted_frag"] = predicted;
    summary["predicted_dNbar"] = predicted_dnbar;
    summary["mean_frag"] = cfg.replicas ? frag_sum / cfg.replicas : 0.0;
    summary["small_fraction"] = frag_sum > 0 ? small_sum / frag_sum : 0.0;
    summary["replicas_within_tol"] = within;
    std::vector<detail::Check> checks;
    if (cfg.check_min_pass > 0)
        checks.push_back({"replicas_within_tol",
                          within >= cfg.check_min_pass,
                          std::to_string(within) + " >= " + std::to_string(cfg.check_min_pass)});
    return detail::finish(dir, "window_frag", std::move(summary), checks);
}

// --------------------------------------------------------------------------
// census: component census at time t_end, with the analytic expectations
// when the class is a single cycle length.
// --------------------------------------------------------------------------
inline int run_census(const ExperimentConfig& cfg) {
    const ConjugacyClass cls = ConjugacyClass::parse(cfg.cls);
    if (cfg.t_end <= 0) throw std::invalid_argument("census: t_end required");
    const auto dir = detail::prepare_out(cfg);
    const bool pure = cls.is_single_cycle();
    const std::uint32_t d = cls.max_cycle_length();

    std::vector<std::map<std::uint32_t, std::uint64_t>> census(cfg.replicas);
    detail::parallel_replicas(cfg.replicas, cfg.threads, [&](std::uint32_t rid) {
        auto rng = replica_stream(cfg.seed, rid);
        WalkState walk(cls, cfg.n);
        std::uint64_t target = cfg.poissonize
                                   ? poisson(rng, cfg.t_end * cfg.n)
                                   : static_cast<std::uint64_t>(std::llround(cfg.t_end * cfg.n));
        walk.advance(rng, target);
        census[rid] = walk.components().hypertree_census();
    });

    std::ofstream csv(dir / "census.csv");
    csv << "replica,t,h,count,expected_exact,expected_asymptotic\n";
    std::vector<double> mean(cfg.census_max_edges + 1, 0.0);
    for (std::uint32_t rid = 0; rid < cfg.replicas; ++rid) {
        for (std::uint32_t h = 0; h <= cfg.census_max_edges; ++h) {
            const auto it = census[rid].find(h);
            const std::uint64_t count = it == census[rid].end() ? 0 : it->second;
            mean[h] += double(count);
            double exact = std::numeric_limits<double>::quiet_NaN();
            double asym = std::numeric_limits<double>::quiet_NaN();
            if (pure) {
                const auto e = expected_hypertrees(cfg.n, d, cfg.t_end, h);
                exact = e.exact;
                asym = e.asymptotic;
            }
            csv << rid << ',' << detail::fmt(cfg.t_end) << ',' << h << ',' << count << ','
                << detail::fmt(exact) << ',' << detail::fmt(asym) << '\n';
        }
    }
    csv.close();

    nlohmann::json summary = detail::config_echo(cfg);
    summary["t"] = cfg.t_end;
    std::vector<detail::Check> checks;
    auto per_h = nlohmann::json::array();
    for (std::uint32_t h = 0; h <= cfg.census_max_edges; ++h) {
        const double m = cfg.replicas ? mean[h] / cfg.replicas : 0.0;
        nlohmann::json row{{"h", h}, {"mean_count", m}};
        if (pure) {
            const auto e = expected_hypertrees(cfg.n, d, cfg.t_end, h);
            row["expected_exact"] = e.exact;
            row["expected_asymptotic"] = e.asymptotic;
            if (!std::isnan(cfg.check_rel_tol) && e.exact > 0) {
                const double rel = std::abs(m / e.exact - 1.0);
                checks.push_back({"census_h" + std::to_string(h),
                                  rel <= cfg.check_rel_tol,
                                  "rel_err=" + detail::fmt(rel)});
            }
        }
        per_h.push_back(row);
    }
    summary["per_h"] = per_h;
    return detail::finish(dir, "census", std::move(summary), checks);
}

// --------------------------------------------------------------------------
// degree: watched-vertex degrees along the grid; a watched point gains
// (j - 1) each time a j-cycle covers it, so the mean is t * pair_rate.
// --------------------------------------------------------------------------
inline int run_degree(const ExperimentConfig& cfg) {
    const ConjugacyClass cls = ConjugacyClass::parse(cfg.cls);
    if (cfg.t_grid.empty()) throw std::invalid_argument("degree: t_grid required");
    const auto dir = detail::prepare_out(cfg);
    std::vector<std::uint32_t> watch = cfg.watch.empty() ? std::vector<std::uint32_t>{0}
                                                         : cfg.watch;

    std::vector<std::vector<std::vector<std::uint64_t>>> rows(cfg.replicas);
    detail::parallel_replicas(cfg.replicas, cfg.threads, [&](std::uint32_t rid) {
        auto rng = replica_stream(cfg.seed, rid);
        HyperComponents::Options opt;
        opt.watch = watch;
        WalkState walk(cls, cfg.n, opt);
        std::uint64_t done = 0;
        double t_prev = 0.0;
        for (double t : cfg.t_grid) {
            const std::uint64_t target = detail::grid_target(cfg, rng, t_prev, t, done);
            walk.advance(rng, target - done);
            done = target;
            t_prev = t;
            std::vector<std::uint64_t> degs;
            for (std::uint32_t v : watch) degs.push_back(walk.components().degree(v));
            rows[rid].push_back(std::move(degs));
        }
    });

    std::ofstream csv(dir / "degree.csv");
    csv << "replica,t,vertex,degree,predicted_mean\n";
    for (std::uint32_t rid = 0; rid < cfg.replicas; ++rid)
        for (std::size_t i = 0; i < cfg.t_grid.size(); ++i)
            for (std::size_t w = 0; w < watch.size(); ++w)
                csv << rid << ',' << detail::fmt(cfg.t_grid[i]) << ',' << watch[w] << ','
                    << rows[rid][i][w] << ','
                    << detail::fmt(cfg.t_grid[i] * cls.pair_rate()) << '\n';
    csv.close();

    // Aggregate at the last grid time.
    const double t_last = cfg.t_grid.back();
    double sum = 0, sumsq = 0;
    std::uint64_t samples = 0;
    for (std::uint32_t rid = 0; rid < cfg.replicas; ++rid)
        for (std::size_t w = 0; w < watch.size(); ++w) {
            const double x = double(rows[rid].back()[w]);
            sum += x;
            sumsq += x * x;
            ++samples;
        }
    const double mean = samples ? sum / double(samples) : 0.0;
    const double var = samples > 1 ? (sumsq - sum * mean) / double(samples - 1) : 0.0;
    const double se = samples ? std::sqrt(std::max(var, 0.0) / double(samples)) : 0.0;
    const double predicted = t_last * cls.pair_rate();

    nlohmann::json summary = detail::config_echo(cfg);
    summary["t_last"] = t_last;
    summary["mean_degree"] = mean;
    summary["standard_error"] = se;
    summary["predicted_mean"] = predicted;
    std::vector<detail::Check> checks;
    if (cfg.check_min_pass > 0 && se > 0)
        checks.push_back({"degree_mean_within_3se",
                          std::abs(mean - predicted) <= 3.0 * se,
                          "mean=" + detail::fmt(mean) + " pred=" + detail::fmt(predicted) +
                              " se=" + detail::fmt(se)});
    return detail::finish(dir, "degree", std::move(summary), checks);
}

// --------------------------------------------------------------------------
// distance-bounds: exhaustive against BFS for n <= 8, sampled otherwise.
// --------------------------------------------------------------------------
inline int run_distance_bounds(const ExperimentConfig& cfg) {
    const ConjugacyClass cls = ConjugacyClass::parse(cfg.cls);
    if (!cls.is_single_cycle() || cls.max_cycle_length() < 3)
        throw std::invalid_argument("distance-bounds: class must be single k-cycles, k >= 3");
    const std::uint32_t k = cls.max_cycle_length();
    const auto dir = detail::prepare_out(cfg);

    std::ofstream csv(dir / "distance_bounds.csv");
    csv << "sigma,lower,constructed,exact\n";
    bool violated = false;
    std::uint64_t rows_written = 0;
    double worst_overhead = 0.0;

    if (cfg.n <= 8) {
        SmallGroupTable tab(cfg.n);
        const auto dist = bfs_distances(cfg.n, cls);
        for (std::uint64_t r = 0; r < tab.size(); ++r) {
            if (dist[r] == UINT32_MAX) continue;
            const auto sigma = tab.unrank(r);
            const auto res = decompose_to_kcycles(sigma, k);
            if (!verify_factorization(sigma, k, res.factors)) violated = true;
            if (res.lower_bound > dist[r] || res.factors.size() < dist[r]) violated = true;
            worst_overhead = std::max(worst_overhead, res.overhead_per_residue);
            csv << '"' << format_perm(sigma) << "\"," << res.lower_bound << ','
                << res.factors.size() << ',' << dist[r] << '\n';
            ++rows_written;
        }
    } else {
        for (std::uint32_t rid = 0; rid < cfg.replicas; ++rid) {
            auto rng = replica_stream(cfg.seed, rid);
            auto sigma = identity_perm(cfg.n);
            for (std::uint32_t i = cfg.n; i > 1; --i)
                std::swap(sigma[i - 1], sigma[uniform_below(rng, i)]);
            if (k % 2 == 1) {
                std::uint64_t deficit = cfg.n - cycles_of(sigma).size();
                if (deficit % 2 == 1) std::swap(sigma[0], sigma[1]);
            }
            const auto res = decompose_to_kcycles(sigma, k);
            if (!verify_factorization(sigma, k, res.factors)) violated = true;
            worst_overhead = std::max(worst_overhead, res.overhead_per_residue);
            csv << '"' << format_perm(sigma) << "\"," << res.lower_bound << ','
                << res.factors.size() << ",-1\n";
            ++rows_written;
        }
    }
    csv.close();
    if (violated) throw std::logic_error("distance-bounds: factorization bounds violated");

    nlohmann::json summary = detail::config_echo(cfg);
    summary["k"] = k;
    summary["rows"] = rows_written;
    summary["worst_overhead_per_residue"] = worst_overhead;
    summary["exhaustive"] = cfg.n <= 8;
    return detail::finish(dir, "distance_bounds", std::move(summary), {});
}

// --------------------------------------------------------------------------
// profile: the analytic curves on a grid, no simulation.
// --------------------------------------------------------------------------
inline int run_profile(const ExperimentConfig& cfg) {
    const ConjugacyClass cls = ConjugacyClass::parse(cfg.cls);
    if (cfg.t_grid.empty()) throw std::invalid_argument("profile: t_grid required");
    const auto dir = detail::prepare_out(cfg);
    const auto rows =
        analytic_profile(cls, cfg.t_grid, detail::variant_from(cfg.threshold_variant));

    std::ofstream csv(dir / "profile.csv");
    csv << "t,theta,u,phi,delta,m_ratio_exact,m_ratio_bound\n";
    for (const auto& r : rows)
        csv << detail::fmt(r.t) << ',' << detail::fmt(r.theta) << ',' << detail::fmt(r.u) << ','
            << detail::fmt(r.phi) << ',' << detail::fmt(r.delta) << ','
            << detail::fmt(r.m_ratio_exact) << ',' << detail::fmt(r.m_ratio_bound) << '\n';
    csv.close();

    nlohmann::json summary = detail::config_echo(cfg);
    summary["critical_time"] = cls.critical_time();
    summary["rows"] = rows.size();
    return detail::finish(dir, "profile", std::move(summary), {});
}

inline int run_experiment(const ExperimentConfig& cfg) {
    std::string name = cfg.experiment;  // hyphen/underscore agnostic
    std::replace(name.begin(), name.end(), '_', '-');
    if (name == "trajectory") return run_trajectory(cfg);
    if (name == "tau-delta") return run_tau_delta(cfg);
    if (name == "window-frag") return run_window_frag(cfg);
    if (name == "census") return run_census(cfg);
    if (name == "degree") return run_degree(cfg);
    if (name == "distance-bounds") return run_distance_bounds(cfg);
    if (name == "profile") return run_profile(cfg);
    throw std::invalid_argument("unknown experiment: " + cfg.experiment);
}

}  // namespace cyclewalk
