#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyclewalk/cycle_notation.hpp"
#include "cyclewalk/distance.hpp"
#include "cyclewalk/experiments.hpp"

namespace {

using cyclewalk::ExperimentConfig;

// Flag values live beside the config; only flags the user actually passed
// override what a --experiment file provided.
struct FlagBag {
    std::string config_path;
    std::string cls;
    std::uint32_t n = 0;
    std::string t_grid;
    std::uint32_t replicas = 0;
    std::uint64_t seed = 0;
    bool poissonize = false;
    std::uint32_t threads = 0;
    double delta = 0.0;
    double t_end = 0.0;
    std::string window;
    std::string watch;
    std::uint32_t census_max_edges = 0;
    std::string out_dir;
    std::string threshold_variant;
    double check_rel_tol = 0.0;
    std::uint32_t check_min_pass = 0;
    std::int64_t expect_hits_min = -1;
    std::int64_t expect_hits_max = -1;
};

void register_common(CLI::App* sub, FlagBag& f) {
    sub->add_option("--experiment", f.config_path, "JSON config file; flags override it");
    sub->add_option("--class", f.cls, "conjugacy class, e.g. k2=1 or k3=2,k2=1");
    sub->add_option("-n,--n", f.n, "number of points");
    sub->add_option("--t-grid", f.t_grid, "times: start:stop:step or comma list");
    sub->add_option("--replicas", f.replicas, "independent replicas");
    sub->add_option("--seed", f.seed, "master seed");
    sub->add_flag("--poissonize", f.poissonize, "Poisson step counts instead of floor(tn)");
    sub->add_option("--threads", f.threads, "worker threads (output independent of this)");
    sub->add_option("--delta", f.delta, "cycle-length fraction threshold");
    sub->add_option("--t-end", f.t_end, "time horizon");
    sub->add_option("--window", f.window, "fragmentation window lo:hi");
    sub->add_option("--watch", f.watch, "watched vertices, comma list");
    sub->add_option("--census-max-edges", f.census_max_edges, "largest census class reported");
    sub->add_option("--out", f.out_dir, "output directory (default $CYCLEWALK_OUT or .)");
    sub->add_option("--threshold-variant", f.threshold_variant, "derivation or displayed");
    sub->add_option("--check-rel-tol", f.check_rel_tol, "per-replica relative tolerance check");
    sub->add_option("--check-min-pass", f.check_min_pass, "replicas required within tolerance");
    sub->add_option("--expect-hits-min", f.expect_hits_min, "minimum hits for a pass");
    sub->add_option("--expect-hits-max", f.expect_hits_max, "maximum hits for a pass");
}

std::vector<std::uint32_t> parse_watch(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ','))
        if (!item.empty()) out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    return out;
}

ExperimentConfig build_config(const CLI::App* sub, const FlagBag& f, const std::string& name) {
    ExperimentConfig cfg;
    if (sub->count("--experiment")) cfg = cyclewalk::load_config(f.config_path);
    cfg.experiment = name;
    if (sub->count("--class")) cfg.cls = f.cls;
    if (sub->count("--n")) cfg.n = f.n;
    if (sub->count("--t-grid")) cfg.t_grid = cyclewalk::parse_time_grid(f.t_grid);
    if (sub->count("--replicas")) cfg.replicas = f.replicas;
    if (sub->count("--seed")) cfg.seed = f.seed;
    if (sub->count("--poissonize")) cfg.poissonize = f.poissonize;
    if (sub->count("--threads")) cfg.threads = f.threads;
    if (sub->count("--delta")) cfg.delta = f.delta;
    if (sub->count("--t-end")) cfg.t_end = f.t_end;
    if (sub->count("--window")) {
        const auto pos = f.window.find(':');
        if (pos == std::string::npos) throw std::invalid_argument("--window needs lo:hi");
        cfg.window_lo = std::stod(f.window.substr(0, pos));
        cfg.window_hi = std::stod(f.window.substr(pos + 1));
    }
    if (sub->count("--watch")) cfg.watch = parse_watch(f.watch);
    if (sub->count("--census-max-edges")) cfg.census_max_edges = f.census_max_edges;
    if (sub->count("--out")) cfg.out_dir = f.out_dir;
    if (sub->count("--threshold-variant")) cfg.threshold_variant = f.threshold_variant;
    if (sub->count("--check-rel-tol")) cfg.check_rel_tol = f.check_rel_tol;
    if (sub->count("--check-min-pass")) cfg.check_min_pass = f.check_min_pass;
    if (sub->count("--expect-hits-min")) cfg.expect_hits_min = f.expect_hits_min;
    if (sub->count("--expect-hits-max")) cfg.expect_hits_max = f.expect_hits_max;
    return cfg;
}

int do_factor(const std::string& perm_text, std::uint32_t n, std::uint32_t k) {
    const auto sigma = cyclewalk::parse_perm(perm_text, n);
    const auto res = cyclewalk::decompose_to_kcycles(sigma, k);
    std::cout << "sigma      " << cyclewalk::format_perm(sigma) << '\n';
    std::cout << "length     " << res.factors.size() << '\n';
    std::cout << "lower      " << res.lower_bound << '\n';
    std::cout << "residues   " << res.residue_count << '\n';
    for (const auto& f : res.factors) std::cout << "  " << cyclewalk::format_cycles({f}) << '\n';
    if (!cyclewalk::verify_factorization(sigma, k, res.factors)) {
        std::cerr << "factorization failed to verify\n";
        return 1;
    }
    std::cout << "verified   yes\n";
    return 0;
}

int do_plot_script(const std::string& csv, std::uint32_t n, const std::string& out_dir,
                   bool run) {
    const std::filesystem::path dir = out_dir.empty() ? cyclewalk::default_out_dir() : out_dir;
    std::filesystem::create_directories(dir);
    const auto path = dir / "plot_trajectory.py";
    std::ofstream py(path);
    py << "#!/usr/bin/env python3\n"
          "# Plots a trajectory CSV against its analytic companion columns.\n"
          "import csv\n"
          "import matplotlib\n"
          "matplotlib.use('Agg')\n"
          "import matplotlib.pyplot as plt\n"
          "\n"
          "N = " << n << "\n"
          "rows = list(csv.DictReader(open(" << std::quoted(csv) << ")))\n"
          "ts = sorted({float(r['t']) for r in rows})\n"
          "def mean(col, t):\n"
          "    xs = [float(r[col]) for r in rows if float(r['t']) == t]\n"
          "    return sum(xs) / len(xs)\n"
          "fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))\n"
          "ax1.plot(ts, [mean('Nbar', t) / N for t in ts], 'o', label='components/n')\n"
          "ax1.plot(ts, [mean('N', t) / N for t in ts], 's', label='cycles/n')\n"
          "ax1.plot(ts, [mean('u_pred', t) for t in ts], '-', label='u(t)')\n"
          "ax1.set_xlabel('t'); ax1.legend()\n"
          "ax2.plot(ts, [mean('L', t) / N for t in ts], 'o', label='giant component/n')\n"
          "ax2.plot(ts, [mean('lambda', t) / N for t in ts], 's', label='longest cycle/n')\n"
          "ax2.plot(ts, [mean('theta_pred', t) for t in ts], '-', label='theta(t)')\n"
          "ax2.set_xlabel('t'); ax2.legend()\n"
          "fig.tight_layout()\n"
          "fig.savefig('trajectory.png', dpi=150)\n"
          "print('wrote trajectory.png')\n";
    py.close();
    std::cout << "wrote " << path.string() << '\n';
    if (run) {
        const std::string cmd = "python3 " + path.string();
        const int rc = std::system(cmd.c_str());
        return rc == 0 ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation and analytics for conjugacy-class random walks on the "
                 "symmetric group, coupled to their hypergraph process"};
    app.require_subcommand(1);
    FlagBag flags;

    const std::vector<std::string> experiments = {
        "trajectory", "tau-delta", "window-frag", "census",
        "degree",     "distance-bounds", "profile"};
    std::vector<CLI::App*> subs;
    for (const auto& name : experiments) {
        auto* sub = app.add_subcommand(name, name + " experiment");
        register_common(sub, flags);
        subs.push_back(sub);
    }

    auto* run_sub = app.add_subcommand("run", "run an experiment described by a JSON config");
    register_common(run_sub, flags);

    std::string perm_text;
    std::uint32_t factor_n = 0, factor_k = 3;
    auto* factor_sub = app.add_subcommand("factor", "write a permutation as k-cycles");
    factor_sub->add_option("--perm", perm_text, "cycle notation, e.g. \"(1 2 3)(4 5)\"")
        ->required();
    factor_sub->add_option("-n,--n", factor_n, "number of points")->required();
    factor_sub->add_option("-k,--k", factor_k, "cycle length of the generators");

    std::string plot_csv;
    std::uint32_t plot_n = 0;
    std::string plot_out;
    bool plot_run = false;
    auto* plot_sub = app.add_subcommand("plot-script", "emit a python plot for a trajectory CSV");
    plot_sub->add_option("--csv", plot_csv, "trajectory CSV path")->required();
    plot_sub->add_option("-n,--n", plot_n, "number of points used for the run")->required();
    plot_sub->add_option("--out", plot_out, "output directory");
    plot_sub->add_flag("--run", plot_run, "execute the script after writing it");

    CLI11_PARSE(app, argc, argv);

    try {
        if (factor_sub->parsed()) return do_factor(perm_text, factor_n, factor_k);
        if (plot_sub->parsed()) return do_plot_script(plot_csv, plot_n, plot_out, plot_run);
        if (run_sub->parsed()) {
            if (!run_sub->count("--experiment"))
                throw std::invalid_argument("run: --experiment config.json is required");
            auto cfg = cyclewalk::load_config(flags.config_path);
            const std::string name = cfg.experiment;
            if (name.empty()) throw std::invalid_argument("config: missing experiment name");
            auto merged = build_config(run_sub, flags, name);
            return cyclewalk::run_experiment(merged);
        }
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (!subs[i]->parsed()) continue;
            auto cfg = build_config(subs[i], flags, experiments[i]);
            return cyclewalk::run_experiment(cfg);
        }
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const cyclewalk::CouplingViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
