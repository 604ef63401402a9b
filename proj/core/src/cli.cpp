#include "subtrace/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "subtrace/config.hpp"
#include "subtrace/selfcheck.hpp"

namespace subtrace {

namespace {

namespace fs = std::filesystem;

ExperimentSpec load_spec(const std::string& config_path, std::optional<std::uint64_t> seed) {
    ExperimentSpec spec = load_experiment(config_path);
    if (seed) spec.scenario.seed = *seed;
    return spec;
}

void ensure_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir.string(), "cannot create output directory: " + ec.message());
}

int run_simulate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 const std::string& clamp, const std::string& out_dir) {
    ExperimentSpec spec = load_spec(config_path, seed);
    spec.tracker.clamp_policy = parse_clamp_policy(clamp);
    ensure_out_dir(out_dir);

    const std::vector<TrialResult> runs = run_trials(spec);
    std::vector<std::vector<MetricSample>> samples;
    std::vector<SparkEvent> sparks;
    const SparkParams params = spec.spark_params();
    for (std::size_t r = 0; r < runs.size(); ++r) {
        samples.push_back(runs[r].samples);
        std::vector<double> ep(runs[r].samples.size());
        for (std::size_t k = 0; k < ep.size(); ++k) ep[k] = runs[r].samples[k].ep;
        const auto ev = detect_sparks(ep, params, r);
        sparks.insert(sparks.end(), ev.begin(), ev.end());
    }
    const AggregateSeries series = aggregate(samples);

    const fs::path csv = fs::path(out_dir) / "simulate.csv";
    const fs::path svg = fs::path(out_dir) / "simulate.svg";
    export_csv(series, csv);
    export_plot(series, spec.scenario.break_step, svg);

    std::cout << "runs: " << spec.n_runs << ", steps: " << spec.scenario.n_steps
              << ", clamp: " << clamp << "\n";
    std::cout << "steady-state ep (pre-break): "
              << steady_state_db(series, spec.scenario.break_step) << " dB\n";
    std::cout << "sparks: " << sparks.size() << "\n";
    std::cout << "wrote " << csv.string() << "\n";
    std::cout << "wrote " << svg.string() << "\n";
    return 0;
}

int run_compare(const std::string& config_path, std::optional<std::uint64_t> seed,
                const std::string& amended_clamp, const std::string& out_dir) {
    ExperimentSpec spec = load_spec(config_path, seed);
    const ClampPolicy amended_policy = parse_clamp_policy(amended_clamp);
    if (amended_policy == ClampPolicy::Off)
        throw ConfigError("--amended-clamp must be generic or class");
    ensure_out_dir(out_dir);

    const ComparisonReport report = run_comparison(spec, amended_policy);

    const fs::path csv_orig = fs::path(out_dir) / "compare_original.csv";
    const fs::path csv_amen = fs::path(out_dir) / "compare_amended.csv";
    const fs::path svg = fs::path(out_dir) / "compare.svg";
    export_csv(report.series_original, csv_orig);
    export_csv(report.series_amended, csv_amen);
    export_plot(report, svg);

    std::cout << "runs per arm: " << spec.n_runs << ", steps: " << spec.scenario.n_steps << "\n";
    std::cout << "sparks original: " << report.sparks_original.size() << "\n";
    std::cout << "sparks amended:  " << report.sparks_amended.size() << "\n";
    std::cout << "steady-state ep original: " << report.steady_state_db_original << " dB\n";
    std::cout << "steady-state ep amended:  " << report.steady_state_db_amended << " dB\n";
    std::cout << "wrote " << csv_orig.string() << "\n";
    std::cout << "wrote " << csv_amen.string() << "\n";
    std::cout << "wrote " << svg.string() << "\n";
    return 0;
}

int run_geometry(std::uint64_t seed, std::size_t instances) {
    const auto results = geometry_selfcheck(seed, instances);
    bool all_passed = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  [" << r.instances
                  << " instances]";
        if (!r.passed) std::cout << "  " << r.detail;
        std::cout << "\n";
        all_passed = all_passed && r.passed;
    }
    return all_passed ? 0 : 3;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Streaming subspace tracking with per-step stepsize limiting"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    app.add_option("--seed", seed, "Override the config seed")->group("Global");

    std::string sim_config, sim_out, sim_clamp = "generic";
    CLI::App* simulate = app.add_subcommand("simulate", "Run one configuration, export CSV + SVG");
    simulate->add_option("--config", sim_config, "Experiment config file")->required();
    simulate->add_option("--clamp", sim_clamp, "Stepsize clamp policy (off|generic|class)");
    simulate->add_option("--out", sim_out, "Output directory")->required();

    std::string cmp_config, cmp_out, cmp_clamp = "generic";
    CLI::App* compare =
        app.add_subcommand("compare", "Paired original-vs-amended comparison on shared streams");
    compare->add_option("--config", cmp_config, "Experiment config file")->required();
    compare->add_option("--amended-clamp", cmp_clamp, "Clamp policy of the amended arm");
    compare->add_option("--out", cmp_out, "Output directory")->required();

    bool selfcheck = false;
    std::size_t geo_instances = 10000;
    CLI::App* geometry = app.add_subcommand("geometry", "Geometric property verification");
    geometry->add_flag("--selfcheck", selfcheck, "Run the update-geometry property suite")
        ->required();
    geometry->add_option("--instances", geo_instances, "Randomized instances per property");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim_config, seed, sim_clamp, sim_out);
        if (compare->parsed()) return run_compare(cmp_config, seed, cmp_clamp, cmp_out);
        if (geometry->parsed())
            return run_geometry(seed.value_or(0x5eed5eed5eed5eedull), geo_instances);
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace subtrace
