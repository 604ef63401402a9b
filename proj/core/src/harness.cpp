#include "subtrace/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace subtrace {

namespace {

// Stream ids of the per-run substreams. A run's key is scenario.seed ^ run_index.
enum Stream : std::uint64_t { kBases = 0, kSnapshots = 1, kBreak = 2, kTrackerInit = 3 };

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
        hash ^= (word >> (8 * b)) & 0xffu;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::uint64_t hash_snapshot(std::uint64_t hash, const CVector& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        hash = fnv1a(hash, std::bit_cast<std::uint64_t>(x[i].real()));
        hash = fnv1a(hash, std::bit_cast<std::uint64_t>(x[i].imag()));
    }
    return hash;
}

std::size_t worker_count(std::size_t jobs) {
    std::size_t n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("SUBTRACE_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw ConfigError("SUBTRACE_THREADS must be a positive integer");
        n = v;
    }
    return std::max<std::size_t>(1, std::min(n, jobs));
}

}  // namespace

void ExperimentSpec::validate() const {
    scenario.validate();
    tracker.validate();
    if (n_runs < 1) throw ConfigError("n_runs must be at least 1");
    if (spark_window < 16) throw ConfigError("spark_window must be at least 16");
    if (burn_in >= scenario.n_steps) throw ConfigError("burn_in must be less than n_steps");
}

TrialResult run_trial(const ExperimentSpec& spec, std::size_t run_index) {
    spec.validate();
    const ScenarioConfig& sc = spec.scenario;
    const std::uint64_t run_seed = sc.seed ^ static_cast<std::uint64_t>(run_index);

    Rng bases_rng(run_seed, kBases);
    Rng snap_rng(run_seed, kSnapshots);
    Rng break_rng(run_seed, kBreak);
    Rng init_rng(run_seed, kTrackerInit);

    const TrueBases truth = generate_true_bases(sc, bases_rng);
    TrackerState state = init_tracker(spec.tracker, sc.n_sensors, sc.subspace_rank, init_rng);

    TrialResult out;
    out.samples.reserve(sc.n_steps);
    out.snapshot_hash = 0xcbf29ce484222325ull;

    for (std::size_t k = 1; k <= sc.n_steps; ++k) {
        const CVector x = snapshot(truth, sc, snap_rng);
        out.snapshot_hash = hash_snapshot(out.snapshot_hash, x);

        const bool is_break = sc.break_step && k == *sc.break_step;
        if (is_break) {
            state.basis = perturb_basis(state.basis, sc.break_variance, break_rng);
            // The break-step sample shows the injected jump: it is taken from
            // the perturbed basis before the update repairs it.
            out.samples.push_back(make_sample(k, state.basis, truth, spec.tracker.mode, x));
        }

        auto [next, rec] = update(state, spec.tracker, x);
        state = std::move(next);
        if (rec.skipped) ++out.skipped_updates;
        else if (rec.beta_eff != spec.tracker.beta_nominal) ++out.clamped_steps;

        if (!is_break)
            out.samples.push_back(make_sample(k, state.basis, truth, spec.tracker.mode, x));
    }
    return out;
}

std::vector<TrialResult> run_trials(const ExperimentSpec& spec) {
    spec.validate();
    std::vector<TrialResult> results(spec.n_runs);
    const std::size_t workers = worker_count(spec.n_runs);

    if (workers == 1) {
        for (std::size_t r = 0; r < spec.n_runs; ++r) results[r] = run_trial(spec, r);
        return results;
    }

    std::atomic<std::size_t> next_run{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t r = next_run.fetch_add(1);
                if (r >= spec.n_runs) return;
                try {
                    results[r] = run_trial(spec, r);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return results;
}

double steady_state_db(const AggregateSeries& series, std::optional<std::size_t> break_step) {
    const std::size_t n = series.size();
    if (n == 0) throw ConfigError("steady_state_db: empty series");
    std::size_t end = n;  // exclusive, 0-based
    if (break_step && *break_step >= 1) end = std::min(n, *break_step - 1);
    const std::size_t len = std::min<std::size_t>(1000, end);
    if (len == 0) throw ConfigError("steady_state_db: no pre-break steps");
    double sum = 0.0;
    for (std::size_t i = end - len; i < end; ++i) sum += series.ep_avg[i];
    return to_db(sum / static_cast<double>(len));
}

ComparisonReport run_comparison(const ExperimentSpec& spec, ClampPolicy amended_policy) {
    spec.validate();

    ExperimentSpec original = spec;
    original.tracker.clamp_policy = ClampPolicy::Off;
    ExperimentSpec amended = spec;
    amended.tracker.clamp_policy = amended_policy;

    const std::vector<TrialResult> runs_orig = run_trials(original);
    const std::vector<TrialResult> runs_amen = run_trials(amended);

    ComparisonReport report;
    report.break_step = spec.scenario.break_step;

    const SparkParams sparks = spec.spark_params();
    auto reduce = [&](const std::vector<TrialResult>& runs, AggregateSeries& series,
                      std::vector<SparkEvent>& events, std::vector<std::uint64_t>& hashes,
                      std::size_t& clamped) {
        std::vector<std::vector<MetricSample>> samples;
        samples.reserve(runs.size());
        clamped = 0;
        for (std::size_t r = 0; r < runs.size(); ++r) {
            samples.push_back(runs[r].samples);
            hashes.push_back(runs[r].snapshot_hash);
            clamped += runs[r].clamped_steps;
            std::vector<double> ep(runs[r].samples.size());
            for (std::size_t k = 0; k < ep.size(); ++k) ep[k] = runs[r].samples[k].ep;
            const auto run_events = detect_sparks(ep, sparks, r);
            events.insert(events.end(), run_events.begin(), run_events.end());
        }
        series = aggregate(samples);
    };

    std::size_t clamped_orig = 0;
    reduce(runs_orig, report.series_original, report.sparks_original,
           report.snapshot_hashes_original, clamped_orig);
    reduce(runs_amen, report.series_amended, report.sparks_amended,
           report.snapshot_hashes_amended, report.clamped_steps_amended);

    report.steady_state_db_original = steady_state_db(report.series_original, report.break_step);
    report.steady_state_db_amended = steady_state_db(report.series_amended, report.break_step);
    return report;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void export_csv(const AggregateSeries& series, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError(path.string(), "cannot open for writing");
    file << "step,ep_avg_db,ep_max_db,eta_avg,eta_max\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        file << (k + 1) << ',' << fmt17(to_db(series.ep_avg[k])) << ','
             << fmt17(to_db(series.ep_max[k])) << ',' << fmt17(series.eta_avg[k]) << ','
             << fmt17(series.eta_max[k]) << '\n';
    }
    if (!file.flush()) throw IoError(path.string(), "write failed");
}

namespace {

struct Curve {
    std::string label;
    std::string color;
    const std::vector<double>* values;  // linear ep
};

void write_svg(const std::vector<Curve>& curves, std::optional<std::size_t> break_step,
               const std::filesystem::path& path) {
    constexpr double width = 960, height = 600;
    constexpr double ml = 70, mr = 180, mt = 30, mb = 50;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;

    std::size_t steps = 0;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& c : curves) {
        steps = std::max(steps, c.values->size());
        for (double v : *c.values) {
            const double db = to_db(v);
            lo = first ? db : std::min(lo, db);
            hi = first ? db : std::max(hi, db);
            first = false;
        }
    }
    if (steps == 0) throw ConfigError("export_plot: empty series");
    const double y_min = lo - 3.0, y_max = hi + 3.0;

    auto sx = [&](double step) { return ml + plot_w * (step - 1) / std::max<double>(1, steps - 1); };
    auto sy = [&](double db) { return mt + plot_h * (y_max - db) / (y_max - y_min); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\" data-y-min=\""
        << fmt17(y_min) << "\" data-y-max=\"" << fmt17(y_max) << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";

    // axes
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << (mt + plot_h) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << (mt + plot_h) << "\" x2=\"" << (ml + plot_w)
        << "\" y2=\"" << (mt + plot_h) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double db = y_min + (y_max - y_min) * i / 4.0;
        svg << "<text x=\"" << (ml - 8) << "\" y=\"" << (sy(db) + 4)
            << "\" text-anchor=\"end\" font-size=\"12\">" << static_cast<int>(db)
            << "</text>\n";
        const double step = 1 + (steps - 1) * i / 4.0;
        svg << "<text x=\"" << sx(step) << "\" y=\"" << (mt + plot_h + 18)
            << "\" text-anchor=\"middle\" font-size=\"12\">" << static_cast<std::size_t>(step)
            << "</text>\n";
    }
    svg << "<text x=\"" << (ml + plot_w / 2) << "\" y=\"" << (height - 10)
        << "\" text-anchor=\"middle\" font-size=\"13\">step</text>\n";
    svg << "<text x=\"18\" y=\"" << (mt + plot_h / 2)
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << (mt + plot_h / 2) << ")\">projection error power (dB)</text>\n";

    if (break_step && *break_step >= 1 && *break_step <= steps) {
        const double x = sx(static_cast<double>(*break_step));
        svg << "<line x1=\"" << x << "\" y1=\"" << mt << "\" x2=\"" << x << "\" y2=\""
            << (mt + plot_h) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
        svg << "<text x=\"" << (x + 4) << "\" y=\"" << (mt + 14)
            << "\" font-size=\"12\" fill=\"gray\">break</text>\n";
    }

    for (std::size_t c = 0; c < curves.size(); ++c) {
        svg << "<polyline fill=\"none\" stroke=\"" << curves[c].color
            << "\" stroke-width=\"1\" points=\"";
        const auto& vals = *curves[c].values;
        for (std::size_t k = 0; k < vals.size(); ++k) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "%.6g,%.6g ", sx(static_cast<double>(k + 1)),
                          sy(to_db(vals[k])));
            svg << buf;
        }
        svg << "\"/>\n";
        const double ly = mt + 20 + 22 * static_cast<double>(c);
        svg << "<rect x=\"" << (ml + plot_w + 12) << "\" y=\"" << (ly - 9)
            << "\" width=\"18\" height=\"4\" fill=\"" << curves[c].color << "\"/>\n";
        svg << "<text x=\"" << (ml + plot_w + 36) << "\" y=\"" << ly << "\" font-size=\"12\">"
            << curves[c].label << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError(path.string(), "cannot open for writing");
    file << svg.str();
    if (!file.flush()) throw IoError(path.string(), "write failed");
}

}  // namespace

void export_plot(const ComparisonReport& report, const std::filesystem::path& path) {
    const std::vector<Curve> curves = {
        {"original avg", "#1f6fd0", &report.series_original.ep_avg},
        {"original max", "#d03a2f", &report.series_original.ep_max},
        {"amended avg", "#2e9440", &report.series_amended.ep_avg},
        {"amended max", "#222222", &report.series_amended.ep_max},
    };
    write_svg(curves, report.break_step, path);
}

void export_plot(const AggregateSeries& series, std::optional<std::size_t> break_step,
                 const std::filesystem::path& path) {
    const std::vector<Curve> curves = {
        {"avg", "#1f6fd0", &series.ep_avg},
        {"max", "#d03a2f", &series.ep_max},
    };
    write_svg(curves, break_step, path);
}

}  // namespace subtrace
