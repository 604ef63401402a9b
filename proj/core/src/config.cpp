#include "subtrace/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace subtrace {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::map<std::string, std::string> parse_kv(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) throw IoError(path.string(), "cannot open config file");
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(file, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected `key = value`");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": duplicate key `" +
                              key + "`");
    }
    return kv;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key `" + key + "`: cannot parse `" + value + "` as a number");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw ConfigError("key `" + key + "`: cannot parse `" + value + "` as an unsigned integer");
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        auto comma = value.find(',', start);
        if (comma == std::string::npos) comma = value.size();
        const std::string item = trim(value.substr(start, comma - start));
        if (item.empty()) throw ConfigError("key `" + key + "`: empty list element");
        out.push_back(parse_double(key, item));
        start = comma + 1;
    }
    return out;
}

}  // namespace

ClampPolicy parse_clamp_policy(const std::string& name) {
    if (name == "off") return ClampPolicy::Off;
    if (name == "generic") return ClampPolicy::Generic;
    if (name == "class") return ClampPolicy::ClassSpecific;
    throw ConfigError("unknown clamp policy `" + name + "` (expected off|generic|class)");
}

AlgoClass parse_algo_class(const std::string& name) {
    if (name == "dpm") return AlgoClass::DPM;
    if (name == "oja") return AlgoClass::OJA;
    throw ConfigError("unknown algo_class `" + name + "` (expected dpm|oja)");
}

TrackingMode parse_tracking_mode(const std::string& name) {
    if (name == "signal") return TrackingMode::Signal;
    if (name == "noise") return TrackingMode::Noise;
    throw ConfigError("unknown mode `" + name + "` (expected signal|noise)");
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
    auto kv = parse_kv(path);
    auto take = [&kv](const char* key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto require = [&take, &path](const char* key) -> std::string {
        auto v = take(key);
        if (!v) throw ConfigError(path.string() + ": missing required key `" + key + "`");
        return *v;
    };

    ExperimentSpec spec;
    ScenarioConfig& sc = spec.scenario;
    sc.n_sensors = parse_u64("n_sensors", require("n_sensors"));
    sc.subspace_rank = parse_u64("subspace_rank", require("subspace_rank"));
    sc.signal_powers = parse_list("signal_powers", require("signal_powers"));
    sc.noise_variance = parse_double("noise_variance", require("noise_variance"));
    sc.n_steps = parse_u64("n_steps", require("n_steps"));
    sc.seed = parse_u64("seed", require("seed"));
    sc.break_step.reset();
    if (auto v = take("break_step")) sc.break_step = parse_u64("break_step", *v);
    sc.break_variance = 0.0;
    if (auto v = take("break_variance")) sc.break_variance = parse_double("break_variance", *v);
    sc.manifold = ManifoldKind::Random;
    if (auto v = take("manifold")) {
        if (*v == "random") sc.manifold = ManifoldKind::Random;
        else if (*v == "canonical") sc.manifold = ManifoldKind::Canonical;
        else throw ConfigError("unknown manifold `" + *v + "` (expected random|canonical)");
    }

    if (auto v = take("algo_class")) spec.tracker.algo_class = parse_algo_class(*v);
    if (auto v = take("mode")) spec.tracker.mode = parse_tracking_mode(*v);
    if (auto v = take("beta")) spec.tracker.beta_nominal = parse_double("beta", *v);
    if (auto v = take("clamp")) spec.tracker.clamp_policy = parse_clamp_policy(*v);
    if (auto v = take("n_runs")) spec.n_runs = parse_u64("n_runs", *v);
    if (auto v = take("burn_in")) spec.burn_in = parse_u64("burn_in", *v);
    if (auto v = take("spark_window")) spec.spark_window = parse_u64("spark_window", *v);
    if (auto v = take("spark_threshold_db"))
        spec.spark_threshold_db = parse_double("spark_threshold_db", *v);

    if (!kv.empty())
        throw ConfigError(path.string() + ": unknown key `" + kv.begin()->first + "`");
    spec.validate();
    return spec;
}

}  // namespace subtrace
