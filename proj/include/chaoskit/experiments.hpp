#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace chaoskit {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Experiment runner plumbing: named experiments with documented parameters,
// key = value config files with flag overrides (flags win), a mandatory seed,
// and CSV/JSON artifacts. All randomness flows from the single config seed
// through named substreams, so a rerun with the same config and seed is
// byte-identical no matter how many workers the replicate loops use.

struct ParamDoc {
    std::string key;
    std::string description;
    std::string default_value;  // empty means required
};

struct ExperimentConfig {
    std::string experiment;
    bool has_seed = false;
    std::uint64_t seed = 0;
    int workers = 1;
    std::filesystem::path out_dir;  // empty: resolved from env or ./out
    std::map<std::string, std::string> params;
};

// Typed access to experiment parameters after validation against the docs.
class ResolvedParams {
  public:
    ResolvedParams(const std::map<std::string, std::string>& given,
                   const std::vector<ParamDoc>& docs, std::uint64_t seed, int workers)
        : seed_(seed), workers_(workers) {
        for (const auto& d : docs) values_[d.key] = d.default_value;
        for (const auto& [k, v] : given) {
            auto it = values_.find(k);
            if (it == values_.end())
                throw ConfigError("unknown parameter '" + k + "'");
            it->second = v;
        }
        for (const auto& [k, v] : values_)
            if (v.empty()) throw ConfigError("missing required parameter '" + k + "'");
    }

    std::uint64_t seed() const { return seed_; }
    int workers() const { return workers_; }

    const std::string& get_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("undeclared parameter '" + key + "'");
        return it->second;
    }

    std::int64_t get_int(const std::string& key) const {
        const auto& s = get_string(key);
        try {
            std::size_t pos = 0;
            const std::int64_t v = std::stoll(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("parameter '" + key + "' is not an integer: " + s);
        }
    }

    double get_double(const std::string& key) const {
        const auto& s = get_string(key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("parameter '" + key + "' is not a number: " + s);
        }
    }

    std::vector<std::int64_t> get_int_list(const std::string& key) const {
        const auto& s = get_string(key);
        std::vector<std::int64_t> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                out.push_back(std::stoll(tok));
            } catch (const std::exception&) {
                throw ConfigError("parameter '" + key + "' is not an integer list: " + s);
            }
        }
        if (out.empty()) throw ConfigError("parameter '" + key + "' is empty");
        return out;
    }

    std::vector<double> get_double_list(const std::string& key) const {
        const auto& s = get_string(key);
        std::vector<double> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                out.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw ConfigError("parameter '" + key + "' is not a number list: " + s);
            }
        }
        if (out.empty()) throw ConfigError("parameter '" + key + "' is empty");
        return out;
    }

    const std::map<std::string, std::string>& values() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
    std::uint64_t seed_;
    int workers_;
};

struct Metric {
    std::string name;
    double value;
    double se = std::numeric_limits<double>::quiet_NaN();      // NaN: not sampled
    double target = std::numeric_limits<double>::quiet_NaN();  // NaN: no target
    double tol = std::numeric_limits<double>::quiet_NaN();
    bool pass = true;
};

// Collects plot-ready rows and pass/fail metrics; writes results.csv and
// summary.json. Rows must be appended in a deterministic order (compute into
// indexed slots first when running parallel loops).
class Reporter {
  public:
    void set_artifact_dir(std::filesystem::path dir) { artifact_dir_ = std::move(dir); }

    // resolves an extra artifact name inside the experiment output directory
    std::filesystem::path artifact_path(const std::filesystem::path& name) const {
        if (name.is_absolute()) return name;
        return artifact_dir_.empty() ? name : artifact_dir_ / name;
    }

    void add_row(std::int64_t n, std::int64_t replicate, const std::string& stat,
                 double value) {
        rows_.push_back({n, replicate, stat, value});
    }

    void add_metric(Metric m) {
        all_pass_ = all_pass_ && m.pass;
        metrics_.push_back(std::move(m));
    }

    // value within tol of target
    void add_check(const std::string& name, double value, double target, double tol) {
        Metric m;
        m.name = name;
        m.value = value;
        m.target = target;
        m.tol = tol;
        m.pass = std::abs(value - target) <= tol;
        add_metric(std::move(m));
    }

    // sampled value within k standard errors (+ extra) of target
    void add_se_check(const std::string& name, double value, double se, double target,
                      double k_se, double extra_tol = 0.0) {
        Metric m;
        m.name = name;
        m.value = value;
        m.se = se;
        m.target = target;
        m.tol = k_se * se + extra_tol;
        m.pass = std::abs(value - target) <= m.tol;
        add_metric(std::move(m));
    }

    bool all_pass() const { return all_pass_; }
    const std::vector<Metric>& metrics() const { return metrics_; }

    nlohmann::ordered_json summary_json(const std::string& experiment,
                                        const ResolvedParams& params) const {
        nlohmann::ordered_json j;
        j["experiment"] = experiment;
        j["params"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : params.values()) j["params"][k] = v;
        j["params"]["workers"] = std::to_string(params.workers());
        j["seed"] = params.seed();
        j["metrics"] = nlohmann::ordered_json::array();
        for (const auto& m : metrics_) {
            nlohmann::ordered_json mj;
            mj["name"] = m.name;
            mj["value"] = m.value;
            mj["se"] = std::isnan(m.se) ? nlohmann::ordered_json(nullptr)
                                        : nlohmann::ordered_json(m.se);
            mj["target"] = std::isnan(m.target) ? nlohmann::ordered_json(nullptr)
                                                : nlohmann::ordered_json(m.target);
            mj["tol"] = std::isnan(m.tol) ? nlohmann::ordered_json(nullptr)
                                          : nlohmann::ordered_json(m.tol);
            mj["pass"] = m.pass;
            j["metrics"].push_back(std::move(mj));
        }
        return j;
    }

    void write_csv(const std::filesystem::path& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path.string());
        out << "n,replicate,stat_name,value\n";
        char buf[40];
        for (const auto& r : rows_) {
            std::snprintf(buf, sizeof buf, "%.17g", r.value);
            out << r.n << ',' << r.replicate << ',' << r.stat << ',' << buf << '\n';
        }
    }

  private:
    struct Row {
        std::int64_t n;
        std::int64_t replicate;
        std::string stat;
        double value;
    };
    std::filesystem::path artifact_dir_;
    std::vector<Row> rows_;
    std::vector<Metric> metrics_;
    bool all_pass_ = true;
};

struct Experiment {
    std::string name;
    std::string description;
    std::vector<ParamDoc> params;
    std::function<void(const ResolvedParams&, Reporter&)> run;
};

// --- config file handling ---------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

// key = value lines; '#' starts a comment; the 'experiment', 'seed', 'workers'
// and 'out' keys are lifted into the config struct.
inline ExperimentConfig parse_config_text(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string content = detail::trim(line);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = detail::trim(content.substr(0, eq));
        const std::string value = detail::trim(content.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key or value");
        if (key == "experiment") {
            cfg.experiment = value;
        } else if (key == "seed") {
            try {
                cfg.seed = std::stoull(value);
                cfg.has_seed = true;
            } catch (const std::exception&) {
                throw ConfigError("config: seed is not an unsigned integer");
            }
        } else if (key == "workers") {
            try {
                cfg.workers = std::stoi(value);
            } catch (const std::exception&) {
                throw ConfigError("config: workers is not an integer");
            }
        } else if (key == "out") {
            cfg.out_dir = value;
        } else {
            if (cfg.params.count(key)) throw ConfigError("config: duplicate key " + key);
            cfg.params[key] = value;
        }
    }
    return cfg;
}

inline ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    return parse_config_text(in);
}

inline ExperimentConfig parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_config_text(in);
}

}  // namespace chaoskit
