#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "qapbench/harness.hpp"

namespace qapbench {

namespace {

using njson = nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string iso_utc_now() {
    const std::time_t tt = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Parameter keys each algorithm accepts in a solver_params block.
std::vector<std::string_view> override_keys(Algorithm a) {
    std::vector<std::string_view> keys = {"max_iterations", "population_size"};
    switch (a) {
    case Algorithm::Lsh: break;
    case Algorithm::Ga:
        keys.insert(keys.end(), {"crossover_rate", "mutation_rate", "mutation_mix"});
        break;
    case Algorithm::Pso:
    case Algorithm::GaPso:
        keys.insert(keys.end(), {"inertia", "c1_start", "c1_end", "c2_start", "c2_end"});
        break;
    case Algorithm::Gwo:
        keys.insert(keys.end(), {"a_start", "a_end"});
        break;
    case Algorithm::Hs:
        keys.insert(keys.end(), {"hms", "hmcr", "par", "bandwidth"});
        break;
    case Algorithm::Sa:
        keys.insert(keys.end(),
                    {"t0_acceptance_ratio", "cooling_alpha", "moves_per_temperature"});
        break;
    }
    return keys;
}

void apply_overrides(SolverConfig& cfg, const njson& params, std::vector<std::string>& errors) {
    const std::string prefix = std::string("solver_params.") + std::string(algorithm_name(cfg.algorithm));
    if (!params.is_object()) {
        errors.push_back(prefix + " must be a JSON object");
        return;
    }
    const auto known = override_keys(cfg.algorithm);
    for (const auto& [key, value] : params.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            errors.push_back(prefix + ": unknown parameter '" + key + "'");
            continue;
        }
        auto as_int = [&](int& slot) {
            if (value.is_number_integer())
                slot = value.get<int>();
            else
                errors.push_back(prefix + "." + key + " must be an integer");
        };
        auto as_double = [&](double& slot) {
            if (value.is_number())
                slot = value.get<double>();
            else
                errors.push_back(prefix + "." + key + " must be a number");
        };
        if (key == "max_iterations") as_int(cfg.max_iterations);
        else if (key == "population_size") as_int(cfg.population_size);
        else if (key == "crossover_rate") as_double(cfg.ga.crossover_rate);
        else if (key == "mutation_rate") as_double(cfg.ga.mutation_rate);
        else if (key == "mutation_mix") {
            if (value.is_array() && value.size() == 3 && value[0].is_number() &&
                value[1].is_number() && value[2].is_number())
                cfg.ga.mutation_mix = {value[0].get<double>(), value[1].get<double>(),
                                       value[2].get<double>()};
            else
                errors.push_back(prefix + ".mutation_mix must be an array of 3 numbers");
        } else if (key == "inertia") as_double(cfg.pso.inertia);
        else if (key == "c1_start") as_double(cfg.pso.c1_start);
        else if (key == "c1_end") as_double(cfg.pso.c1_end);
        else if (key == "c2_start") as_double(cfg.pso.c2_start);
        else if (key == "c2_end") as_double(cfg.pso.c2_end);
        else if (key == "a_start") as_double(cfg.gwo.a_start);
        else if (key == "a_end") as_double(cfg.gwo.a_end);
        else if (key == "hms") as_int(cfg.hs.hms);
        else if (key == "hmcr") as_double(cfg.hs.hmcr);
        else if (key == "par") as_double(cfg.hs.par);
        else if (key == "bandwidth") as_double(cfg.hs.bandwidth);
        else if (key == "t0_acceptance_ratio") as_double(cfg.sa.t0_acceptance_ratio);
        else if (key == "cooling_alpha") as_double(cfg.sa.cooling_alpha);
        else if (key == "moves_per_temperature") as_int(cfg.sa.moves_per_temperature);
    }
}

std::vector<std::string> collect_violations(const ExperimentConfig& cfg) {
    std::vector<std::string> bad;
    if (cfg.instances.empty()) bad.push_back("instances must list at least one file");
    for (const std::string& path : cfg.instances)
        if (path.empty()) bad.push_back("instances must not contain empty paths");
    if (cfg.algorithms.empty()) bad.push_back("algorithms must list at least one algorithm");
    std::set<Algorithm> seen;
    for (Algorithm a : cfg.algorithms)
        if (!seen.insert(a).second)
            bad.push_back(std::string("algorithms lists '") + std::string(algorithm_name(a)) +
                          "' more than once");
    if (cfg.replications < 1) bad.push_back("replications must be >= 1");
    if (cfg.workers < 1) bad.push_back("workers must be >= 1");
    if (cfg.output_dir.empty()) bad.push_back("output_dir must not be empty");
    if (cfg.detector.window < 1) bad.push_back("detector.window must be >= 1");
    if (!(cfg.detector.delta > 0.0)) bad.push_back("detector.delta must be positive");
    if (cfg.detector.target < 1) bad.push_back("detector.target must be >= 1");
    if (!cfg.write_csv && !cfg.write_json)
        bad.push_back("formats must include at least one of csv, json");

    for (const auto& [name, text] : cfg.solver_params) {
        const auto algo = algorithm_from_name(name);
        if (!algo) {
            bad.push_back("solver_params names unknown algorithm '" + name + "'");
            continue;
        }
        njson params;
        try {
            params = njson::parse(text);
        } catch (const njson::parse_error&) {
            bad.push_back("solver_params." + name + " is not valid JSON");
            continue;
        }
        SolverConfig probe = default_config(*algo, 30);
        apply_overrides(probe, params, bad);
        try {
            validate(probe);
        } catch (const ConfigError& e) {
            bad.push_back("solver_params." + name + ": " + e.what());
        }
    }
    return bad;
}

} // namespace

void validate(const ExperimentConfig& cfg) {
    const std::vector<std::string> bad = collect_violations(cfg);
    if (bad.empty()) return;
    std::ostringstream msg;
    msg << "invalid experiment config (" << bad.size() << " problem"
        << (bad.size() > 1 ? "s" : "") << "): ";
    for (std::size_t i = 0; i < bad.size(); ++i) {
        if (i) msg << "; ";
        msg << bad[i];
    }
    throw ConfigError(msg.str());
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    njson j;
    try {
        j = njson::parse(read_text_file(path));
    } catch (const njson::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(path.string() + ": config must be a JSON object");

    ExperimentConfig cfg;
    std::vector<std::string> bad;
    auto type_error = [&](const char* key, const char* wanted) {
        bad.push_back(std::string(key) + " must be " + wanted);
    };

    for (const auto& [key, value] : j.items()) {
        if (key == "instances") {
            if (value.is_array()) {
                for (const njson& v : value)
                    if (v.is_string())
                        cfg.instances.push_back(v.get<std::string>());
                    else
                        type_error("instances entries", "strings");
            } else
                type_error("instances", "an array of file paths");
        } else if (key == "algorithms") {
            if (value.is_array()) {
                for (const njson& v : value) {
                    if (!v.is_string()) {
                        type_error("algorithms entries", "strings");
                        continue;
                    }
                    const auto algo = algorithm_from_name(v.get<std::string>());
                    if (algo)
                        cfg.algorithms.push_back(*algo);
                    else
                        bad.push_back("algorithms names unknown algorithm '" +
                                      v.get<std::string>() + "'");
                }
            } else
                type_error("algorithms", "an array of algorithm names");
        } else if (key == "replications") {
            if (value.is_number_integer())
                cfg.replications = value.get<int>();
            else
                type_error("replications", "an integer");
        } else if (key == "seed") {
            if (value.is_number_unsigned() || value.is_number_integer())
                cfg.master_seed = value.get<std::uint64_t>();
            else
                type_error("seed", "an unsigned integer");
        } else if (key == "workers") {
            if (value.is_number_integer())
                cfg.workers = value.get<int>();
            else
                type_error("workers", "an integer");
        } else if (key == "output_dir") {
            if (value.is_string())
                cfg.output_dir = value.get<std::string>();
            else
                type_error("output_dir", "a string");
        } else if (key == "detector") {
            if (value.is_object()) {
                for (const auto& [dk, dv] : value.items()) {
                    if (dk == "window" && dv.is_number_integer())
                        cfg.detector.window = dv.get<int>();
                    else if (dk == "delta" && dv.is_number())
                        cfg.detector.delta = dv.get<double>();
                    else if (dk == "target" && dv.is_number_integer())
                        cfg.detector.target = dv.get<int>();
                    else
                        bad.push_back("detector." + dk + " is unknown or has the wrong type");
                }
            } else
                type_error("detector", "an object with window/delta/target");
        } else if (key == "half_count") {
            if (value.is_boolean())
                cfg.half_count = value.get<bool>();
            else
                type_error("half_count", "a boolean");
        } else if (key == "swap_matrices") {
            if (value.is_boolean())
                cfg.swap_matrices = value.get<bool>();
            else
                type_error("swap_matrices", "a boolean");
        } else if (key == "deterministic_time") {
            if (value.is_boolean())
                cfg.deterministic_time = value.get<bool>();
            else
                type_error("deterministic_time", "a boolean");
        } else if (key == "formats") {
            if (value.is_array()) {
                cfg.write_csv = false;
                cfg.write_json = false;
                for (const njson& v : value) {
                    const std::string f = v.is_string() ? v.get<std::string>() : std::string();
                    if (f == "csv")
                        cfg.write_csv = true;
                    else if (f == "json")
                        cfg.write_json = true;
                    else
                        bad.push_back("formats entries must be \"csv\" or \"json\"");
                }
            } else
                type_error("formats", "an array");
        } else if (key == "solver_params") {
            if (value.is_object()) {
                for (const auto& [name, block] : value.items())
                    cfg.solver_params[name] = block.dump();
            } else
                type_error("solver_params", "an object keyed by algorithm name");
        } else {
            bad.push_back("unknown key '" + key + "'");
        }
    }

    for (const std::string& b : collect_violations(cfg)) bad.push_back(b);
    if (!bad.empty()) {
        std::ostringstream msg;
        msg << path.string() << ": invalid experiment config (" << bad.size() << " problem"
            << (bad.size() > 1 ? "s" : "") << "): ";
        for (std::size_t i = 0; i < bad.size(); ++i) {
            if (i) msg << "; ";
            msg << bad[i];
        }
        throw ConfigError(msg.str());
    }
    return cfg;
}

SolverConfig make_cell_config(const ExperimentConfig& cfg, Algorithm algorithm,
                              int instance_size) {
    SolverConfig solver = default_config(algorithm, instance_size);
    const auto it = cfg.solver_params.find(std::string(algorithm_name(algorithm)));
    if (it != cfg.solver_params.end()) {
        njson params;
        try {
            params = njson::parse(it->second);
        } catch (const njson::parse_error&) {
            throw ConfigError("solver_params." + it->first + " is not valid JSON");
        }
        std::vector<std::string> bad;
        apply_overrides(solver, params, bad);
        if (!bad.empty()) {
            std::ostringstream msg;
            for (std::size_t i = 0; i < bad.size(); ++i) {
                if (i) msg << "; ";
                msg << bad[i];
            }
            throw ConfigError(msg.str());
        }
    }
    solver.deterministic_time = cfg.deterministic_time;
    validate(solver);
    return solver;
}

std::uint64_t replication_seed(std::uint64_t master_seed, int replication) {
    return derive_seed(master_seed, static_cast<std::uint64_t>(replication));
}

namespace {

struct Cell {
    std::string instance_path;
    std::string instance_name;
    const QapInstance* instance = nullptr; ///< null when the instance failed to load
    Algorithm algorithm = Algorithm::Lsh;
    int replication = 0;
    SolverConfig config;
    std::string setup_error; ///< instance load or config failure
};

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* diag) {
    validate(cfg);
    const std::string started = iso_utc_now();

    // Load each distinct instance once, up front; a failed load marks every
    // cell of that instance as failed without stopping the rest.
    std::map<std::string, QapInstance> instances;
    std::map<std::string, std::string> load_errors;
    for (const std::string& path : cfg.instances) {
        if (instances.count(path) || load_errors.count(path)) continue;
        try {
            QapInstance inst = load_qaplib_file(path);
            if (cfg.swap_matrices) swap_flow_distance(inst);
            instances.emplace(path, std::move(inst));
        } catch (const std::exception& e) {
            load_errors.emplace(path, e.what());
        }
    }

    std::vector<Cell> cells;
    for (const std::string& path : cfg.instances) {
        const auto loaded = instances.find(path);
        for (Algorithm algo : cfg.algorithms) {
            std::string setup_error;
            SolverConfig solver;
            if (loaded == instances.end()) {
                setup_error = load_errors.at(path);
            } else {
                try {
                    solver = make_cell_config(cfg, algo, loaded->second.n);
                } catch (const std::exception& e) {
                    setup_error = e.what();
                }
            }
            for (int r = 0; r < cfg.replications; ++r) {
                Cell cell;
                cell.instance_path = path;
                cell.instance_name =
                    loaded != instances.end() ? loaded->second.name
                                              : std::filesystem::path(path).stem().string();
                cell.instance = loaded != instances.end() ? &loaded->second : nullptr;
                cell.algorithm = algo;
                cell.replication = r;
                cell.config = solver;
                cell.config.seed = replication_seed(cfg.master_seed, r);
                cell.setup_error = setup_error;
                cells.push_back(std::move(cell));
            }
        }
    }

    // Each slot is written by exactly one task, so the pool needs no locks;
    // the outputs are a pure function of the cell, never of the schedule.
    std::vector<std::optional<TraceFile>> outputs(cells.size());
    std::vector<std::string> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& cell = cells[i];
            if (!cell.setup_error.empty()) {
                errors[i] = cell.setup_error;
                continue;
            }
            try {
                SolverResult r = run(*cell.instance, cell.config);
                TraceFile t;
                t.instance_path = cell.instance_path;
                t.instance_name = cell.instance_name;
                t.algorithm = cell.algorithm;
                t.replication = cell.replication;
                t.seed = cell.config.seed;
                t.best_cost = r.best_cost;
                t.best_assignment = std::move(r.best_assignment);
                t.trace = std::move(r.trace);
                outputs[i] = std::move(t);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const std::size_t worker_count =
        std::min<std::size_t>(static_cast<std::size_t>(cfg.workers),
                              std::max<std::size_t>(cells.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < worker_count; ++w) pool.emplace_back(work);
    work();
    for (std::thread& th : pool) th.join();

    ExperimentResult result;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (outputs[i]) {
            result.traces.push_back(std::move(*outputs[i]));
        } else {
            const Cell& cell = cells[i];
            result.failures.push_back(
                {cell.instance_path, cell.algorithm, cell.replication, errors[i]});
            if (diag)
                *diag << "cell " << cell.instance_name << '/' << algorithm_name(cell.algorithm)
                      << "/r" << cell.replication << " failed: " << errors[i] << '\n';
        }
    }

    const std::filesystem::path out_dir(cfg.output_dir);
    std::filesystem::create_directories(out_dir / "traces");
    for (const TraceFile& t : result.traces)
        write_trace_file(out_dir / "traces" / trace_filename(t), t);

    ReportOptions options;
    options.detector = cfg.detector;
    options.half_count = cfg.half_count;
    options.swap_matrices = cfg.swap_matrices;
    options.write_csv = cfg.write_csv;
    options.write_json = cfg.write_json;
    result.reports = build_reports(result.traces, options);
    write_reports(out_dir, result.reports, options);

    {
        const njson meta{{"started", started}, {"finished", iso_utc_now()}};
        std::ofstream out(out_dir / "meta.json", std::ios::binary);
        if (!out) throw IoError("cannot write " + (out_dir / "meta.json").string());
        out << meta.dump(2) << '\n';
    }

    if (result.failures.empty())
        result.exit_code = 0;
    else
        result.exit_code = result.traces.empty() ? 1 : 2;
    return result;
}

int cmd_report(const std::filesystem::path& dir, const std::filesystem::path& out_dir,
               const ReportOptions& options, bool options_from_file, std::ostream& diag) {
    const std::filesystem::path trace_dir =
        std::filesystem::is_directory(dir / "traces") ? dir / "traces" : dir;
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(trace_dir, ec))
        if (entry.is_regular_file() && entry.path().extension() == ".trace")
            files.push_back(entry.path());
    if (ec) {
        diag << "cannot list " << trace_dir.string() << ": " << ec.message() << '\n';
        return 1;
    }
    std::sort(files.begin(), files.end());

    std::vector<TraceFile> traces;
    int skipped = 0;
    for (const auto& path : files) {
        try {
            traces.push_back(load_trace_file(path));
        } catch (const std::exception& e) {
            diag << e.what() << '\n';
            ++skipped;
        }
    }
    if (traces.empty()) {
        diag << "no usable trace files under " << trace_dir.string() << '\n';
        return 1;
    }

    ReportOptions effective = options;
    if (options_from_file && std::filesystem::exists(dir / "report_config.json")) {
        try {
            effective = load_report_options(dir);
        } catch (const std::exception& e) {
            diag << e.what() << '\n';
            return 1;
        }
    }

    try {
        const ReportBundle bundle = build_reports(traces, effective);
        write_reports(out_dir, bundle, effective);
    } catch (const std::exception& e) {
        diag << e.what() << '\n';
        return 1;
    }
    return skipped > 0 ? 2 : 0;
}

} // namespace qapbench
