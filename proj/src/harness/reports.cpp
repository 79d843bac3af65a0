#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"

#include "qapbench/harness.hpp"

namespace qapbench {

namespace {

using njson = nlohmann::ordered_json;

struct GroupKey {
    std::string name;
    std::string path;
    Algorithm algorithm;

    bool operator<(const GroupKey& o) const {
        return std::tie(name, path, algorithm) < std::tie(o.name, o.path, o.algorithm);
    }
};

std::string cell_label(const std::string& name, Algorithm algo, int replication) {
    std::ostringstream out;
    out << name << '/' << algorithm_name(algo) << "/r" << replication;
    return out.str();
}

njson block_json(const Table2Block& b) {
    return njson{{"max", b.max}, {"mean", b.mean}, {"min", b.min}};
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write report file: " + path.string());
    out << text;
    if (!out) throw IoError("failed writing report file: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

ReportBundle build_reports(const std::vector<TraceFile>& traces, const ReportOptions& options) {
    std::map<GroupKey, std::vector<const TraceFile*>> groups;
    for (const TraceFile& t : traces)
        groups[{t.instance_name, t.instance_path, t.algorithm}].push_back(&t);

    std::map<std::string, QapInstance> instances;
    auto instance_for = [&](const std::string& path) -> const QapInstance& {
        auto it = instances.find(path);
        if (it == instances.end()) {
            QapInstance inst = load_qaplib_file(path);
            if (options.swap_matrices) swap_flow_distance(inst);
            it = instances.emplace(path, std::move(inst)).first;
        }
        return it->second;
    };

    ReportBundle bundle;
    for (auto& [key, members] : groups) {
        std::sort(members.begin(), members.end(), [](const TraceFile* a, const TraceFile* b) {
            return std::tie(a->replication, a->seed) < std::tie(b->replication, b->seed);
        });
        const QapInstance& inst = instance_for(key.path);

        ReportRow row;
        row.instance = key.name;
        row.algorithm = key.algorithm;
        std::vector<SolverResult> results;
        std::vector<ConvergenceReport> convergence;
        std::vector<double> pooled_deltas;
        results.reserve(members.size());
        for (const TraceFile* t : members) {
            const Cost verified = cost(inst, t->best_assignment);
            if (verified != t->best_cost)
                throw ContractError("stored best does not re-verify for " +
                                    cell_label(key.name, key.algorithm, t->replication) +
                                    ": trace says " + std::to_string(t->best_cost) +
                                    ", cost() says " + std::to_string(verified));
            SolverResult r;
            r.best_assignment = t->best_assignment;
            r.best_cost = t->best_cost;
            r.trace = t->trace;
            r.iterations_run = static_cast<int>(t->trace.size());
            for (const IterationTrace& rec : t->trace) r.wall_time += rec.lambda;
            for (std::size_t s = 1; s < t->trace.size(); ++s)
                pooled_deltas.push_back(t->trace[s].lambda);
            convergence.push_back(detect_convergence(r.trace, options.detector));
            results.push_back(std::move(r));
        }

        row.best_obj = results[0].best_cost;
        for (const SolverResult& r : results) row.best_obj = std::min(row.best_obj, r.best_cost);
        row.stats = aggregate_replications(results);
        bundle.table1.push_back(std::move(row));

        bundle.table2.push_back({key.name, key.algorithm, table2_summary(convergence)});

        RobustnessRow rob;
        rob.instance = key.name;
        rob.algorithm = key.algorithm;
        rob.samples = pooled_deltas.size();
        if (pooled_deltas.empty()) {
            rob.status = "insufficient-data";
        } else {
            rob.gof.bins = default_gof_bins(pooled_deltas.size());
            try {
                rob.gof = robustness_gof(pooled_deltas, rob.gof.bins);
                rob.status = rob.gof.degenerate ? "degenerate" : "ok";
            } catch (const InsufficientDataError&) {
                rob.status = "insufficient-data";
            }
        }
        bundle.robustness.push_back(std::move(rob));
    }
    return bundle;
}

std::string table1_csv(const ReportBundle& reports, const ReportOptions& options) {
    std::ostringstream out;
    out << "instance,algorithm,best_obj";
    if (options.half_count) out << ",best_obj_half";
    out << ",mean_best,mean_avg,mean_worst,var_best,var_avg,var_worst,efficiency,time,"
           "replications\n";
    for (const ReportRow& row : reports.table1) {
        out << row.instance << ',' << algorithm_name(row.algorithm) << ',' << row.best_obj;
        if (options.half_count)
            out << ',' << format_double(static_cast<double>(row.best_obj) / 2.0);
        out << ',' << format_double(row.stats.mean_best) << ',' << format_double(row.stats.mean_avg)
            << ',' << format_double(row.stats.mean_worst) << ','
            << format_double(row.stats.var_best) << ',' << format_double(row.stats.var_avg) << ','
            << format_double(row.stats.var_worst) << ',';
        if (row.stats.efficiency) out << format_double(*row.stats.efficiency);
        out << ',' << format_double(row.stats.total_time) << ',' << row.stats.replications << '\n';
    }
    return out.str();
}

std::string table2_csv(const ReportBundle& reports) {
    std::ostringstream out;
    out << "instance,algorithm,replications,converged_count,converged,k_final,trigger_iteration,"
           "obj_max,obj_mean,obj_min,iter_max,iter_mean,iter_min,time_max,time_mean,time_min\n";
    for (const Table2Row& row : reports.table2) {
        const ConvergenceReport& r = row.report;
        out << row.instance << ',' << algorithm_name(row.algorithm) << ',' << r.replications << ','
            << r.converged_count << ',' << (r.converged ? "true" : "false") << ',' << r.k_final
            << ',';
        if (r.trigger_iteration) out << *r.trigger_iteration;
        out << ',' << format_double(r.best_objective.max) << ','
            << format_double(r.best_objective.mean) << ',' << format_double(r.best_objective.min)
            << ',';
        if (r.iterations)
            out << format_double(r.iterations->max) << ',' << format_double(r.iterations->mean)
                << ',' << format_double(r.iterations->min);
        else
            out << ",,";
        out << ',';
        if (r.run_time)
            out << format_double(r.run_time->max) << ',' << format_double(r.run_time->mean) << ','
                << format_double(r.run_time->min);
        else
            out << ",,";
        out << '\n';
    }
    return out.str();
}

std::string robustness_csv(const ReportBundle& reports) {
    std::ostringstream out;
    out << "instance,algorithm,samples,bins,status,statistic,p_value\n";
    for (const RobustnessRow& row : reports.robustness) {
        out << row.instance << ',' << algorithm_name(row.algorithm) << ',' << row.samples << ','
            << row.gof.bins << ',' << row.status << ',';
        if (row.status != "insufficient-data")
            out << format_double(row.gof.statistic) << ',' << format_double(row.gof.p_value);
        else
            out << ',';
        out << '\n';
    }
    return out.str();
}

std::string table1_json(const ReportBundle& reports, const ReportOptions& options) {
    njson rows = njson::array();
    for (const ReportRow& row : reports.table1) {
        njson j{{"instance", row.instance}, {"algorithm", algorithm_name(row.algorithm)},
                {"best_obj", row.best_obj}};
        if (options.half_count) j["best_obj_half"] = static_cast<double>(row.best_obj) / 2.0;
        j["mean_best"] = row.stats.mean_best;
        j["mean_avg"] = row.stats.mean_avg;
        j["mean_worst"] = row.stats.mean_worst;
        j["var_best"] = row.stats.var_best;
        j["var_avg"] = row.stats.var_avg;
        j["var_worst"] = row.stats.var_worst;
        if (row.stats.efficiency)
            j["efficiency"] = *row.stats.efficiency;
        else
            j["efficiency"] = nullptr;
        j["time"] = row.stats.total_time;
        j["replications"] = row.stats.replications;
        rows.push_back(std::move(j));
    }
    return njson{{"rows", std::move(rows)}}.dump(2) + "\n";
}

std::string table2_json(const ReportBundle& reports) {
    njson rows = njson::array();
    for (const Table2Row& row : reports.table2) {
        const ConvergenceReport& r = row.report;
        njson j{{"instance", row.instance}, {"algorithm", algorithm_name(row.algorithm)}};
        j["replications"] = r.replications;
        j["converged_count"] = r.converged_count;
        j["converged"] = r.converged;
        j["k_final"] = r.k_final;
        if (r.trigger_iteration)
            j["trigger_iteration"] = *r.trigger_iteration;
        else
            j["trigger_iteration"] = nullptr;
        j["detector"] = njson{{"window", r.settings.window},
                              {"delta", r.settings.delta},
                              {"target", r.settings.target}};
        j["best_objective"] = block_json(r.best_objective);
        j["iterations"] = r.iterations ? block_json(*r.iterations) : njson(nullptr);
        j["run_time"] = r.run_time ? block_json(*r.run_time) : njson(nullptr);
        rows.push_back(std::move(j));
    }
    return njson{{"rows", std::move(rows)}}.dump(2) + "\n";
}

std::string robustness_json(const ReportBundle& reports) {
    njson rows = njson::array();
    for (const RobustnessRow& row : reports.robustness) {
        njson j{{"instance", row.instance}, {"algorithm", algorithm_name(row.algorithm)}};
        j["samples"] = row.samples;
        j["bins"] = row.gof.bins;
        j["status"] = row.status;
        if (row.status != "insufficient-data") {
            j["statistic"] = row.gof.statistic;
            j["p_value"] = row.gof.p_value;
        } else {
            j["statistic"] = nullptr;
            j["p_value"] = nullptr;
        }
        rows.push_back(std::move(j));
    }
    return njson{{"rows", std::move(rows)}}.dump(2) + "\n";
}

void write_reports(const std::filesystem::path& out_dir, const ReportBundle& reports,
                   const ReportOptions& options) {
    std::filesystem::create_directories(out_dir);
    if (options.write_csv) {
        write_text_file(out_dir / "table1.csv", table1_csv(reports, options));
        write_text_file(out_dir / "table2.csv", table2_csv(reports));
        write_text_file(out_dir / "robustness.csv", robustness_csv(reports));
    }
    if (options.write_json) {
        write_text_file(out_dir / "table1.json", table1_json(reports, options));
        write_text_file(out_dir / "table2.json", table2_json(reports));
        write_text_file(out_dir / "robustness.json", robustness_json(reports));
    }

    njson formats = njson::array();
    if (options.write_csv) formats.push_back("csv");
    if (options.write_json) formats.push_back("json");
    const njson cfg{{"detector", njson{{"window", options.detector.window},
                                       {"delta", options.detector.delta},
                                       {"target", options.detector.target}}},
                    {"half_count", options.half_count},
                    {"swap_matrices", options.swap_matrices},
                    {"formats", std::move(formats)}};
    write_text_file(out_dir / "report_config.json", cfg.dump(2) + "\n");
}

ReportOptions load_report_options(const std::filesystem::path& out_dir) {
    const std::filesystem::path path = out_dir / "report_config.json";
    njson j;
    try {
        j = njson::parse(read_text_file(path));
    } catch (const njson::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    ReportOptions opt;
    try {
        const njson& det = j.at("detector");
        opt.detector.window = det.at("window").get<int>();
        opt.detector.delta = det.at("delta").get<double>();
        opt.detector.target = det.at("target").get<int>();
        opt.half_count = j.at("half_count").get<bool>();
        opt.swap_matrices = j.at("swap_matrices").get<bool>();
        opt.write_csv = false;
        opt.write_json = false;
        for (const njson& f : j.at("formats")) {
            if (f.get<std::string>() == "csv") opt.write_csv = true;
            if (f.get<std::string>() == "json") opt.write_json = true;
        }
    } catch (const njson::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return opt;
}

SeriesFiles emit_series(const TraceFile& t, const std::filesystem::path& out_dir,
                        int rolling_window) {
    if (rolling_window < 1) throw ConfigError("emit_series: rolling window must be >= 1");
    std::filesystem::create_directories(out_dir);
    std::string stem = trace_filename(t);
    stem.resize(stem.size() - 6); // drop ".trace"

    SeriesFiles files;
    files.objective = out_dir / (stem + "_objective.csv");
    files.lambda = out_dir / (stem + "_lambda.csv");
    files.rolling_variance = out_dir / (stem + "_rolling_variance.csv");

    std::ostringstream obj;
    obj << "iteration,best,mean,worst\n";
    for (const IterationTrace& rec : t.trace)
        obj << rec.iteration << ',' << rec.best << ',' << format_double(rec.mean) << ','
            << rec.worst << '\n';
    write_text_file(files.objective, obj.str());

    std::ostringstream lam;
    lam << "iteration,lambda\n";
    for (const IterationTrace& rec : t.trace)
        lam << rec.iteration << ',' << format_double(rec.lambda) << '\n';
    write_text_file(files.lambda, lam.str());

    std::ostringstream rol;
    rol << "iteration,variance_best\n";
    const std::size_t w = static_cast<std::size_t>(rolling_window);
    for (std::size_t s = w - 1; s < t.trace.size(); ++s) {
        double mean = 0.0;
        for (std::size_t k = s + 1 - w; k <= s; ++k)
            mean += static_cast<double>(t.trace[k].best);
        mean /= static_cast<double>(w);
        double var = 0.0;
        for (std::size_t k = s + 1 - w; k <= s; ++k) {
            const double d = static_cast<double>(t.trace[k].best) - mean;
            var += d * d;
        }
        var /= static_cast<double>(w);
        rol << t.trace[s].iteration << ',' << format_double(var) << '\n';
    }
    write_text_file(files.rolling_variance, rol.str());
    return files;
}

} // namespace qapbench
