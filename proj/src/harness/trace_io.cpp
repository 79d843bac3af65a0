#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

#include "qapbench/harness.hpp"

namespace qapbench {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

constexpr std::string_view kTraceMagic = "# qap-trace 1";
constexpr std::string_view kTraceColumns = "columns iteration best mean worst lambda";

template <typename T>
T parse_number(std::string_view token, int line_no, const char* what) {
    T value{};
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
        std::ostringstream msg;
        msg << "trace line " << line_no << ": '" << token << "' is not a valid " << what;
        throw ParseError(msg.str());
    }
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && line[pos] == ' ') ++pos;
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ') ++end;
        if (end > pos) out.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    return out;
}

} // namespace

std::string serialize_trace(const TraceFile& t) {
    std::ostringstream out;
    out << kTraceMagic << '\n';
    out << "instance " << t.instance_path << '\n';
    out << "name " << t.instance_name << '\n';
    out << "algorithm " << algorithm_name(t.algorithm) << '\n';
    out << "replication " << t.replication << '\n';
    out << "seed " << t.seed << '\n';
    out << "best_cost " << t.best_cost << '\n';
    out << "best_assignment";
    for (int v : t.best_assignment) out << ' ' << v;
    out << '\n';
    out << kTraceColumns << '\n';
    for (const IterationTrace& rec : t.trace)
        out << rec.iteration << ' ' << rec.best << ' ' << format_double(rec.mean) << ' '
            << rec.worst << ' ' << format_double(rec.lambda) << '\n';
    return out.str();
}

TraceFile parse_trace(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };

    if (!next_line() || line != kTraceMagic)
        throw ParseError("trace line 1: missing '" + std::string(kTraceMagic) + "' header");

    TraceFile t;
    bool have[7] = {};
    enum { kInstance, kName, kAlgorithm, kReplication, kSeed, kBestCost, kBestAssignment };
    while (true) {
        if (!next_line())
            throw ParseError("trace: ended before the '" + std::string(kTraceColumns) + "' line");
        if (line == kTraceColumns) break;
        const std::size_t space = line.find(' ');
        const std::string key = line.substr(0, space);
        const std::string_view value =
            space == std::string::npos ? std::string_view{} : std::string_view(line).substr(space + 1);
        if (key == "instance") {
            t.instance_path = value;
            have[kInstance] = true;
        } else if (key == "name") {
            t.instance_name = value;
            have[kName] = true;
        } else if (key == "algorithm") {
            const auto algo = algorithm_from_name(value);
            if (!algo) {
                std::ostringstream msg;
                msg << "trace line " << line_no << ": unknown algorithm '" << value << "'";
                throw ParseError(msg.str());
            }
            t.algorithm = *algo;
            have[kAlgorithm] = true;
        } else if (key == "replication") {
            t.replication = parse_number<int>(value, line_no, "replication index");
            have[kReplication] = true;
        } else if (key == "seed") {
            t.seed = parse_number<std::uint64_t>(value, line_no, "seed");
            have[kSeed] = true;
        } else if (key == "best_cost") {
            t.best_cost = parse_number<Cost>(value, line_no, "cost");
            have[kBestCost] = true;
        } else if (key == "best_assignment") {
            for (std::string_view tok : split_fields(value))
                t.best_assignment.push_back(parse_number<int>(tok, line_no, "assignment entry"));
            have[kBestAssignment] = true;
        } else {
            std::ostringstream msg;
            msg << "trace line " << line_no << ": unknown key '" << key << "'";
            throw ParseError(msg.str());
        }
    }
    static const char* const kKeyNames[7] = {"instance",  "name",      "algorithm",
                                             "replication", "seed",    "best_cost",
                                             "best_assignment"};
    for (int k = 0; k < 7; ++k)
        if (!have[k]) throw ParseError(std::string("trace: missing '") + kKeyNames[k] + "' line");

    while (next_line()) {
        const auto fields = split_fields(line);
        if (fields.size() != 5) {
            std::ostringstream msg;
            msg << "trace line " << line_no << ": expected 5 fields, found " << fields.size();
            throw ParseError(msg.str());
        }
        IterationTrace rec;
        rec.iteration = parse_number<int>(fields[0], line_no, "iteration");
        rec.best = parse_number<Cost>(fields[1], line_no, "cost");
        rec.mean = parse_number<double>(fields[2], line_no, "mean");
        rec.worst = parse_number<Cost>(fields[3], line_no, "cost");
        rec.lambda = parse_number<double>(fields[4], line_no, "lambda");
        t.trace.push_back(rec);
    }
    if (t.trace.empty()) throw ParseError("trace: no iteration rows");
    return t;
}

TraceFile load_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read trace file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_trace(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_trace_file(const std::filesystem::path& path, const TraceFile& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write trace file: " + path.string());
    out << serialize_trace(t);
    if (!out) throw IoError("failed writing trace file: " + path.string());
}

std::string trace_filename(const TraceFile& t) {
    std::ostringstream out;
    out << t.instance_name << "__" << algorithm_name(t.algorithm) << "__r";
    out.width(3);
    out.fill('0');
    out << t.replication;
    out << ".trace";
    return out.str();
}

} // namespace qapbench
