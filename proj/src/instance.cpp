#include "qapbench/instance.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace qapbench {

bool is_permutation(const Assignment& a, int n) {
    if (static_cast<int>(a.size()) != n) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : a) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

Assignment identity_assignment(int n) {
    Assignment a(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] = i;
    return a;
}

Assignment random_assignment(int n, Rng& rng) {
    Assignment a = identity_assignment(n);
    rng.shuffle(a);
    return a;
}

namespace {

struct Token {
    Cost value;
    int line;
};

// Splits on whitespace, converting each token with from_chars so that stray
// text ("abc", "1.5") is reported with its position instead of being eaten
// the way stream extraction would.
std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    int line = 1;
    std::size_t i = 0;
    const std::size_t len = text.size();
    while (i < len) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < len && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        const std::string_view word = text.substr(i, j - i);
        Cost value = 0;
        const auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
        if (ec != std::errc{} || end != word.data() + word.size()) {
            std::ostringstream msg;
            msg << "token " << (tokens.size() + 1) << " ('" << word << "') on line " << line
                << " is not an integer";
            throw ParseError(msg.str());
        }
        tokens.push_back({value, line});
        i = j;
    }
    return tokens;
}

SquareMatrix read_block(const std::vector<Token>& tokens, std::size_t offset, int n) {
    SquareMatrix m(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = tokens[offset++].value;
    return m;
}

void warn_diagonal(const SquareMatrix& m, const char* label, std::vector<std::string>* warnings) {
    if (!warnings) return;
    for (int i = 0; i < m.size(); ++i) {
        if (m(i, i) != 0) {
            std::ostringstream msg;
            msg << label << " matrix has nonzero diagonal entry " << m(i, i) << " at (" << i
                << ", " << i << ")";
            warnings->push_back(msg.str());
            return; // one warning per matrix is enough
        }
    }
}

void append_block(std::ostringstream& out, const SquareMatrix& m) {
    for (int r = 0; r < m.size(); ++r) {
        for (int c = 0; c < m.size(); ++c) {
            if (c) out << ' ';
            out << m(r, c);
        }
        out << '\n';
    }
}

} // namespace

QapInstance parse_qaplib(std::string_view text, std::vector<std::string>* warnings) {
    const std::vector<Token> tokens = tokenize(text);
    if (tokens.empty()) throw ParseError("empty instance text");

    const Cost size_token = tokens[0].value;
    if (size_token < 2 || size_token > 10000) {
        std::ostringstream msg;
        msg << "invalid instance size " << size_token << " (need 2 <= n <= 10000)";
        throw ParseError(msg.str());
    }
    const int n = static_cast<int>(size_token);
    const std::size_t nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);

    const std::size_t two_blocks = 1 + 2 * nn;
    const std::size_t three_blocks = 1 + 3 * nn;
    if (tokens.size() != two_blocks && tokens.size() != three_blocks) {
        std::ostringstream msg;
        msg << "format error: expected " << two_blocks << " tokens (or " << three_blocks
            << " with a linear cost block) for n=" << n << ", found " << tokens.size();
        throw ParseError(msg.str());
    }

    QapInstance inst;
    inst.n = n;
    inst.flow = read_block(tokens, 1, n);
    inst.distance = read_block(tokens, 1 + nn, n);
    if (tokens.size() == three_blocks) inst.linear_cost = read_block(tokens, 1 + 2 * nn, n);

    warn_diagonal(inst.flow, "flow", warnings);
    warn_diagonal(inst.distance, "distance", warnings);
    return inst;
}

std::string serialize_qaplib(const QapInstance& inst) {
    std::ostringstream out;
    out << inst.n << '\n' << '\n';
    append_block(out, inst.flow);
    out << '\n';
    append_block(out, inst.distance);
    if (inst.linear_cost) {
        out << '\n';
        append_block(out, *inst.linear_cost);
    }
    return out.str();
}

QapInstance load_qaplib_file(const std::filesystem::path& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open instance file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        QapInstance inst = parse_qaplib(buffer.str(), warnings);
        inst.name = path.stem().string();
        return inst;
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void swap_flow_distance(QapInstance& inst) {
    std::swap(inst.flow, inst.distance);
}

QapInstance random_instance(int n, Cost max_entry, std::uint64_t seed) {
    if (n < 2) throw ContractError("random_instance: need n >= 2");
    if (max_entry < 0) throw ContractError("random_instance: max_entry must be non-negative");
    Rng rng(seed);
    QapInstance inst;
    inst.n = n;
    inst.flow = SquareMatrix(n);
    inst.distance = SquareMatrix(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (r == c) continue;
            inst.flow(r, c) = static_cast<Cost>(rng.next_below(static_cast<std::uint64_t>(max_entry) + 1));
            inst.distance(r, c) = static_cast<Cost>(rng.next_below(static_cast<std::uint64_t>(max_entry) + 1));
        }
    inst.name = "random-" + std::to_string(n) + "-" + std::to_string(seed);
    return inst;
}

} // namespace qapbench
