#include "klsf/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "klsf/constructive.hpp"
#include "klsf/rng.hpp"

namespace klsf {

void InstanceSpec::validate() const {
    if (n < 2) throw std::invalid_argument("instance spec: n must be at least 2");
    if (label_count < 1) throw std::invalid_argument("instance spec: at least one label required");
    if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("instance spec: density must be in (0, 1]");
}

std::size_t InstanceSpec::edge_target() const {
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<std::size_t>(std::llround(density * pairs));
}

LabeledGraph generate_graph(const InstanceSpec& spec) {
    spec.validate();
    const std::uint64_t n = spec.n;
    const std::uint64_t pairs = n * (n - 1) / 2;
    const std::size_t m = spec.edge_target();
    Rng rng(spec.seed);

    // Partial Fisher-Yates over pair indices.
    std::vector<std::uint64_t> index(pairs);
    std::iota(index.begin(), index.end(), std::uint64_t{0});
    for (std::size_t i = 0; i < m; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(pairs - i));
        std::swap(index[i], index[j]);
    }
    index.resize(m);
    std::sort(index.begin(), index.end());

    std::vector<Edge> edges;
    edges.reserve(m);
    // Pair index p enumerates (u, v), u < v, row by row.
    std::uint64_t row_start = 0;
    Vertex u = 1;
    for (std::uint64_t p : index) {
        while (p >= row_start + (n - u)) {
            row_start += n - u;
            ++u;
        }
        const auto v = static_cast<Vertex>(u + 1 + (p - row_start));
        edges.push_back({u, v, 0});
    }
    for (Edge& e : edges) e.label = static_cast<Label>(rng.below(spec.label_count) + 1);
    return LabeledGraph(spec.n, spec.label_count, std::move(edges));
}

std::size_t determine_k(const LabeledGraph& g) {
    const std::size_t n = g.vertex_count();
    for (std::size_t j = 1; j < 64; ++j) {
        const std::size_t k = n >> j;
        if (k == 0) break;
        if (k > g.label_count()) continue;
        LabelSubset c = mvca(g, k, GreedyTieRule::deterministic());
        if (comp_count(g, c) > 1) return k;
    }
    throw NoValidBudget("no label budget floor(n/2^j) leaves the greedy solution disconnected");
}

Instance generate_instance(const InstanceSpec& spec) {
    LabeledGraph g = generate_graph(spec);
    const std::size_t k = determine_k(g);
    return Instance{std::move(g), k, GeneratedFrom{spec}};
}

const char* to_string(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::MissingHeader: return "missing header";
        case ParseErrorKind::MalformedHeader: return "malformed header";
        case ParseErrorKind::DuplicateHeader: return "duplicate header";
        case ParseErrorKind::MalformedEdge: return "malformed edge";
        case ParseErrorKind::VertexOutOfRange: return "vertex id out of range";
        case ParseErrorKind::LabelOutOfRange: return "label id out of range";
        case ParseErrorKind::SelfLoop: return "self-loop";
        case ParseErrorKind::EdgeCountMismatch: return "edge count mismatch";
        case ParseErrorKind::InvalidBudget: return "invalid label budget";
        case ParseErrorKind::UnknownLine: return "unknown line";
        case ParseErrorKind::UnrecognizedLayout: return "unrecognized layout";
        case ParseErrorKind::MalformedManifest: return "malformed manifest row";
    }
    return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": " + to_string(kind) +
                         (detail.empty() ? "" : " (" + detail + ")")),
      kind_(kind),
      line_(line) {}

void write_instance(const Instance& inst, std::ostream& out) {
    const LabeledGraph& g = inst.graph;
    if (const auto* gen = std::get_if<GeneratedFrom>(&inst.provenance)) {
        out << "c generated n=" << gen->spec.n << " l=" << gen->spec.label_count << " d=" << gen->spec.density
            << " seed=" << gen->spec.seed << '\n';
    }
    out << "p klsf " << g.vertex_count() << ' ' << g.edge_count() << ' ' << g.label_count() << ' ' << inst.k
        << '\n';
    for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << ' ' << e.label << '\n';
}

void write_instance_file(const Instance& inst, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_instance(inst, out);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

bool parse_uint(std::string_view s, std::uint64_t& value) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Instance read_instance(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::uint64_t n = 0, m = 0, l = 0, k = 0;
    std::vector<Edge> edges;

    while (std::getline(in, line)) {
        ++line_no;
        const auto tok = split_ws(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (have_header) throw ParseError(ParseErrorKind::DuplicateHeader, line_no, "");
            if (tok.size() != 6 || tok[1] != "klsf" || !parse_uint(tok[2], n) || !parse_uint(tok[3], m) ||
                !parse_uint(tok[4], l) || !parse_uint(tok[5], k))
                throw ParseError(ParseErrorKind::MalformedHeader, line_no, "expected 'p klsf n m l k'");
            if (n == 0) throw ParseError(ParseErrorKind::MalformedHeader, line_no, "n must be positive");
            if (k < 1 || k > l) throw ParseError(ParseErrorKind::InvalidBudget, line_no, "need 1 <= k <= l");
            have_header = true;
            edges.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(m, 1U << 24)));
            continue;
        }
        if (tok[0] == "e") {
            if (!have_header) throw ParseError(ParseErrorKind::MissingHeader, line_no, "edge before header");
            std::uint64_t u = 0, v = 0, lab = 0;
            if (tok.size() != 4 || !parse_uint(tok[1], u) || !parse_uint(tok[2], v) || !parse_uint(tok[3], lab))
                throw ParseError(ParseErrorKind::MalformedEdge, line_no, "expected 'e u v label'");
            if (u == v) throw ParseError(ParseErrorKind::SelfLoop, line_no, "");
            if (u < 1 || u > n || v < 1 || v > n) throw ParseError(ParseErrorKind::VertexOutOfRange, line_no, "");
            if (lab < 1 || lab > l) throw ParseError(ParseErrorKind::LabelOutOfRange, line_no, "");
            if (edges.size() == m)
                throw ParseError(ParseErrorKind::EdgeCountMismatch, line_no,
                                 "more than the declared " + std::to_string(m) + " edges");
            edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Label>(lab)});
            continue;
        }
        throw ParseError(ParseErrorKind::UnknownLine, line_no, std::string(tok[0]));
    }
    if (!have_header) throw ParseError(ParseErrorKind::MissingHeader, line_no, "");
    if (edges.size() != m)
        throw ParseError(ParseErrorKind::EdgeCountMismatch, line_no,
                         "declared " + std::to_string(m) + ", found " + std::to_string(edges.size()));
    return Instance{LabeledGraph(n, l, std::move(edges)), static_cast<std::size_t>(k), std::monostate{}};
}

Instance read_instance_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    Instance inst = read_instance(in);
    inst.provenance = LoadedFrom{path};
    return inst;
}

void write_manifest(const std::vector<ManifestEntry>& entries, std::ostream& out) {
    out << "path,n,l,density,seed,k\n";
    for (const auto& e : entries) {
        out << e.path.string() << ',' << e.spec.n << ',' << e.spec.label_count << ',' << e.spec.density << ','
            << e.spec.seed << ',' << e.k << '\n';
    }
}

std::vector<ManifestEntry> read_manifest(std::istream& in) {
    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || (line_no == 1 && line.rfind("path,", 0) == 0)) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 6) throw ParseError(ParseErrorKind::MalformedManifest, line_no, "expected 6 cells");
        try {
            ManifestEntry e;
            e.path = cells[0];
            e.spec.n = std::stoull(cells[1]);
            e.spec.label_count = std::stoull(cells[2]);
            e.spec.density = std::stod(cells[3]);
            e.spec.seed = std::stoull(cells[4]);
            e.k = std::stoull(cells[5]);
            entries.push_back(std::move(e));
        } catch (const std::logic_error&) {
            throw ParseError(ParseErrorKind::MalformedManifest, line_no, "bad value");
        }
    }
    return entries;
}

LabeledGraph import_labelled_matrix(std::istream& in) {
    std::vector<std::string> header_tokens;
    std::vector<long long> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tok = split_ws(line);
        if (tok.empty()) continue;
        for (auto t : tok) {
            long long v = 0;
            const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc() || ptr != t.data() + t.size()) {
                // Some files carry a fractional density in the header.
                if (header_tokens.size() < 4 && values.size() < 4) {
                    header_tokens.emplace_back(t);
                    continue;
                }
                throw ParseError(ParseErrorKind::UnrecognizedLayout, line_no, "non-integer token '" + std::string(t) + "'");
            }
            values.push_back(v);
        }
    }
    if (values.size() < 2) throw ParseError(ParseErrorKind::UnrecognizedLayout, line_no, "missing 'n l' header");
    const long long n = values[0];
    const long long l = values[1];
    if (n < 2 || l < 1) throw ParseError(ParseErrorKind::UnrecognizedLayout, 1, "bad n or l in header");
    const auto un = static_cast<std::size_t>(n);

    const std::size_t strict = un * (un - 1) / 2;
    const std::size_t with_diag = un * (un + 1) / 2;
    const std::size_t full = un * un;

    // The header may carry up to two extra integers; try each split.
    for (std::size_t extra = 0; extra <= 2; ++extra) {
        if (values.size() < 2 + extra) break;
        const std::size_t body = values.size() - 2 - extra;
        const auto cell = [&](std::size_t i) { return values[2 + extra + i]; };
        std::vector<Edge> edges;
        const auto take = [&](std::size_t i, std::size_t j, long long v) {
            if (v < 0 || v == l) return;
            if (v > l) throw ParseError(ParseErrorKind::LabelOutOfRange, 0, "matrix entry " + std::to_string(v));
            edges.push_back({static_cast<Vertex>(i + 1), static_cast<Vertex>(j + 1), static_cast<Label>(v + 1)});
        };
        if (body == strict) {
            std::size_t p = 0;
            for (std::size_t i = 0; i < un; ++i)
                for (std::size_t j = i + 1; j < un; ++j) take(i, j, cell(p++));
        } else if (body == with_diag) {
            std::size_t p = 0;
            for (std::size_t i = 0; i < un; ++i) {
                ++p;  // diagonal
                for (std::size_t j = i + 1; j < un; ++j) take(i, j, cell(p++));
            }
        } else if (body == full) {
            for (std::size_t i = 0; i < un; ++i)
                for (std::size_t j = i + 1; j < un; ++j) {
                    if (cell(i * un + j) != cell(j * un + i))
                        throw ParseError(ParseErrorKind::UnrecognizedLayout, 0, "full matrix is not symmetric");
                    take(i, j, cell(i * un + j));
                }
        } else {
            continue;
        }
        return LabeledGraph(un, static_cast<std::size_t>(l), std::move(edges));
    }
    throw ParseError(ParseErrorKind::UnrecognizedLayout, line_no,
                     std::to_string(values.size()) + " integers do not match any known matrix layout for n=" +
                         std::to_string(n));
}

}  // namespace klsf
