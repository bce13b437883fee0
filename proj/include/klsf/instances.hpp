#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "klsf/graph.hpp"

namespace klsf {

struct InstanceSpec {
    std::size_t n = 0;
    std::size_t label_count = 0;
    double density = 0.5;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument unless n >= 2, ℓ >= 1 and 0 < d <= 1.
    void validate() const;
    // round(d * n(n-1)/2)
    std::size_t edge_target() const;
};

struct GeneratedFrom {
    InstanceSpec spec;
};
struct LoadedFrom {
    std::filesystem::path path;
};
using Provenance = std::variant<std::monostate, GeneratedFrom, LoadedFrom>;

struct Instance {
    LabeledGraph graph;
    std::size_t k = 1;
    Provenance provenance;

    // Graph and budget only.
    friend bool operator==(const Instance& a, const Instance& b) { return a.graph == b.graph && a.k == b.k; }
};

// Distinct unordered vertex pairs drawn uniformly without replacement, each
// given a uniform label. Edges are listed in ascending (u, v) order.
LabeledGraph generate_graph(const InstanceSpec& spec);

class NoValidBudget : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// First k = floor(n / 2^j), j = 1, 2, ..., for which the deterministic MVCA
// solution still has more than one component. Values above ℓ are skipped.
// Throws NoValidBudget when k reaches 0.
std::size_t determine_k(const LabeledGraph& g);

// Generated graph plus determine_k.
Instance generate_instance(const InstanceSpec& spec);

enum class ParseErrorKind {
    MissingHeader,
    MalformedHeader,
    DuplicateHeader,
    MalformedEdge,
    VertexOutOfRange,
    LabelOutOfRange,
    SelfLoop,
    EdgeCountMismatch,
    InvalidBudget,
    UnknownLine,
    UnrecognizedLayout,
    MalformedManifest,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);

    ParseErrorKind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
};

// Text format, one record per line:
//   c <comment>            (optional, anywhere)
//   p klsf <n> <m> <l> <k> (exactly once, before any edge)
//   e <u> <v> <label>      (m lines, 1-based ids)
void write_instance(const Instance& inst, std::ostream& out);
void write_instance_file(const Instance& inst, const std::filesystem::path& path);
Instance read_instance(std::istream& in);
Instance read_instance_file(const std::filesystem::path& path);

struct ManifestEntry {
    std::filesystem::path path;
    InstanceSpec spec;
    std::size_t k = 0;
};

// CSV with header path,n,l,density,seed,k.
void write_manifest(const std::vector<ManifestEntry>& entries, std::ostream& out);
std::vector<ManifestEntry> read_manifest(std::istream& in);

// Best-effort reader for labelled-adjacency-matrix benchmark files: a header
// "n l [..]" followed by either the strict upper triangle (n(n-1)/2 values),
// the upper triangle with diagonal (n(n+1)/2) or the full n x n matrix.
// Entries in [0, l) are 0-based labels; l or a negative value means no edge.
// Throws ParseError(UnrecognizedLayout) for anything else.
LabeledGraph import_labelled_matrix(std::istream& in);

}  // namespace klsf
