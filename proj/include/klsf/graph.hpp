#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "klsf/union_find.hpp"

namespace klsf {

using Vertex = std::uint32_t;  // 1-based
using Label = std::uint32_t;   // 1-based

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    Label label = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected graph whose edges carry labels from [1, label_count].
// Immutable after construction; safe to share between concurrent solver runs.
class LabeledGraph {
public:
    // Throws std::invalid_argument on n == 0, ids out of range or self-loops.
    LabeledGraph(std::size_t vertex_count, std::size_t label_count, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t label_count() const noexcept { return label_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    // Indices into edges() of every edge carrying `label`.
    std::span<const std::uint32_t> label_index(Label label) const;
    // Same edges as label_index, stored contiguously.
    std::span<const Edge> edges_with_label(Label label) const;

    friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
        return a.vertex_count_ == b.vertex_count_ && a.label_count_ == b.label_count_ &&
               a.edges_ == b.edges_;
    }

private:
    std::size_t vertex_count_;
    std::size_t label_count_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> label_offsets_;  // size label_count + 2, indexed by label
    std::vector<std::uint32_t> label_index_;
    std::vector<Edge> grouped_edges_;
};

// A candidate solution C ⊆ L stored as a bitset over [1, universe], with an
// optional cached component count. Any mutation drops the cache. A subset is
// only meaningful together with the graph whose label universe it spans.
class LabelSubset {
public:
    LabelSubset() = default;
    explicit LabelSubset(std::size_t universe);
    LabelSubset(std::size_t universe, std::initializer_list<Label> labels);
    LabelSubset(std::size_t universe, std::span<const Label> labels);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    bool contains(Label label) const noexcept {
        const std::size_t bit = label - 1;
        return label >= 1 && label <= universe_ && ((words_[bit / 64] >> (bit % 64)) & 1U) != 0;
    }

    // Both return false when the call did not change membership.
    bool insert(Label label);
    bool erase(Label label);
    void clear();

    // Ascending label ids.
    std::vector<Label> members() const;

    std::optional<std::size_t> cached_comp() const noexcept { return comp_; }
    void set_cached_comp(std::size_t comp) noexcept { comp_ = comp; }
    void invalidate() noexcept { comp_.reset(); }

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    // Membership equality; the cache is not compared.
    friend bool operator==(const LabelSubset& a, const LabelSubset& b) {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }

private:
    std::size_t universe_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> words_;
    std::optional<std::size_t> comp_;
};

// Solution quality: fewer components first, then fewer labels.
struct Fitness {
    std::size_t comp = 0;
    std::size_t labels = 0;

    friend auto operator<=>(const Fitness&, const Fitness&) = default;
};

struct SpanningForest {
    std::vector<Edge> edges;
    std::size_t tree_count = 0;
};

// Number of connected components of (V, A(c)). Returns the cached value when
// present, otherwise computes it with union-find and caches it in c.
std::size_t comp_count(const LabeledGraph& g, LabelSubset& c);

// Requires comp_count to have been evaluated (or computes it).
Fitness fitness_of(const LabeledGraph& g, LabelSubset& c);

// |c1 Δ c2|. Both subsets must share the same universe.
std::size_t hamming_distance(const LabelSubset& c1, const LabelSubset& c2);

// Spanning forest of (V, A(c)): keeps each edge that joins two components,
// in graph edge order.
SpanningForest extract_forest(const LabeledGraph& g, const LabelSubset& c);

// Lower bound on any Comp(C): the component count of the whole graph.
std::size_t whole_graph_components(const LabeledGraph& g);

// Union-find state for a growing label set, with cheap "what if this label
// were added" queries. Used by every constructive step.
class ComponentTracker {
public:
    ComponentTracker(const LabeledGraph& g, const LabelSubset& start);
    explicit ComponentTracker(const LabeledGraph& g);

    std::size_t components() const noexcept { return uf_.components(); }

    // Component count after adding `label`; the tracked state is unchanged.
    std::size_t components_if_added(Label label);

    void add(Label label);

private:
    const LabeledGraph* graph_;
    UnionFind uf_;
    std::vector<std::uint32_t> scratch_parent_;
    std::vector<std::uint32_t> scratch_stamp_;
    std::uint32_t stamp_ = 0;

    std::uint32_t scratch_find(std::uint32_t x);
};

}  // namespace klsf
