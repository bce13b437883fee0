#include "klsf/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace klsf {

LabeledGraph::LabeledGraph(std::size_t vertex_count, std::size_t label_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), label_count_(label_count), edges_(std::move(edges)) {
    if (vertex_count_ == 0) throw std::invalid_argument("graph must have at least one vertex");
    if (vertex_count_ > UINT32_MAX - 1 || edges_.size() > UINT32_MAX - 1)
        throw std::invalid_argument("graph too large");

    label_offsets_.assign(label_count_ + 2, 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u < 1 || e.u > vertex_count_ || e.v < 1 || e.v > vertex_count_)
            throw std::invalid_argument("edge " + std::to_string(i) + ": vertex id out of range");
        if (e.u == e.v) throw std::invalid_argument("edge " + std::to_string(i) + ": self-loop");
        if (e.label < 1 || e.label > label_count_)
            throw std::invalid_argument("edge " + std::to_string(i) + ": label id out of range");
        ++label_offsets_[e.label + 1];
    }
    for (std::size_t l = 1; l < label_offsets_.size(); ++l) label_offsets_[l] += label_offsets_[l - 1];

    label_index_.resize(edges_.size());
    grouped_edges_.resize(edges_.size());
    std::vector<std::uint32_t> cursor(label_offsets_.begin(), label_offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const std::uint32_t slot = cursor[edges_[i].label]++;
        label_index_[slot] = static_cast<std::uint32_t>(i);
        grouped_edges_[slot] = edges_[i];
    }
}

std::span<const std::uint32_t> LabeledGraph::label_index(Label label) const {
    if (label < 1 || label > label_count_) throw std::out_of_range("label id out of range");
    return std::span(label_index_).subspan(label_offsets_[label], label_offsets_[label + 1] - label_offsets_[label]);
}

std::span<const Edge> LabeledGraph::edges_with_label(Label label) const {
    if (label < 1 || label > label_count_) throw std::out_of_range("label id out of range");
    return std::span(grouped_edges_)
        .subspan(label_offsets_[label], label_offsets_[label + 1] - label_offsets_[label]);
}

LabelSubset::LabelSubset(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

LabelSubset::LabelSubset(std::size_t universe, std::initializer_list<Label> labels)
    : LabelSubset(universe, std::span<const Label>(labels.begin(), labels.size())) {}

LabelSubset::LabelSubset(std::size_t universe, std::span<const Label> labels) : LabelSubset(universe) {
    for (Label l : labels) insert(l);
}

bool LabelSubset::insert(Label label) {
    if (label < 1 || label > universe_) throw std::out_of_range("label id out of range");
    const std::size_t bit = label - 1;
    std::uint64_t& w = words_[bit / 64];
    const std::uint64_t mask = std::uint64_t{1} << (bit % 64);
    if (w & mask) return false;
    w |= mask;
    ++count_;
    comp_.reset();
    return true;
}

bool LabelSubset::erase(Label label) {
    if (label < 1 || label > universe_) throw std::out_of_range("label id out of range");
    const std::size_t bit = label - 1;
    std::uint64_t& w = words_[bit / 64];
    const std::uint64_t mask = std::uint64_t{1} << (bit % 64);
    if (!(w & mask)) return false;
    w &= ~mask;
    --count_;
    comp_.reset();
    return true;
}

void LabelSubset::clear() {
    std::fill(words_.begin(), words_.end(), 0);
    count_ = 0;
    comp_.reset();
}

std::vector<Label> LabelSubset::members() const {
    std::vector<Label> out;
    out.reserve(count_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits != 0) {
            const int tz = std::countr_zero(bits);
            out.push_back(static_cast<Label>(w * 64 + tz + 1));
            bits &= bits - 1;
        }
    }
    return out;
}

std::size_t comp_count(const LabeledGraph& g, LabelSubset& c) {
    if (auto cached = c.cached_comp()) return *cached;
    UnionFind uf(g.vertex_count());
    for (Label l : c.members()) {
        if (l > g.label_count()) continue;
        for (const Edge& e : g.edges_with_label(l)) uf.unite(e.u - 1, e.v - 1);
    }
    c.set_cached_comp(uf.components());
    return uf.components();
}

Fitness fitness_of(const LabeledGraph& g, LabelSubset& c) { return {comp_count(g, c), c.size()}; }

std::size_t hamming_distance(const LabelSubset& c1, const LabelSubset& c2) {
    if (c1.universe() != c2.universe()) throw std::invalid_argument("label universes differ");
    const auto a = c1.words();
    const auto b = c2.words();
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
    return d;
}

SpanningForest extract_forest(const LabeledGraph& g, const LabelSubset& c) {
    SpanningForest forest;
    UnionFind uf(g.vertex_count());
    for (const Edge& e : g.edges()) {
        if (!c.contains(e.label)) continue;
        if (uf.unite(e.u - 1, e.v - 1)) forest.edges.push_back(e);
    }
    forest.tree_count = uf.components();
    return forest;
}

std::size_t whole_graph_components(const LabeledGraph& g) {
    UnionFind uf(g.vertex_count());
    for (const Edge& e : g.edges()) uf.unite(e.u - 1, e.v - 1);
    return uf.components();
}

ComponentTracker::ComponentTracker(const LabeledGraph& g)
    : graph_(&g), uf_(g.vertex_count()), scratch_parent_(g.vertex_count()), scratch_stamp_(g.vertex_count(), 0) {}

ComponentTracker::ComponentTracker(const LabeledGraph& g, const LabelSubset& start) : ComponentTracker(g) {
    for (Label l : start.members()) add(l);
}

std::uint32_t ComponentTracker::scratch_find(std::uint32_t x) {
    if (scratch_stamp_[x] != stamp_) {
        scratch_stamp_[x] = stamp_;
        scratch_parent_[x] = x;
        return x;
    }
    while (scratch_parent_[x] != x) {
        scratch_parent_[x] = scratch_parent_[scratch_parent_[x]];
        x = scratch_parent_[x];
    }
    return x;
}

std::size_t ComponentTracker::components_if_added(Label label) {
    // Merge the label's edges over the current roots in a throwaway forest
    // keyed by stamp, so only the touched roots are reset.
    if (++stamp_ == 0) {
        std::fill(scratch_stamp_.begin(), scratch_stamp_.end(), 0);
        stamp_ = 1;
    }
    std::size_t merges = 0;
    for (const Edge& e : graph_->edges_with_label(label)) {
        const std::uint32_t a = scratch_find(uf_.find(e.u - 1));
        const std::uint32_t b = scratch_find(uf_.find(e.v - 1));
        if (a != b) {
            scratch_parent_[a] = b;
            ++merges;
        }
    }
    return uf_.components() - merges;
}

void ComponentTracker::add(Label label) {
    for (const Edge& e : graph_->edges_with_label(label)) uf_.unite(e.u - 1, e.v - 1);
}

}  // namespace klsf
