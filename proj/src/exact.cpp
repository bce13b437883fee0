#include "klsf/exact.hpp"

#include <bit>
#include <queue>
#include <stdexcept>
#include <vector>

#include "klsf/union_find.hpp"

namespace klsf {

namespace {

using Clock = std::chrono::steady_clock;

class Backtracker {
public:
    Backtracker(const LabeledGraph& g, std::size_t k, const ExactConfig& cfg)
        : g_(g), k_(k), cfg_(cfg), uf_(g.vertex_count()), start_(Clock::now()) {}

    ExactResult run() {
        visit(0);
        ExactResult r;
        r.nodes_visited = nodes_;
        r.timed_out = timed_out_;
        r.stopped_early = found_single_;
        r.elapsed = Clock::now() - start_;
        if (!timed_out_ || found_single_) {
            r.best = to_subset(best_);
            r.proven_optimal = true;
        } else if (!cfg_.report_not_found && have_best_) {
            r.best = to_subset(best_);
        }
        return r;
    }

private:
    const LabeledGraph& g_;
    std::size_t k_;
    const ExactConfig& cfg_;
    RollbackUnionFind uf_;
    Clock::time_point start_;
    std::vector<Label> path_;
    std::vector<Label> best_;
    std::size_t best_comp_ = 0;
    bool have_best_ = false;
    bool timed_out_ = false;
    bool found_single_ = false;
    std::uint64_t nodes_ = 0;

    LabelSubset to_subset(const std::vector<Label>& labels) const {
        LabelSubset s(g_.label_count(), labels);
        s.set_cached_comp(best_comp_);
        return s;
    }

    // Returns false when the whole search must stop.
    bool visit(Label last) {
        if (Clock::now() - start_ >= cfg_.time_limit) {
            timed_out_ = true;
            return false;
        }
        ++nodes_;
        const std::size_t comp = uf_.components();
        // Preorder is lexicographic order, so the first subset seen at a given
        // (comp, size) is the lexicographically smallest one.
        if (!have_best_ || comp < best_comp_ || (comp == best_comp_ && path_.size() < best_.size())) {
            best_ = path_;
            best_comp_ = comp;
            have_best_ = true;
        }
        if (comp == 1) {
            found_single_ = true;
            return false;
        }
        if (path_.size() == k_) return true;
        for (Label l = last + 1; l <= g_.label_count(); ++l) {
            const std::size_t mark = uf_.checkpoint();
            for (const Edge& e : g_.edges_with_label(l)) uf_.unite(e.u - 1, e.v - 1);
            path_.push_back(l);
            const bool go_on = visit(l);
            path_.pop_back();
            uf_.rollback(mark);
            if (!go_on) return false;
        }
        return true;
    }
};

std::size_t bfs_components(std::size_t n, const std::vector<std::vector<std::uint32_t>>& adj) {
    std::vector<bool> seen(n, false);
    std::size_t components = 0;
    std::queue<std::uint32_t> frontier;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++components;
        seen[s] = true;
        frontier.push(s);
        while (!frontier.empty()) {
            const std::uint32_t v = frontier.front();
            frontier.pop();
            for (std::uint32_t w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    frontier.push(w);
                }
            }
        }
    }
    return components;
}

}  // namespace

ExactResult exact_solve(const LabeledGraph& g, std::size_t k, const ExactConfig& cfg) {
    if (k < 1) throw std::invalid_argument("exact_solve: k must be at least 1");
    if (k > g.label_count()) throw std::invalid_argument("exact_solve: k exceeds the number of labels");
    if (cfg.time_limit <= std::chrono::nanoseconds::zero())
        throw std::invalid_argument("exact_solve: time limit must be positive");
    return Backtracker(g, k, cfg).run();
}

std::size_t brute_force_oracle(const LabeledGraph& g, std::size_t k) {
    const std::size_t l = g.label_count();
    if (l > 20) throw std::invalid_argument("brute_force_oracle: at most 20 labels supported");
    const std::size_t n = g.vertex_count();
    std::size_t best = n;
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << l); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > k) continue;
        for (auto& a : adj) a.clear();
        for (const Edge& e : g.edges()) {
            if ((mask >> (e.label - 1)) & 1U) {
                adj[e.u - 1].push_back(e.v - 1);
                adj[e.v - 1].push_back(e.u - 1);
            }
        }
        const std::size_t comp = bfs_components(n, adj);
        if (comp < best) best = comp;
    }
    return best;
}

}  // namespace klsf
