#ifndef QLAP_GRAPH_ANALYSIS_HPP
#define QLAP_GRAPH_ANALYSIS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlap/graph.hpp"

namespace qlap {

// ---------------------------------------------------------------------------
// Connected components with 2-coloring.
// ---------------------------------------------------------------------------

struct ComponentRecord {
    std::vector<int> vertices;  // ascending
    bool bipartite = false;
    // Valid only when bipartite. The lowest-indexed vertex goes to class_u;
    // an isolated vertex is {v} | {} with imbalance -1 (unbalanced by fiat).
    std::vector<int> class_u;
    std::vector<int> class_w;
    int imbalance = 0;  // |class_w| - |class_u|

    bool balanced() const { return bipartite && imbalance == 0; }
};

struct BipartiteProfile {
    std::vector<ComponentRecord> components;  // ordered by smallest vertex
    int bipartite_count = 0;                  // b
    int balanced_count = 0;                   // bb
};

inline BipartiteProfile bipartite_profile(const Graph& g) {
    const int n = g.order();
    BipartiteProfile profile;
    std::vector<int> color(static_cast<std::size_t>(n), -1);  // -1 unseen, else 0/1
    std::vector<int> queue;
    for (int start = 0; start < n; ++start) {
        if (color[static_cast<std::size_t>(start)] != -1) continue;
        ComponentRecord comp;
        comp.bipartite = true;
        color[static_cast<std::size_t>(start)] = 0;
        queue.assign(1, start);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int u = queue[head];
            std::uint64_t nbrs = g.neighbors(u);
            while (nbrs) {
                const int v = __builtin_ctzll(nbrs);
                nbrs &= nbrs - 1;
                if (color[static_cast<std::size_t>(v)] == -1) {
                    color[static_cast<std::size_t>(v)] = 1 - color[static_cast<std::size_t>(u)];
                    queue.push_back(v);
                } else if (color[static_cast<std::size_t>(v)] == color[static_cast<std::size_t>(u)]) {
                    comp.bipartite = false;
                }
            }
        }
        comp.vertices = queue;
        std::sort(comp.vertices.begin(), comp.vertices.end());
        if (comp.bipartite) {
            for (int v : comp.vertices)
                (color[static_cast<std::size_t>(v)] == 0 ? comp.class_u : comp.class_w).push_back(v);
            comp.imbalance = static_cast<int>(comp.class_w.size()) - static_cast<int>(comp.class_u.size());
            ++profile.bipartite_count;
            if (comp.imbalance == 0) ++profile.balanced_count;
        }
        profile.components.push_back(std::move(comp));
    }
    return profile;
}

// ---------------------------------------------------------------------------
// Complete multipartite recognition.
// ---------------------------------------------------------------------------

/// Part sizes (ascending) if g is complete multipartite, i.e. non-adjacency is
/// an equivalence relation; every graph with a single part (no edges) counts.
inline std::optional<std::vector<int>> is_complete_multipartite(const Graph& g) {
    const int n = g.order();
    // In a complete multipartite graph two vertices are non-adjacent exactly
    // when their closed non-neighborhoods coincide, so group by row mask.
    std::vector<int> cls(static_cast<std::size_t>(n), -1);
    int classes = 0;
    for (int v = 0; v < n; ++v) {
        if (cls[static_cast<std::size_t>(v)] != -1) continue;
        const int c = classes++;
        cls[static_cast<std::size_t>(v)] = c;
        for (int w = v + 1; w < n; ++w)
            if (cls[static_cast<std::size_t>(w)] == -1 && !g.has_edge(v, w))
                cls[static_cast<std::size_t>(w)] = c;
    }
    std::vector<int> sizes(static_cast<std::size_t>(classes), 0);
    for (int v = 0; v < n; ++v) ++sizes[static_cast<std::size_t>(cls[static_cast<std::size_t>(v)])];
    // verify: same class => non-adjacent, different class => adjacent
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.has_edge(u, v) == (cls[static_cast<std::size_t>(u)] == cls[static_cast<std::size_t>(v)]))
                return std::nullopt;
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

// ---------------------------------------------------------------------------
// Canonical key for small graphs: the lexicographically smallest graph6 body
// over all vertex relabelings, found by branch-and-bound over partial
// permutations (comparing the upper triangle column by column).
// ---------------------------------------------------------------------------

inline constexpr int kMaxCanonicalOrder = 10;

namespace detail {

class CanonicalSearch {
public:
    explicit CanonicalSearch(const Graph& g)
        : g_(g),
          n_(g.order()),
          cur_(static_cast<std::size_t>(n_), 0),
          best_(static_cast<std::size_t>(n_), 0) {
        perm_.reserve(static_cast<std::size_t>(n_));
        extend();
    }

    Graph result() const {
        Graph out(n_);
        for (int j = 1; j < n_; ++j)
            for (int i = 0; i < j; ++i) {
                const int bit = j - 1 - i;  // symbol i is packed at the high end
                if ((best_[static_cast<std::size_t>(j)] >> bit) & 1u) out.add_edge(i, j);
            }
        return out;
    }

private:
    // Column j of the candidate upper triangle under the partial permutation:
    // bit for row i sits higher for smaller i, so integer comparison of two
    // columns matches the lexicographic comparison of their bit strings.
    std::uint32_t column(int j) const {
        std::uint32_t col = 0;
        for (int i = 0; i < j; ++i) {
            col <<= 1;
            col |= g_.has_edge(perm_[static_cast<std::size_t>(i)], perm_[static_cast<std::size_t>(j)]) ? 1u : 0u;
        }
        return col;
    }

    void extend() {
        const int depth = static_cast<int>(perm_.size());
        if (depth == n_) {
            // The comparison at the last extension already proved cur <= best
            // (or no candidate existed yet), so recording is unconditional.
            best_ = cur_;
            have_best_ = true;
            return;
        }
        for (int v = 0; v < n_; ++v) {
            if ((used_ >> v) & 1u) continue;
            perm_.push_back(v);
            used_ |= std::uint64_t{1} << v;
            const int j = depth;
            bool viable = true;
            if (j >= 1) {
                cur_[static_cast<std::size_t>(j)] = column(j);
                if (have_best_) {
                    // Fresh prefix comparison against the current best; best_
                    // only ever shrinks, so pruning on "greater" is sound.
                    for (int jj = 1; jj <= j; ++jj) {
                        if (cur_[static_cast<std::size_t>(jj)] != best_[static_cast<std::size_t>(jj)]) {
                            viable = cur_[static_cast<std::size_t>(jj)] < best_[static_cast<std::size_t>(jj)];
                            break;
                        }
                    }
                }
            }
            if (viable) extend();
            used_ &= ~(std::uint64_t{1} << v);
            perm_.pop_back();
        }
    }

    const Graph& g_;
    int n_;
    std::vector<int> perm_;
    std::uint64_t used_ = 0;
    std::vector<std::uint32_t> cur_;
    std::vector<std::uint32_t> best_;
    bool have_best_ = false;
};

} // namespace detail

/// graph6 string of the canonical relabeling; equal keys <=> isomorphic.
inline std::string canonical_key(const Graph& g) {
    if (g.order() > kMaxCanonicalOrder)
        throw std::invalid_argument("canonical_key: order above supported bound (10)");
    detail::CanonicalSearch search(g);
    return write_graph6(search.result());
}

} // namespace qlap

#endif // QLAP_GRAPH_ANALYSIS_HPP
