#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "digs/degree_sequence.hpp"

namespace digs {

struct Edge {
    int64_t from = 0;
    int64_t to = 0;
    auto operator<=>(const Edge&) const = default;
};

// Simple directed graph.  Edges are kept in creation order; per-vertex
// adjacency is kept sorted so membership tests cost O(log d).
class Digraph {
public:
    explicit Digraph(int64_t n) : out_(size_t(n)), in_(size_t(n)) {}

    int64_t n() const { return int64_t(out_.size()); }
    int64_t edge_count() const { return int64_t(edges_.size()); }

    bool has_edge(int64_t u, int64_t v) const;

    // Precondition: u != v and (u, v) absent (checked, throws Error).
    void add_edge(int64_t u, int64_t v);

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int64_t>& out_neighbors(int64_t v) const { return out_[size_t(v)]; }
    const std::vector<int64_t>& in_neighbors(int64_t v) const { return in_[size_t(v)]; }

    std::vector<Edge> canonical_edges() const;  // sorted lexicographically

    // Compact canonical form ("u>v,u>v,..." over sorted edges); equal keys
    // iff equal edge sets, used for tallying sampled graphs.
    std::string canonical_key() const;

    // Does this graph have exactly the prescribed degrees?
    bool realizes(const DegreeSequence& d) const;

    // "u v" lines, creation order (or sorted when canonical).  If id_map is
    // non-null, vertex v prints as (*id_map)[v].
    std::string serialize(bool canonical = false,
                          const std::vector<int64_t>* id_map = nullptr) const;

private:
    std::vector<std::vector<int64_t>> out_;
    std::vector<std::vector<int64_t>> in_;
    std::vector<Edge> edges_;
};

}  // namespace digs
