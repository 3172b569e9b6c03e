#include "digs/digraph.hpp"

#include <algorithm>
#include <cstdio>

#include "digs/errors.hpp"

namespace digs {

bool Digraph::has_edge(int64_t u, int64_t v) const {
    const auto& a = out_[size_t(u)];
    return std::binary_search(a.begin(), a.end(), v);
}

void Digraph::add_edge(int64_t u, int64_t v) {
    if (u == v) throw Error("add_edge: self-loop " + std::to_string(u));
    auto& a = out_[size_t(u)];
    auto it = std::lower_bound(a.begin(), a.end(), v);
    if (it != a.end() && *it == v)
        throw Error("add_edge: duplicate edge " + std::to_string(u) + "->" + std::to_string(v));
    a.insert(it, v);
    auto& b = in_[size_t(v)];
    b.insert(std::lower_bound(b.begin(), b.end(), u), u);
    edges_.push_back({u, v});
}

std::vector<Edge> Digraph::canonical_edges() const {
    std::vector<Edge> es = edges_;
    std::sort(es.begin(), es.end());
    return es;
}

std::string Digraph::canonical_key() const {
    std::string key;
    key.reserve(edges_.size() * 6);
    char buf[48];
    for (const auto& e : canonical_edges()) {
        std::snprintf(buf, sizeof buf, "%lld>%lld,", (long long)e.from, (long long)e.to);
        key += buf;
    }
    return key;
}

bool Digraph::realizes(const DegreeSequence& d) const {
    if (d.n() != n()) return false;
    for (int64_t v = 0; v < n(); ++v) {
        if (int64_t(out_[size_t(v)].size()) != d.out_degree(v)) return false;
        if (int64_t(in_[size_t(v)].size()) != d.in_degree(v)) return false;
    }
    return true;
}

std::string Digraph::serialize(bool canonical, const std::vector<int64_t>* id_map) const {
    std::vector<Edge> es = canonical ? canonical_edges() : edges_;
    std::string out;
    char buf[64];
    for (const auto& e : es) {
        int64_t u = id_map ? (*id_map)[size_t(e.from)] : e.from;
        int64_t v = id_map ? (*id_map)[size_t(e.to)] : e.to;
        std::snprintf(buf, sizeof buf, "%lld %lld\n", (long long)u, (long long)v);
        out += buf;
    }
    return out;
}

}  // namespace digs
