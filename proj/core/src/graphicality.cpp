#include "digs/graphicality.hpp"

#include <algorithm>
#include <queue>

namespace digs {

namespace {

// Fenwick tree over out-degree values, tracking count and sum of the values
// present, so sum_i min(v_i, t) over the tracked multiset is two prefix
// queries.
struct MinSumFenwick {
    explicit MinSumFenwick(int64_t max_value)
        : cnt(size_t(max_value) + 2, 0), sum(size_t(max_value) + 2, 0) {}

    void add(int64_t value, int64_t sign) {
        for (size_t i = size_t(value) + 1; i < cnt.size(); i += i & (~i + 1)) {
            cnt[i] += sign;
            sum[i] += sign * value;
        }
        total_cnt += sign;
        total_sum += sign * value;
    }

    // (count, sum) of tracked values <= t.
    std::pair<int64_t, int64_t> below(int64_t t) const {
        if (t < 0) return {0, 0};
        int64_t c = 0, s = 0;
        for (size_t i = std::min(size_t(t) + 1, cnt.size() - 1); i > 0; i -= i & (~i + 1)) {
            c += cnt[i];
            s += sum[i];
        }
        return {c, s};
    }

    int64_t min_sum(int64_t t) const {
        auto [c, s] = below(t);
        return s + t * (total_cnt - c);
    }

    std::vector<int64_t> cnt, sum;
    int64_t total_cnt = 0, total_sum = 0;
};

}  // namespace

bool is_digraphical(const DegreeSequence& d) {
    const int64_t n = d.n();
    if (n == 0) return true;
    auto v = d.entries();
    for (const auto& e : v)
        if (e.in > n - 1 || e.out > n - 1) return false;
    std::sort(v.begin(), v.end(), [](const VertexDegrees& a, const VertexDegrees& b) {
        if (a.in != b.in) return a.in > b.in;
        return a.out > b.out;
    });
    MinSumFenwick prefix(n), suffix(n);
    for (const auto& e : v) suffix.add(e.out, +1);
    int64_t lhs = 0;
    for (int64_t k = 1; k <= n; ++k) {
        const auto& e = v[size_t(k - 1)];
        suffix.add(e.out, -1);
        prefix.add(e.out, +1);
        lhs += e.in;
        if (lhs > prefix.min_sum(k - 1) + suffix.min_sum(k)) return false;
    }
    return true;
}

namespace {

// Plain Dinic max-flow, small and self-contained; this only runs on oracle-
// sized instances.
struct Dinic {
    struct Arc {
        int to;
        int64_t cap;
        int rev;
    };

    explicit Dinic(int n) : adj(size_t(n)), level(size_t(n)), iter(size_t(n)) {}

    void add_arc(int from, int to, int64_t cap) {
        adj[size_t(from)].push_back({to, cap, int(adj[size_t(to)].size())});
        adj[size_t(to)].push_back({from, 0, int(adj[size_t(from)].size()) - 1});
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[size_t(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (const auto& a : adj[size_t(u)]) {
                if (a.cap > 0 && level[size_t(a.to)] < 0) {
                    level[size_t(a.to)] = level[size_t(u)] + 1;
                    q.push(a.to);
                }
            }
        }
        return level[size_t(t)] >= 0;
    }

    int64_t dfs(int u, int t, int64_t f) {
        if (u == t) return f;
        for (int& i = iter[size_t(u)]; i < int(adj[size_t(u)].size()); ++i) {
            Arc& a = adj[size_t(u)][size_t(i)];
            if (a.cap > 0 && level[size_t(a.to)] == level[size_t(u)] + 1) {
                int64_t got = dfs(a.to, t, std::min(f, a.cap));
                if (got > 0) {
                    a.cap -= got;
                    adj[size_t(a.to)][size_t(a.rev)].cap += got;
                    return got;
                }
            }
        }
        return 0;
    }

    int64_t max_flow(int s, int t) {
        int64_t flow = 0;
        while (bfs(s, t)) {
            std::fill(iter.begin(), iter.end(), 0);
            while (int64_t f = dfs(s, t, INT64_MAX)) flow += f;
        }
        return flow;
    }

    std::vector<std::vector<Arc>> adj;
    std::vector<int> level;
    std::vector<int> iter;
};

}  // namespace

std::optional<Digraph> realize_via_flow(const DegreeSequence& d) {
    const int n = int(d.n());
    if (n == 0) return Digraph(0);
    const int source = 0, sink = 2 * n + 1;
    Dinic net(2 * n + 2);
    for (int i = 0; i < n; ++i) {
        if (d.out_degree(i) > 0) net.add_arc(source, 1 + i, d.out_degree(i));
        if (d.in_degree(i) > 0) net.add_arc(1 + n + i, sink, d.in_degree(i));
    }
    // Remember where each pair arc lives so the realization can be read back.
    std::vector<std::vector<int>> pair_arc(size_t(n), std::vector<int>(size_t(n), -1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            pair_arc[size_t(i)][size_t(j)] = int(net.adj[size_t(1 + i)].size());
            net.add_arc(1 + i, 1 + n + j, 1);
        }
    }
    if (net.max_flow(source, sink) != d.m()) return std::nullopt;
    Digraph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            int k = pair_arc[size_t(i)][size_t(j)];
            if (k >= 0 && net.adj[size_t(1 + i)][size_t(k)].cap == 0) g.add_edge(i, j);
        }
    }
    return g;
}

}  // namespace digs
