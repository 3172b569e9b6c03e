#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "digs/degree_sequence.hpp"
#include "digs/digraph.hpp"
#include "digs/graphicality.hpp"
#include "digs/int128.hpp"
#include "digs/rng.hpp"
#include "digs/sampler.hpp"

namespace digs::test {

inline DegreeSequence ones(int64_t n) {
    return DegreeSequence::from_pairs(std::vector<VertexDegrees>(size_t(n), {1, 1}));
}

// v0 receives the unique edge from v1.
inline DegreeSequence single_edge() {
    return DegreeSequence::from_pairs({{1, 0}, {0, 1}});
}

// Mixed small instance used across the suite: (in, out) pairs.
inline DegreeSequence mixed5() {
    return DegreeSequence::from_pairs({{2, 1}, {1, 2}, {1, 1}, {1, 1}, {1, 1}});
}

// Exact distribution of the sequential matcher, by exhaustive expansion of
// every trajectory with its exact per-step probability (accumulated in
// doubles).  Ground truth for the samplers on tiny instances.
struct ExactDistribution {
    std::map<std::string, double> graph_prob;  // unconditional probabilities
    double failure_prob = 0.0;
    int64_t success_trajectories = 0;

    double success_prob() const {
        double s = 0.0;
        for (const auto& [key, p] : graph_prob) s += p;
        return s;
    }
};

inline void expand_trajectories(const SamplerState& state, double p, ExactDistribution& out) {
    if (state.complete()) {
        out.graph_prob[state.build_graph().canonical_key()] += p;
        ++out.success_trajectories;
        return;
    }
    i128 den = state.scaled_denominator();
    if (den == 0) {
        out.failure_prob += p;
        return;
    }
    for (int64_t i : state.vertices_with_out_stubs().items()) {
        for (int64_t j : state.vertices_with_in_stubs().items()) {
            i128 w = state.scaled_weight(i, j);
            if (w == 0) continue;
            SamplerState next = state;
            next.accept(i, j, den);
            expand_trajectories(next, p * (to_double(w) / to_double(den)), out);
        }
    }
}

inline ExactDistribution exact_sampler_distribution(const DegreeSequence& d) {
    ExactDistribution out;
    expand_trajectories(SamplerState(d), 1.0, out);
    return out;
}

// Random digraphical sequence: n in [2, max_n], degrees uniform in
// [0, max_deg], sums repaired by decrementing the larger side, resampled
// until digraphical (and optionally valid for sampling).
inline DegreeSequence random_digraphical(Rng& rng, int64_t max_n, int64_t max_deg,
                                         bool require_sampler_valid = true) {
    for (;;) {
        int64_t n = 2 + int64_t(rng.below(uint64_t(max_n - 1)));
        std::vector<VertexDegrees> entries(size_t(n), VertexDegrees{});
        int64_t sum_out = 0, sum_in = 0;
        for (auto& e : entries) {
            e.out = int64_t(rng.below(uint64_t(max_deg + 1)));
            e.in = int64_t(rng.below(uint64_t(max_deg + 1)));
            sum_out += e.out;
            sum_in += e.in;
        }
        while (sum_out != sum_in) {
            size_t v = rng.index(entries.size());
            if (sum_out > sum_in && entries[v].out > 0) {
                --entries[v].out;
                --sum_out;
            } else if (sum_in > sum_out && entries[v].in > 0) {
                --entries[v].in;
                --sum_in;
            }
        }
        DegreeSequence d = DegreeSequence::from_pairs(entries);
        if (d.m() == 0 || d.n() < 2) continue;
        if (!is_digraphical(d)) continue;
        if (require_sampler_valid && d.max_cross_product() >= 2 * d.m()) continue;
        return d;
    }
}

// Independent exact count: enumerate all m-subsets of the n(n-1) ordered
// pairs and check degrees.  Only for tiny instances (C(n(n-1), m) small).
inline int64_t brute_force_count(const DegreeSequence& d,
                                 std::vector<Digraph>* graphs = nullptr) {
    std::vector<std::pair<int64_t, int64_t>> pairs;
    for (int64_t u = 0; u < d.n(); ++u)
        for (int64_t v = 0; v < d.n(); ++v)
            if (u != v) pairs.emplace_back(u, v);
    std::vector<size_t> pick;
    int64_t count = 0;
    std::vector<int64_t> rout(size_t(d.n())), rin(size_t(d.n()));
    auto rec = [&](auto&& self, size_t from, int64_t left) -> void {
        if (left == 0) {
            ++count;
            if (graphs) {
                Digraph g(d.n());
                for (size_t k : pick) g.add_edge(pairs[k].first, pairs[k].second);
                graphs->push_back(std::move(g));
            }
            return;
        }
        if (pairs.size() - from < size_t(left)) return;
        for (size_t k = from; k + size_t(left) <= pairs.size(); ++k) {
            auto [u, v] = pairs[k];
            if (rout[size_t(u)] == 0 || rin[size_t(v)] == 0) continue;
            --rout[size_t(u)];
            --rin[size_t(v)];
            pick.push_back(k);
            self(self, k + 1, left - 1);
            pick.pop_back();
            ++rout[size_t(u)];
            ++rin[size_t(v)];
        }
    };
    for (int64_t v = 0; v < d.n(); ++v) {
        rout[size_t(v)] = d.out_degree(v);
        rin[size_t(v)] = d.in_degree(v);
    }
    rec(rec, 0, d.m());
    return count;
}

inline double tv_between_counts(const std::vector<int64_t>& a, const std::vector<int64_t>& b,
                                int64_t na, int64_t nb) {
    double tv = 0.0;
    for (size_t k = 0; k < a.size(); ++k)
        tv += std::fabs(double(a[k]) / double(na) - double(b[k]) / double(nb));
    return 0.5 * tv;
}

}  // namespace digs::test
