#include "digs/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "digs/errors.hpp"
#include "digs/numeric.hpp"
#include "digs/parallel.hpp"

namespace digs {

std::string CountEstimate::to_json() const {
    // mean_N overflows double once log_mean_N exceeds ~709; emit null then
    // (log_mean_N stays authoritative).
    char mean[40], se[40];
    if (std::isfinite(mean_n()))
        std::snprintf(mean, sizeof mean, "%.17g", mean_n());
    else
        std::snprintf(mean, sizeof mean, "null");
    if (std::isfinite(standard_error))
        std::snprintf(se, sizeof se, "%.17g", standard_error);
    else
        std::snprintf(se, sizeof se, "null");
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "{\"log_mean_N\":%.17g,\"mean_N\":%s,\"se\":%s,"
                  "\"samples\":%lld,\"failures\":%lld}",
                  log_mean_n, mean, se, (long long)samples_used, (long long)failures);
    return buf;
}

CountEstimate estimate_count(const DegreeSequence& d, uint64_t seed, int64_t num_samples,
                             int jobs, const SamplerOptions& options) {
    validate_for_sampling(d, options);
    std::vector<double> log_n(size_t(num_samples), 0.0);
    std::vector<char> ok(size_t(num_samples), 0);
    parallel_runs(jobs, num_samples, [&](int64_t k) {
        Rng rng = Rng::for_run(seed, uint64_t(k));
        SampleOutcome o = sample_fast(d, rng, options);
        if (o.success()) {
            log_n[size_t(k)] = o.log_count_estimate;
            ok[size_t(k)] = 1;
        }
    });

    std::vector<double> logs;
    logs.reserve(size_t(num_samples));
    for (int64_t k = 0; k < num_samples; ++k)
        if (ok[size_t(k)]) logs.push_back(log_n[size_t(k)]);
    CountEstimate est;
    est.samples_used = num_samples;
    est.failures = num_samples - int64_t(logs.size());
    if (logs.empty())
        throw AllRunsFailedError("all " + std::to_string(num_samples) + " runs failed");

    // Work relative to the max to stay finite: mean = e^M s1 / S and
    // Var = e^{2M} (s2 - s1^2/S) / (S-1), with failures contributing zero.
    double mx = *std::max_element(logs.begin(), logs.end());
    double s1 = 0.0, s2 = 0.0;
    for (double l : logs) {
        double e = std::exp(l - mx);
        s1 += e;
        s2 += e * e;
    }
    double s = double(num_samples);
    est.log_mean_n = mx + std::log(s1 / s);
    if (num_samples > 1) {
        double var_rel = (s2 - s1 * s1 / s) / (s - 1.0);
        est.standard_error = std::exp(mx) * std::sqrt(std::max(0.0, var_rel) / s);
    }
    return est;
}

AsymptoticCount asymptotic_count(const DegreeSequence& d) {
    const double m = double(d.m());
    AsymptoticCount r;
    r.below_validity = d.heavy_degree_warning();
    if (d.m() == 0) return r;  // one empty graph: log 1
    double log_fact_degrees = 0.0;
    double a = 0.0, b_in = 0.0, b_out = 0.0;
    for (const auto& e : d.entries()) {
        log_fact_degrees += log_factorial(e.in) + log_factorial(e.out);
        a += double(e.in) * double(e.out);
        b_in += double(e.in) * double(e.in);
        b_out += double(e.out) * double(e.out);
    }
    r.log_count = log_factorial(d.m()) - log_fact_degrees - a / m +
                  (b_in + b_out) / (2.0 * m) - b_in * b_out / (4.0 * m * m) - 0.5;
    return r;
}

namespace {

struct Enumerator {
    const DegreeSequence& d;
    const EnumerationOptions& opts;
    std::vector<int64_t> order;  // vertices, descending out-degree
    std::vector<int64_t> rin;    // residual in-degrees
    std::vector<Edge> placed;
    int64_t senders_left = 0;  // unprocessed vertices with dout > 0
    int64_t nodes = 0;
    EnumerationResult result;

    explicit Enumerator(const DegreeSequence& dd, const EnumerationOptions& oo) : d(dd), opts(oo) {
        order.resize(size_t(d.n()));
        for (int64_t v = 0; v < d.n(); ++v) order[size_t(v)] = v;
        std::sort(order.begin(), order.end(), [&](int64_t x, int64_t y) {
            if (d.out_degree(x) != d.out_degree(y)) return d.out_degree(x) > d.out_degree(y);
            if (d.in_degree(x) != d.in_degree(y)) return d.in_degree(x) > d.in_degree(y);
            return x < y;
        });
        rin.resize(size_t(d.n()));
        for (int64_t v = 0; v < d.n(); ++v) {
            rin[size_t(v)] = d.in_degree(v);
            if (d.out_degree(v) > 0) ++senders_left;
        }
    }

    void bump_nodes() {
        if (++nodes > opts.node_budget)
            throw BudgetExceededError("enumeration exceeded node budget of " +
                                      std::to_string(opts.node_budget));
    }

    // Every vertex u still needing rin[u] in-edges must be reachable from
    // enough distinct future senders (each sends at most one edge to u).
    bool feasible(size_t vertex_idx) const {
        for (int64_t u = 0; u < d.n(); ++u) {
            if (rin[size_t(u)] == 0) continue;
            int64_t capacity = senders_left;
            // u itself cannot send to u; discount it if it is still pending.
            for (size_t k = vertex_idx; k < order.size(); ++k)
                if (order[k] == u && d.out_degree(u) > 0) {
                    --capacity;
                    break;
                }
            if (rin[size_t(u)] > capacity) return false;
        }
        return true;
    }

    void place_vertex(size_t vertex_idx) {
        bump_nodes();
        if (vertex_idx == order.size()) {
            ++result.count;
            if (opts.collect) {
                Digraph g(d.n());
                for (const auto& e : placed) g.add_edge(e.from, e.to);
                result.graphs.push_back(std::move(g));
            }
            return;
        }
        int64_t v = order[vertex_idx];
        int64_t need = d.out_degree(v);
        if (need == 0) {
            place_vertex(vertex_idx + 1);
            return;
        }
        std::vector<int64_t> targets;
        for (int64_t u = 0; u < d.n(); ++u)
            if (u != v && rin[size_t(u)] > 0) targets.push_back(u);
        if (int64_t(targets.size()) < need) return;
        --senders_left;
        choose(vertex_idx, v, targets, 0, need);
        ++senders_left;
    }

    void choose(size_t vertex_idx, int64_t v, const std::vector<int64_t>& targets, size_t from,
                int64_t need) {
        bump_nodes();
        if (need == 0) {
            if (feasible(vertex_idx + 1)) place_vertex(vertex_idx + 1);
            return;
        }
        if (int64_t(targets.size() - from) < need) return;
        for (size_t k = from; k + size_t(need) <= targets.size(); ++k) {
            int64_t u = targets[k];
            if (rin[size_t(u)] == 0) continue;
            --rin[size_t(u)];
            placed.push_back({v, u});
            choose(vertex_idx, v, targets, k + 1, need - 1);
            placed.pop_back();
            ++rin[size_t(u)];
        }
    }
};

}  // namespace

EnumerationResult enumerate_exact(const DegreeSequence& d, const EnumerationOptions& options) {
    if (d.n() > options.max_vertices)
        throw BudgetExceededError("enumeration capped at " + std::to_string(options.max_vertices) +
                                  " vertices, got " + std::to_string(d.n()));
    Enumerator e(d, options);
    e.place_vertex(0);
    return std::move(e.result);
}

Digraph sample_configuration_rejection(const DegreeSequence& d, Rng& rng, int64_t max_attempts) {
    std::vector<int64_t> out_stubs, in_stubs;
    out_stubs.reserve(size_t(d.m()));
    in_stubs.reserve(size_t(d.m()));
    for (int64_t v = 0; v < d.n(); ++v) {
        for (int64_t k = 0; k < d.out_degree(v); ++k) out_stubs.push_back(v);
        for (int64_t k = 0; k < d.in_degree(v); ++k) in_stubs.push_back(v);
    }
    std::vector<Edge> edges(size_t(d.m()));
    for (int64_t attempt = 0; attempt < max_attempts; ++attempt) {
        rng.shuffle(in_stubs);
        bool simple = true;
        for (size_t k = 0; k < out_stubs.size() && simple; ++k) {
            edges[k] = {out_stubs[k], in_stubs[k]};
            simple = out_stubs[k] != in_stubs[k];
        }
        if (simple) {
            std::vector<Edge> sorted = edges;
            std::sort(sorted.begin(), sorted.end());
            for (size_t k = 1; k < sorted.size() && simple; ++k)
                simple = !(sorted[k] == sorted[k - 1]);
        }
        if (!simple) continue;
        Digraph g(d.n());
        for (const auto& e : edges) g.add_edge(e.from, e.to);
        return g;
    }
    throw RejectionBudgetExceededError("no simple matching in " + std::to_string(max_attempts) +
                                       " attempts");
}

}  // namespace digs
