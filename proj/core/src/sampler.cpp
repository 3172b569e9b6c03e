#include "digs/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "digs/errors.hpp"
#include "digs/graphicality.hpp"
#include "digs/numeric.hpp"

namespace digs {

SamplerState::SamplerState(const DegreeSequence& d, const SamplerOptions& options)
    : degrees_(&d),
      n_(d.n()),
      m_(d.m()),
      clamp_(options.clamp_nonpositive_weights),
      rout_(size_t(d.n())),
      rin_(size_t(d.n())),
      out_adj_(size_t(d.n())),
      in_adj_(size_t(d.n())),
      out_vertices_(d.n()),
      in_vertices_(d.n()),
      four_m_(i128(4) * d.m()) {
    for (int64_t v = 0; v < n_; ++v) {
        int64_t dout = d.out_degree(v), din = d.in_degree(v);
        rout_[size_t(v)] = dout;
        rin_[size_t(v)] = din;
        if (dout > 0) out_vertices_.insert(v);
        if (din > 0) in_vertices_.insert(v);
        w_plus_ += i128(dout) * dout;
        w_minus_ += i128(din) * din;
        diag_sum_ += diag_term(v);
    }
    denom_ = four_m_ * i128(m_) * m_ - 2 * w_plus_ * w_minus_ - diag_sum_ - edge_sum_;
}

bool SamplerState::has_edge(int64_t u, int64_t v) const {
    const auto& a = out_adj_[size_t(u)];
    return std::binary_search(a.begin(), a.end(), v);
}

i128 SamplerState::edge_term(int64_t u, int64_t v) const {
    return i128(rout_[size_t(u)]) * rin_[size_t(v)] *
           (four_m_ - 2 * i128(degrees_->out_degree(u)) * degrees_->in_degree(v));
}

i128 SamplerState::diag_term(int64_t u) const {
    return i128(rout_[size_t(u)]) * rin_[size_t(u)] *
           (four_m_ - 2 * i128(degrees_->out_degree(u)) * degrees_->in_degree(u));
}

i128 SamplerState::scaled_weight(int64_t i, int64_t j) const {
    if (i == j) return 0;
    i128 ro = rout_[size_t(i)], ri = rin_[size_t(j)];
    if (ro == 0 || ri == 0) return 0;
    if (has_edge(i, j)) return 0;
    i128 w = ro * ri * (four_m_ - 2 * i128(degrees_->out_degree(i)) * degrees_->in_degree(j));
    if (clamp_ && w < 0) return 0;
    return w;
}

i128 SamplerState::scaled_denominator() const {
    // The incremental identity assumes no clamping; under --force we pay for
    // explicit enumeration instead.
    if (clamp_) return enumerate_denominator();
    return denom_;
}

i128 SamplerState::enumerate_denominator() const {
    i128 total = 0;
    for (int64_t i : out_vertices_.items())
        for (int64_t j : in_vertices_.items()) total += scaled_weight(i, j);
    return total;
}

void SamplerState::accept(int64_t i, int64_t j, i128 step_denominator) {
    i128 w = scaled_weight(i, j);
    if (w <= 0 || step_denominator <= 0 || w > step_denominator)
        throw std::logic_error("accept: pair is not admissible for this state");
    log_prob_ += std::log(to_double(w)) - std::log(to_double(step_denominator));

    auto& oa = out_adj_[size_t(i)];
    auto& ia = in_adj_[size_t(j)];
    for (int64_t v : oa) edge_sum_ -= edge_term(i, v);
    for (int64_t u : ia) edge_sum_ -= edge_term(u, j);
    diag_sum_ -= diag_term(i) + diag_term(j);
    w_plus_ -= degrees_->out_degree(i);
    w_minus_ -= degrees_->in_degree(j);

    --rout_[size_t(i)];
    --rin_[size_t(j)];
    oa.insert(std::lower_bound(oa.begin(), oa.end(), j), j);
    ia.insert(std::lower_bound(ia.begin(), ia.end(), i), i);
    edges_.push_back({i, j});
    ++step_;

    for (int64_t v : oa) edge_sum_ += edge_term(i, v);
    for (int64_t u : ia)
        if (u != i) edge_sum_ += edge_term(u, j);  // (i,j) already counted above
    diag_sum_ += diag_term(i) + diag_term(j);

    if (rout_[size_t(i)] == 0) out_vertices_.remove(i);
    if (rin_[size_t(j)] == 0) in_vertices_.remove(j);

    i128 mr = m_ - step_;
    denom_ = four_m_ * mr * mr - 2 * w_plus_ * w_minus_ - diag_sum_ - edge_sum_;

    if (!clamp_) {
        // Cheap always-on invariants: the lambda1 aggregates are bounded by
        // d_max (m - r) for every reachable state, and the denominator is a
        // sum of positive weights.
        i128 cap = i128(degrees_->d_max()) * mr;
        if (w_plus_ > cap || w_minus_ > cap || denom_ < 0)
            throw std::logic_error("accept: state aggregates violate their bounds");
    }
}

Digraph SamplerState::build_graph() const {
    Digraph g(n_);
    for (const auto& e : edges_) g.add_edge(e.from, e.to);
    return g;
}

Rational step_probability(const SamplerState& state, int64_t i, int64_t j) {
    i128 den = state.scaled_denominator();
    if (den <= 0)
        throw DegenerateDenominatorError("no admissible pair at step " +
                                         std::to_string(state.step()));
    return {state.scaled_weight(i, j), den};
}

void validate_for_sampling(const DegreeSequence& d, const SamplerOptions& options) {
    if (!is_digraphical(d))
        throw NotDigraphicalError("degree sequence admits no simple directed realization");
    if (!options.clamp_nonpositive_weights && d.m() > 0 &&
        d.max_cross_product() >= 2 * d.m())
        throw DegreeTooLargeError(
            "max dout_i * din_j = " + std::to_string(d.max_cross_product()) +
            " >= 2m = " + std::to_string(2 * d.m()) +
            "; acceptance weights would be non-positive (pass force to clamp)");
}

namespace {

SampleOutcome make_failure(const SamplerState& st, bool bias_warning) {
    SampleOutcome o;
    o.log_prob = st.log_prob();
    o.failure = FailureInfo{st.step(), st.remaining()};
    o.bias_warning = bias_warning;
    return o;
}

SampleOutcome make_success(const SamplerState& st, bool bias_warning) {
    SampleOutcome o;
    o.graph = st.build_graph();
    o.log_prob = st.log_prob();
    o.log_count_estimate = -(log_factorial(st.m()) + st.log_prob());
    o.bias_warning = bias_warning;
    return o;
}

SampleOutcome reference_loop(const DegreeSequence& d, Rng& rng, const SamplerOptions& options) {
    SamplerState st(d, options);
    const bool clamping = options.clamp_nonpositive_weights &&
                          d.m() > 0 && d.max_cross_product() >= 2 * d.m();
    while (!st.complete()) {
        i128 total = st.enumerate_denominator();
        if (!st.clamped() && total != st.scaled_denominator())
            throw std::logic_error("enumerated denominator disagrees with incremental value");
        if (total <= 0) return make_failure(st, clamping);
        u128 u = rng.below_u128(u128(total));
        i128 acc = 0;
        int64_t pi = -1, pj = -1;
        for (int64_t i : st.vertices_with_out_stubs().items()) {
            for (int64_t j : st.vertices_with_in_stubs().items()) {
                i128 w = st.scaled_weight(i, j);
                if (w == 0) continue;
                acc += w;
                if (u128(acc) > u) {
                    pi = i;
                    pj = j;
                    break;
                }
            }
            if (pi >= 0) break;
        }
        st.accept(pi, pj, total);
    }
    return make_success(st, clamping);
}

}  // namespace

SampleOutcome sample_reference(const DegreeSequence& d, Rng& rng, const SamplerOptions& options) {
    validate_for_sampling(d, options);
    return reference_loop(d, rng, options);
}

SampleOutcome sample_fast(const DegreeSequence& d, Rng& rng, const SamplerOptions& options) {
    validate_for_sampling(d, options);
    // Clamped weights break the incremental denominator identity, so --force
    // inputs take the (slower, but still exact w.r.t. the clamped weights)
    // enumeration path.
    if (options.clamp_nonpositive_weights && d.m() > 0 && d.max_cross_product() >= 2 * d.m())
        return reference_loop(d, rng, options);

    SamplerState st(d, {});
    const int64_t m = d.m();
    const int64_t dmax = d.d_max();
    const u128 two_m = u128(2) * u128(uint64_t(m));

    // Phase 1: uniform stub pairs.  Pools hold one entry per unmatched stub;
    // accepted stubs are swap-removed, so pool composition always matches
    // the residual counts while this phase runs.
    std::vector<int64_t> out_pool, in_pool;
    out_pool.reserve(size_t(m));
    in_pool.reserve(size_t(m));
    for (int64_t v = 0; v < d.n(); ++v) {
        for (int64_t k = 0; k < d.out_degree(v); ++k) out_pool.push_back(v);
        for (int64_t k = 0; k < d.in_degree(v); ++k) in_pool.push_back(v);
    }
    while (!st.complete() && st.remaining() >= 2 * dmax * dmax) {
        if (st.scaled_denominator() == 0) return make_failure(st, false);
        size_t a = rng.index(out_pool.size());
        size_t b = rng.index(in_pool.size());
        int64_t i = out_pool[a], j = in_pool[b];
        if (i == j || st.has_edge(i, j)) continue;
        u128 dd = u128(uint64_t(d.out_degree(i))) * u128(uint64_t(d.in_degree(j)));
        if (!rng.bernoulli_ratio(two_m - dd, two_m)) continue;
        st.accept(i, j);
        out_pool[a] = out_pool.back();
        out_pool.pop_back();
        in_pool[b] = in_pool.back();
        in_pool.pop_back();
    }

    // Phase 2: uniform vertices from the unmatched lists, thinned by
    // residual/d_max so the joint draw stays proportional to rout_i rin_j.
    while (!st.complete() && st.vertices_with_out_stubs().size() >= 2 * dmax &&
           st.vertices_with_in_stubs().size() >= 2 * dmax) {
        if (st.scaled_denominator() == 0) return make_failure(st, false);
        int64_t i = st.vertices_with_out_stubs().random(rng);
        if (!rng.bernoulli_ratio(u128(uint64_t(st.residual_out(i))), u128(uint64_t(dmax))))
            continue;
        int64_t j = st.vertices_with_in_stubs().random(rng);
        if (!rng.bernoulli_ratio(u128(uint64_t(st.residual_in(j))), u128(uint64_t(dmax))))
            continue;
        if (i == j || st.has_edge(i, j)) continue;
        u128 dd = u128(uint64_t(d.out_degree(i))) * u128(uint64_t(d.in_degree(j)));
        if (!rng.bernoulli_ratio(two_m - dd, two_m)) continue;
        st.accept(i, j);
    }

    // Phase 3: materialize the admissible pairs once.  Entries only ever
    // leave the list (acceptance removes the placed pair, exhausted
    // residuals are pruned lazily), so a uniform index draw thinned by
    // rout rin (2m - dout din) over the fixed bound d_max^2 * 2m keeps the
    // exact weights (the bound must not depend on the pair).
    if (!st.complete()) {
        std::vector<std::pair<int64_t, int64_t>> cand;
        for (int64_t i : st.vertices_with_out_stubs().items())
            for (int64_t j : st.vertices_with_in_stubs().items())
                if (i != j && !st.has_edge(i, j)) cand.emplace_back(i, j);
        while (!st.complete()) {
            if (st.scaled_denominator() == 0) return make_failure(st, false);
            // Admissibility only shrinks, so every currently admissible pair
            // is still listed; a positive denominator guarantees one exists.
            if (cand.empty())
                throw std::logic_error("candidate list empty with positive denominator");
            size_t k = rng.index(cand.size());
            auto [i, j] = cand[k];
            if (st.residual_out(i) == 0 || st.residual_in(j) == 0) {
                cand[k] = cand.back();
                cand.pop_back();
                continue;
            }
            u128 dd = u128(uint64_t(d.out_degree(i))) * u128(uint64_t(d.in_degree(j)));
            u128 num = u128(uint64_t(st.residual_out(i))) * u128(uint64_t(st.residual_in(j))) *
                       (two_m - dd);
            u128 den = u128(uint64_t(dmax)) * u128(uint64_t(dmax)) * two_m;
            if (!rng.bernoulli_ratio(num, den)) continue;
            cand[k] = cand.back();
            cand.pop_back();
            st.accept(i, j);
        }
    }
    return make_success(st, false);
}

SampleOutcome run_with_retries(const DegreeSequence& d, Rng& rng, int64_t max_retries,
                               const SamplerOptions& options) {
    int64_t last_failure_step = -1;
    for (int64_t attempt = 1; attempt <= max_retries; ++attempt) {
        SampleOutcome o = sample_fast(d, rng, options);
        if (o.success()) {
            o.retries_used = attempt;
            return o;
        }
        last_failure_step = o.failure->step;
    }
    throw RetriesExhaustedError("no simple realization produced in " +
                                    std::to_string(max_retries) + " attempts",
                                max_retries, last_failure_step);
}

}  // namespace digs
