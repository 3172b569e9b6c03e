#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "digs/degree_sequence.hpp"
#include "digs/digraph.hpp"
#include "digs/int128.hpp"
#include "digs/rng.hpp"

namespace digs {

// Exact step probability as an integer ratio.
struct Rational {
    i128 num = 0;
    i128 den = 1;
    double value() const { return to_double(num) / to_double(den); }
};

struct SamplerOptions {
    // Clamp non-positive acceptance weights to zero instead of rejecting the
    // input (CLI --force).  Sampling then runs through the explicit
    // enumeration path and the distribution is biased in an uncontrolled
    // way; outcomes carry bias_warning.
    bool clamp_nonpositive_weights = false;
};

// Membership list with O(1) removal and uniform draws; tracks the vertices
// that still have unmatched out- resp. in-stubs.
class VertexList {
public:
    explicit VertexList(int64_t n) : pos_(size_t(n), -1) {}

    void insert(int64_t v) {
        pos_[size_t(v)] = int64_t(items_.size());
        items_.push_back(v);
    }

    void remove(int64_t v) {
        int64_t p = pos_[size_t(v)];
        int64_t last = items_.back();
        items_[size_t(p)] = last;
        pos_[size_t(last)] = p;
        items_.pop_back();
        pos_[size_t(v)] = -1;
    }

    bool contains(int64_t v) const { return pos_[size_t(v)] >= 0; }
    int64_t size() const { return int64_t(items_.size()); }
    const std::vector<int64_t>& items() const { return items_; }
    int64_t random(Rng& rng) const { return items_[rng.index(items_.size())]; }

private:
    std::vector<int64_t> items_;
    std::vector<int64_t> pos_;
};

// Mutable state of one sequential-matching run: residual stubs, the partial
// graph, and an exactly maintained scaled denominator
//
//   D_r = sum over admissible (i,j) of rout_i * rin_j * (4m - 2 dout_i din_j)
//
// where admissible means i != j, (i,j) not placed yet, and both residuals
// positive.  Internally D_r is kept as
//
//   D_r = 4m (m-r)^2 - 2 W+ W- - diag - T
//
// with W+ = sum_u rout_u dout_u, W- = sum_v rin_v din_v,
// diag = sum_u rout_u rin_u (4m - 2 dout_u din_u) and T the same weight
// summed over placed edges; accept() touches only the O(d_max) terms the new
// edge changes.  All aggregates are 128-bit integers, so the accounting is
// exact and reference and fast samplers see identical distributions.
class SamplerState {
public:
    // Keeps a reference to d, which must outlive the state.
    explicit SamplerState(const DegreeSequence& d, const SamplerOptions& options = {});
    explicit SamplerState(DegreeSequence&&, const SamplerOptions& = {}) = delete;

    int64_t n() const { return n_; }
    int64_t m() const { return m_; }
    int64_t step() const { return step_; }
    int64_t remaining() const { return m_ - step_; }
    bool complete() const { return step_ == m_; }

    const DegreeSequence& degrees() const { return *degrees_; }
    int64_t residual_out(int64_t v) const { return rout_[size_t(v)]; }
    int64_t residual_in(int64_t v) const { return rin_[size_t(v)]; }

    bool has_edge(int64_t u, int64_t v) const;
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int64_t>& out_adjacency(int64_t v) const { return out_adj_[size_t(v)]; }
    const std::vector<int64_t>& in_adjacency(int64_t v) const { return in_adj_[size_t(v)]; }

    const VertexList& vertices_with_out_stubs() const { return out_vertices_; }
    const VertexList& vertices_with_in_stubs() const { return in_vertices_; }

    // Acceptance weight of pair (i, j); zero when inadmissible.  With
    // clamping enabled, negative weights also report zero.
    i128 scaled_weight(int64_t i, int64_t j) const;

    // Exact denominator for the current step.  With clamping enabled this
    // falls back to explicit enumeration (the incremental identity assumes
    // unclamped weights).
    i128 scaled_denominator() const;

    // Sum of scaled_weight over all admissible pairs, by enumeration over
    // the active vertex lists.
    i128 enumerate_denominator() const;

    double log_prob() const { return log_prob_; }
    bool clamped() const { return clamp_; }

    // Place edge (i, j), accumulate its log-probability against the given
    // step denominator, and update all aggregates.  O(d_out(i) + d_in(j)).
    void accept(int64_t i, int64_t j, i128 step_denominator);
    void accept(int64_t i, int64_t j) { accept(i, j, scaled_denominator()); }

    Digraph build_graph() const;

    // Aggregates, exposed for diagnostics and tests.
    i128 w_plus() const { return w_plus_; }
    i128 w_minus() const { return w_minus_; }

private:
    i128 edge_term(int64_t u, int64_t v) const;
    i128 diag_term(int64_t u) const;

    const DegreeSequence* degrees_;
    int64_t n_ = 0;
    int64_t m_ = 0;
    int64_t step_ = 0;
    bool clamp_ = false;
    std::vector<int64_t> rout_, rin_;
    std::vector<std::vector<int64_t>> out_adj_, in_adj_;  // sorted
    std::vector<Edge> edges_;
    VertexList out_vertices_, in_vertices_;
    i128 four_m_ = 0;
    i128 w_plus_ = 0, w_minus_ = 0;
    i128 diag_sum_ = 0, edge_sum_ = 0;
    i128 denom_ = 0;
    double log_prob_ = 0.0;
};

// Probability that the next accepted pair is (i, j), as an exact ratio.
// Throws DegenerateDenominatorError when no admissible pair remains.
Rational step_probability(const SamplerState& state, int64_t i, int64_t j);

struct FailureInfo {
    int64_t step = 0;      // step s at which the run got stuck
    int64_t stub_gap = 0;  // m - s
};

struct SampleOutcome {
    std::optional<Digraph> graph;
    double log_prob = 0.0;            // log of the realized trajectory probability
    double log_count_estimate = 0.0;  // log N = -(log m! + log_prob); success only
    std::optional<FailureInfo> failure;
    int64_t retries_used = 1;
    bool bias_warning = false;
    bool success() const { return graph.has_value(); }
};

// Throws NotDigraphicalError / DegreeTooLargeError (the latter suppressed by
// options.clamp_nonpositive_weights).
void validate_for_sampling(const DegreeSequence& d, const SamplerOptions& options = {});

// One sequential-matching attempt with per-step enumeration of all
// admissible pairs; O(active_out * active_in) per step.  The distribution is
// the ground truth the fast sampler must match.
SampleOutcome sample_reference(const DegreeSequence& d, Rng& rng,
                               const SamplerOptions& options = {});

// One attempt via the three-phase accelerated procedure (stub pools, then
// vertex lists, then the materialized candidate list); same distribution as
// sample_reference, O(m d_max) expected time.
SampleOutcome sample_fast(const DegreeSequence& d, Rng& rng, const SamplerOptions& options = {});

// sample_fast until success; throws RetriesExhaustedError after max_retries
// failed attempts.  retries_used counts attempts, so 1 means first try.
SampleOutcome run_with_retries(const DegreeSequence& d, Rng& rng, int64_t max_retries = 100,
                               const SamplerOptions& options = {});

}  // namespace digs
