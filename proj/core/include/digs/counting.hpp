#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "digs/degree_sequence.hpp"
#include "digs/digraph.hpp"
#include "digs/rng.hpp"
#include "digs/sampler.hpp"

namespace digs {

// Estimate of the number of simple directed realizations.  Each run yields
// N = 1 / (m! * P(trajectory)) on success and 0 on failure; that makes the
// per-run value an unbiased estimator of the true count, so the mean is
// taken over all runs with failures contributing zero (the failure count is
// reported alongside).
struct CountEstimate {
    double log_mean_n = 0.0;     // log of the mean over all runs
    double standard_error = 0.0; // jackknife SE of the mean, linear scale
    int64_t samples_used = 0;    // total runs including failures
    int64_t failures = 0;

    double mean_n() const { return std::exp(log_mean_n); }

    // {"log_mean_N":..,"mean_N":..,"se":..,"samples":..,"failures":..}
    std::string to_json() const;
};

// num_samples independent single-attempt runs, streams derived from (seed,
// run index), optionally fanned out over `jobs` threads (result independent
// of jobs).  Throws AllRunsFailedError when no run succeeds.
CountEstimate estimate_count(const DegreeSequence& d, uint64_t seed, int64_t num_samples,
                             int jobs = 1, const SamplerOptions& options = {});

// Closed-form large-m approximation of log N.  below_validity flags inputs
// with d_max^4 >= m, where the formula's error term is not controlled.
struct AsymptoticCount {
    double log_count = 0.0;
    bool below_validity = false;
};
AsymptoticCount asymptotic_count(const DegreeSequence& d);

struct EnumerationOptions {
    int64_t max_vertices = 8;
    int64_t node_budget = 20'000'000;  // recursion nodes before giving up
    bool collect = false;              // also return the graphs themselves
};

struct EnumerationResult {
    int64_t count = 0;
    std::vector<Digraph> graphs;  // filled when options.collect
};

// Exact count of simple realizations by backtracking over vertices in
// descending out-degree order, choosing target sets with forward checking on
// residual in-degrees.  Throws BudgetExceededError past the caps.
EnumerationResult enumerate_exact(const DegreeSequence& d, const EnumerationOptions& options = {});

// Uniform sample via the configuration model: pair the out- and in-stub
// lists by a uniform permutation and reject until the matching is simple.
// Exactly uniform over realizations; throws RejectionBudgetExceededError
// after max_attempts rejections.
Digraph sample_configuration_rejection(const DegreeSequence& d, Rng& rng,
                                       int64_t max_attempts = 1'000'000);

}  // namespace digs
