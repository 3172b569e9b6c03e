#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "digs/counting.hpp"
#include "digs/degree_sequence.hpp"

namespace digs {

// Empirical uniformity of the sampler over the full (enumerated) support.
struct UniformityReport {
    int64_t support_size = 0;
    int64_t samples = 0;
    double tv_distance = 0.0;      // total variation to uniform
    double chi_square_stat = 0.0;  // secondary: chi-square against uniform
    double p_value = 1.0;
    double min_freq = 0.0;
    double max_freq = 0.0;
    double baseline_tv = 0.0;  // rejection sampler at the same sample count
    std::vector<int64_t> missing;  // support indices never sampled

    std::string to_json() const;
};

// Enumerates the support, draws num_samples graphs with the fast sampler
// (failures retried), tallies them against the enumeration, and calibrates
// the noise floor with an equally sized exactly-uniform rejection batch.
// Sampled graphs outside the enumerated support throw (that would be a
// correctness bug, not noise).
UniformityReport measure_uniformity(const DegreeSequence& d, int64_t num_samples, uint64_t seed,
                                    const EnumerationOptions& enum_options = {}, int jobs = 1);

struct FailureReport {
    int64_t trials = 0;
    int64_t failures = 0;
    double failure_rate = 0.0;
    double mean_failure_step = 0.0;  // 0 when no failures
    int64_t max_gap = 0;             // max over failures of m - s
    bool gap_bound_ok = true;        // every failure had m - s <= d_max^2

    std::string to_json() const;
};

// Single-attempt failure statistics (no retries).
FailureReport failure_rate(const DegreeSequence& d, int64_t trials, uint64_t seed, int jobs = 1);

enum class SequenceFamily { kRegular, kHeavyTail };

// k-in/k-out regular sequence; digraphical for n > k (circulant witness).
DegreeSequence make_regular_sequence(int64_t n, int64_t k);

// Heavy-tailed degrees: in- and out-degrees drawn iid from P(d) ~ d^-2.5 on
// [1, cap] with cap ~ (expected m)^0.2, sums repaired by decrementing random
// entries of the larger side, rebuilt from fresh derived seeds until
// digraphical.
DegreeSequence make_heavy_tail_sequence(int64_t n, uint64_t seed);

struct BenchPoint {
    int64_t n = 0;
    int64_t m = 0;
    int64_t d_max = 0;
    double seconds_fast = 0.0;       // median over reps, one sample each
    double seconds_reference = 0.0;  // 0 when not measured
};

struct BenchTable {
    std::vector<BenchPoint> points;
    double slope = 0.0;      // least-squares fit of log t vs log(m * d_max)
    double intercept = 0.0;

    std::string to_json() const;
};

struct BenchConfig {
    SequenceFamily family = SequenceFamily::kRegular;
    int64_t regular_degree = 3;
    std::vector<int64_t> sizes;  // n values
    int64_t reps = 7;
    uint64_t seed = 1;
    int64_t reference_max_n = 0;  // also time sample_reference for n <= this
};

BenchTable bench_runtime(const BenchConfig& config);

}  // namespace digs
