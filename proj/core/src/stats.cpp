#include "digs/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "digs/errors.hpp"
#include "digs/graphicality.hpp"
#include "digs/numeric.hpp"
#include "digs/parallel.hpp"
#include "digs/rng.hpp"
#include "digs/sampler.hpp"

namespace digs {

std::string UniformityReport::to_json() const {
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "{\"support_size\":%lld,\"samples\":%lld,\"tv_distance\":%.17g,"
                  "\"chi_square_stat\":%.17g,\"p_value\":%.17g,\"min_freq\":%.17g,"
                  "\"max_freq\":%.17g,\"baseline_tv\":%.17g,\"missing\":[",
                  (long long)support_size, (long long)samples, tv_distance, chi_square_stat,
                  p_value, min_freq, max_freq, baseline_tv);
    std::string s = buf;
    for (size_t k = 0; k < missing.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(missing[k]);
    }
    s += "]}";
    return s;
}

std::string FailureReport::to_json() const {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "{\"trials\":%lld,\"failures\":%lld,\"failure_rate\":%.17g,"
                  "\"mean_failure_step\":%.17g,\"max_gap\":%lld,\"gap_bound_ok\":%s}",
                  (long long)trials, (long long)failures, failure_rate, mean_failure_step,
                  (long long)max_gap, gap_bound_ok ? "true" : "false");
    return buf;
}

namespace {

double tv_to_uniform(const std::vector<int64_t>& counts, int64_t samples) {
    double tv = 0.0;
    double p = 1.0 / double(counts.size());
    for (int64_t c : counts) tv += std::fabs(double(c) / double(samples) - p);
    return 0.5 * tv;
}

}  // namespace

UniformityReport measure_uniformity(const DegreeSequence& d, int64_t num_samples, uint64_t seed,
                                    const EnumerationOptions& enum_options, int jobs) {
    EnumerationOptions opts = enum_options;
    opts.collect = true;
    EnumerationResult support = enumerate_exact(d, opts);
    if (support.count == 0)
        throw NotDigraphicalError("degree sequence admits no simple directed realization");
    std::unordered_map<std::string, int64_t> index;
    index.reserve(support.graphs.size() * 2);
    for (size_t k = 0; k < support.graphs.size(); ++k)
        index.emplace(support.graphs[k].canonical_key(), int64_t(k));

    // Sampler tallies; slots are written per run index, merged after.
    std::vector<int64_t> sampled_at(size_t(num_samples), 0);
    parallel_runs(jobs, num_samples, [&](int64_t k) {
        Rng rng = Rng::for_run(seed, uint64_t(k));
        SampleOutcome o = run_with_retries(d, rng);
        auto it = index.find(o.graph->canonical_key());
        if (it == index.end())
            throw std::logic_error("sampled graph outside the enumerated support");
        sampled_at[size_t(k)] = it->second;
    });
    std::vector<int64_t> counts(size_t(support.count), 0);
    for (int64_t k = 0; k < num_samples; ++k) ++counts[size_t(sampled_at[size_t(k)])];

    // Exactly uniform rejection baseline at the same sample count, on
    // derived streams disjoint from the sampler's run indices.
    std::vector<int64_t> base_at(size_t(num_samples), 0);
    parallel_runs(jobs, num_samples, [&](int64_t k) {
        Rng rng = Rng::for_run(seed, uint64_t(num_samples + k));
        Digraph g = sample_configuration_rejection(d, rng);
        auto it = index.find(g.canonical_key());
        if (it == index.end())
            throw std::logic_error("rejection-sampled graph outside the enumerated support");
        base_at[size_t(k)] = it->second;
    });
    std::vector<int64_t> base_counts(size_t(support.count), 0);
    for (int64_t k = 0; k < num_samples; ++k) ++base_counts[size_t(base_at[size_t(k)])];

    UniformityReport rep;
    rep.support_size = support.count;
    rep.samples = num_samples;
    rep.tv_distance = tv_to_uniform(counts, num_samples);
    rep.baseline_tv = tv_to_uniform(base_counts, num_samples);
    double expected = double(num_samples) / double(support.count);
    double chi = 0.0;
    int64_t cmin = counts[0], cmax = counts[0];
    for (size_t k = 0; k < counts.size(); ++k) {
        double diff = double(counts[k]) - expected;
        chi += diff * diff / expected;
        cmin = std::min(cmin, counts[k]);
        cmax = std::max(cmax, counts[k]);
        if (counts[k] == 0) rep.missing.push_back(int64_t(k));
    }
    rep.chi_square_stat = chi;
    rep.p_value = chi_square_survival(chi, support.count - 1);
    rep.min_freq = double(cmin) / double(num_samples);
    rep.max_freq = double(cmax) / double(num_samples);
    return rep;
}

FailureReport failure_rate(const DegreeSequence& d, int64_t trials, uint64_t seed, int jobs) {
    validate_for_sampling(d);
    const i128 gap_cap = i128(d.d_max()) * d.d_max();
    std::vector<int64_t> fail_step(size_t(trials), -1);
    parallel_runs(jobs, trials, [&](int64_t k) {
        Rng rng = Rng::for_run(seed, uint64_t(k));
        SampleOutcome o = sample_fast(d, rng);
        if (!o.success()) fail_step[size_t(k)] = o.failure->step;
    });
    FailureReport rep;
    rep.trials = trials;
    double step_sum = 0.0;
    for (int64_t k = 0; k < trials; ++k) {
        int64_t s = fail_step[size_t(k)];
        if (s < 0) continue;
        ++rep.failures;
        step_sum += double(s);
        int64_t gap = d.m() - s;
        rep.max_gap = std::max(rep.max_gap, gap);
        if (i128(gap) > gap_cap) rep.gap_bound_ok = false;
    }
    rep.failure_rate = trials > 0 ? double(rep.failures) / double(trials) : 0.0;
    rep.mean_failure_step = rep.failures > 0 ? step_sum / double(rep.failures) : 0.0;
    return rep;
}

DegreeSequence make_regular_sequence(int64_t n, int64_t k) {
    std::vector<VertexDegrees> entries(size_t(n), VertexDegrees{k, k});
    return DegreeSequence::from_pairs(entries);
}

DegreeSequence make_heavy_tail_sequence(int64_t n, uint64_t seed) {
    // P(d) ~ d^-2.5 on [1, cap]: mean is about 1.8 for any sizable cap, so
    // cap is sized from the expected edge count.
    const double expected_m = 1.8 * double(n);
    const int64_t cap = std::max<int64_t>(2, int64_t(std::round(std::pow(expected_m, 0.2))));
    std::vector<double> cumulative(size_t(cap), 0.0);
    double w = 0.0;
    for (int64_t v = 1; v <= cap; ++v) {
        w += std::pow(double(v), -2.5);
        cumulative[size_t(v - 1)] = w;
    }
    for (uint64_t attempt = 0; attempt < 64; ++attempt) {
        Rng rng = Rng::for_run(seed, attempt);
        auto draw = [&]() {
            double u = rng.unit() * w;
            for (int64_t v = 1; v < cap; ++v)
                if (u < cumulative[size_t(v - 1)]) return v;
            return cap;
        };
        std::vector<VertexDegrees> entries(size_t(n), VertexDegrees{});
        int64_t sum_out = 0, sum_in = 0;
        for (auto& e : entries) {
            e.out = draw();
            e.in = draw();
            sum_out += e.out;
            sum_in += e.in;
        }
        // Repair the sums by decrementing random positive entries of the
        // larger side (entries may hit zero; only (0,0) pairs get stripped).
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
        if (d.m() > 0 && is_digraphical(d) && d.max_cross_product() < 2 * d.m()) return d;
    }
    throw Error("could not build a digraphical heavy-tail sequence for n = " + std::to_string(n));
}

namespace {

double time_one(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

std::string BenchTable::to_json() const {
    std::string s = "{\"points\":[";
    char buf[256];
    for (size_t k = 0; k < points.size(); ++k) {
        const auto& p = points[k];
        std::snprintf(buf, sizeof buf,
                      "%s{\"n\":%lld,\"m\":%lld,\"d_max\":%lld,\"seconds_fast\":%.17g,"
                      "\"seconds_reference\":%.17g}",
                      k ? "," : "", (long long)p.n, (long long)p.m, (long long)p.d_max,
                      p.seconds_fast, p.seconds_reference);
        s += buf;
    }
    std::snprintf(buf, sizeof buf, "],\"slope\":%.17g,\"intercept\":%.17g}", slope, intercept);
    s += buf;
    return s;
}

BenchTable bench_runtime(const BenchConfig& config) {
    BenchTable table;
    uint64_t run = 0;
    for (int64_t n : config.sizes) {
        DegreeSequence d = config.family == SequenceFamily::kRegular
                               ? make_regular_sequence(n, config.regular_degree)
                               : make_heavy_tail_sequence(n, config.seed);
        BenchPoint point;
        point.n = n;
        point.m = d.m();
        point.d_max = d.d_max();
        {
            Rng warm = Rng::for_run(config.seed, run++);
            sample_fast(d, warm);
        }
        std::vector<double> times;
        for (int64_t rep = 0; rep < config.reps; ++rep) {
            Rng rng = Rng::for_run(config.seed, run++);
            times.push_back(time_one([&] { sample_fast(d, rng); }));
        }
        point.seconds_fast = median(times);
        if (n <= config.reference_max_n) {
            Rng rng = Rng::for_run(config.seed, run++);
            point.seconds_reference = time_one([&] { sample_reference(d, rng); });
        }
        table.points.push_back(point);
    }
    // Least squares of log t on log(m d_max).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : table.points) {
        double x = std::log(double(p.m) * double(p.d_max));
        double y = std::log(p.seconds_fast);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double k = double(table.points.size());
    double denom = k * sxx - sx * sx;
    if (table.points.size() >= 2 && std::fabs(denom) > 1e-12) {
        table.slope = (k * sxy - sx * sy) / denom;
        table.intercept = (sy - table.slope * sx) / k;
    }
    return table;
}

}  // namespace digs
