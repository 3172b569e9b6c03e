#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "digs/counting.hpp"
#include "digs/degree_sequence.hpp"
#include "digs/errors.hpp"
#include "digs/graphicality.hpp"
#include "digs/parallel.hpp"
#include "digs/psi.hpp"
#include "digs/sampler.hpp"
#include "digs/stats.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

// Exit codes, fixed for scriptability.
enum ExitCode {
    kOk = 0,
    kUsage = 1,  // bad flags, unreadable input, malformed degree file
    kNotDigraphical = 2,
    kRetriesExhausted = 3,  // also: every estimation run failed
    kDegreeTooLarge = 4,
    kBudgetExceeded = 5,
    kVerifyFailed = 6,
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw digs::Error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw digs::Error("cannot open output file: " + path);
    f << text;
}

// %.9g with negative zero normalized, so formatted output is seed-stable.
std::string fmt_double(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

double round9(double v) {
    if (v == 0.0) return 0.0;
    return std::strtod(fmt_double(v).c_str(), nullptr);
}

uint64_t default_seed() {
    std::random_device rd;
    return (uint64_t(rd()) << 32) ^ rd();
}

struct CommonArgs {
    std::string in = "-";
    std::string out = "-";
    uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 1;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_jobs = true) {
    cmd->add_option("--in", a.in, "Degree file (\"out in\" per line; \"-\" = stdin)");
    cmd->add_option("--out", a.out, "Output path (\"-\" = stdout)");
    cmd->add_option("--seed", a.seed, "RNG seed (default: entropy; echoed in output)")
        ->each([&a](const std::string&) { a.seed_set = true; });
    if (with_jobs) cmd->add_option("--jobs", a.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

uint64_t resolve_seed(CommonArgs& a) {
    if (!a.seed_set) a.seed = default_seed();
    return a.seed;
}

digs::DegreeSequence load_degrees(const CommonArgs& a) {
    return digs::DegreeSequence::parse(read_input(a.in));
}

json degree_summary(const digs::DegreeSequence& d) {
    return json{{"n", d.n()},
                {"m", d.m()},
                {"d_max", d.d_max()},
                {"stripped_isolated", d.stripped_count()},
                {"heavy_degree_warning", d.heavy_degree_warning()}};
}

int cmd_check(const CommonArgs& a) {
    digs::DegreeSequence d = load_degrees(a);
    bool ok = digs::is_digraphical(d);
    json out = degree_summary(d);
    out["digraphical"] = ok;
    out["max_cross_product"] = d.max_cross_product();
    out["sampler_ready"] =
        ok && (d.m() == 0 || d.max_cross_product() < 2 * d.m());
    write_output(a.out, out.dump(2) + "\n");
    return ok ? kOk : kNotDigraphical;
}

struct SampleArgs {
    CommonArgs common;
    int64_t samples = 1;
    int64_t max_retries = 100;
    std::string format = "edgelist";
    bool canonical = false;
    bool force = false;
};

int cmd_sample(SampleArgs& a) {
    digs::DegreeSequence d = load_degrees(a.common);
    uint64_t seed = resolve_seed(a.common);
    digs::SamplerOptions options;
    options.clamp_nonpositive_weights = a.force;
    digs::validate_for_sampling(d, options);

    // Runs are indexed, so the output order is by run id whatever the
    // thread count.
    std::vector<digs::SampleOutcome> outcomes(size_t(a.samples));
    digs::parallel_runs(a.common.jobs, a.samples, [&](int64_t k) {
        digs::Rng rng = digs::Rng::for_run(seed, uint64_t(k));
        outcomes[size_t(k)] = digs::run_with_retries(d, rng, a.max_retries, options);
    });

    const std::vector<int64_t>& ids = d.original_ids();
    if (a.format == "json") {
        json runs = json::array();
        for (int64_t k = 0; k < a.samples; ++k) {
            const digs::SampleOutcome& o = outcomes[size_t(k)];
            json edges = json::array();
            std::vector<digs::Edge> es =
                a.canonical ? o.graph->canonical_edges() : o.graph->edges();
            for (const digs::Edge& e : es)
                edges.push_back({ids[size_t(e.from)], ids[size_t(e.to)]});
            runs.push_back({{"run", k},
                            {"retries", o.retries_used},
                            {"log_prob", round9(o.log_prob)},
                            {"log_count_estimate", round9(o.log_count_estimate)},
                            {"bias_warning", o.bias_warning},
                            {"edges", edges}});
        }
        json out = {{"seed", seed}, {"samples", a.samples}, {"degrees", degree_summary(d)},
                    {"runs", runs}};
        write_output(a.common.out, out.dump(2) + "\n");
        return kOk;
    }

    std::string text = "# seed=" + std::to_string(seed) + "\n";
    for (int64_t k = 0; k < a.samples; ++k) {
        const digs::SampleOutcome& o = outcomes[size_t(k)];
        if (k > 0) text += "\n";
        text += "# run=" + std::to_string(k) + " retries=" + std::to_string(o.retries_used) +
                " log_prob=" + fmt_double(o.log_prob) +
                " log_N=" + fmt_double(o.log_count_estimate) +
                " N=" + fmt_double(std::exp(o.log_count_estimate));
        if (o.bias_warning) text += " bias_warning=1";
        text += "\n";
        text += o.graph->serialize(a.canonical, &ids);
    }
    write_output(a.common.out, text);
    return kOk;
}

struct CountArgs {
    CommonArgs common;
    int64_t samples = 10000;
    int64_t budget = 20'000'000;
    int64_t max_vertices = 8;
};

int cmd_count(CountArgs& a) {
    digs::DegreeSequence d = load_degrees(a.common);
    uint64_t seed = resolve_seed(a.common);
    digs::validate_for_sampling(d);
    digs::CountEstimate est = digs::estimate_count(d, seed, a.samples, a.common.jobs);
    digs::AsymptoticCount asym = digs::asymptotic_count(d);

    json out = {{"seed", seed},
                {"degrees", degree_summary(d)},
                {"estimate", json::parse(est.to_json())},
                {"asymptotic",
                 {{"log_count", round9(asym.log_count)},
                  {"count", round9(std::exp(asym.log_count))},
                  {"below_validity", asym.below_validity}}}};
    digs::EnumerationOptions eopt;
    eopt.node_budget = a.budget;
    eopt.max_vertices = a.max_vertices;
    try {
        out["exact"] = digs::enumerate_exact(d, eopt).count;
    } catch (const digs::BudgetExceededError&) {
        out["exact"] = nullptr;  // not enumerable within budget
    }
    write_output(a.common.out, out.dump(2) + "\n");
    return kOk;
}

struct VerifyArgs {
    CommonArgs common;
    int64_t samples = 100000;
    int64_t trials = 0;  // failure-rate trials; 0 = same as samples
    int64_t budget = 20'000'000;
    int64_t max_vertices = 8;
    double tv_threshold = 0.05;
};

int cmd_verify(VerifyArgs& a) {
    digs::DegreeSequence d = load_degrees(a.common);
    uint64_t seed = resolve_seed(a.common);
    digs::validate_for_sampling(d);
    digs::EnumerationOptions eopt;
    eopt.node_budget = a.budget;
    eopt.max_vertices = a.max_vertices;
    int64_t trials = a.trials > 0 ? a.trials : a.samples;

    digs::UniformityReport uni =
        digs::measure_uniformity(d, a.samples, seed, eopt, a.common.jobs);
    digs::FailureReport fail = digs::failure_rate(d, trials, seed + 1, a.common.jobs);

    bool pass = uni.tv_distance < a.tv_threshold && uni.missing.empty() &&
                fail.gap_bound_ok;
    json out = {{"seed", seed},
                {"degrees", degree_summary(d)},
                {"uniformity", json::parse(uni.to_json())},
                {"failure", json::parse(fail.to_json())},
                {"thresholds", {{"tv", a.tv_threshold}}},
                {"pass", pass}};
    write_output(a.common.out, out.dump(2) + "\n");
    return pass ? kOk : kVerifyFailed;
}

struct BenchArgs {
    CommonArgs common;
    std::string family = "regular";
    int64_t degree = 3;
    std::vector<int64_t> sizes;
    int64_t reps = 7;
    int64_t reference_max_n = 0;
};

int cmd_bench(BenchArgs& a) {
    uint64_t seed = resolve_seed(a.common);
    digs::BenchConfig cfg;
    cfg.family = a.family == "heavytail" ? digs::SequenceFamily::kHeavyTail
                                         : digs::SequenceFamily::kRegular;
    cfg.regular_degree = a.degree;
    cfg.sizes = a.sizes;
    cfg.reps = a.reps;
    cfg.seed = seed;
    cfg.reference_max_n = a.reference_max_n;
    digs::BenchTable table = digs::bench_runtime(cfg);
    json out = {{"seed", seed},
                {"family", a.family},
                {"degree", a.degree},
                {"reps", a.reps},
                {"table", json::parse(table.to_json())}};
    write_output(a.common.out, out.dump(2) + "\n");
    return kOk;
}

// One random trajectory, reporting the exact tallies at every step.  Pair
// choice replays the reference rule (weight-proportional) via the public
// state API, so the emitted denominators are exactly what sampling divides
// by.
int cmd_psi_diag(CommonArgs& a) {
    digs::DegreeSequence d = load_degrees(a);
    uint64_t seed = resolve_seed(a);
    digs::validate_for_sampling(d);
    digs::Rng rng(seed);
    digs::SamplerState state(d);

    json steps = json::array();
    std::optional<int64_t> failure_step;
    for (;;) {
        steps.push_back(json::parse(digs::compute_psi_exact(state).to_json()));
        if (state.complete()) break;
        digs::i128 den = state.scaled_denominator();
        if (den == 0) {
            failure_step = state.step();
            break;
        }
        digs::u128 target = rng.below_u128(digs::u128(den));
        digs::u128 acc = 0;
        bool placed = false;
        for (int64_t i : state.vertices_with_out_stubs().items()) {
            for (int64_t j : state.vertices_with_in_stubs().items()) {
                digs::i128 w = state.scaled_weight(i, j);
                if (w <= 0) continue;
                acc += digs::u128(w);
                if (target < acc) {
                    state.accept(i, j, den);
                    placed = true;
                    break;
                }
            }
            if (placed) break;
        }
    }
    json out = {{"seed", seed},
                {"degrees", degree_summary(d)},
                {"steps", steps},
                {"outcome", failure_step ? "failure" : "success"}};
    if (failure_step) out["failure_step"] = *failure_step;
    write_output(a.out, out.dump(2) + "\n");
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Near-uniform simple digraph sampler for prescribed degree sequences"};
    app.require_subcommand(1);

    SampleArgs sample;
    CLI::App* c_sample = app.add_subcommand("sample", "Sample graphs, one edge list per run");
    add_common(c_sample, sample.common);
    c_sample->add_option("--samples", sample.samples, "Graphs to draw")->check(CLI::PositiveNumber);
    c_sample->add_option("--max-retries", sample.max_retries, "Attempts per graph")
        ->check(CLI::PositiveNumber);
    c_sample->add_option("--format", sample.format, "edgelist or json")
        ->check(CLI::IsMember({"edgelist", "json"}));
    c_sample->add_flag("--canonical", sample.canonical, "Sort edges instead of creation order");
    c_sample->add_flag("--force", sample.force,
                       "Clamp non-positive acceptance weights (biased; adds a warning)");

    CommonArgs check;
    CLI::App* c_check = app.add_subcommand("check", "Parse and test digraphicality");
    add_common(c_check, check, /*with_jobs=*/false);

    CountArgs count;
    CLI::App* c_count = app.add_subcommand("count", "Estimate the number of realizations");
    add_common(c_count, count.common);
    c_count->add_option("--samples", count.samples, "Estimator runs")->check(CLI::PositiveNumber);
    c_count->add_option("--budget", count.budget, "Exact-enumeration node budget");
    c_count->add_option("--max-vertices", count.max_vertices, "Exact-enumeration vertex cap");

    VerifyArgs verify;
    CLI::App* c_verify = app.add_subcommand(
        "verify", "Check uniformity and failure behavior against exact enumeration");
    add_common(c_verify, verify.common);
    c_verify->add_option("--samples", verify.samples, "Sampler draws")->check(CLI::PositiveNumber);
    c_verify->add_option("--trials", verify.trials, "Failure-rate trials (default: --samples)");
    c_verify->add_option("--budget", verify.budget, "Enumeration node budget");
    c_verify->add_option("--max-vertices", verify.max_vertices, "Enumeration vertex cap");
    c_verify->add_option("--tv-threshold", verify.tv_threshold, "Max TV distance to pass");

    BenchArgs bench;
    CLI::App* c_bench = app.add_subcommand("bench", "Time the sampler across instance sizes");
    add_common(c_bench, bench.common, /*with_jobs=*/false);
    c_bench->add_option("--family", bench.family, "regular or heavytail")
        ->check(CLI::IsMember({"regular", "heavytail"}));
    c_bench->add_option("--degree", bench.degree, "Degree for the regular family");
    c_bench->add_option("--sizes", bench.sizes, "Vertex counts to time")
        ->required()
        ->delimiter(',');
    c_bench->add_option("--reps", bench.reps, "Timing repetitions per size");
    c_bench->add_option("--reference-max-n", bench.reference_max_n,
                        "Also time the quadratic reference sampler up to this n");

    CommonArgs psi;
    CLI::App* c_psi = app.add_subcommand("psi-diag", "Per-step correction tallies on one run");
    add_common(c_psi, psi, /*with_jobs=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the parse error
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (c_sample->parsed()) return cmd_sample(sample);
        if (c_check->parsed()) return cmd_check(check);
        if (c_count->parsed()) return cmd_count(count);
        if (c_verify->parsed()) return cmd_verify(verify);
        if (c_bench->parsed()) return cmd_bench(bench);
        if (c_psi->parsed()) return cmd_psi_diag(psi);
    } catch (const digs::NotDigraphicalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNotDigraphical;
    } catch (const digs::DegreeTooLargeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDegreeTooLarge;
    } catch (const digs::RetriesExhaustedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRetriesExhausted;
    } catch (const digs::AllRunsFailedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRetriesExhausted;
    } catch (const digs::BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudgetExceeded;
    } catch (const digs::RejectionBudgetExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBudgetExceeded;
    } catch (const digs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
