#include <cmath>
#include <map>
#include <set>
#include <string>

#include "digs/counting.hpp"
#include "digs/errors.hpp"
#include "digs/rng.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace digs;
using namespace digs::test;

TEST_SUITE("counting") {

TEST_CASE("exact enumeration: frozen counts") {
    CHECK(enumerate_exact(single_edge()).count == 1);
    CHECK(enumerate_exact(ones(2)).count == 1);
    CHECK(enumerate_exact(ones(3)).count == 2);
    CHECK(enumerate_exact(ones(4)).count == 9);
    CHECK(enumerate_exact(mixed5()).count == 48);
    CHECK(enumerate_exact(DegreeSequence::from_pairs({{0, 0}})).count == 1);  // empty graph
}

TEST_CASE("exact enumeration agrees with subset brute force") {
    Rng rng(60601);
    for (int trial = 0; trial < 150; ++trial) {
        DegreeSequence d = random_digraphical(rng, 5, 3, /*require_sampler_valid=*/false);
        EnumerationOptions opt;
        opt.collect = true;
        EnumerationResult res = enumerate_exact(d, opt);
        std::vector<Digraph> expected;
        CHECK(res.count == brute_force_count(d, &expected));
        CHECK(res.count == int64_t(res.graphs.size()));
        std::set<std::string> keys;
        for (const Digraph& g : res.graphs) {
            CHECK(g.realizes(d));
            keys.insert(g.canonical_key());
        }
        CHECK(int64_t(keys.size()) == res.count);  // no duplicates
    }
}

TEST_CASE("enumeration budgets") {
    EnumerationOptions tiny;
    tiny.node_budget = 5;
    CHECK_THROWS_AS(enumerate_exact(ones(6), tiny), BudgetExceededError);
    CHECK_THROWS_AS(enumerate_exact(ones(9)), BudgetExceededError);  // default vertex cap 8
    EnumerationOptions wide;
    wide.max_vertices = 9;
    CHECK(enumerate_exact(ones(9), wide).count == 133496);  // derangements of 9
}

TEST_CASE("count estimate is exact when one graph exists") {
    CountEstimate est = estimate_count(single_edge(), 42, 1000);
    CHECK(est.samples_used == 1000);
    CHECK(est.failures == 0);
    CHECK(est.mean_n() == doctest::Approx(1.0));
    CHECK(est.standard_error == doctest::Approx(0.0));
}

TEST_CASE("count estimate converges: three unit vertices") {
    // Every successful run realizes N = 3 exactly and succeeds w.p. 2/3, so
    // the all-runs mean targets 2 (the true count) with SE 0.01 at 2e4 runs.
    CountEstimate est = estimate_count(ones(3), 7, 20000);
    CHECK(est.samples_used == 20000);
    CHECK(std::fabs(est.mean_n() - 2.0) < 0.05);
    CHECK(est.standard_error == doctest::Approx(0.01).epsilon(0.15));
    CHECK(std::fabs(double(est.failures) / 20000 - 1.0 / 3.0) < 0.02);
}

TEST_CASE("count estimate converges: mixed instance") {
    CountEstimate est = estimate_count(mixed5(), 11, 20000);
    CHECK(std::fabs(est.mean_n() - 48.0) < 5.0 * est.standard_error + 1e-9);
    CHECK(est.standard_error < 2.5);
}

TEST_CASE("count estimate is independent of thread count") {
    CountEstimate serial = estimate_count(ones(4), 9, 4000, 1);
    CountEstimate fanned = estimate_count(ones(4), 9, 4000, 4);
    CHECK(serial.log_mean_n == fanned.log_mean_n);
    CHECK(serial.standard_error == fanned.standard_error);
    CHECK(serial.failures == fanned.failures);
}

TEST_CASE("all runs failing raises") {
    bool found = false;
    for (uint64_t seed = 0; seed < 200 && !found; ++seed) {
        try {
            estimate_count(ones(3), seed, 1);
        } catch (const AllRunsFailedError&) {
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("asymptotic count: frozen values") {
    AsymptoticCount a3 = asymptotic_count(ones(3));
    CHECK(a3.log_count == doctest::Approx(std::log(6.0) - 0.75));
    CHECK_FALSE(a3.below_validity);

    AsymptoticCount a4 = asymptotic_count(ones(4));
    CHECK(a4.log_count == doctest::Approx(std::log(24.0) - 0.75));
    CHECK(std::exp(a4.log_count) == doctest::Approx(11.3372).epsilon(1e-4));

    AsymptoticCount a1 = asymptotic_count(single_edge());
    CHECK(a1.log_count == doctest::Approx(0.25));
    CHECK(a1.below_validity);  // d_max^4 = 1 >= m = 1

    CHECK(asymptotic_count(DegreeSequence::from_pairs({{0, 0}})).log_count ==
          doctest::Approx(0.0));
}

TEST_CASE("configuration rejection sampler is uniform") {
    DegreeSequence d = ones(4);
    EnumerationOptions opt;
    opt.collect = true;
    EnumerationResult support = enumerate_exact(d, opt);
    REQUIRE(support.count == 9);
    std::map<std::string, int64_t> tally;
    for (const Digraph& g : support.graphs) tally[g.canonical_key()] = 0;

    const int64_t samples = 9000;
    Rng rng(31337);
    for (int64_t k = 0; k < samples; ++k) {
        Digraph g = sample_configuration_rejection(d, rng);
        auto it = tally.find(g.canonical_key());
        REQUIRE(it != tally.end());
        ++it->second;
    }
    // 5 sigma around 1/9 each.
    double sigma = std::sqrt((1.0 / 9) * (8.0 / 9) / double(samples));
    for (const auto& [key, c] : tally)
        CHECK(std::fabs(double(c) / double(samples) - 1.0 / 9) < 5 * sigma);
}

TEST_CASE("configuration rejection sampler gives up on forced duplicates") {
    // Both edges must go 1 -> 0, so every pairing has a duplicate.
    DegreeSequence d = DegreeSequence::from_pairs({{2, 0}, {0, 2}});
    Rng rng(5);
    CHECK_THROWS_AS(sample_configuration_rejection(d, rng, 50),
                    RejectionBudgetExceededError);
}

}  // TEST_SUITE
