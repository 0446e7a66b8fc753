#include "doctest.h"

#include <cmath>

#include "coprime/simulation.hpp"
#include "support.hpp"

using namespace coprime;
using namespace coprime::testing;

namespace {

FleetConfig base_config(unsigned k, std::uint32_t devices, std::uint32_t pool, Policy policy,
                        std::uint64_t seed) {
    FleetConfig cfg;
    cfg.k = k;
    cfg.devices = devices;
    cfg.pool_size_p = pool;
    cfg.pool_size_q = pool;
    cfg.policy = policy;
    cfg.master_seed = seed;
    return cfg;
}

bool within_3_sigma(double measured, double expected_rate, double pairs) {
    const double mean = expected_rate * pairs;
    const double sigma = std::sqrt(pairs * expected_rate * (1.0 - expected_rate));
    return std::abs(measured - mean) <= 3.0 * sigma;
}

}  // namespace

TEST_CASE("a pool of one forces identical moduli") {
    const FleetReport report = run_fleet(base_config(16, 2, 1, Policy::fixed(), 5));
    CHECK(report.pairs_total == 1);
    CHECK(report.pairs_identical == 1);
    CHECK(report.pairs_factored == 0);
    REQUIRE(report.corpora.size() == 1);
    CHECK(report.corpora[0][0].n == report.corpora[0][1].n);
}

TEST_CASE("all-fixed fleets never factor, identical near P") {
    const FleetReport report = run_fleet(base_config(16, 20, 10, Policy::fixed(), 77));
    CHECK(report.pairs_total == 190);
    CHECK(report.pairs_factored == 0);
    CHECK(report.expected_factored == 0.0);
    CHECK(within_3_sigma(static_cast<double>(report.pairs_identical), 0.1, 190.0));
    CHECK(report.expected_identical == doctest::Approx(19.0));
    for (const ModulusRecord& r : report.corpora[0]) CHECK(r.n.bit_length() >= 31);
}

TEST_CASE("all-independent fleets factor near 2P(1-P)") {
    const FleetReport report = run_fleet(base_config(16, 20, 10, Policy::independent(), 78));
    CHECK(report.pairs_total == 190);
    const double rate = 2.0 * 0.1 * 0.9;
    CHECK(report.expected_factored == doctest::Approx(rate * 190.0));
    CHECK(within_3_sigma(static_cast<double>(report.pairs_factored), rate, 190.0));
    CHECK(report.expected_identical == doctest::Approx(190.0 * 0.01));
}

TEST_CASE("offset fleets behave like fixed fleets") {
    const FleetReport report = run_fleet(base_config(16, 10, 5, Policy::offset(BigNat(3)), 79));
    CHECK(report.pairs_factored == 0);
    REQUIRE(report.policy_counts.size() == 1);
    CHECK(report.policy_counts[0].first == "offset:3");
}

TEST_CASE("degenerate mixes reproduce uniform fleets byte for byte") {
    const FleetConfig fixed_cfg = base_config(16, 12, 6, Policy::fixed(), 91);
    const FleetReport uniform_fixed = run_fleet(fixed_cfg);
    const FleetReport mix_a_only = run_mixed_population(fixed_cfg, 12, 0);
    CHECK(to_json_string(uniform_fixed) == to_json_string(mix_a_only));

    const FleetConfig ind_cfg = base_config(16, 12, 6, Policy::independent(), 91);
    const FleetReport uniform_ind = run_fleet(ind_cfg);
    const FleetReport mix_b_only = run_mixed_population(ind_cfg, 0, 12);
    CHECK(to_json_string(uniform_ind) == to_json_string(mix_b_only));
}

TEST_CASE("mixed fleets separate pair classes") {
    const FleetConfig shared = base_config(16, 0, 25, Policy::fixed(), 2025);
    const FleetReport report = run_mixed_population(shared, 10, 10);
    CHECK(report.devices == 20);
    CHECK(report.pairs_total == 190);
    REQUIRE(report.classes.size() == 3);

    std::uint64_t aa_pairs = 0, ab_pairs = 0, bb_pairs = 0;
    for (const PairClassStats& cls : report.classes) {
        if (cls.policy_a == "fixed" && cls.policy_b == "fixed") {
            aa_pairs = cls.pairs;
            CHECK(cls.factored == 0);
        } else if (cls.policy_a == "fixed" && cls.policy_b == "independent") {
            ab_pairs = cls.pairs;
            // the p-channel contributes 1/S_p per pair; the q-channel only
            // what the image/q-pool overlap admits (at most 1/S_q more)
            const double pairs = static_cast<double>(cls.pairs);
            CHECK(cls.expected_factored >= pairs / 25.0);
            CHECK(cls.expected_factored <= 2.0 * pairs / 25.0);
            CHECK(within_3_sigma(static_cast<double>(cls.factored),
                                 cls.expected_factored / pairs, pairs));
        } else {
            bb_pairs = cls.pairs;
            CHECK(cls.expected_factored ==
                  doctest::Approx(2.0 * (1.0 / 25.0) * (24.0 / 25.0) *
                                  static_cast<double>(cls.pairs)));
        }
    }
    CHECK(aa_pairs == 45);
    CHECK(ab_pairs == 100);
    CHECK(bb_pairs == 45);
}

TEST_CASE("reports are reproducible and embed config and seed") {
    const FleetConfig cfg = base_config(16, 8, 4, Policy::fixed(), 1234);
    const std::string a = to_json_string(run_fleet(cfg));
    const std::string b = to_json_string(run_fleet(cfg));
    CHECK(a == b);
    CHECK(a.find("\"master_seed\": \"4d2\"") != std::string::npos);  // 1234
    CHECK(a.find("\"pool_size_p\": 4") != std::string::npos);
}

TEST_CASE("multiple trials accumulate pairs") {
    FleetConfig cfg = base_config(16, 6, 3, Policy::fixed(), 55);
    cfg.trials = 4;
    const FleetReport report = run_fleet(cfg);
    CHECK(report.pairs_total == 4 * 15);
    CHECK(report.corpora.size() == 4);
}

TEST_CASE("config validation") {
    FleetConfig cfg = base_config(16, 0, 3, Policy::fixed(), 1);
    CHECK_THROWS_AS(run_fleet(cfg), ConfigError);
    cfg.devices = 4;
    cfg.trials = 0;
    CHECK_THROWS_AS(run_fleet(cfg), ConfigError);
    cfg.trials = 1;
    cfg.pool_size_p = 0;
    CHECK_THROWS_AS(run_fleet(cfg), ConfigError);

    // a range too small to hold the requested pool: only p=61 works at k=5
    FleetConfig tiny = base_config(5, 2, 3, Policy::fixed(), 1);
    CHECK_THROWS_AS(run_fleet(tiny), ConfigError);
}

TEST_CASE("fleet config json parsing") {
    const auto j = ordered_json::parse(R"({
        "k": 16, "devices": 4, "pool_size_p": 3, "pool_size_q": 5,
        "policy": "fixed", "master_seed": "0x2a", "trials": 2
    })");
    const FleetConfig cfg = fleet_config_from_json(j);
    CHECK(cfg.k == 16);
    CHECK(cfg.devices == 4);
    CHECK(cfg.pool_size_p == 3);
    CHECK(cfg.pool_size_q == 5);
    CHECK(cfg.master_seed == 42);
    CHECK(cfg.trials == 2);
    CHECK(cfg.policy == Policy::fixed());

    const auto mixed = ordered_json::parse(R"({
        "k": 16, "devices": 6, "pool_size_p": 3, "policy": "mixed",
        "devices_fixed": 2, "devices_independent": 4, "master_seed": 7
    })");
    const FleetConfig mcfg = fleet_config_from_json(mixed);
    CHECK(mcfg.mixed);
    CHECK(mcfg.devices_fixed == 2);

    CHECK_THROWS_AS(fleet_config_from_json(ordered_json::parse("[]")), ConfigError);
    CHECK_THROWS_AS(fleet_config_from_json(ordered_json::parse("{\"k\":16}")), ConfigError);
    CHECK_THROWS_AS(fleet_config_from_json(ordered_json::parse(
                        R"({"k":16,"devices":6,"pool_size_p":3,"policy":"mixed",
                            "devices_fixed":2,"devices_independent":2,"master_seed":7})")),
                    ConfigError);
}

TEST_CASE("exact incremental-search distribution over [101, 149]") {
    SplitMix64Source src(314);
    const GapBiasReport report = gap_bias_experiment(BigNat(101), BigNat(149), 20000, src);
    CHECK(report.odd_starts == 25);
    REQUIRE(report.primes.size() == 10);
    const std::vector<std::uint64_t> expected_primes = {101, 103, 107, 109, 113,
                                                        127, 131, 137, 139, 149};
    const std::vector<std::uint64_t> expected_preimages = {1, 1, 2, 1, 2, 7, 2, 3, 1, 5};
    std::uint64_t preimage_sum = 0;
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(report.primes[i].prime == expected_primes[i]);
        CHECK(report.primes[i].preimage_starts == expected_preimages[i]);
        preimage_sum += report.primes[i].preimage_starts;
    }
    CHECK(preimage_sum == report.odd_starts);  // the exact distribution sums to 1

    // Monte-Carlo agreement at 3 sigma per prime
    std::uint64_t alg2_total = 0, alg3_total = 0;
    for (std::size_t i = 0; i < 10; ++i) {
        const double w3 = static_cast<double>(expected_preimages[i]) / 25.0;
        CHECK(within_3_sigma(static_cast<double>(report.primes[i].alg3_hits), w3, 20000.0));
        CHECK(within_3_sigma(static_cast<double>(report.primes[i].alg2_hits), 0.1, 20000.0));
        alg2_total += report.primes[i].alg2_hits;
        alg3_total += report.primes[i].alg3_hits;
    }
    CHECK(alg2_total == 20000);
    CHECK(alg3_total == 20000);
}

TEST_CASE("incremental search favours primes after long gaps") {
    SplitMix64Source src(315);
    const GapBiasReport report = gap_bias_experiment(BigNat(101), BigNat(149), 30000, src);
    // 127 follows the longest composite stretch; 101 follows none
    const auto& p101 = report.primes[0];
    const auto& p127 = report.primes[5];
    CHECK(p127.alg3_hits > 4 * p101.alg3_hits);
}

TEST_CASE("single-prime window selects it always") {
    SplitMix64Source src(316);
    const GapBiasReport report = gap_bias_experiment(BigNat(89), BigNat(95), 200, src);
    REQUIRE(report.primes.size() == 1);
    CHECK(report.primes[0].prime == 89);
    CHECK(report.primes[0].alg2_hits == 200);
    CHECK(report.primes[0].alg3_hits == 200);
    CHECK(report.odd_starts == 1);
}

TEST_CASE("gap bias domain errors") {
    SplitMix64Source src(317);
    CHECK_THROWS_AS(gap_bias_experiment(BigNat(90), BigNat(95), 10, src), DomainError);
    CHECK_THROWS_AS(gap_bias_experiment(BigNat(95), BigNat(91), 10, src), DomainError);
    CHECK_THROWS_AS(gap_bias_experiment(BigNat(115), BigNat(125), 10, src), DomainError);
}

TEST_CASE("iteration scaling tracks k ln 2") {
    const auto table = iteration_scaling({16, 32}, 60, 99);
    REQUIRE(table.size() == 2);
    for (const ScalingRow& row : table) {
        CHECK(row.model_outer_attempts == doctest::Approx(row.k * std::log(2.0)));
        CHECK(row.mean_candidate_tests >= row.mean_outer_attempts);
        // generous unit-level band; the acceptance suite pins +-25% at scale
        CHECK(row.mean_outer_attempts > 0.5 * row.model_outer_attempts);
        CHECK(row.mean_outer_attempts < 1.6 * row.model_outer_attempts);
    }
    const auto again = iteration_scaling({16, 32}, 60, 99);
    CHECK(again[0].mean_outer_attempts == table[0].mean_outer_attempts);
    CHECK(again[1].mean_candidate_tests == table[1].mean_candidate_tests);
    CHECK_THROWS_AS(iteration_scaling({16}, 0, 1), ConfigError);
}
