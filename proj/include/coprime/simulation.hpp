#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coprime/attack.hpp"
#include "coprime/corpus_io.hpp"
#include "coprime/keygen.hpp"

namespace coprime {

// Stream layout for a fleet run, normative for reproducibility:
//   stream 0            p-pool construction
//   stream 1            q-pool construction
//   stream 2 + t*N + d  device d of trial t (N = devices per trial)
struct FleetConfig {
    unsigned k = 32;
    std::uint32_t devices = 0;
    std::uint32_t pool_size_p = 1;
    std::uint32_t pool_size_q = 1;
    Policy policy;  // uniform fleets
    bool mixed = false;
    std::uint32_t devices_fixed = 0;        // mixed only
    std::uint32_t devices_independent = 0;  // mixed only
    std::uint64_t master_seed = 0;
    std::uint32_t trials = 1;
    PrimalityConfig primality;
};

FleetConfig fleet_config_from_json(const ordered_json& j);
FleetConfig fleet_config_from_file(const std::filesystem::path& path);

struct PairClassStats {
    std::string policy_a, policy_b;  // tags, a <= b
    std::uint64_t pairs = 0;
    std::uint64_t identical = 0;
    std::uint64_t factored = 0;
    double expected_identical = 0;  // expected counts under the pool model
    double expected_factored = 0;
};

struct FleetReport {
    // config echo (policy composition derived from the device map)
    unsigned k = 0;
    std::uint32_t devices = 0, pool_size_p = 0, pool_size_q = 0, trials = 0;
    std::uint64_t master_seed = 0;
    std::vector<std::pair<std::string, std::uint32_t>> policy_counts;

    std::uint64_t pairs_total = 0;
    std::uint64_t pairs_identical = 0;
    std::uint64_t pairs_factored = 0;
    double expected_identical = 0;
    double expected_factored = 0;
    std::vector<PairClassStats> classes;

    std::uint64_t attack_factored_moduli = 0;
    std::uint64_t attack_identical_pairs = 0;
    double attack_wall_ms = 0;  // informational; never serialized

    std::vector<Corpus> corpora;  // one per trial, for offline re-attack
};

// Every device draws its prime(s) from shared pools through its own split
// stream and forms one modulus; each trial's corpus goes through batch_gcd
// and pair rates are compared with the analytic pool model. Pools for
// q-deriving policies hold only primes whose image is prime, so a pool draw
// always yields a key and two devices collide on p with probability exactly
// 1/pool_size_p.
FleetReport run_fleet(const FleetConfig& cfg);

// Fixed-policy devices first, independent devices after; shares k, pools and
// seed layout with run_fleet, so a degenerate mix reproduces the uniform
// fleet byte for byte.
FleetReport run_mixed_population(const FleetConfig& shared, std::uint32_t devices_fixed,
                                 std::uint32_t devices_independent);

std::string to_json_string(const FleetReport& report);

struct GapPrimeStat {
    std::uint64_t prime = 0;
    std::uint64_t preimage_starts = 0;  // odd starts whose forward search lands here
    std::uint64_t alg2_hits = 0;
    std::uint64_t alg3_hits = 0;
};

struct GapBiasReport {
    std::uint64_t lo = 0, hi = 0;
    std::uint64_t trials = 0;
    std::uint64_t odd_starts = 0;  // valid starts (those not past the last prime)
    std::vector<GapPrimeStat> primes;
};

// Fresh-retry (uniform over primes) vs incremental search (weight
// proportional to the preceding gap) over the window [lo, hi], both
// restricted to the window: incremental starts past the last prime are
// redrawn. Reports Monte-Carlo frequencies next to the exact incremental
// distribution obtained by enumerating every odd starting point.
GapBiasReport gap_bias_experiment(const BigNat& lo, const BigNat& hi, std::uint64_t trials,
                                  RandomSource& src, const PrimalityConfig& cfg = {});

std::string to_json_string(const GapBiasReport& report);

struct ScalingRow {
    unsigned k = 0;
    std::uint64_t trials = 0;
    double mean_outer_attempts = 0;
    double mean_candidate_tests = 0;
    double model_outer_attempts = 0;  // k * ln 2
};

// Mean keygen_fixed attempt counters per k over independent split streams.
std::vector<ScalingRow> iteration_scaling(const std::vector<unsigned>& ks,
                                          std::uint32_t trials_per_k, std::uint64_t master_seed,
                                          const PrimalityConfig& cfg = {});

std::string to_json_string(const std::vector<ScalingRow>& table);

}  // namespace coprime
