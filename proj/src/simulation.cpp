#include "coprime/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

namespace coprime {

namespace {

constexpr std::uint64_t kPoolStreamP = 0;
constexpr std::uint64_t kPoolStreamQ = 1;
constexpr std::uint64_t kDeviceStreamBase = 2;

std::uint64_t device_stream(const FleetConfig& cfg, std::uint32_t trial, std::uint32_t device) {
    return kDeviceStreamBase + std::uint64_t{trial} * cfg.devices + device;
}

Policy device_policy(const FleetConfig& cfg, std::uint32_t device) {
    if (!cfg.mixed) return cfg.policy;
    return device < cfg.devices_fixed ? Policy::fixed() : Policy::independent();
}

void validate(const FleetConfig& cfg) {
    if (cfg.k < 2) throw ConfigError("fleet: k must be >= 2");
    if (cfg.devices == 0) throw ConfigError("fleet: need at least one device");
    if (cfg.trials == 0) throw ConfigError("fleet: trials must be >= 1");
    if (cfg.pool_size_p == 0) throw ConfigError("fleet: pool_size_p must be >= 1");
    if (cfg.pool_size_q == 0) throw ConfigError("fleet: pool_size_q must be >= 1");
    if (cfg.mixed && cfg.devices_fixed + cfg.devices_independent != cfg.devices)
        throw ConfigError("fleet: mixed device counts must sum to devices");
}

struct Pools {
    std::vector<BigNat> p_pool;
    std::vector<BigNat> q_pool;
    // pool p's whose derived image also sits in the q-pool (cross channel)
    std::uint64_t image_overlap = 0;
    // unordered p-pool pairs sharing a prime image (would factor each other)
    std::uint64_t image_collision_pairs = 0;
};

std::vector<BigNat> draw_distinct_primes(std::uint32_t count, const BigNat& lo, const BigNat& hi,
                                         const FleetConfig& cfg, RandomSource& src,
                                         const Policy* derive) {
    std::vector<BigNat> pool;
    std::set<BigNat> seen;
    const std::uint64_t max_draws = 200ull * count + 5000;
    std::uint64_t draws = 0;
    while (pool.size() < count) {
        if (++draws > max_draws)
            throw ConfigError("pool construction: range cannot supply " + std::to_string(count) +
                              " distinct primes");
        BigNat p;
        try {
            p = random_prime_in(lo, hi, cfg.primality, src, 64ull * cfg.k).prime;
        } catch (const ExhaustionError&) {
            throw ConfigError("pool construction: prime search exhausted");
        }
        if (derive) {
            BigNat image = derive->kind == PolicyKind::offset
                               ? complement_offset(p, cfg.k, derive->offset_b)
                               : complement(p, cfg.k);
            if (!is_probable_prime(image, cfg.primality, src)) continue;
        }
        if (seen.insert(p).second) pool.push_back(std::move(p));
    }
    return pool;
}

BigNat derived_image(const Policy& policy, const BigNat& p, unsigned k) {
    return policy.kind == PolicyKind::offset ? complement_offset(p, k, policy.offset_b)
                                             : complement(p, k);
}

Pools build_pools(const FleetConfig& cfg, bool any_derived, bool any_independent,
                  const Policy& derive_policy) {
    Pools pools;
    const DerivationParams params(cfg.k);
    {
        SplitMix64Source src = split({cfg.master_seed, kPoolStreamP});
        if (any_derived) {
            const BigNat hi = derive_policy.kind == PolicyKind::fixed_strict ? params.strict_p_max()
                                                                             : params.p_max();
            pools.p_pool = draw_distinct_primes(cfg.pool_size_p, params.p_min(), hi, cfg, src,
                                                &derive_policy);
        } else {
            pools.p_pool = draw_distinct_primes(cfg.pool_size_p, BigNat::pow2(cfg.k) + BigNat(1),
                                                BigNat::pow2(cfg.k + 1) - BigNat(1), cfg, src, nullptr);
        }
    }
    if (any_independent) {
        SplitMix64Source src = split({cfg.master_seed, kPoolStreamQ});
        pools.q_pool = draw_distinct_primes(cfg.pool_size_q, BigNat::pow2(cfg.k - 1) + BigNat(1),
                                            BigNat::pow2(cfg.k) - BigNat(1), cfg, src, nullptr);
    }
    if (any_derived) {
        std::set<BigNat> q_set(pools.q_pool.begin(), pools.q_pool.end());
        std::map<BigNat, std::uint64_t> image_count;
        for (const BigNat& p : pools.p_pool) {
            BigNat image = derived_image(derive_policy, p, cfg.k);
            if (q_set.count(image)) ++pools.image_overlap;
            ++image_count[image];
        }
        for (const auto& [image, count] : image_count)
            pools.image_collision_pairs += count * (count - 1) / 2;
    }
    return pools;
}

struct ClassKey {
    std::string a, b;
    auto operator<=>(const ClassKey&) const = default;
};

ClassKey class_of(const std::string& ta, const std::string& tb) {
    return ta <= tb ? ClassKey{ta, tb} : ClassKey{tb, ta};
}

// Analytic per-pair rates from the pool composition; the report scales them
// by the class pair counts.
void expected_rates(const ClassKey& key, const FleetConfig& cfg, const Pools& pools,
                    double& expected_identical, double& expected_factored) {
    const double sp = static_cast<double>(cfg.pool_size_p);
    const double sq = static_cast<double>(pools.q_pool.empty() ? cfg.pool_size_q : pools.q_pool.size());
    const bool a_derived = key.a != "independent";
    const bool b_derived = key.b != "independent";
    if (a_derived && b_derived) {
        // identical iff same p; a factored pair needs an image collision in the pool
        expected_identical = 1.0 / sp;
        expected_factored = 2.0 * static_cast<double>(pools.image_collision_pairs) / (sp * sp);
    } else if (!a_derived && !b_derived) {
        expected_identical = 1.0 / (sp * sq);
        expected_factored = (1.0 / sp) * (1.0 - 1.0 / sq) + (1.0 / sq) * (1.0 - 1.0 / sp);
    } else {
        // derived vs independent: p-channel always exists; the q-channel
        // needs the derived image inside the independent q-pool.
        const double m = static_cast<double>(pools.image_overlap);
        expected_identical = m / (sp * sp * sq);
        expected_factored = 1.0 / sp + m / (sp * sq) - 2.0 * m / (sp * sp * sq);
    }
}

FleetReport run_engine(const FleetConfig& cfg) {
    validate(cfg);

    std::vector<Policy> policies(cfg.devices);
    bool any_derived = false, any_independent = false;
    const Policy* derive_policy = nullptr;
    for (std::uint32_t d = 0; d < cfg.devices; ++d) {
        policies[d] = device_policy(cfg, d);
        if (policies[d].derives_q()) {
            if (derive_policy && !(*derive_policy == policies[d]))
                throw ConfigError("fleet: conflicting q-deriving policies in one fleet");
            derive_policy = &policies[d];
            any_derived = true;
        } else {
            any_independent = true;
        }
    }

    const Pools pools =
        build_pools(cfg, any_derived, any_independent, derive_policy ? *derive_policy : Policy::fixed());

    FleetReport report;
    report.k = cfg.k;
    report.devices = cfg.devices;
    report.pool_size_p = cfg.pool_size_p;
    report.pool_size_q = cfg.pool_size_q;
    report.trials = cfg.trials;
    report.master_seed = cfg.master_seed;
    {
        std::map<std::string, std::uint32_t> counts;
        for (const Policy& p : policies) ++counts[p.tag()];
        report.policy_counts.assign(counts.begin(), counts.end());
    }

    std::map<ClassKey, PairClassStats> classes;
    for (std::uint32_t i = 0; i < cfg.devices; ++i) {
        for (std::uint32_t j = i + 1; j < cfg.devices; ++j) {
            const ClassKey key = class_of(policies[i].tag(), policies[j].tag());
            auto [it, inserted] = classes.try_emplace(key);
            if (inserted) {
                it->second.policy_a = key.a;
                it->second.policy_b = key.b;
                expected_rates(key, cfg, pools, it->second.expected_identical,
                               it->second.expected_factored);
            }
        }
    }

    for (std::uint32_t t = 0; t < cfg.trials; ++t) {
        Corpus corpus;
        corpus.reserve(cfg.devices);
        for (std::uint32_t d = 0; d < cfg.devices; ++d) {
            const std::uint64_t stream = device_stream(cfg, t, d);
            SplitMix64Source src = split({cfg.master_seed, stream});
            const Policy& policy = policies[d];
            BigNat p = PoolSource::draw_from(pools.p_pool, src);
            BigNat q = policy.derives_q() ? derived_image(policy, p, cfg.k)
                                          : BigNat(PoolSource::draw_from(pools.q_pool, src));
            ModulusRecord record;
            char idbuf[16];
            std::snprintf(idbuf, sizeof(idbuf), "dev-%04u", d);
            record.id = idbuf;
            record.n = p * q;
            record.provenance = {{"policy", policy.tag()},
                                 {"device", d},
                                 {"trial", t},
                                 {"stream_index", stream},
                                 {"master_seed", BigNat(cfg.master_seed).to_hex()}};
            corpus.push_back(std::move(record));
        }

        const AttackReport attack = batch_gcd(corpus);
        report.attack_factored_moduli += attack.factored_count;
        report.attack_identical_pairs += attack.identical_pair_count;
        report.attack_wall_ms += attack.wall_ms;

        for (std::uint32_t i = 0; i < cfg.devices; ++i) {
            for (std::uint32_t j = i + 1; j < cfg.devices; ++j) {
                PairClassStats& cls = classes.at(class_of(policies[i].tag(), policies[j].tag()));
                ++cls.pairs;
                if (corpus[i].n == corpus[j].n) {
                    ++cls.identical;
                } else if (gcd(corpus[i].n, corpus[j].n) > BigNat(1)) {
                    ++cls.factored;
                }
            }
        }
        report.corpora.push_back(std::move(corpus));
    }

    for (auto& [key, cls] : classes) {
        // turn per-pair rates into expected counts
        cls.expected_identical *= static_cast<double>(cls.pairs);
        cls.expected_factored *= static_cast<double>(cls.pairs);
        report.pairs_total += cls.pairs;
        report.pairs_identical += cls.identical;
        report.pairs_factored += cls.factored;
        report.expected_identical += cls.expected_identical;
        report.expected_factored += cls.expected_factored;
        report.classes.push_back(cls);
    }
    return report;
}

std::uint64_t parse_seed_json(const ordered_json& j) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_string()) return parse_seed_text(j.get<std::string>());
    throw ConfigError("master_seed must be an unsigned integer or a seed string");
}

}  // namespace

FleetConfig fleet_config_from_json(const ordered_json& j) {
    if (!j.is_object()) throw ConfigError("fleet config must be a JSON object");
    FleetConfig cfg;
    try {
        cfg.k = j.at("k").get<unsigned>();
        cfg.devices = j.at("devices").get<std::uint32_t>();
        cfg.pool_size_p = j.at("pool_size_p").get<std::uint32_t>();
        cfg.pool_size_q = j.value("pool_size_q", cfg.pool_size_p);
        cfg.master_seed = parse_seed_json(j.at("master_seed"));
        cfg.trials = j.value("trials", 1u);
        const std::string policy = j.at("policy").get<std::string>();
        if (policy == "mixed") {
            cfg.mixed = true;
            cfg.devices_fixed = j.at("devices_fixed").get<std::uint32_t>();
            cfg.devices_independent = j.at("devices_independent").get<std::uint32_t>();
        } else {
            cfg.policy = Policy::from_tag(policy);
        }
        if (auto it = j.find("primality"); it != j.end()) {
            cfg.primality.trial_division_bound =
                it->value("trial_division_bound", cfg.primality.trial_division_bound);
            cfg.primality.mr_rounds = it->value("mr_rounds", cfg.primality.mr_rounds);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("fleet config: ") + e.what());
    } catch (const ParseError& e) {
        throw ConfigError(std::string("fleet config: ") + e.what());
    }
    validate(cfg);
    return cfg;
}

FleetConfig fleet_config_from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    return fleet_config_from_json(j);
}

FleetReport run_fleet(const FleetConfig& cfg) { return run_engine(cfg); }

FleetReport run_mixed_population(const FleetConfig& shared, std::uint32_t devices_fixed,
                                 std::uint32_t devices_independent) {
    FleetConfig cfg = shared;
    cfg.mixed = true;
    cfg.devices_fixed = devices_fixed;
    cfg.devices_independent = devices_independent;
    cfg.devices = devices_fixed + devices_independent;
    return run_engine(cfg);
}

std::string to_json_string(const FleetReport& report) {
    ordered_json j;
    ordered_json cfg;
    cfg["k"] = report.k;
    cfg["devices"] = report.devices;
    cfg["pool_size_p"] = report.pool_size_p;
    cfg["pool_size_q"] = report.pool_size_q;
    cfg["trials"] = report.trials;
    cfg["master_seed"] = BigNat(report.master_seed).to_hex();
    ordered_json counts = ordered_json::object();
    for (const auto& [tag, count] : report.policy_counts) counts[tag] = count;
    cfg["policy_counts"] = std::move(counts);
    j["config"] = std::move(cfg);
    j["pairs_total"] = report.pairs_total;
    j["pairs_identical"] = report.pairs_identical;
    j["pairs_factored"] = report.pairs_factored;
    j["expected_identical"] = report.expected_identical;
    j["expected_factored"] = report.expected_factored;
    j["pair_classes"] = ordered_json::array();
    for (const PairClassStats& cls : report.classes) {
        j["pair_classes"].push_back({{"policies", {cls.policy_a, cls.policy_b}},
                                     {"pairs", cls.pairs},
                                     {"identical", cls.identical},
                                     {"factored", cls.factored},
                                     {"expected_identical", cls.expected_identical},
                                     {"expected_factored", cls.expected_factored}});
    }
    j["attack"] = {{"method", "batch"},
                   {"factored_moduli", report.attack_factored_moduli},
                   {"identical_pairs", report.attack_identical_pairs}};
    return j.dump(2) + "\n";
}

GapBiasReport gap_bias_experiment(const BigNat& lo, const BigNat& hi, std::uint64_t trials,
                                  RandomSource& src, const PrimalityConfig& cfg) {
    if (!lo.odd() || !hi.odd()) throw DomainError("gap bias: lo and hi must be odd");
    if (lo > hi) throw DomainError("gap bias: lo > hi");
    if (!hi.fits_u64()) throw ConfigError("gap bias: window must fit in 64 bits");
    const std::uint64_t lo64 = lo.to_u64();
    const std::uint64_t hi64 = hi.to_u64();
    if (lo64 < 3) throw DomainError("gap bias: lo must be >= 3");
    const std::uint64_t odd_count = (hi64 - lo64) / 2 + 1;
    if (odd_count > (1ull << 24)) throw ConfigError("gap bias: window too large to enumerate");

    GapBiasReport report;
    report.lo = lo64;
    report.hi = hi64;
    report.trials = trials;

    std::vector<std::uint64_t> primes;
    for (std::uint64_t v = lo64; v <= hi64; v += 2) {
        if (is_prime_u64(v)) primes.push_back(v);
    }
    if (primes.empty()) throw DomainError("gap bias: no primes in window");
    const std::uint64_t last_prime = primes.back();

    std::map<std::uint64_t, GapPrimeStat> stats;
    for (std::uint64_t p : primes) stats[p].prime = p;

    // Exact incremental-search distribution by preimage counting: an odd
    // start s <= last_prime selects the first prime >= s; later starts are
    // redrawn, so they carry no weight.
    for (std::uint64_t s = lo64; s <= last_prime; s += 2) {
        const auto it = std::lower_bound(primes.begin(), primes.end(), s);
        ++stats.at(*it).preimage_starts;
        ++report.odd_starts;
    }

    const BigNat count(static_cast<unsigned long>(odd_count));
    auto draw_odd = [&]() -> std::uint64_t {
        return lo64 + 2 * uniform_below(count, src).to_u64();
    };

    // Fresh retry: redraw until the draw itself is prime.
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (;;) {
            const std::uint64_t s = draw_odd();
            if (is_probable_prime(BigNat(static_cast<unsigned long>(s)), cfg, src)) {
                ++stats.at(s).alg2_hits;
                break;
            }
        }
    }
    // Incremental: search forward from the start; starts past the last prime
    // would leave the window and are redrawn.
    for (std::uint64_t t = 0; t < trials; ++t) {
        for (;;) {
            const std::uint64_t s = draw_odd();
            if (s > last_prime) continue;
            const BigNat found = next_prime_search(BigNat(static_cast<unsigned long>(s)), cfg, src);
            ++stats.at(found.to_u64()).alg3_hits;
            break;
        }
    }

    for (const auto& [p, stat] : stats) report.primes.push_back(stat);
    return report;
}

std::string to_json_string(const GapBiasReport& report) {
    ordered_json j;
    j["lo"] = report.lo;
    j["hi"] = report.hi;
    j["trials"] = report.trials;
    j["odd_starts"] = report.odd_starts;
    j["primes"] = ordered_json::array();
    for (const GapPrimeStat& s : report.primes) {
        j["primes"].push_back({{"prime", s.prime},
                               {"preimage_starts", s.preimage_starts},
                               {"alg2_hits", s.alg2_hits},
                               {"alg3_hits", s.alg3_hits}});
    }
    return j.dump(2) + "\n";
}

std::vector<ScalingRow> iteration_scaling(const std::vector<unsigned>& ks,
                                          std::uint32_t trials_per_k, std::uint64_t master_seed,
                                          const PrimalityConfig& cfg) {
    if (trials_per_k == 0) throw ConfigError("iteration scaling: trials_per_k must be >= 1");
    std::vector<ScalingRow> table;
    table.reserve(ks.size());
    for (unsigned k : ks) {
        std::uint64_t outer = 0, tests = 0;
        for (std::uint32_t t = 0; t < trials_per_k; ++t) {
            SplitMix64Source src = split({master_seed, (std::uint64_t{k} << 32) | t});
            const KeyPair kp = keygen_fixed(k, cfg, src);
            outer += kp.outer_attempts;
            tests += kp.candidate_tests;
        }
        ScalingRow row;
        row.k = k;
        row.trials = trials_per_k;
        row.mean_outer_attempts = static_cast<double>(outer) / trials_per_k;
        row.mean_candidate_tests = static_cast<double>(tests) / trials_per_k;
        row.model_outer_attempts = k * std::log(2.0);
        table.push_back(row);
    }
    return table;
}

std::string to_json_string(const std::vector<ScalingRow>& table) {
    ordered_json j = ordered_json::array();
    for (const ScalingRow& row : table) {
        j.push_back({{"k", row.k},
                     {"trials", row.trials},
                     {"mean_outer_attempts", row.mean_outer_attempts},
                     {"mean_candidate_tests", row.mean_candidate_tests},
                     {"model_outer_attempts", row.model_outer_attempts}});
    }
    return j.dump(2) + "\n";
}

}  // namespace coprime
