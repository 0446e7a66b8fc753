#include "coprime/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string_view>

#include "CLI11.hpp"

#include "coprime/attack.hpp"
#include "coprime/corpus_io.hpp"
#include "coprime/derivation.hpp"
#include "coprime/keygen.hpp"
#include "coprime/simulation.hpp"

namespace coprime {

namespace {

namespace fs = std::filesystem;

struct DeriveArgs {
    std::string p_hex;
    unsigned k = 0;
    std::string variant = "floor";
    std::string seed;
};

struct KeygenArgs {
    unsigned k = 0;
    std::string policy = "fixed";
    bool strict = false;
    std::string seed;
    std::string entropy = "seed";
    std::uint64_t count = 1;
    std::string out_path;
};

struct AuditArgs {
    unsigned k = 0;
    std::string check;
    unsigned cap = kDefaultAuditCap;
};

struct AttackArgs {
    std::string corpus_path;
    std::string method = "batch";
    std::string out_path;
};

struct SimulateArgs {
    std::string config_path;
    std::string out_dir;
};

int do_derive(const DeriveArgs& args, std::ostream& out, std::ostream& err) {
    const BigNat p = BigNat::from_hex(args.p_hex);
    BigNat q;
    constexpr std::string_view offset_prefix = "offset:";
    if (args.variant == "floor") {
        q = complement(p, args.k);
    } else if (args.variant == "divfree") {
        q = complement_divfree(p, args.k);
    } else if (args.variant == "lenstra98") {
        q = complement_lenstra98(p, args.k);
    } else if (args.variant == "forward") {
        if (args.seed.empty()) {
            err << "usage: --variant forward draws Miller-Rabin bases and needs --seed\n";
            return kExitUsage;
        }
        SplitMix64Source src = split({parse_seed_text(args.seed), 0});
        q = complement_forward_search(p, args.k, PrimalityConfig{}, src);
    } else if (std::string_view(args.variant).substr(0, offset_prefix.size()) == offset_prefix) {
        q = complement_offset(p, args.k, BigNat::from_dec(args.variant.substr(offset_prefix.size())));
    } else {
        err << "usage: unknown variant \"" << args.variant
            << "\" (floor|divfree|lenstra98|offset:B|forward)\n";
        return kExitUsage;
    }
    out << q.to_hex() << '\n';
    return kExitOk;
}

int do_keygen(const KeygenArgs& args, std::ostream& out, std::ostream& err) {
    Policy policy;
    try {
        policy = Policy::from_tag(args.policy);
    } catch (const ParseError& e) {
        err << "usage: " << e.what() << '\n';
        return kExitUsage;
    }
    if (args.strict) {
        if (policy.kind != PolicyKind::fixed) {
            err << "usage: --strict applies only to --policy fixed\n";
            return kExitUsage;
        }
        policy = Policy::fixed(true);
    }
    const bool use_os = args.entropy == "os";
    if (!use_os && args.entropy != "seed") {
        err << "usage: --entropy must be 'seed' or 'os'\n";
        return kExitUsage;
    }
    if (!use_os && args.seed.empty()) {
        err << "usage: --seed is required (or pass --entropy os explicitly)\n";
        return kExitUsage;
    }
    const std::uint64_t master_seed = use_os ? 0 : parse_seed_text(args.seed);

    std::ofstream file(args.out_path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file " + args.out_path);

    const PrimalityConfig cfg;
    for (std::uint64_t i = 0; i < args.count; ++i) {
        PrivateKey pk;
        bool done = false;
        OsEntropySource os_src;
        SplitMix64Source seeded_src = split({master_seed, i});
        RandomSource& src = use_os ? static_cast<RandomSource&>(os_src) : seeded_src;
        for (int tries = 0; tries < 16 && !done; ++tries) {
            const KeyPair kp = generate(args.k, policy, cfg, src);
            try {
                pk = extend_to_private_key(kp);
                done = true;
            } catch (const NotInvertibleError&) {
                // e shares a factor with lambda; regenerate from a fresh p
            }
        }
        if (!done) throw ExhaustionError("keygen: public exponent never invertible", 16);
        std::optional<SeedProvenance> prov;
        if (!use_os) prov = SeedProvenance{master_seed, i};
        write_key_record(make_key_record(pk, prov), file);
        char idbuf[24];
        std::snprintf(idbuf, sizeof(idbuf), "key-%03llu", static_cast<unsigned long long>(i));
        out << idbuf << " n=" << pk.key.n.to_hex() << " outer_attempts=" << pk.key.outer_attempts
            << '\n';
    }
    return kExitOk;
}

int do_audit(const AuditArgs& args, std::ostream& out, std::ostream& err) {
    bool findings = false;
    if (args.check == "bounds") {
        const BoundsReport report = audit_bounds(args.k, args.cap);
        out << to_json_string(report);
        findings = !report.violations.empty();
    } else if (args.check == "injectivity") {
        const auto collisions = audit_injectivity(args.k, args.cap);
        out << to_json_string(args.k, collisions);
        findings = !collisions.empty();
    } else if (args.check == "pairwise") {
        const PairwiseSafetyReport report = audit_pairwise_safety(args.k, args.cap);
        out << to_json_string(report);
        findings = !report.unsafe_pairs.empty();
    } else {
        err << "usage: unknown check \"" << args.check << "\" (bounds|injectivity|pairwise)\n";
        return kExitUsage;
    }
    return findings ? kExitFindings : kExitOk;
}

int do_attack(const AttackArgs& args, std::ostream& out, std::ostream& err) {
    const Corpus corpus = read_corpus_file(args.corpus_path);
    AttackReport report;
    if (args.method == "batch") {
        report = batch_gcd(corpus);
    } else if (args.method == "pairwise") {
        report = pairwise_gcd_scan(corpus);
    } else {
        err << "usage: unknown method \"" << args.method << "\" (pairwise|batch)\n";
        return kExitUsage;
    }
    err << "attack: corpus=" << report.corpus_size << " method=" << report.method
        << " wall_ms=" << report.wall_ms << '\n';
    const std::string rendered = to_json_string(report);
    if (args.out_path.empty()) {
        out << rendered;
    } else {
        std::ofstream file(args.out_path, std::ios::binary);
        if (!file) throw ConfigError("cannot open output file " + args.out_path);
        file << rendered;
    }
    const bool findings = report.factored_count > 0 || report.identical_pair_count > 0;
    return findings ? kExitFindings : kExitOk;
}

int do_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
    const FleetConfig cfg = fleet_config_from_file(args.config_path);
    const FleetReport report = run_fleet(cfg);

    const fs::path dir(args.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string());

    {
        std::ofstream file(dir / "fleet-report.json", std::ios::binary);
        if (!file) throw ConfigError("cannot write fleet report");
        file << to_json_string(report);
    }
    for (std::size_t t = 0; t < report.corpora.size(); ++t) {
        char name[32];
        std::snprintf(name, sizeof(name), "corpus-%03zu.jsonl", t);
        std::ofstream file(dir / name, std::ios::binary);
        if (!file) throw ConfigError("cannot write corpus file");
        write_corpus(report.corpora[t], file);
    }

    out << "pairs_total=" << report.pairs_total << " identical=" << report.pairs_identical
        << " factored=" << report.pairs_factored << '\n';
    for (const PairClassStats& cls : report.classes) {
        out << cls.policy_a << "/" << cls.policy_b << " pairs=" << cls.pairs
            << " identical=" << cls.identical << " factored=" << cls.factored << '\n';
    }
    err << "simulate: attack_wall_ms=" << report.attack_wall_ms << '\n';
    return kExitOk;
}

int run_cli_impl(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"pairwise-coprime RSA modulus toolkit"};
    app.name("coprime");
    app.require_subcommand(1);

    DeriveArgs derive_args;
    CLI::App* derive = app.add_subcommand("derive", "derive the complement q from p");
    derive->add_option("--p", derive_args.p_hex, "prime p, canonical hex")->required();
    derive->add_option("--k", derive_args.k, "bit parameter")->required();
    derive->add_option("--variant", derive_args.variant, "floor|divfree|lenstra98|offset:B|forward");
    derive->add_option("--seed", derive_args.seed, "PRNG seed, decimal or 0x hex");

    KeygenArgs keygen_args;
    CLI::App* keygen = app.add_subcommand("keygen", "generate key records");
    keygen->add_option("--k", keygen_args.k, "bit parameter")->required();
    keygen->add_option("--policy", keygen_args.policy, "fixed|independent|offset:B");
    keygen->add_flag("--strict", keygen_args.strict, "restrict p to the provably injective range");
    keygen->add_option("--seed", keygen_args.seed, "PRNG seed, decimal or 0x hex");
    keygen->add_option("--entropy", keygen_args.entropy, "seed (default) or os");
    keygen->add_option("--count", keygen_args.count, "number of keys");
    keygen->add_option("--out", keygen_args.out_path, "output file (one key record per line)")
        ->required();

    AuditArgs audit_args;
    CLI::App* audit = app.add_subcommand("audit", "exhaustive derivation audits");
    audit->add_option("--k", audit_args.k, "bit parameter")->required();
    audit->add_option("--check", audit_args.check, "bounds|injectivity|pairwise")->required();
    audit->add_option("--cap", audit_args.cap, "largest k accepted for enumeration");

    AttackArgs attack_args;
    CLI::App* attack = app.add_subcommand("attack", "shared-factor scan over a corpus");
    attack->add_option("--corpus", attack_args.corpus_path, "corpus file (JSON lines)")->required();
    attack->add_option("--method", attack_args.method, "pairwise|batch");
    attack->add_option("--out", attack_args.out_path, "report file (default stdout)");

    SimulateArgs simulate_args;
    CLI::App* simulate = app.add_subcommand("simulate", "fleet Monte-Carlo run");
    simulate->add_option("--config", simulate_args.config_path, "fleet config (JSON)")->required();
    simulate->add_option("--out", simulate_args.out_dir, "output directory")->required();

    CLI::App* version = app.add_subcommand("version", "print tool version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (derive->parsed()) return do_derive(derive_args, out, err);
        if (keygen->parsed()) return do_keygen(keygen_args, out, err);
        if (audit->parsed()) return do_audit(audit_args, out, err);
        if (attack->parsed()) return do_attack(attack_args, out, err);
        if (simulate->parsed()) return do_simulate(simulate_args, out, err);
        if (version->parsed()) {
            out << "coprime " << kVersion << '\n';
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitUsage;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("coprime");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    return run_cli_impl(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run_cli(int argc, const char* const* argv) {
    return run_cli_impl(argc, argv, std::cout, std::cerr);
}

}  // namespace coprime
