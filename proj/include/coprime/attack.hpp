#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coprime/bignat.hpp"
#include "coprime/corpus_io.hpp"

namespace coprime {

enum class ModulusClass { clean, factored, identical_duplicate };

std::string to_string(ModulusClass cls);

struct Finding {
    std::string id;
    ModulusClass cls = ModulusClass::clean;
    BigNat factor_small, factor_large;        // set when cls == factored
    std::vector<std::string> duplicate_peers;  // ids holding an equal modulus

    friend bool operator==(const Finding& a, const Finding& b) {
        return a.id == b.id && a.cls == b.cls && a.factor_small == b.factor_small &&
               a.factor_large == b.factor_large && a.duplicate_peers == b.duplicate_peers;
    }
};

struct AttackReport {
    std::string method;             // "pairwise" | "batch"
    std::vector<Finding> findings;  // corpus order
    std::uint64_t corpus_size = 0;
    std::uint64_t factored_count = 0;
    std::uint64_t identical_pair_count = 0;
    double wall_ms = 0;  // informational; never serialized
};

// Same classifications and factors, methods and timing aside.
bool reports_equivalent(const AttackReport& a, const AttackReport& b);

// gcd of every unordered pair. An equal pair marks both records as
// identical duplicates; a proper common divisor factors each record it
// splits. Duplication is classified, never counted as factored: duplicate
// owners can read each other but stay safe from everyone else.
AttackReport pairwise_gcd_scan(const Corpus& corpus);

// Balanced product tree: levels[0] are the inputs, each node the product of
// its children, root the product of everything.
struct ProductTree {
    std::vector<std::vector<BigNat>> levels;

    const BigNat& root() const { return levels.back().front(); }
};

ProductTree build_product_tree(const std::vector<BigNat>& values);

// Quasilinear scan: descend a remainder tree of P mod node^2 to
// z_i = P mod n_i^2, then g_i = gcd(n_i, z_i / n_i). g_i == n_i (shared
// factors with several peers, or a duplicate) falls back to pairwise gcd
// against all peers. Must classify exactly like pairwise_gcd_scan on any
// corpus of semiprimes.
AttackReport batch_gcd(const Corpus& corpus);

std::string to_json_string(const AttackReport& report);

}  // namespace coprime
