#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "coprime/bignat.hpp"
#include "coprime/derivation.hpp"
#include "coprime/ntheory.hpp"

namespace coprime {

enum class PolicyKind { fixed, fixed_strict, independent, offset };

struct Policy {
    PolicyKind kind = PolicyKind::fixed;
    BigNat offset_b{1};  // offset policy only

    static Policy fixed(bool strict = false) { return {strict ? PolicyKind::fixed_strict : PolicyKind::fixed, BigNat(1)}; }
    static Policy independent() { return {PolicyKind::independent, BigNat(1)}; }
    static Policy offset(BigNat b) { return {PolicyKind::offset, std::move(b)}; }

    bool derives_q() const { return kind != PolicyKind::independent; }

    // "fixed" | "fixed_strict" | "independent" | "offset:<B>"
    std::string tag() const;
    static Policy from_tag(std::string_view tag);

    friend bool operator==(const Policy& a, const Policy& b) {
        return a.kind == b.kind && (a.kind != PolicyKind::offset || a.offset_b == b.offset_b);
    }
};

struct KeyPair {
    unsigned k = 0;
    BigNat p, q, n;
    Policy policy;
    // Number of q-primality evaluations (p-primes tried) for derived
    // policies; 1 for independent.
    std::uint64_t outer_attempts = 0;
    // Total primality tests over all candidates, p-search included.
    std::uint64_t candidate_tests = 0;
};

std::uint64_t default_max_outer(unsigned k);  // 64 * k

// Draw a random prime p in (2^k+1, 2^(k+1)), derive q = complement(p, k),
// keep the pair when q is prime, otherwise redraw p. Strict mode restricts
// p to at most isqrt(2^(2k+1)), which makes the derived image provably
// unique per p.
KeyPair keygen_fixed(unsigned k, const PrimalityConfig& cfg, RandomSource& src,
                     std::uint64_t max_outer = 0, bool strict = false);

// As keygen_fixed with q = complement_offset(p, k, b).
KeyPair keygen_offset(unsigned k, const BigNat& b, const PrimalityConfig& cfg, RandomSource& src,
                      std::uint64_t max_outer = 0);

// Baseline: p drawn from (2^k, 2^(k+1)) and q independently from
// (2^(k-1), 2^k), mirroring the range shape of the derived policies.
KeyPair keygen_independent(unsigned k, const PrimalityConfig& cfg, RandomSource& src);

KeyPair generate(unsigned k, const Policy& policy, const PrimalityConfig& cfg, RandomSource& src,
                 std::uint64_t max_outer = 0);

struct PrivateKey {
    KeyPair key;
    BigNat e, d, carmichael_lambda;
};

// lambda = lcm(p-1, q-1), d = (e mod lambda)^-1 mod lambda. Throws
// NotInvertibleError when gcd(e, lambda) != 1; the caller regenerates the
// key (q is determined by p, so there is no adjusting q).
PrivateKey extend_to_private_key(const KeyPair& kp, const BigNat& e = BigNat(65537));

}  // namespace coprime
