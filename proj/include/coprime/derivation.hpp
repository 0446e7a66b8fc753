#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coprime/bignat.hpp"
#include "coprime/ntheory.hpp"

namespace coprime {

// Parameter domain of the complement map at bit size k: p ranges over odd
// primes strictly inside (2^k + 1, 2^(k+1)). For such p the image
// q = 1 + floor(2^(2k)/p) lands strictly inside (2^(k-1), 2^k), so every
// derived q is smaller than every admissible p.
struct DerivationParams {
    explicit DerivationParams(unsigned k_);

    unsigned k;

    BigNat p_lower() const { return BigNat::pow2(k) + BigNat(1); }   // exclusive
    BigNat p_upper() const { return BigNat::pow2(k + 1); }           // exclusive
    BigNat p_min() const { return BigNat::pow2(k) + BigNat(2); }     // inclusive
    BigNat p_max() const { return BigNat::pow2(k + 1) - BigNat(1); }  // inclusive

    bool contains(const BigNat& p) const;
    void require(const BigNat& p) const;

    // Largest p for which the map is provably injective: isqrt(2^(2k+1)),
    // i.e. floor(sqrt(2) * 2^k). Above it, twin primes can share an image.
    BigNat strict_p_max() const;
};

// q = 1 + floor(2^(2k)/p). Equals ceil(2^(2k)/p) because odd p > 1 never
// divides a power of two.
BigNat complement(const BigNat& p, unsigned k);

// Same value via one modular reduction and one exact division:
// (2^(2k) + p - (2^(2k) mod p)) / p. The numerator needs +p, not +1:
// 2^(2k) mod p is congruent to 2^(2k) itself, so 2^(2k) + 1 - (2^(2k) mod p)
// is congruent to 1 (mod p) and never divisible by p.
BigNat complement_divfree(const BigNat& p, unsigned k);

// ceil(2^(2k-1)/p), the earlier half-size variant. Comparison only; key
// generation never uses it.
BigNat complement_lenstra98(const BigNat& p, unsigned k);

// B + floor(2^(2k)/p), B >= 1. complement_offset(p, k, 1) == complement(p, k).
BigNat complement_offset(const BigNat& p, unsigned k, const BigNat& b);

// Smallest probable prime >= complement(p, k) (searching from the next odd
// number when the image is even). Demonstrates non-injectivity of
// forward-searched images; key generation never uses it.
BigNat complement_forward_search(const BigNat& p, unsigned k, const PrimalityConfig& cfg,
                                 RandomSource& src);

// Exhaustive auditors. They enumerate every prime in the open domain and use
// exact deterministic primality, so their verdicts are ground truth for the
// k they can reach. kDefaultAuditCap bounds the default; callers may raise it
// up to kAuditCeiling.
inline constexpr unsigned kDefaultAuditCap = 20;
inline constexpr unsigned kAuditCeiling = 26;

struct BoundsViolation {
    std::uint64_t p = 0;
    std::uint64_t image = 0;
};

struct BoundsReport {
    unsigned k = 0;
    std::uint64_t checked = 0;
    std::vector<BoundsViolation> violations;
};

// Checks 2^(k-1) < complement(p, k) < 2^k for every domain prime.
BoundsReport audit_bounds(unsigned k, unsigned cap = kDefaultAuditCap);

// Two distinct domain primes sharing an image. When the shared image is
// prime, two honestly generated moduli share a factor without being equal.
struct CollisionRecord {
    std::uint64_t p1 = 0;  // p1 < p2
    std::uint64_t p2 = 0;
    std::uint64_t image = 0;
    bool image_is_prime = false;
};

// Brute-force image map over all domain primes; returns every colliding
// pair, sorted by (p1, p2). Empty means the map is injective at this k.
std::vector<CollisionRecord> audit_injectivity(unsigned k, unsigned cap = kDefaultAuditCap);

struct ValidPair {
    std::uint64_t p = 0;
    std::uint64_t q = 0;  // complement(p, k), prime
    std::uint64_t n = 0;  // p * q
};

struct UnsafePair {
    std::uint64_t n1 = 0;
    std::uint64_t n2 = 0;
    std::uint64_t common = 0;  // gcd(n1, n2) > 1
};

struct PairwiseSafetyReport {
    unsigned k = 0;
    std::vector<ValidPair> valid_pairs;
    std::vector<UnsafePair> unsafe_pairs;
};

// Forms every modulus the scheme can emit at this k and checks all distinct
// moduli pairwise for coprimality.
PairwiseSafetyReport audit_pairwise_safety(unsigned k, unsigned cap = kDefaultAuditCap);

// All primes strictly inside (2^k + 1, 2^(k+1)), ascending.
std::vector<std::uint64_t> domain_primes(unsigned k, unsigned cap = kDefaultAuditCap);

// Canonical JSON renderings (pretty, trailing newline, deterministic bytes).
std::string to_json_string(const BoundsReport& report);
std::string to_json_string(unsigned k, const std::vector<CollisionRecord>& collisions);
std::string to_json_string(const PairwiseSafetyReport& report);

}  // namespace coprime
