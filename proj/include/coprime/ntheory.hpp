#pragma once

#include <cstdint>
#include <vector>

#include "coprime/bignat.hpp"
#include "coprime/randomness.hpp"

namespace coprime {

struct PrimalityConfig {
    std::uint32_t trial_division_bound = 1000;  // >= 2
    std::uint32_t mr_rounds = 40;               // >= 1
};

// gcd(a, m) != 1 where an inverse was required; carries the offending gcd.
class NotInvertibleError : public DomainError {
public:
    NotInvertibleError(const BigNat& a, const BigNat& m, BigNat g)
        : DomainError("not invertible: gcd(" + a.to_dec() + ", " + m.to_dec() + ") = " + g.to_dec()),
          gcd_(std::move(g)) {}

    const BigNat& gcd() const { return gcd_; }

private:
    BigNat gcd_;
};

BigNat gcd(const BigNat& a, const BigNat& b);
BigNat lcm(const BigNat& a, const BigNat& b);

// base^exp mod m; m must be >= 1.
BigNat mod_pow(const BigNat& base, const BigNat& exp, const BigNat& m);

// x in [1, m) with a*x = 1 (mod m); m must be >= 2.
BigNat mod_inverse(const BigNat& a, const BigNat& m);

// Trial division by odd primes below cfg.trial_division_bound (complete for
// n below the square of the last prime tried), then cfg.mr_rounds
// Miller-Rabin rounds with bases drawn uniformly from [2, n-2] via src.
// Composites pass with probability <= 4^-mr_rounds; primes always pass.
bool is_probable_prime(const BigNat& n, const PrimalityConfig& cfg, RandomSource& src);

struct PrimeSearchResult {
    BigNat prime;
    std::uint64_t attempts = 0;  // primality-tested candidates
};

// Fresh-retry search: draw a uniform candidate in [lo, hi], force the low bit
// to 1, redraw if that leaves the interval, test, and discard failures.
PrimeSearchResult random_prime_in(const BigNat& lo, const BigNat& hi, const PrimalityConfig& cfg,
                                  RandomSource& src, std::uint64_t max_attempts);

// Incremental search: smallest probable prime >= start, stepping by 2.
// start must be odd and >= 3.
BigNat next_prime_search(const BigNat& start, const PrimalityConfig& cfg, RandomSource& src);

// Exact deterministic test for word-sized values (odd trial division up to
// sqrt). The exhaustive auditors use this instead of the probabilistic test.
bool is_prime_u64(std::uint64_t n);

// Odd primes strictly below `bound`, cached per thread.
const std::vector<std::uint32_t>& odd_trial_primes(std::uint32_t bound);

}  // namespace coprime
