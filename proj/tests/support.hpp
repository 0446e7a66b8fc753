#pragma once

// Shared helpers and independent oracles. Oracles stay deliberately naive:
// they must not share a code path with the implementation they check.

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "coprime/bignat.hpp"
#include "coprime/randomness.hpp"

namespace coprime::testing {

// Replays a scripted list of draw values; one entry per next_bits call.
class ScriptedSource final : public RandomSource {
public:
    explicit ScriptedSource(std::vector<std::uint64_t> values)
        : values_(values.begin(), values.end()) {}

    BigNat next_bits(unsigned bits) override {
        if (bits == 0) return BigNat();
        if (values_.empty()) throw std::logic_error("ScriptedSource: script exhausted");
        const std::uint64_t v = values_.front();
        values_.pop_front();
        return BigNat(static_cast<unsigned long>(v));
    }

    bool exhausted() const { return values_.empty(); }

private:
    std::deque<std::uint64_t> values_;
};

// Sieve of Eratosthenes; flags[i] says whether i is prime.
inline std::vector<bool> prime_flags_up_to(std::uint64_t limit) {
    std::vector<bool> is_prime(limit + 1, true);
    is_prime[0] = false;
    if (limit >= 1) is_prime[1] = false;
    for (std::uint64_t i = 2; i * i <= limit; ++i) {
        if (!is_prime[i]) continue;
        for (std::uint64_t j = i * i; j <= limit; j += i) is_prime[j] = false;
    }
    return is_prime;
}

// Subtraction-only gcd.
inline std::uint64_t subtraction_gcd(std::uint64_t a, std::uint64_t b) {
    while (a != 0 && b != 0) {
        if (a >= b) {
            a -= b;
        } else {
            b -= a;
        }
    }
    return a + b;
}

// Square-and-multiply through BigNat arithmetic only (no mpz_powm).
inline BigNat naive_mod_pow(BigNat base, BigNat exp, const BigNat& m) {
    BigNat result = BigNat(1) % m;
    base = base % m;
    while (!exp.is_zero()) {
        if (exp.odd()) result = (result * base) % m;
        base = (base * base) % m;
        exp = exp >> 1;
    }
    return result;
}

}  // namespace coprime::testing
