#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "coprime/bignat.hpp"

namespace coprime {

// Stateful producer of uniform bits. Single consumer: instances may be moved
// between threads but never shared concurrently.
class RandomSource {
public:
    virtual ~RandomSource() = default;

    // Uniform integer in [0, 2^bits). next_bits(0) == 0.
    virtual BigNat next_bits(unsigned bits) = 0;
};

struct SplitMixState {
    std::uint64_t state;
    std::uint64_t output;
};

// One step of the SplitMix64 recurrence. This generator is normative for
// tests and simulations; production key generation accepts any RandomSource.
SplitMixState splitmix_next(std::uint64_t state);

// Deterministic source built on SplitMix64. next_bits concatenates
// ceil(bits/64) consecutive words, first word most significant, and keeps
// the low `bits` bits.
class SplitMix64Source final : public RandomSource {
public:
    explicit SplitMix64Source(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_word();
    BigNat next_bits(unsigned bits) override;

private:
    std::uint64_t state_;
};

// Escape hatch backed by std::random_device. Declared for callers that want
// an external entropy source; its quality is not audited here.
class OsEntropySource final : public RandomSource {
public:
    BigNat next_bits(unsigned bits) override;
};

struct SplitSeed {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

// Deterministic substream: the initial SplitMix64 state is the output word of
// splitmix_next(master_seed XOR stream_index). Fixed exactly so independent
// runners reproduce each other's streams.
SplitMix64Source split(SplitSeed seed);

// Uniform integer in [0, bound) by rejection sampling on bitlen(bound-1) bits.
BigNat uniform_below(const BigNat& bound, RandomSource& src);

// Uniform integer in [lo, hi] by rejection sampling on bitlen(hi-lo) bits.
BigNat uniform_in_range(const BigNat& lo, const BigNat& hi, RandomSource& src);

// Low-entropy randomness model: every draw returns a pool element picked
// uniformly by the selector, so two independent draws collide with
// probability exactly 1/pool-size.
class PoolSource {
public:
    PoolSource(std::vector<BigNat> pool, std::unique_ptr<RandomSource> selector);

    const BigNat& draw();

    // Shared-pool form: pick with an externally owned selector.
    static const BigNat& draw_from(const std::vector<BigNat>& pool, RandomSource& selector);

    const std::vector<BigNat>& pool() const { return pool_; }
    std::size_t size() const { return pool_.size(); }

private:
    std::vector<BigNat> pool_;
    std::unique_ptr<RandomSource> selector_;
};

// Accepts decimal or 0x-prefixed hex, 64-bit range.
std::uint64_t parse_seed_text(std::string_view text);

}  // namespace coprime
