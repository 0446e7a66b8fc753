#include "coprime/randomness.hpp"

#include <random>
#include <string>

namespace coprime {

namespace {

template <typename NextWord>
BigNat assemble_bits(unsigned bits, NextWord&& next_word) {
    if (bits == 0) return BigNat();
    const unsigned words = (bits + 63) / 64;
    std::vector<std::uint64_t> buf(words);
    for (auto& w : buf) w = next_word();
    mpz_class acc;
    // order 1: most significant word first
    mpz_import(acc.get_mpz_t(), words, 1, sizeof(std::uint64_t), 0, 0, buf.data());
    mpz_fdiv_r_2exp(acc.get_mpz_t(), acc.get_mpz_t(), bits);
    return BigNat(std::move(acc));
}

}  // namespace

SplitMixState splitmix_next(std::uint64_t state) {
    std::uint64_t s = state + 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return {s, z ^ (z >> 31)};
}

std::uint64_t SplitMix64Source::next_word() {
    SplitMixState r = splitmix_next(state_);
    state_ = r.state;
    return r.output;
}

BigNat SplitMix64Source::next_bits(unsigned bits) {
    return assemble_bits(bits, [this] { return next_word(); });
}

BigNat OsEntropySource::next_bits(unsigned bits) {
    return assemble_bits(bits, [] {
        static thread_local std::random_device rd;
        return (static_cast<std::uint64_t>(rd()) << 32) | rd();
    });
}

SplitMix64Source split(SplitSeed seed) {
    return SplitMix64Source(splitmix_next(seed.master_seed ^ seed.stream_index).output);
}

BigNat uniform_below(const BigNat& bound, RandomSource& src) {
    if (bound.is_zero()) throw DomainError("uniform_below: empty range");
    return uniform_in_range(BigNat(), bound - BigNat(1), src);
}

BigNat uniform_in_range(const BigNat& lo, const BigNat& hi, RandomSource& src) {
    if (lo > hi) throw DomainError("uniform_in_range: lo > hi");
    const BigNat width = hi - lo;
    const unsigned bits = static_cast<unsigned>(width.bit_length());
    for (;;) {
        BigNat r = src.next_bits(bits);
        if (r <= width) return lo + r;
    }
}

PoolSource::PoolSource(std::vector<BigNat> pool, std::unique_ptr<RandomSource> selector)
    : pool_(std::move(pool)), selector_(std::move(selector)) {
    if (pool_.empty()) throw ConfigError("PoolSource: empty pool");
    if (!selector_) throw ConfigError("PoolSource: missing selector");
}

const BigNat& PoolSource::draw() { return draw_from(pool_, *selector_); }

const BigNat& PoolSource::draw_from(const std::vector<BigNat>& pool, RandomSource& selector) {
    if (pool.empty()) throw ConfigError("pool draw from empty pool");
    const BigNat idx = uniform_below(BigNat(static_cast<unsigned long>(pool.size())), selector);
    return pool[idx.to_u64()];
}

std::uint64_t parse_seed_text(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError(0, "empty seed");
    try {
        std::size_t used = 0;
        std::uint64_t v;
        if (s.size() > 2 && (s[0] == '0') && (s[1] == 'x' || s[1] == 'X')) {
            v = std::stoull(s.substr(2), &used, 16);
            used += 2;
        } else {
            v = std::stoull(s, &used, 10);
        }
        if (used != s.size()) throw ParseError(0, "invalid seed \"" + s + "\"");
        return v;
    } catch (const std::out_of_range&) {
        throw ParseError(0, "seed \"" + s + "\" exceeds 64 bits");
    } catch (const std::invalid_argument&) {
        throw ParseError(0, "invalid seed \"" + s + "\"");
    }
}

}  // namespace coprime
