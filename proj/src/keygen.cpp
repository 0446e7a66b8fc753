#include "coprime/keygen.hpp"

namespace coprime {

namespace {

constexpr std::uint64_t kInnerAttemptFactor = 64;

template <typename ImageFn>
KeyPair keygen_derived(unsigned k, const Policy& policy, ImageFn&& image, const PrimalityConfig& cfg,
                       RandomSource& src, std::uint64_t max_outer, bool strict) {
    const DerivationParams params(k);
    if (max_outer == 0) max_outer = default_max_outer(k);
    const BigNat lo = params.p_min();
    const BigNat hi = strict ? params.strict_p_max() : params.p_max();
    const std::uint64_t max_inner = kInnerAttemptFactor * k;

    std::uint64_t outer = 0;
    std::uint64_t tests = 0;
    while (outer < max_outer) {
        PrimeSearchResult ps = random_prime_in(lo, hi, cfg, src, max_inner);
        tests += ps.attempts;
        BigNat q = image(ps.prime);
        ++outer;
        ++tests;
        if (is_probable_prime(q, cfg, src)) {
            KeyPair kp;
            kp.k = k;
            kp.n = ps.prime * q;
            kp.p = std::move(ps.prime);
            kp.q = std::move(q);
            kp.policy = policy;
            kp.outer_attempts = outer;
            kp.candidate_tests = tests;
            return kp;
        }
    }
    throw ExhaustionError("keygen: no prime complement at k = " + std::to_string(k) + " after " +
                              std::to_string(outer) + " primes tried (" + std::to_string(tests) +
                              " candidate tests)",
                          outer, tests);
}

}  // namespace

std::string Policy::tag() const {
    switch (kind) {
        case PolicyKind::fixed: return "fixed";
        case PolicyKind::fixed_strict: return "fixed_strict";
        case PolicyKind::independent: return "independent";
        case PolicyKind::offset: return "offset:" + offset_b.to_dec();
    }
    throw DomainError("unknown policy kind");
}

Policy Policy::from_tag(std::string_view tag) {
    if (tag == "fixed") return fixed(false);
    if (tag == "fixed_strict") return fixed(true);
    if (tag == "independent") return independent();
    constexpr std::string_view prefix = "offset:";
    if (tag.substr(0, prefix.size()) == prefix) {
        BigNat b = BigNat::from_dec(tag.substr(prefix.size()));
        if (b.is_zero()) throw ParseError(0, "offset B must be >= 1");
        return offset(std::move(b));
    }
    throw ParseError(0, "unknown policy \"" + std::string(tag) + "\"");
}

std::uint64_t default_max_outer(unsigned k) { return 64ull * k; }

KeyPair keygen_fixed(unsigned k, const PrimalityConfig& cfg, RandomSource& src,
                     std::uint64_t max_outer, bool strict) {
    return keygen_derived(
        k, Policy::fixed(strict), [k](const BigNat& p) { return complement(p, k); }, cfg, src,
        max_outer, strict);
}

KeyPair keygen_offset(unsigned k, const BigNat& b, const PrimalityConfig& cfg, RandomSource& src,
                      std::uint64_t max_outer) {
    return keygen_derived(
        k, Policy::offset(b), [k, &b](const BigNat& p) { return complement_offset(p, k, b); }, cfg,
        src, max_outer, false);
}

KeyPair keygen_independent(unsigned k, const PrimalityConfig& cfg, RandomSource& src) {
    if (k < 2) throw DomainError("k must be >= 2");
    const std::uint64_t max_inner = kInnerAttemptFactor * k;
    PrimeSearchResult p =
        random_prime_in(BigNat::pow2(k) + BigNat(1), BigNat::pow2(k + 1) - BigNat(1), cfg, src, max_inner);
    PrimeSearchResult q =
        random_prime_in(BigNat::pow2(k - 1) + BigNat(1), BigNat::pow2(k) - BigNat(1), cfg, src, max_inner);
    KeyPair kp;
    kp.k = k;
    kp.n = p.prime * q.prime;
    kp.p = std::move(p.prime);
    kp.q = std::move(q.prime);
    kp.policy = Policy::independent();
    kp.outer_attempts = 1;
    kp.candidate_tests = p.attempts + q.attempts;
    return kp;
}

KeyPair generate(unsigned k, const Policy& policy, const PrimalityConfig& cfg, RandomSource& src,
                 std::uint64_t max_outer) {
    switch (policy.kind) {
        case PolicyKind::fixed: return keygen_fixed(k, cfg, src, max_outer, false);
        case PolicyKind::fixed_strict: return keygen_fixed(k, cfg, src, max_outer, true);
        case PolicyKind::independent: return keygen_independent(k, cfg, src);
        case PolicyKind::offset: return keygen_offset(k, policy.offset_b, cfg, src, max_outer);
    }
    throw DomainError("unknown policy kind");
}

PrivateKey extend_to_private_key(const KeyPair& kp, const BigNat& e) {
    if (!e.odd() || e < BigNat(3ul)) throw DomainError("public exponent must be odd and >= 3");
    BigNat lambda = lcm(kp.p - BigNat(1), kp.q - BigNat(1));
    BigNat d = mod_inverse(e % lambda, lambda);
    return {kp, e, std::move(d), std::move(lambda)};
}

}  // namespace coprime
