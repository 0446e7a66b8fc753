#include "doctest.h"

#include "coprime/keygen.hpp"
#include "support.hpp"

using namespace coprime;
using namespace coprime::testing;

namespace {
const PrimalityConfig kCfg;
}

TEST_CASE("fixed policy walks p-primes until the image is prime") {
    // domain (65, 128): draws are 6-bit, candidate = (66 + r) | 1.
    // Ascending primes 67, 71, 73, 79, 83 have composite images; 89 -> 47.
    ScriptedSource src({1, 5, 7, 13, 17, 23});
    const KeyPair kp = keygen_fixed(6, kCfg, src);
    CHECK(kp.p == BigNat(89));
    CHECK(kp.q == BigNat(47));
    CHECK(kp.n == BigNat(4183));
    CHECK(kp.outer_attempts == 6);
    CHECK(kp.candidate_tests == 12);  // six p tests plus six q tests
    CHECK(kp.policy.tag() == "fixed");
    CHECK(src.exhausted());
}

TEST_CASE("fixed policy at k=5 accepts only p=61") {
    ScriptedSource src({3, 7, 9, 13, 19, 25, 27});  // 37,41,43,47,53,59,61
    const KeyPair kp = keygen_fixed(5, kCfg, src);
    CHECK(kp.p == BigNat(61));
    CHECK(kp.q == BigNat(17));
    CHECK(kp.n == BigNat(1037));
    CHECK(kp.outer_attempts == 7);
}

TEST_CASE("fixed policy exhausts at k=4 where no image is prime") {
    SplitMix64Source src(1);
    try {
        keygen_fixed(4, kCfg, src, 100);
        FAIL("expected ExhaustionError");
    } catch (const ExhaustionError& e) {
        CHECK(e.attempts() == 100);
        CHECK(e.candidate_tests() >= e.attempts());
    }
}

TEST_CASE("generated keys satisfy the structural invariants") {
    for (unsigned k : {8u, 16u, 32u}) {
        SplitMix64Source src = split({99, k});
        const KeyPair kp = keygen_fixed(k, kCfg, src);
        CHECK(kp.n == kp.p * kp.q);
        CHECK(kp.q == complement(kp.p, k));
        CHECK(kp.n.odd());
        CHECK(kp.p > DerivationParams(k).p_lower());
        CHECK(kp.p < DerivationParams(k).p_upper());
        CHECK(kp.q > BigNat::pow2(k - 1));
        CHECK(kp.q < BigNat::pow2(k));
        CHECK(kp.candidate_tests >= kp.outer_attempts);
    }
}

TEST_CASE("strict mode keeps p at or below isqrt(2^(2k+1))") {
    for (unsigned k : {16u, 24u}) {
        SplitMix64Source src = split({7, k});
        const KeyPair kp = keygen_fixed(k, kCfg, src, 0, true);
        CHECK(kp.p <= DerivationParams(k).strict_p_max());
        CHECK(kp.q == complement(kp.p, k));
        CHECK(kp.policy.tag() == "fixed_strict");
    }
}

TEST_CASE("identical seed and policy reproduce the key") {
    SplitMix64Source a = split({5, 0});
    SplitMix64Source b = split({5, 0});
    const KeyPair ka = keygen_fixed(24, kCfg, a);
    const KeyPair kb = keygen_fixed(24, kCfg, b);
    CHECK(ka.p == kb.p);
    CHECK(ka.n == kb.n);
    CHECK(ka.candidate_tests == kb.candidate_tests);
}

TEST_CASE("independent policy") {
    {
        ScriptedSource src({24, 14});  // p = 65+24 = 89, q = 33+14 = 47
        const KeyPair kp = keygen_independent(6, kCfg, src);
        CHECK(kp.p == BigNat(89));
        CHECK(kp.q == BigNat(47));
        CHECK(kp.n == BigNat(4183));
        CHECK(kp.outer_attempts == 1);
        CHECK(kp.candidate_tests == 2);
    }
    {
        ScriptedSource src({24, 10});  // q = 43
        const KeyPair kp = keygen_independent(6, kCfg, src);
        CHECK(kp.n == BigNat(3827));
    }
    for (unsigned k : {8u, 16u}) {
        SplitMix64Source src = split({11, k});
        const KeyPair kp = keygen_independent(k, kCfg, src);
        CHECK(kp.n == kp.p * kp.q);
        CHECK(kp.p > BigNat::pow2(k));
        CHECK(kp.p < BigNat::pow2(k + 1));
        CHECK(kp.q > BigNat::pow2(k - 1));
        CHECK(kp.q < BigNat::pow2(k));
    }
}

TEST_CASE("a shared p is exposed by gcd of the two moduli") {
    ScriptedSource a({24, 14});
    ScriptedSource b({24, 10});
    const KeyPair ka = keygen_independent(6, kCfg, a);
    const KeyPair kb = keygen_independent(6, kCfg, b);
    CHECK(gcd(ka.n, kb.n) == ka.p);
}

TEST_CASE("offset policy") {
    {
        // images: 67 -> 64 composite, 71 -> 60 composite, 73 -> 59 prime
        ScriptedSource src({1, 5, 7});
        const KeyPair kp = keygen_offset(6, BigNat(3), kCfg, src);
        CHECK(kp.p == BigNat(73));
        CHECK(kp.q == BigNat(59));
        CHECK(kp.n == BigNat(4307));
        CHECK(kp.policy.tag() == "offset:3");
    }
    {
        ScriptedSource src({3});  // p = 37, image 27 + 2 = 29 prime
        const KeyPair kp = keygen_offset(5, BigNat(2), kCfg, src);
        CHECK(kp.p == BigNat(37));
        CHECK(kp.q == BigNat(29));
        CHECK(kp.n == BigNat(1073));
    }
    // B = 1 reduces to the fixed policy
    SplitMix64Source a = split({9, 0});
    SplitMix64Source b = split({9, 0});
    const KeyPair fixed = keygen_fixed(16, kCfg, a);
    const KeyPair offset1 = keygen_offset(16, BigNat(1), kCfg, b);
    CHECK(fixed.p == offset1.p);
    CHECK(fixed.q == offset1.q);
    CHECK(fixed.n == offset1.n);
    CHECK(fixed.outer_attempts == offset1.outer_attempts);
    CHECK(fixed.candidate_tests == offset1.candidate_tests);
}

TEST_CASE("policy tags round trip") {
    CHECK(Policy::from_tag("fixed") == Policy::fixed());
    CHECK(Policy::from_tag("fixed_strict") == Policy::fixed(true));
    CHECK(Policy::from_tag("independent") == Policy::independent());
    CHECK(Policy::from_tag("offset:17") == Policy::offset(BigNat(17)));
    CHECK(Policy::from_tag("offset:17").tag() == "offset:17");
    CHECK_THROWS_AS(Policy::from_tag("offset:0"), ParseError);
    CHECK_THROWS_AS(Policy::from_tag("offset:"), ParseError);
    CHECK_THROWS_AS(Policy::from_tag("bogus"), ParseError);
}

TEST_CASE("private key extension") {
    ScriptedSource src({23});
    const KeyPair kp = keygen_fixed(6, kCfg, src);  // (89, 47, 4183)
    const PrivateKey pk = extend_to_private_key(kp);
    CHECK(pk.carmichael_lambda == BigNat(2024));
    CHECK(pk.e == BigNat(65537));
    CHECK(pk.d == BigNat(329));
    CHECK((pk.e % pk.carmichael_lambda) * pk.d % pk.carmichael_lambda == BigNat(1));
    // encryption round trip
    CHECK(mod_pow(mod_pow(BigNat(2), pk.e, kp.n), pk.d, kp.n) == BigNat(2));

    CHECK_THROWS_AS(extend_to_private_key(kp, BigNat(4)), DomainError);
    CHECK_THROWS_AS(extend_to_private_key(kp, BigNat(1)), DomainError);
    // lambda = lcm(6, 12) = 12 shares a factor with e = 3
    KeyPair tiny;
    tiny.p = BigNat(7);
    tiny.q = BigNat(13);
    tiny.n = BigNat(91);
    CHECK_THROWS_AS(extend_to_private_key(tiny, BigNat(3)), NotInvertibleError);
}

TEST_CASE("strict-mode keys are pairwise coprime unless identical") {
    std::vector<KeyPair> keys;
    for (std::uint64_t i = 0; i < 30; ++i) {
        SplitMix64Source src = split({606, i});
        keys.push_back(keygen_fixed(16, kCfg, src, 0, true));
    }
    for (std::size_t i = 0; i < keys.size(); ++i) {
        for (std::size_t j = i + 1; j < keys.size(); ++j) {
            if (keys[i].p == keys[j].p) {
                CHECK(keys[i].n == keys[j].n);  // same p forces the same modulus
            } else if (keys[i].n != keys[j].n) {
                CHECK(gcd(keys[i].n, keys[j].n) == BigNat(1));
            }
        }
    }
}

TEST_CASE("round trips hold for every policy") {
    const std::vector<Policy> policies = {Policy::fixed(), Policy::fixed(true),
                                          Policy::independent(), Policy::offset(BigNat(3))};
    std::uint64_t stream = 0;
    for (const Policy& policy : policies) {
        for (int i = 0; i < 5; ++i) {
            SplitMix64Source src = split({31337, stream++});
            const KeyPair kp = generate(32, policy, kCfg, src);
            const PrivateKey pk = extend_to_private_key(kp);
            CHECK((pk.e * pk.d) % pk.carmichael_lambda == BigNat(1));
            for (int m = 0; m < 10; ++m) {
                const BigNat msg = uniform_below(kp.n, src);
                CHECK(mod_pow(mod_pow(msg, pk.e, kp.n), pk.d, kp.n) == msg);
            }
        }
    }
}
