// Timing harness for the two attack paths. The batch scan should stay
// quasilinear on a mostly-clean corpus while the pairwise scan grows with
// the square of the corpus; numbers are reported, not asserted.
//
// The corpus is mostly pairwise coprime by construction (each bulk modulus
// is a distinct word-sized prime raised to bits/64), with a few planted
// shared-factor pairs, one triangle and two duplicates so every finding
// class shows up. Plants exercise both the direct-split path and the
// pairwise fallback.
//
//   coprime_bench [--moduli N] [--bits B] [--seed S] [--skip-pairwise]

#include <cstdint>
#include <iostream>
#include <set>
#include <string>

#include "CLI11.hpp"

#include "coprime/attack.hpp"
#include "coprime/ntheory.hpp"
#include "coprime/randomness.hpp"

using namespace coprime;

namespace {

BigNat pow_u(const BigNat& base, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.raw().get_mpz_t(), e);
    return BigNat(std::move(r));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"attack timing harness"};
    std::uint64_t moduli = 2000;
    unsigned bits = 512;
    std::uint64_t seed = 1;
    bool skip_pairwise = false;
    app.add_option("--moduli", moduli, "corpus size");
    app.add_option("--bits", bits, "approximate modulus size in bits (multiple of 64, >= 128)");
    app.add_option("--seed", seed, "master seed");
    app.add_flag("--skip-pairwise", skip_pairwise, "only run the batch scan");
    CLI11_PARSE(app, argc, argv);

    if (bits < 128 || bits % 64 != 0) {
        std::cerr << "--bits must be a multiple of 64, at least 128\n";
        return 2;
    }
    if (moduli < 8) {
        std::cerr << "--moduli must be at least 8\n";
        return 2;
    }

    const unsigned long exponent = bits / 64;
    const PrimalityConfig cfg{1000, 2};  // plenty for a timing corpus
    SplitMix64Source src = split({seed, 0});
    const BigNat lo = BigNat::pow2(63) + BigNat(1);
    const BigNat hi = BigNat::pow2(64) - BigNat(1);

    std::set<BigNat> used;
    auto fresh_prime = [&]() {
        for (;;) {
            BigNat p = random_prime_in(lo, hi, cfg, src, 4096).prime;
            if (used.insert(p).second) return p;
        }
    };

    Corpus corpus;
    corpus.reserve(moduli);
    auto add = [&](BigNat n) {
        ModulusRecord r;
        r.id = "m-" + std::to_string(corpus.size());
        r.n = std::move(n);
        corpus.push_back(std::move(r));
    };

    // planted findings
    const std::uint64_t shared_pairs = std::max<std::uint64_t>(2, moduli / 256);
    for (std::uint64_t i = 0; i < shared_pairs; ++i) {
        const BigNat s = pow_u(fresh_prime(), exponent / 2);
        add(s * pow_u(fresh_prime(), exponent - exponent / 2));
        add(s * pow_u(fresh_prime(), exponent - exponent / 2));
    }
    {
        const BigNat a = pow_u(fresh_prime(), exponent / 2);
        const BigNat b = pow_u(fresh_prime(), exponent - exponent / 2);
        const BigNat c = pow_u(fresh_prime(), exponent - exponent / 2);
        add(a * b);
        add(a * c);  // triangle: forces the fallback path
        const BigNat dup = b * c;
        add(dup);
        add(dup);  // duplicate pair
    }
    // coprime bulk
    while (corpus.size() < moduli) add(pow_u(fresh_prime(), exponent));

    std::cout << "corpus: " << corpus.size() << " moduli of ~" << bits << " bits ("
              << 2 * shared_pairs + 4 << " planted non-clean)\n";

    const AttackReport batch = batch_gcd(corpus);
    std::cout << "batch:    " << batch.wall_ms << " ms, factored " << batch.factored_count
              << ", identical pairs " << batch.identical_pair_count << "\n";

    if (!skip_pairwise) {
        const AttackReport pairwise = pairwise_gcd_scan(corpus);
        std::cout << "pairwise: " << pairwise.wall_ms << " ms, factored " << pairwise.factored_count
                  << ", identical pairs " << pairwise.identical_pair_count << "\n";
        std::cout << (reports_equivalent(batch, pairwise) ? "reports agree\n"
                                                          : "REPORTS DISAGREE\n");
        return reports_equivalent(batch, pairwise) ? 0 : 1;
    }
    return 0;
}
