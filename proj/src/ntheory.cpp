#include "coprime/ntheory.hpp"

#include <string>

namespace coprime {

namespace {

void require_config(const PrimalityConfig& cfg) {
    if (cfg.trial_division_bound < 2) throw DomainError("trial_division_bound must be >= 2");
    if (cfg.mr_rounds < 1) throw DomainError("mr_rounds must be >= 1");
}

// n odd, n >= 5, no factor below the trial-division bound.
bool miller_rabin(const mpz_class& n, std::uint32_t rounds, RandomSource& src) {
    const mpz_class nm1 = n - 1;
    const unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    mpz_class d;
    mpz_fdiv_q_2exp(d.get_mpz_t(), nm1.get_mpz_t(), s);

    const BigNat base_lo(2ul);
    const BigNat base_hi(mpz_class(n - 2));
    mpz_class x;
    for (std::uint32_t round = 0; round < rounds; ++round) {
        const BigNat base = uniform_in_range(base_lo, base_hi, src);
        mpz_powm(x.get_mpz_t(), base.raw().get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == nm1) continue;
        bool witness = true;
        for (unsigned long i = 1; i < s; ++i) {
            mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
            if (x == nm1) {
                witness = false;
                break;
            }
            if (x == 1) break;  // nontrivial square root of 1
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace

BigNat gcd(const BigNat& a, const BigNat& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
    return BigNat(std::move(g));
}

BigNat lcm(const BigNat& a, const BigNat& b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.raw().get_mpz_t(), b.raw().get_mpz_t());
    return BigNat(std::move(l));
}

BigNat mod_pow(const BigNat& base, const BigNat& exp, const BigNat& m) {
    if (m.is_zero()) throw DomainError("mod_pow: modulus must be >= 1");
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.raw().get_mpz_t(), exp.raw().get_mpz_t(), m.raw().get_mpz_t());
    return BigNat(std::move(r));
}

BigNat mod_inverse(const BigNat& a, const BigNat& m) {
    if (m < BigNat(2ul)) throw DomainError("mod_inverse: modulus must be >= 2");
    mpz_class x;
    if (mpz_invert(x.get_mpz_t(), a.raw().get_mpz_t(), m.raw().get_mpz_t()) == 0)
        throw NotInvertibleError(a, m, gcd(a, m));
    return BigNat(std::move(x));
}

bool is_probable_prime(const BigNat& n, const PrimalityConfig& cfg, RandomSource& src) {
    require_config(cfg);
    const mpz_class& v = n.raw();
    if (mpz_cmp_ui(v.get_mpz_t(), 2) < 0) return false;
    if (mpz_cmp_ui(v.get_mpz_t(), 4) < 0) return true;  // 2 and 3
    if (mpz_even_p(v.get_mpz_t())) return false;
    for (std::uint32_t d : odd_trial_primes(cfg.trial_division_bound)) {
        const unsigned long dd = static_cast<unsigned long>(d) * d;
        if (mpz_cmp_ui(v.get_mpz_t(), dd) < 0) return true;  // trial division was complete
        if (mpz_divisible_ui_p(v.get_mpz_t(), d)) return mpz_cmp_ui(v.get_mpz_t(), d) == 0;
    }
    return miller_rabin(v, cfg.mr_rounds, src);
}

PrimeSearchResult random_prime_in(const BigNat& lo, const BigNat& hi, const PrimalityConfig& cfg,
                                  RandomSource& src, std::uint64_t max_attempts) {
    if (lo > hi) throw DomainError("random_prime_in: empty interval");
    if (lo == hi && !lo.odd()) throw DomainError("random_prime_in: interval holds no odd number");
    std::uint64_t attempts = 0;
    while (attempts < max_attempts) {
        BigNat candidate = uniform_in_range(lo, hi, src);
        mpz_setbit(candidate.raw().get_mpz_t(), 0);
        if (candidate > hi) continue;  // left the interval; redraw
        ++attempts;
        if (is_probable_prime(candidate, cfg, src)) return {std::move(candidate), attempts};
    }
    throw ExhaustionError("random_prime_in: no prime in [" + lo.to_dec() + ", " + hi.to_dec() +
                              "] after " + std::to_string(attempts) + " attempts",
                          attempts);
}

BigNat next_prime_search(const BigNat& start, const PrimalityConfig& cfg, RandomSource& src) {
    if (!start.odd() || start < BigNat(3ul))
        throw DomainError("next_prime_search: start must be odd and >= 3");
    BigNat candidate = start;
    while (!is_probable_prime(candidate, cfg, src)) candidate = candidate + BigNat(2ul);
    return candidate;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

const std::vector<std::uint32_t>& odd_trial_primes(std::uint32_t bound) {
    thread_local std::uint32_t cached_bound = 0;
    thread_local std::vector<std::uint32_t> cached;
    if (bound != cached_bound) {
        cached.clear();
        std::vector<bool> composite(bound, false);
        for (std::uint64_t i = 3; i < bound; i += 2) {
            if (composite[i]) continue;
            cached.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j < bound; j += 2 * i) composite[j] = true;
        }
        cached_bound = bound;
    }
    return cached;
}

}  // namespace coprime
