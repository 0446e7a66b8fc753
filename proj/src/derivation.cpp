#include "coprime/derivation.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "json.hpp"

namespace coprime {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t image_u64(std::uint64_t p, unsigned k) {
    // 2k <= 52 under kAuditCeiling, so everything fits in 64 bits.
    return 1 + (std::uint64_t{1} << (2 * k)) / p;
}

void require_auditable(unsigned k, unsigned cap) {
    if (k < 2) throw DomainError("k must be >= 2");
    if (cap > kAuditCeiling) cap = kAuditCeiling;
    if (k > cap)
        throw DomainError("exhaustive enumeration refused for k = " + std::to_string(k) +
                          " (cap " + std::to_string(cap) + ")");
}

}  // namespace

DerivationParams::DerivationParams(unsigned k_) : k(k_) {
    if (k < 2) throw DomainError("k must be >= 2");
}

bool DerivationParams::contains(const BigNat& p) const {
    return p.odd() && p > p_lower() && p < p_upper();
}

void DerivationParams::require(const BigNat& p) const {
    if (!contains(p))
        throw DomainError("p = " + p.to_dec() + " is not an odd value strictly inside (2^" +
                          std::to_string(k) + "+1, 2^" + std::to_string(k + 1) + ")");
}

BigNat DerivationParams::strict_p_max() const { return BigNat::pow2(2 * k + 1).isqrt(); }

BigNat complement(const BigNat& p, unsigned k) {
    DerivationParams(k).require(p);
    return BigNat(1) + BigNat::pow2(2 * k) / p;
}

BigNat complement_divfree(const BigNat& p, unsigned k) {
    DerivationParams(k).require(p);
    const BigNat t = BigNat::pow2(2 * k);
    return (t + p - t % p).div_exact(p);
}

BigNat complement_lenstra98(const BigNat& p, unsigned k) {
    DerivationParams(k).require(p);
    const BigNat t = BigNat::pow2(2 * k - 1);
    return (t + p - t % p).div_exact(p);
}

BigNat complement_offset(const BigNat& p, unsigned k, const BigNat& b) {
    DerivationParams(k).require(p);
    if (b.is_zero()) throw DomainError("offset B must be >= 1");
    return b + BigNat::pow2(2 * k) / p;
}

BigNat complement_forward_search(const BigNat& p, unsigned k, const PrimalityConfig& cfg,
                                 RandomSource& src) {
    BigNat start = complement(p, k);
    if (!start.odd()) start = start + BigNat(1);
    return next_prime_search(start, cfg, src);
}

std::vector<std::uint64_t> domain_primes(unsigned k, unsigned cap) {
    require_auditable(k, cap);
    const std::uint64_t hi = std::uint64_t{1} << (k + 1);  // exclusive
    const std::uint64_t lo = (std::uint64_t{1} << k) + 1;  // exclusive
    std::vector<bool> composite(hi, false);
    for (std::uint64_t i = 2; i * i < hi; ++i) {
        if (composite[i]) continue;
        for (std::uint64_t j = i * i; j < hi; j += i) composite[j] = true;
    }
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = lo + 1; p < hi; ++p) {
        if (!composite[p]) primes.push_back(p);
    }
    return primes;
}

BoundsReport audit_bounds(unsigned k, unsigned cap) {
    BoundsReport report;
    report.k = k;
    const std::uint64_t lower = std::uint64_t{1} << (k - 1);
    const std::uint64_t upper = std::uint64_t{1} << k;
    for (std::uint64_t p : domain_primes(k, cap)) {
        const std::uint64_t img = image_u64(p, k);
        ++report.checked;
        if (!(lower < img && img < upper)) report.violations.push_back({p, img});
    }
    return report;
}

std::vector<CollisionRecord> audit_injectivity(unsigned k, unsigned cap) {
    std::map<std::uint64_t, std::vector<std::uint64_t>> by_image;
    for (std::uint64_t p : domain_primes(k, cap)) by_image[image_u64(p, k)].push_back(p);
    std::vector<CollisionRecord> collisions;
    for (const auto& [img, ps] : by_image) {
        for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                collisions.push_back({ps[i], ps[j], img, is_prime_u64(img)});
            }
        }
    }
    std::sort(collisions.begin(), collisions.end(), [](const auto& a, const auto& b) {
        return std::pair(a.p1, a.p2) < std::pair(b.p1, b.p2);
    });
    return collisions;
}

PairwiseSafetyReport audit_pairwise_safety(unsigned k, unsigned cap) {
    PairwiseSafetyReport report;
    report.k = k;
    for (std::uint64_t p : domain_primes(k, cap)) {
        const std::uint64_t q = image_u64(p, k);
        if (is_prime_u64(q)) report.valid_pairs.push_back({p, q, p * q});
    }
    const auto& v = report.valid_pairs;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            // Distinct p gives distinct n here, so any common factor is a finding.
            const std::uint64_t g = std::gcd(v[i].n, v[j].n);
            if (g > 1) report.unsafe_pairs.push_back({v[i].n, v[j].n, g});
        }
    }
    return report;
}

std::string to_json_string(const BoundsReport& report) {
    ordered_json j;
    j["check"] = "bounds";
    j["k"] = report.k;
    j["checked"] = report.checked;
    j["violations"] = ordered_json::array();
    for (const auto& violation : report.violations) {
        j["violations"].push_back({{"p", violation.p}, {"image", violation.image}});
    }
    return j.dump(2) + "\n";
}

std::string to_json_string(unsigned k, const std::vector<CollisionRecord>& collisions) {
    ordered_json j;
    j["check"] = "injectivity";
    j["k"] = k;
    j["collisions"] = ordered_json::array();
    for (const auto& c : collisions) {
        j["collisions"].push_back(
            {{"p1", c.p1}, {"p2", c.p2}, {"image", c.image}, {"image_is_prime", c.image_is_prime}});
    }
    return j.dump(2) + "\n";
}

std::string to_json_string(const PairwiseSafetyReport& report) {
    ordered_json j;
    j["check"] = "pairwise";
    j["k"] = report.k;
    j["valid_pairs"] = ordered_json::array();
    for (const auto& vp : report.valid_pairs) {
        j["valid_pairs"].push_back({{"p", vp.p}, {"q", vp.q}, {"n", vp.n}});
    }
    j["unsafe_pairs"] = ordered_json::array();
    for (const auto& up : report.unsafe_pairs) {
        j["unsafe_pairs"].push_back({{"n1", up.n1}, {"n2", up.n2}, {"common", up.common}});
    }
    return j.dump(2) + "\n";
}

}  // namespace coprime
