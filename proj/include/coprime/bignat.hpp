#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include "coprime/errors.hpp"

namespace coprime {

// Arbitrary-precision non-negative integer. A value wrapper over GMP's
// mpz_class that rejects negative states and pins down the canonical text
// encodings used in file formats: minimal lowercase hex and plain decimal.
class BigNat {
public:
    BigNat() = default;
    BigNat(unsigned long value) : v_(value) {}
    BigNat(unsigned int value) : v_(static_cast<unsigned long>(value)) {}
    BigNat(int value) : v_(check_signed(value)) {}
    BigNat(long value) : v_(check_signed(value)) {}
    explicit BigNat(const mpz_class& value) : v_(value) { require_non_negative(); }
    explicit BigNat(mpz_class&& value) : v_(std::move(value)) { require_non_negative(); }

    static BigNat pow2(unsigned long exponent);
    static BigNat from_dec(std::string_view text);
    // Canonical hex only: non-empty, lowercase, no "0x" prefix, no leading zeros.
    static BigNat from_hex(std::string_view text);

    std::string to_dec() const;
    std::string to_hex() const;

    bool is_zero() const { return mpz_sgn(v_.get_mpz_t()) == 0; }
    bool odd() const { return mpz_odd_p(v_.get_mpz_t()) != 0; }
    // Number of significant bits; 0 for the value 0.
    std::size_t bit_length() const;
    bool fits_u64() const { return mpz_fits_ulong_p(v_.get_mpz_t()) != 0; }
    std::uint64_t to_u64() const;

    // Exact division: the caller guarantees divisibility.
    BigNat div_exact(const BigNat& d) const;
    BigNat isqrt() const;

    const mpz_class& raw() const { return v_; }
    mpz_class& raw() { return v_; }

    friend BigNat operator+(const BigNat& a, const BigNat& b) { return BigNat(mpz_class(a.v_ + b.v_)); }
    friend BigNat operator-(const BigNat& a, const BigNat& b);
    friend BigNat operator*(const BigNat& a, const BigNat& b) { return BigNat(mpz_class(a.v_ * b.v_)); }
    friend BigNat operator/(const BigNat& a, const BigNat& b);
    friend BigNat operator%(const BigNat& a, const BigNat& b);
    friend BigNat operator<<(const BigNat& a, unsigned long bits);
    friend BigNat operator>>(const BigNat& a, unsigned long bits);

    friend bool operator==(const BigNat& a, const BigNat& b) { return mpz_cmp(a.v_.get_mpz_t(), b.v_.get_mpz_t()) == 0; }
    friend bool operator!=(const BigNat& a, const BigNat& b) { return !(a == b); }
    friend bool operator<(const BigNat& a, const BigNat& b) { return mpz_cmp(a.v_.get_mpz_t(), b.v_.get_mpz_t()) < 0; }
    friend bool operator>(const BigNat& a, const BigNat& b) { return b < a; }
    friend bool operator<=(const BigNat& a, const BigNat& b) { return !(b < a); }
    friend bool operator>=(const BigNat& a, const BigNat& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const BigNat& v);

private:
    void require_non_negative() const {
        if (mpz_sgn(v_.get_mpz_t()) < 0) throw DomainError("BigNat cannot hold a negative value");
    }
    static unsigned long check_signed(long value) {
        if (value < 0) throw DomainError("BigNat cannot hold a negative value");
        return static_cast<unsigned long>(value);
    }

    mpz_class v_{0};
};

}  // namespace coprime
