#include "coprime/bignat.hpp"

#include <cctype>
#include <ostream>

namespace coprime {

namespace {

bool canonical_hex(std::string_view text) {
    if (text.empty()) return false;
    if (text == "0") return true;
    if (text.front() == '0') return false;  // covers "0x..." and leading zeros
    for (char c : text) {
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    }
    return true;
}

}  // namespace

BigNat BigNat::pow2(unsigned long exponent) {
    mpz_class v;
    mpz_setbit(v.get_mpz_t(), exponent);
    return BigNat(std::move(v));
}

BigNat BigNat::from_dec(std::string_view text) {
    if (text.empty()) throw ParseError(0, "empty decimal literal");
    for (char c : text) {
        if (c < '0' || c > '9') throw ParseError(0, "invalid decimal literal \"" + std::string(text) + "\"");
    }
    if (text.size() > 1 && text.front() == '0') throw ParseError(0, "leading zeros in decimal literal \"" + std::string(text) + "\"");
    mpz_class v;
    if (mpz_set_str(v.get_mpz_t(), std::string(text).c_str(), 10) != 0)
        throw ParseError(0, "invalid decimal literal \"" + std::string(text) + "\"");
    return BigNat(std::move(v));
}

BigNat BigNat::from_hex(std::string_view text) {
    if (!canonical_hex(text)) {
        if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
            throw ParseError(0, "hex value \"" + std::string(text) + "\": '0x' prefix forbidden");
        throw ParseError(0, "invalid hex value \"" + std::string(text) +
                                "\" (expected minimal lowercase hex, no prefix)");
    }
    mpz_class v;
    mpz_set_str(v.get_mpz_t(), std::string(text).c_str(), 16);
    return BigNat(std::move(v));
}

std::string BigNat::to_dec() const { return v_.get_str(10); }

std::string BigNat::to_hex() const { return v_.get_str(16); }

std::size_t BigNat::bit_length() const {
    if (is_zero()) return 0;
    return mpz_sizeinbase(v_.get_mpz_t(), 2);
}

std::uint64_t BigNat::to_u64() const {
    if (!fits_u64()) throw DomainError("value " + to_dec() + " does not fit in 64 bits");
    return static_cast<std::uint64_t>(mpz_get_ui(v_.get_mpz_t()));
}

BigNat BigNat::div_exact(const BigNat& d) const {
    if (d.is_zero()) throw DomainError("division by zero");
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), v_.get_mpz_t(), d.v_.get_mpz_t());
    return BigNat(std::move(q));
}

BigNat BigNat::isqrt() const {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v_.get_mpz_t());
    return BigNat(std::move(r));
}

BigNat operator-(const BigNat& a, const BigNat& b) {
    if (b > a) throw DomainError("BigNat underflow: " + a.to_dec() + " - " + b.to_dec());
    return BigNat(mpz_class(a.v_ - b.v_));
}

BigNat operator/(const BigNat& a, const BigNat& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
    return BigNat(std::move(q));
}

BigNat operator%(const BigNat& a, const BigNat& b) {
    if (b.is_zero()) throw DomainError("modulo by zero");
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), a.v_.get_mpz_t(), b.v_.get_mpz_t());
    return BigNat(std::move(r));
}

BigNat operator<<(const BigNat& a, unsigned long bits) {
    mpz_class r;
    mpz_mul_2exp(r.get_mpz_t(), a.v_.get_mpz_t(), bits);
    return BigNat(std::move(r));
}

BigNat operator>>(const BigNat& a, unsigned long bits) {
    mpz_class r;
    mpz_fdiv_q_2exp(r.get_mpz_t(), a.v_.get_mpz_t(), bits);
    return BigNat(std::move(r));
}

std::ostream& operator<<(std::ostream& os, const BigNat& v) { return os << v.to_dec(); }

}  // namespace coprime
