#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

namespace polyeval {

// Exact binary fixed-point scalar: value = mantissa * 2^exponent.
// Canonical form: mantissa odd or zero; zero has exponent 0.
// All ring operations are exact; rounding only happens through the
// explicitly named round_/floor_/ceil_ entry points.
class Dyadic {
public:
    Dyadic() : e_(0) {}
    Dyadic(long v) : m_(v), e_(0) { canonicalize(); }
    Dyadic(const mpz_class& m, int64_t e) : m_(m), e_(e) { canonicalize(); }
    Dyadic(mpz_class&& m, int64_t e) : m_(std::move(m)), e_(e) { canonicalize(); }

    static Dyadic pow2(int64_t k) { return Dyadic(mpz_class(1), k); }

    const mpz_class& mantissa() const { return m_; }
    int64_t exponent() const { return e_; }

    bool is_zero() const { return mpz_sgn(m_.get_mpz_t()) == 0; }
    int sign() const { return mpz_sgn(m_.get_mpz_t()); }
    bool is_one() const { return e_ == 0 && mpz_cmp_ui(m_.get_mpz_t(), 1) == 0; }

    Dyadic operator-() const {
        Dyadic r;
        r.m_ = -m_;
        r.e_ = e_;
        return r;
    }
    Dyadic abs() const {
        Dyadic r;
        r.m_ = ::abs(m_);
        r.e_ = e_;
        return r;
    }

    friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
    friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

    // exact multiplication by 2^k
    Dyadic mul_pow2(int64_t k) const {
        if (is_zero()) return Dyadic();
        Dyadic r = *this;
        r.e_ += k;
        return r;
    }

    // exact total order
    static int cmp(const Dyadic& a, const Dyadic& b);
    bool operator==(const Dyadic& o) const { return e_ == o.e_ && m_ == o.m_; }
    bool operator!=(const Dyadic& o) const { return !(*this == o); }
    bool operator<(const Dyadic& o) const { return cmp(*this, o) < 0; }
    bool operator<=(const Dyadic& o) const { return cmp(*this, o) <= 0; }
    bool operator>(const Dyadic& o) const { return cmp(*this, o) > 0; }
    bool operator>=(const Dyadic& o) const { return cmp(*this, o) >= 0; }

    // Round to a multiple of 2^(-frac), nearest, ties to even mantissa-at-that-scale.
    // |result - *this| <= 2^(-frac-1).
    Dyadic round_frac(int64_t frac) const;
    // Directed variants (toward -inf / +inf) at the same grid.
    Dyadic floor_frac(int64_t frac) const;
    Dyadic ceil_frac(int64_t frac) const;

    // bit length of |mantissa| (0 for zero)
    int64_t bitlen() const {
        return is_zero() ? 0 : static_cast<int64_t>(mpz_sizeinbase(m_.get_mpz_t(), 2));
    }
    // For nonzero x: 2^(log2_lb()) <= |x| < 2^(log2_ub()).
    int64_t log2_ub() const { return bitlen() + e_; }
    int64_t log2_lb() const { return bitlen() - 1 + e_; }
    // fractional bits in use (0 when exponent >= 0)
    int64_t frac_bits() const { return e_ < 0 ? -e_ : 0; }

    // Magnitude rounded UP to at most `bits` significant bits: result >= |*this|.
    Dyadic coarse_abs_ub(int64_t bits = 12) const;

    // bit-exact literal: [-]0x<hex-mantissa>p<signed-decimal-exponent>
    std::string to_hex_string() const;

    double to_double() const { return mpf_class(m_, 64).get_d() * std::pow(2.0, double(e_)); }

private:
    mpz_class m_;
    int64_t e_;

    void canonicalize();
};

}  // namespace polyeval
