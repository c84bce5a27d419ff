#include "polyeval/dyadic.hpp"

#include <cmath>

namespace polyeval {

void Dyadic::canonicalize() {
    if (mpz_sgn(m_.get_mpz_t()) == 0) {
        e_ = 0;
        return;
    }
    mp_bitcnt_t tz = mpz_scan1(m_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_fdiv_q_2exp(m_.get_mpz_t(), m_.get_mpz_t(), tz);  // exact: low bits are zero
        e_ += static_cast<int64_t>(tz);
    }
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Dyadic r;
    if (a.e_ >= b.e_) {
        mpz_mul_2exp(r.m_.get_mpz_t(), a.m_.get_mpz_t(), static_cast<mp_bitcnt_t>(a.e_ - b.e_));
        r.m_ += b.m_;
        r.e_ = b.e_;
    } else {
        mpz_mul_2exp(r.m_.get_mpz_t(), b.m_.get_mpz_t(), static_cast<mp_bitcnt_t>(b.e_ - a.e_));
        r.m_ += a.m_;
        r.e_ = a.e_;
    }
    r.canonicalize();
    return r;
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero() || b.is_zero()) return Dyadic();
    Dyadic r;
    r.m_ = a.m_ * b.m_;
    r.e_ = a.e_ + b.e_;  // product of odd mantissas is odd: already canonical
    return r;
}

int Dyadic::cmp(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    // same sign: disjoint log2 windows decide without an exact subtraction
    int mag;
    if (a.log2_ub() <= b.log2_lb()) {
        mag = -1;  // |a| < 2^aub <= 2^blb <= |b|
    } else if (b.log2_ub() <= a.log2_lb()) {
        mag = 1;
    } else {
        Dyadic d = a - b;
        return d.sign();
    }
    return sa > 0 ? mag : -mag;
}

// shift > 0 assumed; round |m| >> shift to nearest, ties to even
static void round_mag_nearest_even(mpz_class& m, mp_bitcnt_t shift) {
    mpz_class q, r;
    bool neg = mpz_sgn(m.get_mpz_t()) < 0;
    mpz_class mag = ::abs(m);
    mpz_fdiv_q_2exp(q.get_mpz_t(), mag.get_mpz_t(), shift);
    mpz_fdiv_r_2exp(r.get_mpz_t(), mag.get_mpz_t(), shift);
    mpz_class half;
    mpz_setbit(half.get_mpz_t(), shift - 1);
    int c = ::cmp(r, half);
    if (c > 0 || (c == 0 && mpz_tstbit(q.get_mpz_t(), 0))) q += 1;
    m = neg ? mpz_class(-q) : q;
}

Dyadic Dyadic::round_frac(int64_t frac) const {
    if (is_zero() || e_ >= -frac) return *this;
    mp_bitcnt_t shift = static_cast<mp_bitcnt_t>(-frac - e_);
    Dyadic r;
    r.m_ = m_;
    round_mag_nearest_even(r.m_, shift);
    r.e_ = -frac;
    r.canonicalize();
    return r;
}

Dyadic Dyadic::floor_frac(int64_t frac) const {
    if (is_zero() || e_ >= -frac) return *this;
    mp_bitcnt_t shift = static_cast<mp_bitcnt_t>(-frac - e_);
    Dyadic r;
    mpz_fdiv_q_2exp(r.m_.get_mpz_t(), m_.get_mpz_t(), shift);
    r.e_ = -frac;
    r.canonicalize();
    return r;
}

Dyadic Dyadic::ceil_frac(int64_t frac) const {
    if (is_zero() || e_ >= -frac) return *this;
    mp_bitcnt_t shift = static_cast<mp_bitcnt_t>(-frac - e_);
    Dyadic r;
    mpz_cdiv_q_2exp(r.m_.get_mpz_t(), m_.get_mpz_t(), shift);
    r.e_ = -frac;
    r.canonicalize();
    return r;
}

Dyadic Dyadic::coarse_abs_ub(int64_t bits) const {
    if (is_zero()) return Dyadic();
    int64_t bl = bitlen();
    if (bl <= bits) return abs();
    mp_bitcnt_t shift = static_cast<mp_bitcnt_t>(bl - bits);
    Dyadic r;
    mpz_class mag = ::abs(m_);
    mpz_cdiv_q_2exp(r.m_.get_mpz_t(), mag.get_mpz_t(), shift);  // ceil: upper bound
    r.e_ = e_ + static_cast<int64_t>(shift);
    r.canonicalize();
    return r;
}

std::string Dyadic::to_hex_string() const {
    std::string mant = m_.get_str(16);  // includes '-' if negative
    std::string out;
    if (!mant.empty() && mant[0] == '-') {
        out = "-0x" + mant.substr(1);
    } else {
        out = "0x" + mant;
    }
    out += "p" + std::to_string(e_);
    return out;
}

}  // namespace polyeval
