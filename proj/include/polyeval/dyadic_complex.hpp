#pragma once

#include "polyeval/dyadic.hpp"

namespace polyeval {

// Exact complex dyadic. Modulus handling never takes square roots:
// |re|+|im| overestimates |z| by at most sqrt(2), max(|re|,|im|) underestimates
// by at most sqrt(2); callers budget the extra bit explicitly.
struct DyadicComplex {
    Dyadic re, im;

    DyadicComplex() = default;
    DyadicComplex(Dyadic r, Dyadic i) : re(std::move(r)), im(std::move(i)) {}
    DyadicComplex(long r) : re(r) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    bool is_one() const { return re.is_one() && im.is_zero(); }

    DyadicComplex operator-() const { return {-re, -im}; }
    DyadicComplex conj() const { return {re, -im}; }

    friend DyadicComplex operator+(const DyadicComplex& a, const DyadicComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend DyadicComplex operator-(const DyadicComplex& a, const DyadicComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    // exact product; 3 real multiplications in the general case
    friend DyadicComplex operator*(const DyadicComplex& a, const DyadicComplex& b) {
        if (a.im.is_zero()) {
            if (b.im.is_zero()) return {a.re * b.re, Dyadic()};
            return {a.re * b.re, a.re * b.im};
        }
        if (b.im.is_zero()) return {a.re * b.re, a.im * b.re};
        // (a+bi)(c+di): k1=c(a+b), k2=a(d-c), k3=b(c+d)
        Dyadic k1 = b.re * (a.re + a.im);
        Dyadic k2 = a.re * (b.im - b.re);
        Dyadic k3 = a.im * (b.re + b.im);
        return {k1 - k3, k1 + k2};
    }

    bool operator==(const DyadicComplex& o) const { return re == o.re && im == o.im; }
    bool operator!=(const DyadicComplex& o) const { return !(*this == o); }

    DyadicComplex mul_pow2(int64_t k) const { return {re.mul_pow2(k), im.mul_pow2(k)}; }
    DyadicComplex round_frac(int64_t frac) const {
        return {re.round_frac(frac), im.round_frac(frac)};
    }

    // exact upper bound on |z| (within factor sqrt(2))
    Dyadic abs_ub() const { return re.abs() + im.abs(); }
    // exact lower bound on |z| (within factor sqrt(2))
    Dyadic abs_lb() const {
        Dyadic r = re.abs(), i = im.abs();
        return r >= i ? r : i;
    }
    // |z| < 2^k for the returned k (INT64_MIN-ish avoided: zero gives k = very low sentinel)
    int64_t log2_abs_ub() const {
        if (is_zero()) return INT64_MIN / 4;
        return abs_ub().log2_ub();
    }
};

}  // namespace polyeval
