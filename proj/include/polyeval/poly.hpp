#pragma once

#include <cstdint>
#include <vector>

#include "polyeval/dyadic_complex.hpp"

namespace polyeval {

// errBits sentinel: the represented polynomial IS its target (exact).
inline constexpr int64_t kExact = INT64_MAX / 2;

// saturating add for error/precision exponent arithmetic around kExact
inline int64_t err_add(int64_t a, int64_t b) {
    if (a >= kExact || b >= kExact) return a < b ? a : b;  // exact side drops out
    return a + b;
}
inline int64_t err_min(int64_t a, int64_t b) { return a < b ? a : b; }

// Approximate polynomial: coefficients (ascending powers) of an implicit
// target polynomial, certified to ||represented - target||_1 <= 2^(-err_bits).
struct ApproxPoly {
    std::vector<DyadicComplex> coeffs;
    int64_t err_bits = kExact;

    ApproxPoly() = default;
    explicit ApproxPoly(std::vector<DyadicComplex> c, int64_t eb = kExact)
        : coeffs(std::move(c)), err_bits(eb) {}

    // degree of the representation; -1 for the zero polynomial
    int64_t degree() const {
        int64_t d = static_cast<int64_t>(coeffs.size()) - 1;
        while (d >= 0 && coeffs[static_cast<size_t>(d)].is_zero()) --d;
        return d;
    }
    size_t len() const { return coeffs.size(); }
    bool is_zero() const { return degree() < 0; }

    const DyadicComplex& at(size_t i) const {
        static const DyadicComplex zero{};
        return i < coeffs.size() ? coeffs[i] : zero;
    }

    void trim() {
        while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    }

    ApproxPoly round_frac(int64_t frac) const;  // coefficient-wise; err accounting is caller's
    bool leading_is_one() const {
        return !coeffs.empty() && coeffs.back().is_one();
    }
};

// Exact Gaussian-integer polynomial (coefficient-wise pairs of big integers).
struct GaussianIntPoly {
    std::vector<mpz_class> re, im;

    size_t len() const { return re.size(); }
};

// --- dyadic-core operations on polynomials ---

// coefficient-wise rounding: |result - x| <= 2^(-l) per coefficient
DyadicComplex round_scalar(const DyadicComplex& x, int64_t l);

// coefficient-wise nearest Gaussian integer; each within distance 1 of the input
GaussianIntPoly trunc_poly(const ApproxPoly& f);

// Exact upper bound B with ||f||_1 <= B <= sqrt(2)*||f||_1, via |re|+|im| per
// coefficient; the bound is coarsened upward to a short mantissa.
Dyadic one_norm_bound(const ApproxPoly& f);

// ceil-log2 of one_norm_bound: ||f||_1 < 2^k; zero polynomial gives a deep negative sentinel
int64_t one_norm_log2ub(const ApproxPoly& f);

// max over coefficients of |coeff| upper bound: every |f_i| < 2^k
int64_t max_coeff_log2ub(const ApproxPoly& f);

// exact polynomial helpers (no rounding)
ApproxPoly add(const ApproxPoly& a, const ApproxPoly& b);
ApproxPoly sub(const ApproxPoly& a, const ApproxPoly& b);
ApproxPoly mul_pow2(const ApproxPoly& a, int64_t k);
ApproxPoly derivative(const ApproxPoly& f);
ApproxPoly reverse(const ApproxPoly& f, size_t deg);  // x^deg * f(1/x) on a fixed window
ApproxPoly truncate(const ApproxPoly& f, size_t count);  // first `count` coefficients
DyadicComplex horner_exact(const ApproxPoly& f, const DyadicComplex& x);  // exact dyadic Horner

// certified scalar reciprocal via directed integer division:
// |result - 1/z| <= 2^(-bits) (box modulus); ZeroDivisor on z = 0
DyadicComplex recip_approx(const DyadicComplex& z, int64_t bits);

}  // namespace polyeval
