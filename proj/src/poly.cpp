#include "polyeval/poly.hpp"

#include <algorithm>

#include "polyeval/errors.hpp"

namespace polyeval {

ApproxPoly ApproxPoly::round_frac(int64_t frac) const {
    ApproxPoly r;
    r.coeffs.reserve(coeffs.size());
    for (const auto& c : coeffs) r.coeffs.push_back(c.round_frac(frac));
    r.err_bits = err_bits;
    r.trim();
    return r;
}

DyadicComplex round_scalar(const DyadicComplex& x, int64_t l) {
    // per-component rounding to l+1 fractional bits: component error <= 2^(-l-2),
    // so |result - x| <= |dre| + |dim| <= 2^(-l-1) <= 2^(-l)
    return x.round_frac(l + 1);
}

static mpz_class nearest_int(const Dyadic& d) {
    Dyadic r = d.round_frac(0);
    mpz_class m = r.mantissa();
    if (r.exponent() > 0) mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(r.exponent()));
    return m;
}

GaussianIntPoly trunc_poly(const ApproxPoly& f) {
    GaussianIntPoly g;
    g.re.reserve(f.coeffs.size());
    g.im.reserve(f.coeffs.size());
    for (const auto& c : f.coeffs) {
        g.re.push_back(nearest_int(c.re));
        g.im.push_back(nearest_int(c.im));
    }
    return g;
}

Dyadic one_norm_bound(const ApproxPoly& f) {
    Dyadic s;
    for (const auto& c : f.coeffs) s = s + c.abs_ub().coarse_abs_ub();
    return s.coarse_abs_ub();
}

int64_t one_norm_log2ub(const ApproxPoly& f) {
    Dyadic b = one_norm_bound(f);
    if (b.is_zero()) return INT64_MIN / 4;
    return b.log2_ub();
}

int64_t max_coeff_log2ub(const ApproxPoly& f) {
    int64_t best = INT64_MIN / 4;
    for (const auto& c : f.coeffs) {
        if (c.is_zero()) continue;
        int64_t k = c.abs_ub().log2_ub();
        if (k > best) best = k;
    }
    return best;
}

ApproxPoly add(const ApproxPoly& a, const ApproxPoly& b) {
    ApproxPoly r;
    size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    r.coeffs.resize(n);
    for (size_t i = 0; i < n; ++i) r.coeffs[i] = a.at(i) + b.at(i);
    r.err_bits = err_min(a.err_bits, b.err_bits);
    if (r.err_bits < kExact) r.err_bits -= 1;  // triangle inequality on two terms
    r.trim();
    return r;
}

ApproxPoly sub(const ApproxPoly& a, const ApproxPoly& b) {
    ApproxPoly r;
    size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    r.coeffs.resize(n);
    for (size_t i = 0; i < n; ++i) r.coeffs[i] = a.at(i) - b.at(i);
    r.err_bits = err_min(a.err_bits, b.err_bits);
    if (r.err_bits < kExact) r.err_bits -= 1;
    r.trim();
    return r;
}

ApproxPoly mul_pow2(const ApproxPoly& a, int64_t k) {
    ApproxPoly r;
    r.coeffs.reserve(a.coeffs.size());
    for (const auto& c : a.coeffs) r.coeffs.push_back(c.mul_pow2(k));
    r.err_bits = a.err_bits >= kExact ? kExact : a.err_bits - k;
    return r;
}

ApproxPoly derivative(const ApproxPoly& f) {
    ApproxPoly r;
    if (f.coeffs.size() <= 1) return r;
    r.coeffs.reserve(f.coeffs.size() - 1);
    for (size_t i = 1; i < f.coeffs.size(); ++i) {
        Dyadic k(static_cast<long>(i));
        r.coeffs.push_back({f.coeffs[i].re * k, f.coeffs[i].im * k});
    }
    // d/dx amplifies a coefficient-wise 1-norm error by at most deg
    if (f.err_bits >= kExact) {
        r.err_bits = kExact;
    } else {
        int64_t deg = static_cast<int64_t>(f.coeffs.size()) - 1;
        int64_t lg = 0;
        while ((int64_t(1) << lg) < std::max<int64_t>(deg, 1)) ++lg;
        r.err_bits = f.err_bits - lg;
    }
    r.trim();
    return r;
}

ApproxPoly reverse(const ApproxPoly& f, size_t deg) {
    ApproxPoly r;
    r.coeffs.resize(deg + 1);
    for (size_t i = 0; i <= deg; ++i) r.coeffs[i] = f.at(deg - i);
    r.err_bits = f.err_bits;
    r.trim();
    return r;
}

ApproxPoly truncate(const ApproxPoly& f, size_t count) {
    ApproxPoly r;
    r.coeffs.assign(f.coeffs.begin(),
                    f.coeffs.begin() + static_cast<long>(std::min(count, f.coeffs.size())));
    r.err_bits = f.err_bits;
    r.trim();
    return r;
}

DyadicComplex horner_exact(const ApproxPoly& f, const DyadicComplex& x) {
    DyadicComplex acc;
    for (size_t i = f.coeffs.size(); i-- > 0;) acc = acc * x + f.coeffs[i];
    return acc;
}

DyadicComplex recip_approx(const DyadicComplex& z, int64_t bits) {
    if (z.is_zero()) throw ZeroDivisor("reciprocal of zero");
    // 1/z = conj(z) / (re^2 + im^2); one directed integer division does the
    // approximate part, the conjugate multiplies in exactly
    Dyadic d = z.re * z.re + z.im * z.im;
    int64_t zb = z.abs_ub().log2_ub();
    int64_t w = bits + zb + 2;
    int64_t cap_w = std::max<int64_t>(1, w - d.exponent());
    mpz_class q;
    mpz_class num(1);
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(cap_w));
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), d.mantissa().get_mpz_t());
    // |inv - 1/d| <= 2^(-cap_w - e_d) <= 2^(-w)
    Dyadic inv(std::move(q), -cap_w - d.exponent());
    return {z.re * inv, (-z.im) * inv};
}

}  // namespace polyeval
