#include "polyeval/oracle.hpp"

#include <algorithm>

#include "polyeval/errors.hpp"
#include "polyeval/kronecker.hpp"

namespace polyeval {

RatC rat_div(const RatC& a, const RatC& b) {
    if (b.is_zero()) throw ZeroDivisor("rational division by zero");
    mpq_class d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

mpq_class to_rat(const Dyadic& x) {
    mpq_class q(x.mantissa());
    int64_t e = x.exponent();
    if (e >= 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    else
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    return q;
}

RatC to_rat(const DyadicComplex& x) { return {to_rat(x.re), to_rat(x.im)}; }

RatPoly to_rat(const ApproxPoly& f) {
    RatPoly r;
    r.coeffs.reserve(f.len());
    for (const auto& c : f.coeffs) r.coeffs.push_back(to_rat(c));
    return r;
}

mpq_class box_abs(const RatC& z) { return abs(z.re) + abs(z.im); }

mpq_class box_norm(const RatPoly& f) {
    mpq_class s = 0;
    for (const auto& c : f.coeffs) s += box_abs(c);
    return s;
}

mpq_class box_dist(const RatPoly& a, const RatPoly& b) {
    mpq_class s = 0;
    size_t n = std::max(a.len(), b.len());
    for (size_t i = 0; i < n; ++i) s += box_abs(a.at(i) - b.at(i));
    return s;
}

bool rat_le_pow2(const mpq_class& v, int64_t k) {
    mpq_class t(1);
    if (k >= 0)
        mpq_mul_2exp(t.get_mpq_t(), t.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
    else
        mpq_div_2exp(t.get_mpq_t(), t.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
    return v <= t;
}

RatC eval_rat(const RatPoly& f, const RatC& x) {
    RatC acc;
    for (size_t i = f.len(); i-- > 0;) acc = acc * x + f.coeffs[i];
    return acc;
}

RatPoly rat_mul(const RatPoly& a, const RatPoly& b) {
    RatPoly c;
    if (a.len() == 0 || b.len() == 0) return c;
    c.coeffs.resize(a.len() + b.len() - 1);
    for (size_t i = 0; i < a.len(); ++i) {
        if (a.coeffs[i].is_zero()) continue;
        for (size_t j = 0; j < b.len(); ++j) c.coeffs[i + j] = c.coeffs[i + j] + a.coeffs[i] * b.coeffs[j];
    }
    return c;
}

std::pair<RatPoly, RatPoly> exact_divmod(const RatPoly& f, const RatPoly& g) {
    int64_t dg = g.degree();
    if (dg < 0) throw ZeroDivisor("exact_divmod: zero divisor");
    RatPoly r = f;
    r.trim();
    RatPoly q;
    int64_t df = r.degree();
    if (df >= dg) q.coeffs.resize(static_cast<size_t>(df - dg) + 1);
    const RatC& lead = g.coeffs[static_cast<size_t>(dg)];
    while ((df = r.degree()) >= dg) {
        RatC c = rat_div(r.coeffs[static_cast<size_t>(df)], lead);
        size_t shift = static_cast<size_t>(df - dg);
        q.coeffs[shift] = c;
        for (int64_t i = 0; i <= dg; ++i)
            r.coeffs[shift + static_cast<size_t>(i)] =
                r.coeffs[shift + static_cast<size_t>(i)] - c * g.coeffs[static_cast<size_t>(i)];
        r.coeffs[static_cast<size_t>(df)] = RatC();  // cancel exactly
        r.trim();
    }
    return {std::move(q), std::move(r)};
}

std::vector<RatC> exact_lagrange_denoms(const std::vector<RatC>& points) {
    std::vector<RatC> lam(points.size(), RatC(1));
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = 0; j < points.size(); ++j) {
            if (i == j) continue;
            RatC d = points[i] - points[j];
            if (d.is_zero()) throw CoincidentPoints("duplicate interpolation node");
            lam[i] = lam[i] * d;
        }
    return lam;
}

RatPoly exact_lagrange(const std::vector<RatC>& points, const std::vector<RatC>& values) {
    size_t n = points.size();
    RatPoly prod;
    prod.coeffs.assign(1, RatC(1));
    for (const auto& p : points) {
        RatPoly lin;
        lin.coeffs = {-p, RatC(1)};
        prod = rat_mul(prod, lin);
    }
    std::vector<RatC> lam = exact_lagrange_denoms(points);
    RatPoly f;
    f.coeffs.assign(n == 0 ? 1 : n, RatC());
    for (size_t i = 0; i < n; ++i) {
        // q_i = prod / (x - points[i]) by exact synthetic division
        std::vector<RatC> q(n);
        RatC carry = prod.coeffs[n];
        for (size_t k = n; k-- > 0;) {
            q[k] = carry;
            carry = prod.coeffs[k] + carry * points[i];
        }
        RatC w = rat_div(values[i], lam[i]);
        for (size_t k = 0; k < n; ++k) f.coeffs[k] = f.coeffs[k] + w * q[k];
    }
    return f;
}

DyadicComplex horner_eval_hp(const ApproxPoly& f, const DyadicComplex& x, int64_t bits) {
    int64_t n = static_cast<int64_t>(f.len()) - 1;
    if (n <= 0) return f.at(0);
    int64_t xb = std::max<int64_t>(0, x.log2_abs_ub());
    int64_t w = bits + ceil_log2(n) + n * xb + 1;
    DyadicComplex acc = f.coeffs[static_cast<size_t>(n)];
    for (int64_t i = n - 1; i >= 0; --i)
        acc = (acc * x + f.coeffs[static_cast<size_t>(i)]).round_frac(w);
    return acc;
}

ApproxPoly exact_poly_mul_dyadic(const ApproxPoly& a, const ApproxPoly& b) {
    ApproxPoly c;
    if (a.len() == 0 || b.len() == 0) return c;
    c.coeffs.resize(a.len() + b.len() - 1);
    for (size_t i = 0; i < a.len(); ++i) {
        if (a.coeffs[i].is_zero()) continue;
        for (size_t j = 0; j < b.len(); ++j)
            c.coeffs[i + j] = c.coeffs[i + j] + a.coeffs[i] * b.coeffs[j];
    }
    c.err_bits = err_min(a.err_bits, b.err_bits) >= kExact ? kExact : err_min(a.err_bits, b.err_bits);
    return c;
}

ApproxPoly exact_shift(const ApproxPoly& f, const DyadicComplex& m) {
    ApproxPoly g = f;
    size_t n = g.len();
    if (n == 0) return g;
    // repeated synthetic division by (x - m): after pass k, coeffs[k] is the
    // k-th Taylor coefficient at m
    for (size_t k = 0; k + 1 < n; ++k)
        for (size_t i = n - 1; i-- > k;) g.coeffs[i] = g.coeffs[i] + g.coeffs[i + 1] * m;
    return g;
}

}  // namespace polyeval
