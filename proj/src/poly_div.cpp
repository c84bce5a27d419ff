#include "polyeval/poly_div.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>

#include "polyeval/errors.hpp"
#include "polyeval/kronecker.hpp"
#include "polyeval/poly_mul.hpp"

namespace polyeval {

namespace {

std::atomic<int64_t> g_escalations{0};

constexpr int64_t kSyntheticMaxDeg = 32;

ApproxPoly as_exact(const ApproxPoly& p) {
    ApproxPoly r = p;
    r.err_bits = kExact;
    return r;
}

// rounded coefficient-wise copy, err_bits untouched by design: callers fold the
// rounding term into their own certificates
ApproxPoly round_poly(const ApproxPoly& p, int64_t frac) {
    ApproxPoly r = p.round_frac(frac);
    r.err_bits = p.err_bits;
    return r;
}

// Newton inversion of the reversed divisor: returns h with g_rev * h ~ 1 mod x^k.
// All products run against the representations; soundness comes from the caller's
// a-posteriori residual certificate.
ApproxPoly newton_inverse(const ApproxPoly& g_rev, size_t k, int64_t w) {
    ApproxPoly h;
    h.coeffs.push_back(recip_approx(g_rev.at(0), w + 6));
    size_t m = 1;
    ApproxPoly two;
    two.coeffs.push_back(DyadicComplex(2));
    while (m < k) {
        size_t m2 = std::min(2 * m, k);
        ApproxPoly t = truncate(approx_mul(as_exact(truncate(g_rev, m2)), as_exact(h), w + 6), m2);
        ApproxPoly e = sub(two, t);
        h = truncate(approx_mul(as_exact(h), as_exact(e), w + 6), m2);
        h = round_poly(h, w);
        m = m2;
    }
    h.err_bits = kExact;
    return h;
}

// quotient candidate via Newton: Q_rev = rev(f) * inv(rev(g)) mod x^k
ApproxPoly newton_quotient(const ApproxPoly& f, const ApproxPoly& g, int64_t df, int64_t n,
                           int64_t w) {
    size_t k = static_cast<size_t>(df - n + 1);
    ApproxPoly g_rev = truncate(reverse(g, static_cast<size_t>(n)), k);
    ApproxPoly h = newton_inverse(g_rev, k, w);
    ApproxPoly f_rev = truncate(reverse(f, static_cast<size_t>(df)), k);
    ApproxPoly q_rev = truncate(approx_mul(as_exact(f_rev), as_exact(h), w + 6), k);
    return reverse(q_rev, k - 1);
}

// quotient candidate via schoolbook synthetic division with per-step rounding;
// only used for small degrees on well-conditioned divisors
ApproxPoly synthetic_quotient(const ApproxPoly& f, const ApproxPoly& g, int64_t df, int64_t n,
                              int64_t w) {
    DyadicComplex u = recip_approx(g.at(static_cast<size_t>(n)), w + 6);
    std::vector<DyadicComplex> c(f.coeffs.begin(),
                                 f.coeffs.begin() + static_cast<long>(df + 1));
    size_t k = static_cast<size_t>(df - n + 1);
    ApproxPoly q;
    q.coeffs.resize(k);
    for (int64_t i = df; i >= n; --i) {
        DyadicComplex qc = (c[static_cast<size_t>(i)] * u).round_frac(w);
        q.coeffs[static_cast<size_t>(i - n)] = qc;
        for (int64_t j = 0; j < n; ++j) {
            size_t idx = static_cast<size_t>(i - n + j);
            c[idx] = (c[idx] - qc * g.at(static_cast<size_t>(j))).round_frac(w);
        }
    }
    return q;
}

struct CertOutcome {
    bool ok = false;
    ApproxPoly remainder;
};

// Folded certificate: one certified multiply bounds the residual of the pair
// (Q, R) where R is read off the low part of f - Q*g. Everything compared in
// exact dyadic arithmetic.
CertOutcome certify(const ApproxPoly& f, const ApproxPoly& g, const ApproxPoly& q, int64_t n,
                    int64_t ell_t) {
    CertOutcome out;
    ApproxPoly p = approx_mul(as_exact(q), as_exact(g), ell_t + 6);
    ApproxPoly d = sub(as_exact(f), as_exact(p));
    ApproxPoly low = truncate(d, static_cast<size_t>(n));
    ApproxPoly high;
    if (d.len() > static_cast<size_t>(n))
        high.coeffs.assign(d.coeffs.begin() + n, d.coeffs.end());

    int64_t rfrac = ell_t + ceil_log2(n + 1) + 3;
    out.remainder = round_poly(low, rfrac);

    // residual <= ||high|| + multiply certificate + remainder rounding
    Dyadic res_ub = one_norm_bound(high) + Dyadic::pow2(-ell_t - 6) + Dyadic::pow2(-ell_t - 2);
    out.ok = res_ub <= Dyadic::pow2(-ell_t);
    return out;
}

struct CoreResult {
    ApproxPoly quotient;
    ApproxPoly remainder;
};

// Divide the representations of f by g with certified residual <= 2^(-ell_t).
// Escalates internal precision on certificate failure.
CoreResult div_core(const ApproxPoly& f, const ApproxPoly& g, int64_t n, int64_t ell_t) {
    int64_t df = f.degree();
    CoreResult res;
    if (df < n) {  // quotient is exactly zero
        res.remainder = round_poly(f, ell_t + ceil_log2(n + 1) + 3);
        res.remainder.err_bits = kExact;
        return res;
    }

    const DyadicComplex& lead = g.at(static_cast<size_t>(n));
    // conditioning headroom when the divisor is far from monic-normalized
    int64_t cond = 0;
    Dyadic lead_lb = lead.abs_lb();
    if (!(lead_lb >= Dyadic(1).mul_pow2(-2)))
        cond = n + std::max<int64_t>(0, -lead_lb.log2_lb());

    int64_t m = std::max(n, df - n + 1);
    int64_t base_w = ell_t + 2 * ceil_log2(m + 1) + 32 + cond;
    bool tail_small = true;
    {
        ApproxPoly tail = truncate(g, static_cast<size_t>(n));
        Dyadic tail_norm = one_norm_bound(tail);
        tail_small = tail_norm <= Dyadic(4) && lead_lb >= Dyadic(1).mul_pow2(-2);
    }

    int64_t extra = 0;
    int cap = escalation_cap();
    for (int attempt = 0;; ++attempt) {
        int64_t w = base_w + extra;
        bool use_synth = n <= kSyntheticMaxDeg && tail_small && attempt < 2;
        ApproxPoly q = use_synth ? synthetic_quotient(f, g, df, n, w)
                                 : newton_quotient(f, g, df, n, w);
        q = round_poly(q, ell_t + ceil_log2(df - n + 2) + 4);
        q.err_bits = kExact;
        CertOutcome cert = certify(f, g, q, n, ell_t);
        if (cert.ok) {
            res.quotient = std::move(q);
            res.remainder = std::move(cert.remainder);
            res.remainder.err_bits = kExact;
            return res;
        }
        if (attempt >= cap)
            throw PrecisionExhausted("division residual certificate failed after " +
                                     std::to_string(attempt + 1) + " attempts");
        g_escalations.fetch_add(1, std::memory_order_relaxed);
        extra = extra == 0 ? 64 : 2 * extra;
    }
}

}  // namespace

DivResult div_normalized(const ApproxPoly& f, const ApproxPoly& g, int64_t rho, int64_t ell) {
    if (rho < 1) rho = 1;
    int64_t n = g.degree();
    if (n < 0) throw ZeroDivisor("div_normalized: zero divisor");
    int64_t df = f.degree();
    if (df > 2 * n) throw std::invalid_argument("div_normalized: deg f exceeds 2*deg g");
    if (g.at(static_cast<size_t>(n)).abs_ub() < Dyadic::pow2(-4 * n * rho))
        throw DegenerateDivisor("div_normalized: leading divisor coefficient below 2^(-4n*rho)");
    int64_t need = ell + 32 * n * rho;
    if (f.err_bits < need || g.err_bits < need)
        throw InsufficientInputPrecision("div_normalized needs err_bits >= " +
                                         std::to_string(need));

    // internal residual target against the representations; the 32*n*rho
    // headroom then yields ell-bit quotient/remainder against the targets
    int64_t ell_t = need;
    int64_t hygiene = ell_t + ceil_log2(2 * n + 2) + 8;
    ApproxPoly fr = round_poly(f, hygiene);
    ApproxPoly gr = round_poly(g, hygiene);

    CoreResult core = div_core(fr, gr, n, ell_t);
    DivResult out;
    out.quotient = std::move(core.quotient);
    out.remainder = std::move(core.remainder);
    out.quotient.err_bits = ell;
    out.remainder.err_bits = ell;
    out.residual_bits = ell;
    return out;
}

DivResult div_monic(const ApproxPoly& f, const ApproxPoly& g, int64_t rho, int64_t ell) {
    if (rho < 1) rho = 1;
    if (!g.leading_is_one()) throw NotMonic("div_monic: divisor leading coefficient is not 1");
    int64_t n = g.degree();
    int64_t df = f.degree();
    if (df > 2 * n) throw std::invalid_argument("div_monic: deg f exceeds 2*deg g");

    DivResult out;
    if (df < n) {  // Q = 0, R = f
        out.quotient = ApproxPoly();
        out.remainder = f;
        out.remainder.trim();
        out.residual_bits = ell;
        return out;
    }
    if (n == 0) {  // g = 1 exactly
        out.quotient = f;
        out.remainder = ApproxPoly();
        out.residual_bits = ell;
        return out;
    }

    int64_t b = std::max<int64_t>(1, one_norm_log2ub(f));
    int64_t lg2n = ceil_log2(2 * n);
    int64_t need_f = ell + n * (2 * rho + 2 * lg2n + 32);  // b cancels in the dividend scaling
    int64_t need_g = need_f + b;
    if (f.err_bits < need_f)
        throw InsufficientInputPrecision("div_monic dividend needs err_bits >= " +
                                         std::to_string(need_f));
    if (g.err_bits < need_g)
        throw InsufficientInputPrecision("div_monic divisor needs err_bits >= " +
                                         std::to_string(need_g));

    // geometric scaling: fs(x) = 2^(-b-2ns) f(2^s x), gs(x) = 2^(-ns) g(2^s x)
    int64_t s = rho + lg2n;
    ApproxPoly fs, gs;
    fs.coeffs.resize(f.len());
    for (size_t i = 0; i < f.len(); ++i)
        fs.coeffs[i] = f.coeffs[i].mul_pow2(static_cast<int64_t>(i) * s - b - 2 * n * s);
    fs.err_bits = err_add(f.err_bits, b);
    gs.coeffs.resize(g.len());
    for (size_t i = 0; i < g.len(); ++i)
        gs.coeffs[i] = g.coeffs[i].mul_pow2(static_cast<int64_t>(i) * s - n * s);
    gs.err_bits = g.err_bits;

    int64_t ell_star = ell + b + 2 * n * s;
    int64_t ell_t = ell_star + 32 * n;  // residual target for the scaled pair
    int64_t hygiene = ell_t + ceil_log2(2 * n + 2) + 8;
    fs = round_poly(fs, hygiene);
    gs = round_poly(gs, hygiene);

    CoreResult core = div_core(fs, gs, n, ell_t);

    // unscale: Q(x) = 2^(b+ns) Qs(2^(-s) x), R(x) = 2^(b+2ns) Rs(2^(-s) x)
    out.quotient.coeffs.resize(core.quotient.len());
    for (size_t i = 0; i < core.quotient.len(); ++i)
        out.quotient.coeffs[i] =
            core.quotient.coeffs[i].mul_pow2(b + n * s - static_cast<int64_t>(i) * s);
    out.remainder.coeffs.resize(core.remainder.len());
    for (size_t i = 0; i < core.remainder.len(); ++i)
        out.remainder.coeffs[i] =
            core.remainder.coeffs[i].mul_pow2(b + 2 * n * s - static_cast<int64_t>(i) * s);
    out.quotient.err_bits = ell + n * s;
    out.remainder.err_bits = ell;
    out.residual_bits = ell;
    out.quotient.trim();
    out.remainder.trim();
    return out;
}

int64_t division_escalations() { return g_escalations.load(std::memory_order_relaxed); }

void reset_division_escalations() { g_escalations.store(0, std::memory_order_relaxed); }

}  // namespace polyeval
