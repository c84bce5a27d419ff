#include "polyeval/taylor.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "polyeval/errors.hpp"
#include "polyeval/interp.hpp"
#include "polyeval/kronecker.hpp"
#include "polyeval/mp_eval.hpp"

namespace polyeval {

namespace {

// floor of arctan(1/x) * 2^w; truncation plus per-term floors stay within
// (term count + 2) units of the last place
mpz_class arctan_inv_scaled(long x, int64_t w) {
    mpz_class sum = 0;
    mpz_class xsq = mpz_class(x) * x;
    mpz_class denom_pow = x;
    long k = 1;
    bool sub = false;
    mpz_class one_shifted = mpz_class(1) << static_cast<unsigned long>(w);
    while (true) {
        mpz_class term = one_shifted / (denom_pow * k);
        if (term == 0) break;
        if (sub)
            sum -= term;
        else
            sum += term;
        sub = !sub;
        denom_pow *= xsq;
        k += 2;
    }
    return sum;
}

// |result - pi| <= 2^(-w+24) for w >= 32
Dyadic machin_pi(int64_t w) {
    mpz_class p = 16 * arctan_inv_scaled(5, w) - 4 * arctan_inv_scaled(239, w);
    return Dyadic(std::move(p), -w);
}

// a / k truncated toward zero at 2^(-frac)
Dyadic div_int(const Dyadic& a, const mpz_class& k, int64_t frac) {
    if (a.is_zero()) return Dyadic();
    mpz_class num = a.mantissa();
    mpz_class den = k;
    int64_t sh = a.exponent() + frac;
    if (sh >= 0)
        num <<= static_cast<unsigned long>(sh);
    else
        den <<= static_cast<unsigned long>(-sh);
    return Dyadic(num / den, -frac);
}

// cos t and sin t for |t| <= 5/2, each within 2^(-w+8)
void cos_sin(const Dyadic& t, int64_t w, Dyadic& c, Dyadic& s) {
    Dyadic t2 = t * t;
    Dyadic thresh = Dyadic::pow2(-w - 6);
    Dyadic term(1), acc(1);
    for (long j = 0;; ++j) {
        term = div_int((term * t2).round_frac(w + 8), mpz_class(2 * j + 1) * (2 * j + 2), w + 8);
        acc = (j % 2 == 0) ? acc - term : acc + term;
        if (j >= 1 && term.abs() <= thresh) break;
    }
    c = acc;
    term = t;
    acc = t;
    for (long j = 0;; ++j) {
        term = div_int((term * t2).round_frac(w + 8), mpz_class(2 * j + 2) * (2 * j + 3), w + 8);
        acc = (j % 2 == 0) ? acc - term : acc + term;
        if (j >= 1 && term.abs() <= thresh) break;
    }
    s = acc;
}

}  // namespace

std::vector<DyadicComplex> unit_circle_points(int64_t n, int64_t ell) {
    if (n < 1) throw std::invalid_argument("unit_circle_points: n must be >= 1");
    if (ell < 1) throw std::invalid_argument("unit_circle_points: ell must be >= 1");
    std::vector<DyadicComplex> out(static_cast<size_t>(n));
    out[0] = DyadicComplex(1);
    if (n == 1) return out;
    if (n == 2) {
        out[1] = DyadicComplex(-1);
        return out;
    }
    if (n == 4) {
        out[1] = DyadicComplex(Dyadic(0), Dyadic(1));
        out[2] = DyadicComplex(-1);
        out[3] = DyadicComplex(Dyadic(0), Dyadic(-1));
        return out;
    }
    int64_t P = ell + ceil_log2(n) + 8;
    int64_t w = P + 64;
    Dyadic theta = div_int(machin_pi(w).mul_pow2(1), mpz_class(n), w);  // 2 pi / n
    Dyadic c, s;
    cos_sin(theta, w, c, s);
    DyadicComplex w1{c.round_frac(P), s.round_frac(P)};
    out[1] = w1;
    for (int64_t k = 2; k <= n / 2; ++k) out[k] = (out[k - 1] * w1).round_frac(P);
    if (n % 2 == 0) out[n / 2] = DyadicComplex(-1);
    if (n % 4 == 0) out[n / 4] = DyadicComplex(Dyadic(0), Dyadic(1));
    for (int64_t k = n / 2 + 1; k < n; ++k) out[k] = out[n - k].conj();
    return out;
}

ApproxPoly taylor_shift(const ShiftProblem& problem, int64_t L) {
    if (L < 0) throw std::invalid_argument("taylor_shift: L must be >= 0");
    ApproxPoly F = problem.poly;
    F.trim();
    if (F.degree() <= 0 || problem.m.is_zero()) return F;
    int64_t n = F.degree() + 1;
    int64_t tau = std::max<int64_t>(1, one_norm_log2ub(F));
    int64_t mb = std::max<int64_t>(1, problem.m.log2_abs_ub());
    int64_t ell_v = L + n + 2 * ceil_log2(n + 1) + 8;

    std::vector<DyadicComplex> omega = unit_circle_points(n, ell_v);
    std::vector<DyadicComplex> pts(omega.size());
    for (size_t i = 0; i < omega.size(); ++i) pts[i] = problem.m + omega[i];
    std::vector<DyadicComplex> vals = multipoint_eval(F, pts, ell_v);

    // |F(m + w)| <= ||F|| * max(1, |m|+1)^deg; anything past this means a bug
    int64_t v_cap = tau + n * (mb + 1) + ceil_log2(n) + 16;
    for (const auto& v : vals)
        if (v.log2_abs_ub() > v_cap) throw std::logic_error("taylor_shift: value bound violated");

    InterpProblem ip;
    ip.points = std::move(omega);
    ip.values = std::move(vals);
    ApproxPoly out = interpolate(ip, L + 2);
    out.err_bits = err_min(out.err_bits, L + 1);
    return out;
}

}  // namespace polyeval
