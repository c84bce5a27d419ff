#include "polyeval/poly_mul.hpp"

#include <algorithm>
#include <string>

#include "polyeval/errors.hpp"
#include "polyeval/kronecker.hpp"

namespace polyeval {

ApproxPoly approx_mul(const ApproxPoly& f, const ApproxPoly& g, int64_t ell) {
    size_t lf = std::max<size_t>(1, f.len());
    size_t lg = std::max<size_t>(1, g.len());
    size_t out_len = lf + lg - 1;
    int64_t clog = ceil_log2(static_cast<int64_t>(std::max(lf, lg)));
    int64_t clog_out = ceil_log2(static_cast<int64_t>(out_len));

    int64_t b = std::max<int64_t>(1, std::max(max_coeff_log2ub(f), max_coeff_log2ub(g)));
    int64_t need = ell + b + 2 * clog + 3;
    if (f.err_bits < need || g.err_bits < need)
        throw InsufficientInputPrecision(
            "approx_mul needs err_bits >= " + std::to_string(need) + ", have " +
            std::to_string(std::min(f.err_bits, g.err_bits)));

    // scale so per-coefficient truncation error folds under 2^(-ell-2) after the
    // exact integer product
    int64_t lp = ell + 2;
    int64_t s = lp + b + 2 * clog + 2;
    GaussianIntPoly fi = trunc_poly(mul_pow2(f, s));
    GaussianIntPoly gi = trunc_poly(mul_pow2(g, s));
    GaussianIntPoly hi = exact_int_poly_mul(fi, gi);

    int64_t frac = ell + clog_out + 3;
    ApproxPoly h;
    h.coeffs.resize(out_len);
    for (size_t i = 0; i < out_len && i < hi.len(); ++i) {
        DyadicComplex c{Dyadic(std::move(hi.re[i]), -2 * s), Dyadic(std::move(hi.im[i]), -2 * s)};
        h.coeffs[i] = c.round_frac(frac);
    }

    // error budget (box norm, exact dyadic arithmetic):
    //   scaled-product truncation  <= 2^(-ell-2)
    //   final coefficient rounding <= 2^(-ell-3)
    //   input propagation          <= ||f~||*Bg + ||g~||*Bf + Bf*Bg
    Dyadic total = Dyadic::pow2(-ell - 2) + Dyadic::pow2(-ell - 3);
    bool f_ex = f.err_bits >= kExact, g_ex = g.err_bits >= kExact;
    if (!g_ex) total = total + one_norm_bound(f) * Dyadic::pow2(-g.err_bits);
    if (!f_ex) total = total + one_norm_bound(g) * Dyadic::pow2(-f.err_bits);
    if (!f_ex && !g_ex) total = total + Dyadic::pow2(-f.err_bits - g.err_bits);
    h.err_bits = -total.log2_ub();
    return h;
}

}  // namespace polyeval
