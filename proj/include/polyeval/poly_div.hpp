#pragma once

#include "polyeval/poly.hpp"

namespace polyeval {

// Certified division output: f ~ quotient*g + remainder with
// ||f - (Q*g + R)||_1 <= 2^(-residual_bits), deg Q <= deg f - deg g,
// deg R < deg g.
struct DivResult {
    ApproxPoly quotient;
    ApproxPoly remainder;
    int64_t residual_bits = 0;
};

// Normalized division. Requires deg f <= 2n for n = deg g, ||f||_1 <= 1,
// 1 <= ||g||_1 <= 2, all roots of g of modulus < 2^rho (rho >= 1), and input
// err_bits >= ell + 32*n*rho. Returns quotient/remainder that are ell-bit
// approximations of the exact division pair, with residual_bits = ell.
// Errors: ZeroDivisor (g = 0), DegenerateDivisor (leading |g_n| certainly
// below 2^(-4*n*rho)), InsufficientInputPrecision, PrecisionExhausted.
DivResult div_normalized(const ApproxPoly& f, const ApproxPoly& g, int64_t rho, int64_t ell);

// Monic-divisor wrapper: geometric rescaling x -> 2^s x with
// s = rho + ceil_log2(2n) reduces to the normalized case. Requires g monic
// (leading coefficient exactly 1), deg f <= 2n, roots of g of modulus < 2^rho,
// dividend err_bits >= ell + n*(2*rho + 2*ceil_log2(2n) + 32) and divisor
// err_bits >= that plus b, where b = max(1, ceil log2 ||f||_1).
// residual_bits = ell; remainder err_bits >= ell; quotient err_bits >= ell.
// Errors: NotMonic, and the div_normalized set.
DivResult div_monic(const ApproxPoly& f, const ApproxPoly& g, int64_t rho, int64_t ell);

// input-precision demands of div_monic, exposed for precision scheduling
inline int64_t div_monic_dividend_need(int64_t n, int64_t rho, int64_t ell, int64_t log2n2) {
    return ell + n * (2 * rho + 2 * log2n2 + 32);
}

// process-wide count of certificate-failure retries inside divisions
int64_t division_escalations();
void reset_division_escalations();

}  // namespace polyeval
