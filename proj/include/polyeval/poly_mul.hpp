#pragma once

#include "polyeval/poly.hpp"

namespace polyeval {

// Approximate product: returns h with ||h - f_target * g_target||_1 <= 2^(-ell),
// reported via h.err_bits >= ell. Inputs must carry
// err_bits >= ell + b + 2*ceil_log2(max_len) + 3 where b = max(1, max coefficient
// log2 bound over both operands); otherwise throws InsufficientInputPrecision.
// A single exact big-integer product (Kronecker substitution) does the work.
ApproxPoly approx_mul(const ApproxPoly& f, const ApproxPoly& g, int64_t ell);

}  // namespace polyeval
