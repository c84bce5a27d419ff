#pragma once

#include <vector>

#include "polyeval/poly.hpp"

namespace polyeval {

// Exact product of integer coefficient vectors (ascending powers) by Kronecker
// substitution: both operands are packed into one big integer each (slot width
// covers max|coeff| products plus carry headroom), multiplied once, and the
// (possibly negative) slot digits recovered with an additive offset so the
// unpack is carry-free. Returns a+b-1 coefficients.
std::vector<mpz_class> kronecker_mul(const std::vector<mpz_class>& a,
                                     const std::vector<mpz_class>& b);

// Exact Gaussian-integer polynomial product; 3 real products via the
// Karatsuba-style complex trick (or fewer when an imaginary side is zero).
GaussianIntPoly exact_int_poly_mul(const GaussianIntPoly& F, const GaussianIntPoly& G);

inline int64_t ceil_log2(int64_t n) {  // smallest k with 2^k >= n (n >= 1)
    int64_t k = 0;
    while ((int64_t(1) << k) < n) ++k;
    return k;
}

}  // namespace polyeval
