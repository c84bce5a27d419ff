#pragma once

// Shared helpers for the unit tests and the acceptance harness: deterministic
// random instances and exact-rational comparison predicates. Everything here
// leans on the oracle module, never on the fast paths under test.

#include <cstdint>
#include <random>
#include <vector>

#include "polyeval/oracle.hpp"
#include "polyeval/poly.hpp"

namespace testutil {

using polyeval::ApproxPoly;
using polyeval::Dyadic;
using polyeval::DyadicComplex;

inline mpz_class rand_mpz(std::mt19937_64& rng, int64_t bits) {
    mpz_class m = 0;
    for (int64_t got = 0; got < bits; got += 64) {
        m <<= 64;
        m |= static_cast<unsigned long>(rng());
    }
    m >>= (((bits + 63) / 64) * 64 - bits);  // keep exactly `bits` low bits
    return m;
}

// random dyadic with |value| < 2^mag and a mantissa of ~mbits bits
inline Dyadic rand_dyadic(std::mt19937_64& rng, int64_t mbits, int64_t mag) {
    mpz_class m = rand_mpz(rng, mbits);
    m |= 1;
    if (rng() & 1u) m = -m;
    return Dyadic(std::move(m), mag - mbits);
}

inline DyadicComplex rand_complex(std::mt19937_64& rng, int64_t mbits, int64_t mag) {
    Dyadic re = rand_dyadic(rng, mbits, mag);
    Dyadic im = rand_dyadic(rng, mbits, mag);
    return DyadicComplex(std::move(re), std::move(im));
}

// exact random polynomial of the given degree (err_bits = exact)
inline ApproxPoly rand_poly(std::mt19937_64& rng, int64_t deg, int64_t mbits, int64_t mag) {
    ApproxPoly f;
    f.coeffs.reserve(static_cast<size_t>(deg + 1));
    for (int64_t i = 0; i <= deg; ++i) f.coeffs.push_back(rand_complex(rng, mbits, mag));
    if (f.coeffs.back().is_zero()) f.coeffs.back() = DyadicComplex(1);
    return f;
}

// exact monic product prod (x - roots[j])
inline ApproxPoly poly_from_roots(const std::vector<DyadicComplex>& roots) {
    ApproxPoly acc;
    acc.coeffs = {DyadicComplex(1)};
    for (const DyadicComplex& r : roots) {
        ApproxPoly lin;
        lin.coeffs = {-r, DyadicComplex(1)};
        acc = polyeval::exact_poly_mul_dyadic(acc, lin);
    }
    return acc;
}

// ||a - b||_1 <= 2^k in the exact box norm
inline bool poly_close(const ApproxPoly& a, const ApproxPoly& b, int64_t k) {
    using namespace polyeval;
    return rat_le_pow2(box_dist(to_rat(a), to_rat(b)), k);
}

// |a - b| <= 2^k (box modulus), exactly
inline bool scalar_close(const DyadicComplex& a, const DyadicComplex& b, int64_t k) {
    using namespace polyeval;
    return rat_le_pow2(box_abs(to_rat(a) - to_rat(b)), k);
}

}  // namespace testutil
