#pragma once

#include <utility>
#include <vector>

#include "polyeval/poly.hpp"

namespace polyeval {

// Reference implementations used only by tests and the acceptance harness.
// Everything here is exact rational or plainly-certified arithmetic with
// quadratic algorithms, deliberately sharing no code path with the fast
// library routines it checks.

// Exact complex rational.
struct RatC {
    mpq_class re, im;

    RatC() = default;
    RatC(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
    RatC(long r) : re(r) {}

    bool is_zero() const { return mpq_sgn(re.get_mpq_t()) == 0 && mpq_sgn(im.get_mpq_t()) == 0; }

    friend RatC operator+(const RatC& a, const RatC& b) { return {a.re + b.re, a.im + b.im}; }
    friend RatC operator-(const RatC& a, const RatC& b) { return {a.re - b.re, a.im - b.im}; }
    friend RatC operator*(const RatC& a, const RatC& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    RatC operator-() const { return {-re, -im}; }
    bool operator==(const RatC& o) const { return re == o.re && im == o.im; }
};

// exact division a/b; b must be nonzero
RatC rat_div(const RatC& a, const RatC& b);

// Exact rational polynomial, ascending coefficients.
struct RatPoly {
    std::vector<RatC> coeffs;

    size_t len() const { return coeffs.size(); }
    int64_t degree() const {
        int64_t d = static_cast<int64_t>(coeffs.size()) - 1;
        while (d >= 0 && coeffs[static_cast<size_t>(d)].is_zero()) --d;
        return d;
    }
    const RatC& at(size_t i) const {
        static const RatC zero{};
        return i < coeffs.size() ? coeffs[i] : zero;
    }
    void trim() {
        while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    }
};

// exact conversions (dyadics are rationals)
mpq_class to_rat(const Dyadic& x);
RatC to_rat(const DyadicComplex& x);
RatPoly to_rat(const ApproxPoly& f);

// box modulus |re|+|im| and the induced polynomial norm / distance, all exact
mpq_class box_abs(const RatC& z);
mpq_class box_norm(const RatPoly& f);
mpq_class box_dist(const RatPoly& a, const RatPoly& b);
// v <= 2^k, exactly
bool rat_le_pow2(const mpq_class& v, int64_t k);

// exact rational Horner
RatC eval_rat(const RatPoly& f, const RatC& x);

// exact schoolbook product
RatPoly rat_mul(const RatPoly& a, const RatPoly& b);

// exact rational long division: f = q*g + r with deg r < deg g; ZeroDivisor if g = 0
std::pair<RatPoly, RatPoly> exact_divmod(const RatPoly& f, const RatPoly& g);

// exact Lagrange interpolation through (points[i], values[i]); CoincidentPoints on duplicates
RatPoly exact_lagrange(const std::vector<RatC>& points, const std::vector<RatC>& values);

// exact lambda_i = prod_{j != i} (points[i] - points[j]); CoincidentPoints on duplicates
std::vector<RatC> exact_lagrange_denoms(const std::vector<RatC>& points);

// Certified plain Horner on the represented coefficients of f:
// |result - f(x)| <= 2^(-bits), each component. Working precision grows with
// n * log2|x|, so keep inputs modest.
DyadicComplex horner_eval_hp(const ApproxPoly& f, const DyadicComplex& x, int64_t bits);

// exact dyadic schoolbook product of the represented polynomials
ApproxPoly exact_poly_mul_dyadic(const ApproxPoly& a, const ApproxPoly& b);

// exact dyadic Taylor shift: returns g with g(x) = f(x + m), via repeated
// synthetic division by (x - m)
ApproxPoly exact_shift(const ApproxPoly& f, const DyadicComplex& m);

}  // namespace polyeval
