#include <random>

#include "doctest.h"
#include "polyeval/errors.hpp"
#include "polyeval/oracle.hpp"
#include "polyeval/poly.hpp"
#include "util.hpp"

using namespace polyeval;
using testutil::rand_dyadic;

TEST_CASE("dyadic canonical form") {
    Dyadic a(mpz_class(12), 0);
    CHECK(a.mantissa() == 3);
    CHECK(a.exponent() == 2);

    Dyadic z(mpz_class(0), 57);
    CHECK(z.is_zero());
    CHECK(z.exponent() == 0);

    CHECK(Dyadic(6) == Dyadic(mpz_class(3), 1));
    CHECK(Dyadic::pow2(-3).mantissa() == 1);
    CHECK(Dyadic::pow2(-3).exponent() == -3);
}

TEST_CASE("dyadic ring operations are exact") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 200; ++i) {
        Dyadic a = rand_dyadic(rng, 40 + i % 30, (i % 17) - 8);
        Dyadic b = rand_dyadic(rng, 50, (i % 11) - 5);
        CHECK((a + b) - b == a);
        CHECK(a * b == b * a);
        CHECK((a * b).mul_pow2(-4).mul_pow2(4) == a * b);
        // cross-check against exact rationals
        CHECK(to_rat(a) + to_rat(b) == to_rat(a + b));
        CHECK(to_rat(a) * to_rat(b) == to_rat(a * b));
    }
}

TEST_CASE("comparison is an exact total order") {
    std::mt19937_64 rng(102);
    for (int i = 0; i < 200; ++i) {
        Dyadic a = rand_dyadic(rng, 30, (i % 9) - 4);
        Dyadic b = rand_dyadic(rng, 45, (i % 7) - 3);
        int c = Dyadic::cmp(a, b);
        int rc = cmp(to_rat(a), to_rat(b));
        CHECK(((c < 0) == (rc < 0)));
        CHECK(((c == 0) == (rc == 0)));
        CHECK((a < b) == (rc < 0));
    }
}

TEST_CASE("round_frac: nearest with ties to even") {
    CHECK(Dyadic(mpz_class(3), -1).round_frac(0) == Dyadic(2));   // 1.5 -> 2
    CHECK(Dyadic(mpz_class(1), -1).round_frac(0) == Dyadic(0));   // 0.5 -> 0
    CHECK(Dyadic(mpz_class(5), -1).round_frac(0) == Dyadic(2));   // 2.5 -> 2
    CHECK(Dyadic(mpz_class(-3), -1).round_frac(0) == Dyadic(-2)); // -1.5 -> -2
    CHECK(Dyadic(mpz_class(7), -2).round_frac(1) == Dyadic(mpz_class(2), 0));  // 1.75 -> 2

    std::mt19937_64 rng(103);
    for (int i = 0; i < 300; ++i) {
        Dyadic a = rand_dyadic(rng, 80, (i % 13) - 6);
        int64_t frac = i % 40;
        Dyadic r = a.round_frac(frac);
        CHECK(r.frac_bits() <= frac);
        CHECK((r - a).abs() <= Dyadic::pow2(-frac - 1));
        // idempotent once on the grid
        CHECK(r.round_frac(frac) == r);
    }
}

TEST_CASE("floor_frac / ceil_frac are directed") {
    std::mt19937_64 rng(104);
    for (int i = 0; i < 200; ++i) {
        Dyadic a = rand_dyadic(rng, 60, 2);
        int64_t frac = i % 20;
        Dyadic lo = a.floor_frac(frac), hi = a.ceil_frac(frac);
        CHECK(lo <= a);
        CHECK(a <= hi);
        CHECK(hi - lo <= Dyadic::pow2(-frac));
    }
}

TEST_CASE("log2 bounds bracket the magnitude") {
    std::mt19937_64 rng(105);
    for (int i = 0; i < 200; ++i) {
        Dyadic a = rand_dyadic(rng, 30 + i % 50, (i % 21) - 10);
        if (a.is_zero()) continue;
        CHECK(Dyadic::pow2(a.log2_lb()) <= a.abs());
        CHECK(a.abs() < Dyadic::pow2(a.log2_ub()));
    }
}

TEST_CASE("coarse_abs_ub overestimates with a short mantissa") {
    std::mt19937_64 rng(106);
    for (int i = 0; i < 100; ++i) {
        Dyadic a = rand_dyadic(rng, 90, (i % 15) - 7);
        Dyadic u = a.coarse_abs_ub();
        CHECK(a.abs() <= u);
        CHECK(u.bitlen() <= 12);
        CHECK(u <= a.abs() * Dyadic(mpz_class(3), -1));  // within factor 1.5
    }
}

TEST_CASE("round_scalar meets its componentwise contract") {
    DyadicComplex one(1);
    CHECK(round_scalar(one, 10) == one);

    DyadicComplex tiny(Dyadic::pow2(-20), Dyadic());
    DyadicComplex r = round_scalar(tiny, 10);
    CHECK((r.re - tiny.re).abs() <= Dyadic::pow2(-10));

    // 64-bit approximant of 1/3 rounded to 16 bits stays within 2^(-16)
    mpz_class third = (mpz_class(1) << 64) / 3;
    DyadicComplex x(Dyadic(third, -64), Dyadic(-third, -65));
    DyadicComplex y = round_scalar(x, 16);
    CHECK((y.re - x.re).abs() <= Dyadic::pow2(-16));
    CHECK((y.im - x.im).abs() <= Dyadic::pow2(-16));
    CHECK(y.re.frac_bits() <= 17);
}

TEST_CASE("trunc_poly lands within distance 1 of every coefficient") {
    ApproxPoly f;
    f.coeffs = {DyadicComplex(Dyadic(mpz_class(13), -2), Dyadic(mpz_class(1), -1)),  // 3.25+0.5i
                DyadicComplex(4), DyadicComplex(Dyadic(-7), Dyadic(2))};
    GaussianIntPoly g = trunc_poly(f);
    REQUIRE(g.len() == 3);
    // integer coefficients pass through unchanged
    CHECK(g.re[1] == 4);
    CHECK(g.im[1] == 0);
    CHECK(g.re[2] == -7);
    CHECK(g.im[2] == 2);
    for (size_t i = 0; i < 3; ++i) {
        Dyadic dre = Dyadic(g.re[i], 0) - f.coeffs[i].re;
        Dyadic dim = Dyadic(g.im[i], 0) - f.coeffs[i].im;
        CHECK(dre.abs() + dim.abs() <= Dyadic(1));
    }

    std::mt19937_64 rng(107);
    ApproxPoly h = testutil::rand_poly(rng, 9, 40, 3);
    ApproxPoly hs = mul_pow2(h, 20);
    GaussianIntPoly t = trunc_poly(hs);
    for (size_t i = 0; i < t.len(); ++i) {
        Dyadic dre = Dyadic(t.re[i], 0) - hs.coeffs[i].re;
        Dyadic dim = Dyadic(t.im[i], 0) - hs.coeffs[i].im;
        CHECK(dre.abs() + dim.abs() <= Dyadic(1));
    }
}

TEST_CASE("one_norm_bound: exact overestimate within sqrt(2)") {
    ApproxPoly xp1;
    xp1.coeffs = {DyadicComplex(1), DyadicComplex(1)};
    CHECK(one_norm_bound(xp1) == Dyadic(2));

    CHECK(one_norm_bound(ApproxPoly{}) == Dyadic(0));

    ApproxPoly f;
    f.coeffs = {DyadicComplex(0), DyadicComplex(Dyadic(3), Dyadic(4))};
    CHECK(one_norm_bound(f) == Dyadic(7));  // |3|+|4| bounds modulus 5

    // submultiplicativity of the tracked bound, factor 2 covers the box slack
    std::mt19937_64 rng(108);
    for (int i = 0; i < 20; ++i) {
        ApproxPoly a = testutil::rand_poly(rng, 5, 30, 2);
        ApproxPoly b = testutil::rand_poly(rng, 4, 30, 1);
        ApproxPoly p = exact_poly_mul_dyadic(a, b);
        CHECK(one_norm_bound(p) <= one_norm_bound(a) * one_norm_bound(b) * Dyadic(2));
    }
}

TEST_CASE("one_norm_log2ub and max_coeff_log2ub bracket the norms") {
    std::mt19937_64 rng(109);
    for (int i = 0; i < 50; ++i) {
        ApproxPoly f = testutil::rand_poly(rng, 6, 35, (i % 9) - 4);
        mpq_class norm = box_norm(to_rat(f));
        CHECK(rat_le_pow2(norm, one_norm_log2ub(f)));
        for (const auto& c : f.coeffs) CHECK(rat_le_pow2(box_abs(to_rat(c)), max_coeff_log2ub(f)));
    }
}

TEST_CASE("recip_approx certifies the reciprocal") {
    std::mt19937_64 rng(110);
    for (int i = 0; i < 40; ++i) {
        DyadicComplex z = testutil::rand_complex(rng, 30, (i % 7) - 3);
        if (z.is_zero()) continue;
        int64_t bits = 20 + 10 * (i % 9);
        DyadicComplex r = recip_approx(z, bits);
        RatC exact = rat_div(RatC(1), to_rat(z));
        CHECK(rat_le_pow2(box_abs(to_rat(r) - exact), -bits));
    }
    CHECK_THROWS_AS(recip_approx(DyadicComplex(), 10), ZeroDivisor);
}

TEST_CASE("hex literal round trip at the scalar level") {
    CHECK(Dyadic(mpz_class(3), -2).to_hex_string() == "0x3p-2");
    CHECK(Dyadic(0).to_hex_string() == "0x0p0");
    CHECK(Dyadic(-1).to_hex_string() == "-0x1p0");
}
