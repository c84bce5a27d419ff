#include <random>
#include <stdexcept>

#include "doctest.h"
#include "polyeval/oracle.hpp"
#include "polyeval/taylor.hpp"
#include "util.hpp"

using namespace polyeval;
using testutil::poly_close;
using testutil::rand_poly;

TEST_CASE("unit_circle_points exact small orders") {
    std::vector<DyadicComplex> w1 = unit_circle_points(1, 50);
    REQUIRE(w1.size() == 1);
    CHECK(w1[0].is_one());

    std::vector<DyadicComplex> w2 = unit_circle_points(2, 50);
    REQUIRE(w2.size() == 2);
    CHECK(w2[0].is_one());
    CHECK(w2[1] == DyadicComplex(-1));

    std::vector<DyadicComplex> w4 = unit_circle_points(4, 50);
    REQUIRE(w4.size() == 4);
    CHECK(w4[0].is_one());
    CHECK(w4[1] == DyadicComplex(Dyadic(0), Dyadic(1)));
    CHECK(w4[2] == DyadicComplex(-1));
    CHECK(w4[3] == DyadicComplex(Dyadic(0), Dyadic(-1)));
}

TEST_CASE("unit_circle_points order 8 certificate and symmetry") {
    int64_t ell = 100;
    std::vector<DyadicComplex> w = unit_circle_points(8, ell);
    REQUIRE(w.size() == 8);
    CHECK(w[0].is_one());
    CHECK(w[2] == DyadicComplex(Dyadic(0), Dyadic(1)));
    CHECK(w[4] == DyadicComplex(-1));
    CHECK(w[6] == DyadicComplex(Dyadic(0), Dyadic(-1)));
    // conjugate mirror is bit-identical
    CHECK(w[7] == w[1].conj());
    CHECK(w[5] == w[3].conj());

    for (size_t k = 0; k < 8; ++k) {
        // squared modulus sits on the circle
        mpq_class s = to_rat(w[k].re) * to_rat(w[k].re) + to_rat(w[k].im) * to_rat(w[k].im);
        CHECK(rat_le_pow2(abs(s - 1), -ell + 2));
        if (k % 2 == 1) {
            // odd powers have re^2 = 1/2
            mpq_class r2 = to_rat(w[k].re) * to_rat(w[k].re);
            CHECK(rat_le_pow2(abs(r2 - mpq_class(1, 2)), -ell + 2));
        }
    }

    // the primitive root raised to the order lands back on 1
    RatC p(1);
    for (int i = 0; i < 8; ++i) p = p * to_rat(w[1]);
    CHECK(rat_le_pow2(box_abs(p - RatC(1)), -ell + 4));
}

TEST_CASE("taylor_shift identity and simple square") {
    std::mt19937_64 rng(701);
    ShiftProblem id;
    id.poly = rand_poly(rng, 9, 16, 3);
    id.m = DyadicComplex(0);
    ApproxPoly same = taylor_shift(id, 64);
    REQUIRE(same.len() == id.poly.len());
    for (size_t i = 0; i < same.len(); ++i) CHECK(same.coeffs[i] == id.poly.coeffs[i]);

    ShiftProblem sq;
    sq.poly.coeffs = {DyadicComplex(0), DyadicComplex(0), DyadicComplex(1)};  // x^2
    sq.m = DyadicComplex(1);
    ApproxPoly got = taylor_shift(sq, 120);
    ApproxPoly expect;
    expect.coeffs = {DyadicComplex(1), DyadicComplex(2), DyadicComplex(1)};  // (x+1)^2
    CHECK(poly_close(got, expect, -120));
    CHECK(got.err_bits >= 120);

    CHECK_THROWS_AS(taylor_shift(sq, -1), std::invalid_argument);
}

TEST_CASE("taylor_shift degree 31 against the exact oracle") {
    std::mt19937_64 rng(702);
    ApproxPoly f = rand_poly(rng, 31, 16, 2);
    ShiftProblem p;
    p.poly = f;
    p.m = DyadicComplex(Dyadic(3), Dyadic(2));
    ApproxPoly got = taylor_shift(p, 256);
    ApproxPoly exact = exact_shift(f, p.m);
    CHECK(poly_close(got, exact, -256));
    CHECK(got.degree() == f.degree());

    // evaluation consistency at an interior dyadic point
    DyadicComplex t(Dyadic(mpz_class(1), -1), Dyadic());
    DyadicComplex lhs = horner_eval_hp(got, t, 280);
    DyadicComplex rhs = horner_eval_hp(f, p.m + t, 280);
    CHECK(rat_le_pow2(box_abs(to_rat(lhs) - to_rat(rhs)), -255));
}

TEST_CASE("taylor_shift back and forth is the identity") {
    std::mt19937_64 rng(703);
    ApproxPoly f = rand_poly(rng, 7, 12, 1);
    int64_t L = 140;
    ShiftProblem fwd;
    fwd.poly = f;
    fwd.m = DyadicComplex(Dyadic(1), Dyadic(1));
    ShiftProblem back;
    // the outer shift queries its input several hundred bits past L
    back.poly = taylor_shift(fwd, L + 500);
    back.m = -fwd.m;
    ApproxPoly round = taylor_shift(back, L);
    CHECK(poly_close(round, f, -L + 2));
}
