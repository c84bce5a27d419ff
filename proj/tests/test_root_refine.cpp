#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "polyeval/errors.hpp"
#include "polyeval/oracle.hpp"
#include "polyeval/root_refine.hpp"
#include "util.hpp"

using namespace polyeval;
using testutil::poly_from_roots;

namespace {

ApproxPoly real_poly(std::vector<long> coeffs) {
    ApproxPoly f;
    for (long c : coeffs) f.coeffs.push_back(DyadicComplex(c));
    return f;
}

// x^2 - 2
ApproxPoly sqrt2_poly() { return real_poly({-2, 0, 1}); }

mpq_class rat_sq(const Dyadic& x) { return to_rat(x) * to_rat(x); }

}  // namespace

TEST_CASE("certified_sign decides clean points and reports exact zeros as 0") {
    ApproxPoly f = sqrt2_poly();
    CHECK(certified_sign(f, Dyadic(mpz_class(3), -1), 5, 100) == 1);   // f(1.5) = 1/4
    CHECK(certified_sign(f, Dyadic(1), 5, 100) == -1);                 // f(1) = -1
    ApproxPoly lin = real_poly({-1, 1});                               // x - 1
    CHECK(certified_sign(lin, Dyadic(1), 5, 60) == 0);                 // exact zero
    CHECK_THROWS_AS(certified_sign(f, Dyadic(1), 0, 10), std::invalid_argument);
}

TEST_CASE("qir_step first advance on x^2 - 2 over (1, 2)") {
    IsolatingInterval I;
    I.a = Dyadic(1);
    I.b = Dyadic(2);
    IsolatingInterval out = qir_step(sqrt2_poly(), I, 200);
    // secant slot floor(4 * 1/3) = 1 of 4 confirms: (5/4, 3/2), N 4 -> 16
    CHECK(out.a == Dyadic(mpz_class(5), -2));
    CHECK(out.b == Dyadic(mpz_class(3), -1));
    CHECK(out.sign_a == -1);
    CHECK(out.sign_b == 1);
    CHECK(out.log2_n == 4);
    CHECK_FALSE(out.exact);
}

TEST_CASE("qir_step follows the secant exactly on a linear polynomial") {
    IsolatingInterval I;
    I.a = Dyadic(0);
    I.b = Dyadic(3);
    IsolatingInterval out = qir_step(real_poly({-1, 1}), I, 100);
    CHECK(out.a == Dyadic(mpz_class(3), -2));  // 3/4
    CHECK(out.b == Dyadic(mpz_class(3), -1));  // 3/2
    CHECK(out.log2_n == 4);
}

TEST_CASE("qir_step falls back to bisection when the slot misses") {
    // x^3 - 3x + 1 on (0, 1): slot (1/2, 3/4) is all-negative, bisect at 1/2
    IsolatingInterval I;
    I.a = Dyadic(0);
    I.b = Dyadic(1);
    IsolatingInterval out = qir_step(real_poly({1, -3, 0, 1}), I, 100);
    CHECK(out.a == Dyadic(0));
    CHECK(out.b == Dyadic(mpz_class(1), -1));
    CHECK(out.sign_a == 1);
    CHECK(out.sign_b == -1);
    CHECK(out.log2_n == 2);  // N falls back to max(4, sqrt N): stays at the floor of 4
}

TEST_CASE("qir_step rejects non-bracketing and contradictory inputs") {
    IsolatingInterval same;
    same.a = Dyadic(3);
    same.b = Dyadic(4);
    CHECK_THROWS_AS(qir_step(sqrt2_poly(), same, 50), std::invalid_argument);

    IsolatingInterval lied;
    lied.a = Dyadic(1);
    lied.b = Dyadic(2);
    lied.sign_a = 1;  // actually negative
    CHECK_THROWS_AS(qir_step(sqrt2_poly(), lied, 50), std::invalid_argument);

    IsolatingInterval flipped;
    flipped.a = Dyadic(2);
    flipped.b = Dyadic(1);
    CHECK_THROWS_AS(qir_step(sqrt2_poly(), flipped, 50), std::invalid_argument);
}

TEST_CASE("qir_step lands on an exact root at an undecidable endpoint") {
    // x^2 - 3x + 2 = (x-1)(x-2): F(1) = 0 exactly
    IsolatingInterval I;
    I.a = Dyadic(0);
    I.b = Dyadic(1);
    IsolatingInterval out = qir_step(real_poly({2, -3, 1}), I, 20);
    CHECK(out.exact);
    CHECK(out.a == Dyadic(1));
    CHECK(out.b == Dyadic(1));
}

TEST_CASE("refine throws EvaluationUndecidable when every split point is poisoned") {
    // roots k/16 + 2^-2000 for k = 1..15: every N-section and perturbation
    // candidate of (0,1) at N = 4 lies on the 1/16 grid, a distance 2^-2000
    // from a root -- undecidable within the cap yet never exactly zero.
    std::vector<DyadicComplex> roots;
    for (long k = 1; k <= 15; ++k)
        roots.push_back(DyadicComplex(Dyadic((mpz_class(k) << 1996) + 1, -2000), Dyadic()));
    ApproxPoly f = poly_from_roots(roots);
    RefineJob job;
    job.poly = f;
    IsolatingInterval I;
    I.a = Dyadic(0);
    I.b = Dyadic(1);
    job.intervals = {I};
    CHECK_THROWS_AS(refine_batch(job, 30), EvaluationUndecidable);
}

TEST_CASE("refine_batch brackets sqrt 2 to the requested width") {
    RefineJob job;
    job.poly = sqrt2_poly();
    IsolatingInterval I;
    I.a = Dyadic(1);
    I.b = Dyadic(2);
    job.intervals = {I};
    std::vector<IsolatingInterval> out = refine_batch(job, 50);
    REQUIRE(out.size() == 1);
    CHECK_FALSE(out[0].exact);
    CHECK(out[0].b - out[0].a <= Dyadic::pow2(-50));
    CHECK(Dyadic(1) <= out[0].a);
    CHECK(out[0].b <= Dyadic(2));
    CHECK(rat_sq(out[0].a) < 2);
    CHECK(2 < rat_sq(out[0].b));
    CHECK(out[0].sign_a == -1);
    CHECK(out[0].sign_b == 1);
}

TEST_CASE("refine_batch separates neighbouring quadratic surds") {
    RefineJob job;
    job.poly = real_poly({6, 0, -5, 0, 1});  // (x^2 - 2)(x^2 - 3)
    IsolatingInterval I1, I2;
    I1.a = Dyadic(1);
    I1.b = Dyadic(mpz_class(3), -1);
    I2.a = Dyadic(mpz_class(3), -1);
    I2.b = Dyadic(2);
    job.intervals = {I1, I2};
    std::vector<IsolatingInterval> out = refine_batch(job, 50);
    REQUIRE(out.size() == 2);
    CHECK(out[0].b - out[0].a <= Dyadic::pow2(-50));
    CHECK(out[1].b - out[1].a <= Dyadic::pow2(-50));
    CHECK(rat_sq(out[0].a) < 2);
    CHECK(2 < rat_sq(out[0].b));
    CHECK(rat_sq(out[1].a) < 3);
    CHECK(3 < rat_sq(out[1].b));
}

TEST_CASE("refine_batch leaves already-narrow intervals untouched") {
    RefineJob job;
    job.poly = sqrt2_poly();
    IsolatingInterval I;
    I.a = Dyadic(1);
    I.b = Dyadic(2);
    job.intervals = {I};
    std::vector<IsolatingInterval> out = refine_batch(job, 0);  // width 1 <= 2^0
    REQUIRE(out.size() == 1);
    CHECK(out[0].a == Dyadic(1));
    CHECK(out[0].b == Dyadic(2));
    CHECK(out[0].sign_a == 0);  // never evaluated
    CHECK(out[0].sign_b == 0);
    CHECK(out[0].log2_n == 2);
}

TEST_CASE("batched refinement is bit-identical to one interval at a time") {
    std::vector<DyadicComplex> roots;
    for (long k = 1; k <= 16; ++k) roots.push_back(DyadicComplex(k));
    ApproxPoly w16 = poly_from_roots(roots);

    std::vector<IsolatingInterval> ivs;
    for (long k = 1; k <= 16; ++k) {
        IsolatingInterval I;
        I.a = Dyadic(2 * k - 1).mul_pow2(-1);
        I.b = Dyadic(2 * k + 1).mul_pow2(-1);
        ivs.push_back(I);
    }
    RefineJob batch;
    batch.poly = w16;
    batch.intervals = ivs;
    std::vector<IsolatingInterval> together = refine_batch(batch, 30);
    REQUIRE(together.size() == 16);

    for (size_t i = 0; i < 16; ++i) {
        RefineJob solo;
        solo.poly = w16;
        solo.intervals = {ivs[i]};
        IsolatingInterval alone = refine_batch(solo, 30)[0];
        CHECK(together[i].a == alone.a);
        CHECK(together[i].b == alone.b);
        CHECK(together[i].sign_a == alone.sign_a);
        CHECK(together[i].sign_b == alone.sign_b);
        CHECK(together[i].log2_n == alone.log2_n);
        CHECK(together[i].exact == alone.exact);
        // and the answer is sound: root k inside
        CHECK(together[i].b - together[i].a <= Dyadic::pow2(-30));
        if (!together[i].exact) {
            CHECK(to_rat(together[i].a) < static_cast<long>(i) + 1);
            CHECK(static_cast<long>(i) + 1 < to_rat(together[i].b));
        } else {
            CHECK(to_rat(together[i].a) == static_cast<long>(i) + 1);
        }
    }
}

TEST_CASE("refine_batch soundness on a cube root") {
    RefineJob job;
    job.poly = real_poly({-2, 0, 0, 1});  // x^3 - 2
    IsolatingInterval I;
    I.a = Dyadic(1);
    I.b = Dyadic(2);
    job.intervals = {I};
    std::vector<IsolatingInterval> out = refine_batch(job, 100);
    REQUIRE(out.size() == 1);
    CHECK(out[0].b - out[0].a <= Dyadic::pow2(-100));
    mpq_class a3 = to_rat(out[0].a) * to_rat(out[0].a) * to_rat(out[0].a);
    mpq_class b3 = to_rat(out[0].b) * to_rat(out[0].b) * to_rat(out[0].b);
    CHECK(a3 < 2);
    CHECK(2 < b3);
}
