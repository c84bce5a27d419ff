#include <random>

#include "doctest.h"
#include "polyeval/errors.hpp"
#include "polyeval/oracle.hpp"
#include "util.hpp"

using namespace polyeval;

namespace {

RatPoly rat_rand(std::mt19937_64& rng, int64_t deg) {
    RatPoly f;
    for (int64_t i = 0; i <= deg; ++i) {
        mpq_class re(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 7));
        mpq_class im(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 7));
        re.canonicalize();
        im.canonicalize();
        f.coeffs.push_back(RatC(re, im));
    }
    if (f.coeffs.back().is_zero()) f.coeffs.back() = RatC(1);
    return f;
}

RatPoly rat_add(const RatPoly& a, const RatPoly& b) {
    RatPoly s;
    size_t n = std::max(a.len(), b.len());
    for (size_t i = 0; i < n; ++i) s.coeffs.push_back(a.at(i) + b.at(i));
    return s;
}

}  // namespace

TEST_CASE("exact_divmod small identities") {
    RatPoly f;  // x^2 + 1
    f.coeffs = {RatC(1), RatC(0), RatC(1)};
    RatPoly g;  // x
    g.coeffs = {RatC(0), RatC(1)};
    auto [q, r] = exact_divmod(f, g);
    REQUIRE(q.degree() == 1);
    CHECK(q.at(0) == RatC(0));
    CHECK(q.at(1) == RatC(1));
    REQUIRE(r.degree() == 0);
    CHECK(r.at(0) == RatC(1));

    auto [q2, r2] = exact_divmod(f, f);
    CHECK(q2.degree() == 0);
    CHECK(q2.at(0) == RatC(1));
    CHECK(r2.degree() < 0);

    CHECK_THROWS_AS(exact_divmod(f, RatPoly{}), ZeroDivisor);
}

TEST_CASE("exact_divmod re-multiplication identity") {
    std::mt19937_64 rng(301);
    for (int rep = 0; rep < 12; ++rep) {
        RatPoly f = rat_rand(rng, 8);
        RatPoly g = rat_rand(rng, 1 + static_cast<int64_t>(rng() % 5));
        auto [q, r] = exact_divmod(f, g);
        CHECK(r.degree() < g.degree());
        RatPoly back = rat_add(rat_mul(q, g), r);
        CHECK(box_dist(back, f) == 0);
    }
}

TEST_CASE("exact_lagrange small identities") {
    std::vector<RatC> pts = {RatC(0), RatC(1)};
    std::vector<RatC> vals = {RatC(1), RatC(2)};
    RatPoly f = exact_lagrange(pts, vals);
    REQUIRE(f.degree() == 1);
    CHECK(f.at(0) == RatC(1));
    CHECK(f.at(1) == RatC(1));

    RatPoly c = exact_lagrange({RatC(0)}, {RatC(0)});
    CHECK(c.degree() < 0);

    CHECK_THROWS_AS(exact_lagrange({RatC(1), RatC(1)}, {RatC(0), RatC(0)}), CoincidentPoints);
}

TEST_CASE("exact_lagrange reproduces its data") {
    std::mt19937_64 rng(302);
    std::vector<RatC> pts, vals;
    for (long i = 0; i < 7; ++i) {
        pts.push_back(RatC(mpq_class(i), mpq_class(static_cast<long>(rng() % 5) - 2)));
        vals.push_back(RatC(mpq_class(static_cast<long>(rng() % 19) - 9),
                            mpq_class(static_cast<long>(rng() % 19) - 9)));
    }
    RatPoly f = exact_lagrange(pts, vals);
    CHECK(f.degree() < 7);
    for (size_t i = 0; i < pts.size(); ++i) CHECK(eval_rat(f, pts[i]) == vals[i]);
}

TEST_CASE("exact_lagrange_denoms") {
    std::vector<RatC> denoms = exact_lagrange_denoms({RatC(0), RatC(1)});
    REQUIRE(denoms.size() == 2);
    CHECK(denoms[0] == -RatC(1));
    CHECK(denoms[1] == RatC(1));
}

TEST_CASE("horner_eval_hp certificate") {
    ApproxPoly sq;  // x^2
    sq.coeffs = {DyadicComplex(0), DyadicComplex(0), DyadicComplex(1)};
    DyadicComplex y = horner_eval_hp(sq, DyadicComplex(2), 40);
    CHECK(testutil::scalar_close(y, DyadicComplex(4), -40));

    CHECK(horner_eval_hp(ApproxPoly{}, DyadicComplex(7), 20).is_zero());

    std::mt19937_64 rng(303);
    for (int rep = 0; rep < 15; ++rep) {
        ApproxPoly f = testutil::rand_poly(rng, 10, 30, 2);
        DyadicComplex x = testutil::rand_complex(rng, 20, 2);
        int64_t bits = 30 + 20 * (rep % 5);
        DyadicComplex got = horner_eval_hp(f, x, bits);
        RatC exact = eval_rat(to_rat(f), to_rat(x));
        CHECK(rat_le_pow2(box_abs(to_rat(got) - exact), -bits + 1));
    }
}

TEST_CASE("exact_shift is an exact ring identity") {
    ApproxPoly sq;  // x^2
    sq.coeffs = {DyadicComplex(0), DyadicComplex(0), DyadicComplex(1)};
    ApproxPoly shifted = exact_shift(sq, DyadicComplex(1));
    REQUIRE(shifted.degree() == 2);
    CHECK(shifted.coeffs[0] == DyadicComplex(1));
    CHECK(shifted.coeffs[1] == DyadicComplex(2));
    CHECK(shifted.coeffs[2] == DyadicComplex(1));

    std::mt19937_64 rng(304);
    for (int rep = 0; rep < 8; ++rep) {
        ApproxPoly f = testutil::rand_poly(rng, 9, 20, 1);
        DyadicComplex m = testutil::rand_complex(rng, 8, 2);
        ApproxPoly back = exact_shift(exact_shift(f, m), -m);
        CHECK(box_dist(to_rat(back), to_rat(f)) == 0);
        // consistency at a random exact point
        DyadicComplex t = testutil::rand_complex(rng, 8, 1);
        RatC lhs = eval_rat(to_rat(exact_shift(f, m)), to_rat(t));
        RatC rhs = eval_rat(to_rat(f), to_rat(m + t));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("rational helpers") {
    CHECK(rat_le_pow2(mpq_class(1, 4), -2));
    CHECK(!rat_le_pow2(mpq_class(3, 8), -2));
    RatC q = rat_div(RatC(mpq_class(1), mpq_class(1)), RatC(mpq_class(0), mpq_class(1)));
    CHECK(q == RatC(mpq_class(1), mpq_class(-1)));  // (1+i)/i = 1-i
}
