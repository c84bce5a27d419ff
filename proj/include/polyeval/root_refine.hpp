#pragma once

#include <cstdint>
#include <vector>

#include "polyeval/poly.hpp"

namespace polyeval {

// Isolating interval (a, b) for a simple real root of a real polynomial,
// with certified endpoint signs once established. The QIR subdivision count
// N = 2^log2_n squares on a successful step and falls back to max(4, sqrt N)
// after a bisection; N outgrows any fixed-width integer, so its exponent is
// what is stored.
struct IsolatingInterval {
    Dyadic a, b;
    int sign_a = 0, sign_b = 0;  // 0 = not yet established
    int64_t log2_n = 2;
    bool exact = false;  // a == b and F(a) = 0 exactly
};

// Sign of F at x: +1/-1 once |F(x)| is certified nonzero at some precision on
// the doubling ladder start_bits, 2*start_bits, ..., cap_bits; 0 when the
// ladder is exhausted undecided (in particular whenever F(x) = 0 exactly).
int certified_sign(const ApproxPoly& F, const Dyadic& x, int64_t start_bits, int64_t cap_bits);

struct RefineJob {
    ApproxPoly poly;                           // real coefficients, degree >= 1
    std::vector<IsolatingInterval> intervals;  // pairwise disjoint
};

// One QIR state advance on a copy of interval I: either the secant-guided
// subinterval is confirmed (width/N, N -> N^2) or one split point decided by
// bisection halves the interval (N -> max(4, sqrt N)). Evaluation points that
// stay undecided at the precision cap are first tested for an exact root hit
// (zero-width result, exact flag) and otherwise replaced by deterministically
// perturbed grid offsets; EvaluationUndecidable once those are exhausted.
IsolatingInterval qir_step(const ApproxPoly& F, const IsolatingInterval& I, int64_t L);

// Refines every interval until its width is <= 2^(-L) (or an exact hit).
// Each sweep batches the evaluations of all active intervals into a single
// multipoint evaluation; every decision consumes the correctly rounded value
// of F at the interval's own scheduled precision, so the output is
// bit-identical to refining each interval alone.
std::vector<IsolatingInterval> refine_batch(const RefineJob& job, int64_t L);

}  // namespace polyeval
