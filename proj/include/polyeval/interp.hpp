#pragma once

#include <cstdint>
#include <vector>

#include "polyeval/mp_eval.hpp"
#include "polyeval/poly.hpp"

namespace polyeval {

// Denominators lambda_i = prod_{j != i} (x_i - x_j) over the tree's stored
// leaf points, each certified to |result_i - lambda_i| <= 2^(-ell). Computed
// as the derivative of the root subproduct evaluated back on the same tree.
// The tree is mutated only by lifting node precisions.
std::vector<DyadicComplex> lagrange_denominators(SubproductTree& tree, int64_t ell);

// One merge step of the divide-and-conquer linear combination:
// g_right * mu_left + g_left * mu_right, certified to ell bits. Each partial
// interpolant is multiplied by the subproduct of the *other* half's points.
// Operand precision demands are those of the underlying certified multiply.
ApproxPoly combine_layer(const ApproxPoly& mu_left, const ApproxPoly& mu_right,
                         const ApproxPoly& g_left, const ApproxPoly& g_right, int64_t ell);

struct InterpProblem {
    std::vector<DyadicComplex> points;
    std::vector<DyadicComplex> values;
};

// The unique F with deg F < n and F(x_i) = v_i, certified to
// ||result - F||_1 <= 2^(-L). Throws CoincidentPoints when two points
// coincide exactly, or when no denominator can be certified away from zero
// within the escalation cap.
ApproxPoly interpolate(const InterpProblem& problem, int64_t L);

}  // namespace polyeval
