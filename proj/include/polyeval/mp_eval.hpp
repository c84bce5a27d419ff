#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "polyeval/poly.hpp"

namespace polyeval {

// Flat worst-case precision caps for an evaluation instance. The live
// algorithm schedules tighter per-node demands; these caps dominate them and
// are what external callers may size buffers/oracles against.
struct PrecisionBudget {
    int64_t n = 1;      // number of evaluation points
    int64_t tau = 1;    // ||F||_1 < 2^tau
    int64_t gamma = 1;  // all |x_j| < 2^gamma
    int64_t L = 0;      // target output precision
    int64_t ell_div = 0;   // cap for any division target in the remainder tree
    int64_t ell_mul = 0;   // cap for any multiplication target in the subproduct tree
    int64_t headroom = 2;  // multiplier applied on internal certificate retries
};

// ell_div >= L + tau + 2*n*gamma + C*n*ceil_log2(n),
// ell_mul >= L + tau + C*(n*gamma + n*ceil_log2(n)), with C = 40 and the
// n*ceil_log2(n) factor floored at n (so n = 1 still gets a full C-term).
PrecisionBudget schedule_precisions(int64_t n, int64_t tau, int64_t gamma, int64_t L);

// One node of a subproduct tree over a contiguous range of points.
// poly is the monic product prod_{lo <= j < hi} (x - x_j), certified so that
// ||poly - exact product over stored leaf points||_1 <= 2^(-cur_bits).
// cur_bits < 0 means the polynomial has not been materialized yet.
struct TreeNode {
    size_t lo = 0, hi = 0;
    int left = -1, right = -1;
    ApproxPoly poly;
    int64_t cur_bits = -1;
};

// Nearly balanced binary tree: for m leaves the left subtree holds
// ceil(m/2) of them. Duplicate points are legal. Node polynomials are built
// lazily and re-derived from the children whenever more precision is needed;
// the stored leaf points never change, so every rebuild aims at the same
// exact target.
struct SubproductTree {
    std::vector<DyadicComplex> leaf_points;
    int64_t gamma = 1;  // all |leaf point| < 2^gamma
    std::vector<TreeNode> nodes;
    int root = -1;

    size_t leaves() const { return leaf_points.size(); }
    int64_t node_degree(int idx) const {
        return static_cast<int64_t>(nodes[idx].hi - nodes[idx].lo);
    }
};

// Structure only (no polynomials). point_bits >= 0 rounds each point to
// point_bits fractional bits first (modeling one query of the coordinate
// oracle); point_bits < 0 stores the points verbatim.
SubproductTree make_tree_structure(const std::vector<DyadicComplex>& points, int64_t point_bits);

// Materializes nodes[idx].poly with cur_bits >= bits; returns the certified
// err_bits. Leaves are exact. Internal nodes multiply their children, which
// are recursively ensured at a higher target first.
int64_t ensure_node(SubproductTree& t, int idx, int64_t bits);

// Uniform public build: every node certified to ell bits against the exact
// subproducts of the original points (the one point rounding it performs is
// folded into that certificate).
SubproductTree build_subproduct_tree(const std::vector<DyadicComplex>& points, int64_t ell);

struct EvalStats {
    int64_t max_query_bits = 0;  // deepest precision requested from F or the points
    int64_t escalations = 0;     // certificate retries inside divisions
};

// Evaluates F at every point with |result_j - F(x_j)| <= 2^(-L) (box norm on
// the complex difference). Requires F.err_bits large enough to be queried at
// the scheduled root precision; throws InsufficientInputPrecision otherwise.
std::vector<DyadicComplex> multipoint_eval(const ApproxPoly& F,
                                           const std::vector<DyadicComplex>& points, int64_t L,
                                           EvalStats* stats = nullptr);

// Same algorithm against a caller-supplied tree; evaluates at the tree's own
// stored leaf points (no additional point rounding). The tree is mutated only
// by lifting node precisions.
std::vector<DyadicComplex> multipoint_eval_on_tree(const ApproxPoly& F, SubproductTree& tree,
                                                   int64_t L, EvalStats* stats = nullptr);

// err_bits an input polynomial of degree < tree.leaves() must carry to be
// evaluated on this tree at output precision L
int64_t eval_input_demand(const SubproductTree& t, int64_t L);

// One remainder-tree layer step: reduces parent modulo each child divisor at
// the budget's division cap. g_left and g_right must be monic with roots of
// modulus < 2^budget.gamma; layer index i is only sanity-checked against the
// divisor degrees.
std::pair<ApproxPoly, ApproxPoly> remainder_layer(const ApproxPoly& parent,
                                                  const ApproxPoly& g_left,
                                                  const ApproxPoly& g_right,
                                                  const PrecisionBudget& budget, int64_t i);

}  // namespace polyeval
