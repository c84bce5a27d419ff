#include "polyeval/mp_eval.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "polyeval/errors.hpp"
#include "polyeval/kronecker.hpp"
#include "polyeval/poly_div.hpp"
#include "polyeval/poly_mul.hpp"

namespace polyeval {

namespace {

// precision a parent remainder must carry beyond its child's target so one
// division by a degree-d monic divisor (roots < 2^gamma) lands the child
// target, including the post-division re-rounding slack
int64_t inc_for(int64_t d, int64_t gamma) {
    return d * (2 * gamma + 2 * ceil_log2(2 * d) + 32) + 8;
}

int build_structure(std::vector<TreeNode>& nodes, size_t lo, size_t hi) {
    TreeNode nd;
    nd.lo = lo;
    nd.hi = hi;
    if (hi - lo > 1) {
        size_t mid = lo + (hi - lo + 1) / 2;  // left subtree takes the ceil half
        nd.left = build_structure(nodes, lo, mid);
        nd.right = build_structure(nodes, mid, hi);
    }
    nodes.push_back(std::move(nd));
    return static_cast<int>(nodes.size()) - 1;
}

int64_t compute_need(const SubproductTree& t, std::vector<int64_t>& need, int idx, int64_t L) {
    const TreeNode& nd = t.nodes[idx];
    if (nd.left < 0) return need[idx] = L + 2;
    int64_t nl = compute_need(t, need, nd.left, L);
    int64_t nr = compute_need(t, need, nd.right, L);
    return need[idx] = std::max(nl + inc_for(t.node_degree(nd.left), t.gamma),
                                nr + inc_for(t.node_degree(nd.right), t.gamma));
}

// one rounding of every coefficient, certifying ||result - true F||_1 <= 2^(-target)
ApproxPoly query_poly(const ApproxPoly& F, int64_t target, int64_t* max_frac) {
    if (F.err_bits < target + 1)
        throw InsufficientInputPrecision("multipoint_eval needs input err_bits >= " +
                                         std::to_string(target + 1) + ", have " +
                                         std::to_string(F.err_bits));
    int64_t frac = target + ceil_log2(static_cast<int64_t>(F.len()) + 1) + 2;
    ApproxPoly r = F.round_frac(frac);
    r.err_bits = target;
    if (max_frac) *max_frac = std::max(*max_frac, frac);
    return r;
}

// remainder from a division at target ell_call, re-rounded at frac; deg_cap
// bounds the number of coefficients the rounding touches
ApproxPoly settle_remainder(const ApproxPoly& rem, int64_t ell_call, int64_t frac,
                            int64_t deg_cap) {
    ApproxPoly out = rem.round_frac(frac);
    Dyadic e = Dyadic::pow2(-ell_call) + Dyadic::pow2(-frac + ceil_log2(std::max<int64_t>(deg_cap, 1)));
    out.err_bits = -e.log2_ub();
    return out;
}

void descend(SubproductTree& t, const std::vector<int64_t>& need,
             std::vector<DyadicComplex>& out, int idx, const ApproxPoly& r) {
    const TreeNode& nd = t.nodes[idx];
    if (nd.left < 0) {
        out[nd.lo] = r.at(0);
        return;
    }
    for (int c : {nd.left, nd.right}) {
        int64_t dc = t.node_degree(c);
        int64_t ell_call = need[c] + 4;
        int64_t b_live = std::max<int64_t>(1, one_norm_log2ub(r));
        ensure_node(t, c, need[idx] + b_live);
        DivResult dv = div_monic(r, t.nodes[c].poly, t.gamma, ell_call);
        int64_t frac = need[c] + ceil_log2(dc + 1) + 2;
        descend(t, need, out, c, settle_remainder(dv.remainder, ell_call, frac, dc));
    }
}

std::vector<DyadicComplex> eval_impl(const ApproxPoly& F_in, SubproductTree& t, int64_t L,
                                     EvalStats* stats, int64_t point_query_frac) {
    size_t m = t.leaves();
    std::vector<DyadicComplex> out(m);
    int64_t max_frac = point_query_frac;
    int64_t esc0 = division_escalations();
    ApproxPoly F = F_in;
    F.trim();
    if (F.degree() <= 0) {
        ApproxPoly q = query_poly(F, L + 2, &max_frac);
        for (auto& o : out) o = q.at(0);
    } else {
        std::vector<int64_t> need(t.nodes.size(), 0);
        compute_need(t, need, t.root, L);
        int64_t root_need = need[t.root];
        int64_t md = static_cast<int64_t>(m);
        int64_t degF = F.degree();
        ApproxPoly r;
        if (degF < md) {
            r = query_poly(F, root_need + 2, &max_frac);
        } else {
            // fold F modulo the root divisor, one degree-< m block at a time
            int64_t blocks = (degF + md) / md;  // >= 2
            int64_t incm = inc_for(md, t.gamma);
            ApproxPoly Fq = query_poly(F, root_need + 2 + (blocks - 1) * incm, &max_frac);
            auto block = [&](int64_t k) {
                ApproxPoly c;
                int64_t hi = std::min((k + 1) * md, static_cast<int64_t>(Fq.len()));
                for (int64_t i = k * md; i < hi; ++i) c.coeffs.push_back(Fq.at(static_cast<size_t>(i)));
                c.err_bits = Fq.err_bits;
                c.trim();
                return c;
            };
            r = block(blocks - 1);
            for (int64_t k = blocks - 2; k >= 0; --k) {
                int64_t tk = root_need + 2 + k * incm;
                ApproxPoly D = block(k);
                D.coeffs.resize(static_cast<size_t>(md) + r.len());
                for (size_t i = 0; i < r.len(); ++i) D.coeffs[static_cast<size_t>(md) + i] = r.at(i);
                D.err_bits = err_add(err_min(r.err_bits, Fq.err_bits), -1);
                D.trim();
                int64_t b_live = std::max<int64_t>(1, one_norm_log2ub(D));
                ensure_node(t, t.root, tk + incm + b_live - 4);
                DivResult dv = div_monic(D, t.nodes[t.root].poly, t.gamma, tk + 4);
                r = settle_remainder(dv.remainder, tk + 4, tk + ceil_log2(md + 1) + 4, md);
            }
        }
        descend(t, need, out, t.root, r);
    }
    if (stats) {
        stats->max_query_bits = std::max(stats->max_query_bits, max_frac);
        stats->escalations += division_escalations() - esc0;
    }
    return out;
}

}  // namespace

PrecisionBudget schedule_precisions(int64_t n, int64_t tau, int64_t gamma, int64_t L) {
    if (n < 1 || tau < 1 || gamma < 1 || L < 0)
        throw std::invalid_argument("schedule_precisions: need n, tau, gamma >= 1 and L >= 0");
    constexpr int64_t C = 40;
    PrecisionBudget b;
    b.n = n;
    b.tau = tau;
    b.gamma = gamma;
    b.L = L;
    int64_t nlog = n * std::max<int64_t>(1, ceil_log2(n));
    b.ell_div = L + tau + 2 * n * gamma + C * nlog;
    b.ell_mul = L + tau + C * (n * gamma + nlog);
    b.headroom = 2;
    return b;
}

SubproductTree make_tree_structure(const std::vector<DyadicComplex>& points, int64_t point_bits) {
    SubproductTree t;
    t.leaf_points.reserve(points.size());
    for (const auto& p : points)
        t.leaf_points.push_back(point_bits >= 0 ? round_scalar(p, point_bits) : p);
    int64_t g = 1;
    for (const auto& p : t.leaf_points) g = std::max(g, p.log2_abs_ub());
    t.gamma = g;
    if (!points.empty()) t.root = build_structure(t.nodes, 0, points.size());
    return t;
}

int64_t ensure_node(SubproductTree& t, int idx, int64_t bits) {
    TreeNode& nd = t.nodes[idx];
    if (nd.cur_bits >= bits) return nd.cur_bits;
    if (nd.left < 0) {
        const DyadicComplex& x = t.leaf_points[nd.lo];
        nd.poly.coeffs = {-x, DyadicComplex(1)};
        nd.poly.err_bits = kExact;
        nd.cur_bits = kExact;
        return nd.cur_bits;
    }
    int64_t d = t.node_degree(idx);
    // coefficient magnitudes of a child stay below 2^(d_child*(gamma+1)+1)
    int64_t b_bound = ((d + 1) / 2) * (t.gamma + 1) + 1;
    int64_t mulinc = b_bound + 2 * ceil_log2(d + 1) + 5;
    ensure_node(t, nd.left, bits + mulinc);
    ensure_node(t, nd.right, bits + mulinc);
    ApproxPoly prod = approx_mul(t.nodes[nd.left].poly, t.nodes[nd.right].poly, bits + 2);
    if (!prod.leading_is_one() || prod.err_bits < bits)
        throw std::logic_error("subproduct node rebuild missed its target");
    nd.poly = std::move(prod);
    nd.cur_bits = nd.poly.err_bits;
    return nd.cur_bits;
}

SubproductTree build_subproduct_tree(const std::vector<DyadicComplex>& points, int64_t ell) {
    if (points.empty()) throw std::invalid_argument("build_subproduct_tree: no points");
    if (ell < 1) throw std::invalid_argument("build_subproduct_tree: ell must be >= 1");
    int64_t n = static_cast<int64_t>(points.size());
    int64_t g0 = 1;
    for (const auto& p : points) g0 = std::max(g0, p.log2_abs_ub());
    // rounding the points perturbs every subproduct by < 2^(-ell-2)
    int64_t p_x = ell + n * (g0 + 1) + ceil_log2(n) + 4;
    SubproductTree t = make_tree_structure(points, p_x);
    ensure_node(t, t.root, ell + 2);
    return t;
}

std::vector<DyadicComplex> multipoint_eval(const ApproxPoly& F,
                                           const std::vector<DyadicComplex>& points, int64_t L,
                                           EvalStats* stats) {
    if (points.empty()) return {};
    if (L < 0) throw std::invalid_argument("multipoint_eval: L must be >= 0");
    ApproxPoly Ft = F;
    Ft.trim();
    int64_t tau = std::max<int64_t>(1, one_norm_log2ub(Ft));
    int64_t g0 = 1;
    for (const auto& p : points) g0 = std::max(g0, p.log2_abs_ub());
    int64_t degF = std::max<int64_t>(1, Ft.degree());
    // one query of each coordinate; the input perturbation moves F by < 2^(-L-7)
    int64_t p_x = L + tau + degF * (g0 + 1) + ceil_log2(degF + 1) + 6;
    SubproductTree t = make_tree_structure(points, p_x);
    return eval_impl(Ft, t, L, stats, p_x);
}

std::vector<DyadicComplex> multipoint_eval_on_tree(const ApproxPoly& F, SubproductTree& tree,
                                                   int64_t L, EvalStats* stats) {
    if (tree.leaves() == 0) return {};
    if (L < 0) throw std::invalid_argument("multipoint_eval_on_tree: L must be >= 0");
    return eval_impl(F, tree, L, stats, 0);
}

int64_t eval_input_demand(const SubproductTree& t, int64_t L) {
    if (t.root < 0) return L + 3;
    std::vector<int64_t> need(t.nodes.size(), 0);
    compute_need(t, need, t.root, L);
    return need[t.root] + 3;
}

std::pair<ApproxPoly, ApproxPoly> remainder_layer(const ApproxPoly& parent,
                                                  const ApproxPoly& g_left,
                                                  const ApproxPoly& g_right,
                                                  const PrecisionBudget& budget, int64_t i) {
    if (i < 0 || i > budget.n) throw std::invalid_argument("remainder_layer: bad layer index");
    DivResult a = div_monic(parent, g_left, budget.gamma, budget.ell_div);
    DivResult b = div_monic(parent, g_right, budget.gamma, budget.ell_div);
    return {std::move(a.remainder), std::move(b.remainder)};
}

}  // namespace polyeval
