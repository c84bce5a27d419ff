#include "polyeval/interp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "polyeval/errors.hpp"
#include "polyeval/kronecker.hpp"
#include "polyeval/poly_mul.hpp"

namespace polyeval {

namespace {

bool complex_less(const DyadicComplex& a, const DyadicComplex& b) {
    int c = Dyadic::cmp(a.re, b.re);
    if (c != 0) return c < 0;
    return Dyadic::cmp(a.im, b.im) < 0;
}

// top-down combine targets: the root must land L+2, and a child's error is
// amplified by the sibling divisor norm on the way up; pad also absorbs the
// multiplication-input demands at every level
void assign_targets(const SubproductTree& t, std::vector<int64_t>& tgt, int idx, int64_t pad) {
    const TreeNode& nd = t.nodes[idx];
    if (nd.left < 0) return;
    int64_t bl = t.node_degree(nd.left) * (t.gamma + 1) + 1;
    int64_t br = t.node_degree(nd.right) * (t.gamma + 1) + 1;
    tgt[nd.left] = tgt[idx] + br + pad;
    tgt[nd.right] = tgt[idx] + bl + pad;
    assign_targets(t, tgt, nd.left, pad);
    assign_targets(t, tgt, nd.right, pad);
}

ApproxPoly combine(SubproductTree& t, const std::vector<int64_t>& tgt,
                   const std::vector<ApproxPoly>& mu, int idx) {
    const TreeNode& nd = t.nodes[idx];
    if (nd.left < 0) return mu[nd.lo];
    ApproxPoly fl = combine(t, tgt, mu, nd.left);
    ApproxPoly fr = combine(t, tgt, mu, nd.right);
    int64_t bits_g = std::max(tgt[nd.left], tgt[nd.right]);
    ensure_node(t, nd.left, bits_g);
    ensure_node(t, nd.right, bits_g);
    ApproxPoly p1 = approx_mul(t.nodes[nd.right].poly, fl, tgt[idx] + 2);
    ApproxPoly p2 = approx_mul(t.nodes[nd.left].poly, fr, tgt[idx] + 2);
    ApproxPoly out = add(p1, p2);
    if (out.err_bits < tgt[idx]) throw std::logic_error("interpolation combine missed its target");
    return out;
}

}  // namespace

ApproxPoly combine_layer(const ApproxPoly& mu_left, const ApproxPoly& mu_right,
                         const ApproxPoly& g_left, const ApproxPoly& g_right, int64_t ell) {
    ApproxPoly p1 = approx_mul(g_right, mu_left, ell + 2);
    ApproxPoly p2 = approx_mul(g_left, mu_right, ell + 2);
    return add(p1, p2);
}

std::vector<DyadicComplex> lagrange_denominators(SubproductTree& tree, int64_t ell) {
    size_t m = tree.leaves();
    if (m == 0) return {};
    if (ell < 1) throw std::invalid_argument("lagrange_denominators: ell must be >= 1");
    if (m == 1) return {DyadicComplex(1)};
    int64_t demand = eval_input_demand(tree, ell + 1);
    ensure_node(tree, tree.root, demand + ceil_log2(static_cast<int64_t>(m)) + 2);
    ApproxPoly d = derivative(tree.nodes[tree.root].poly);
    return multipoint_eval_on_tree(d, tree, ell + 1, nullptr);
}

ApproxPoly interpolate(const InterpProblem& problem, int64_t L) {
    const auto& pts = problem.points;
    const auto& vals = problem.values;
    size_t n = pts.size();
    if (n == 0 || vals.size() != n)
        throw std::invalid_argument("interpolate: need equally many points and values");
    if (L < 0) throw std::invalid_argument("interpolate: L must be >= 0");

    // exact duplicates make the problem singular outright
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return complex_less(pts[a], pts[b]); });
    for (size_t i = 1; i < n; ++i)
        if (pts[order[i - 1]] == pts[order[i]])
            throw CoincidentPoints("interpolate: points " + std::to_string(order[i - 1]) +
                                   " and " + std::to_string(order[i]) + " coincide");

    if (n == 1) {
        ApproxPoly f;
        f.coeffs = {vals[0]};
        f.err_bits = kExact;
        f.trim();
        return f;
    }

    SubproductTree tree = make_tree_structure(pts, -1);
    int64_t nn = static_cast<int64_t>(n);
    int64_t vhat = 1;
    for (const auto& v : vals) vhat = std::max(vhat, v.log2_abs_ub());

    // discover a certified bound 2^lam_hat on every 1/|lambda_i|
    int64_t lam_hat = 1;
    std::vector<DyadicComplex> lam;
    std::vector<int64_t> tgt(tree.nodes.size(), 0);
    int64_t ell_lam = 0;
    int cap = escalation_cap();
    for (int attempt = 0;; ++attempt) {
        int64_t pad = vhat + lam_hat + 4 * ceil_log2(nn + 1) + tree.gamma + 12;
        tgt.assign(tree.nodes.size(), 0);
        tgt[tree.root] = L + 2;
        assign_targets(tree, tgt, tree.root, pad);
        int64_t recip_max = 0;
        for (size_t i = 0; i < tree.nodes.size(); ++i)
            if (tree.nodes[i].left < 0) recip_max = std::max(recip_max, tgt[i] + vhat + 2);
        ell_lam = recip_max + 2 * lam_hat + 2;
        lam = lagrange_denominators(tree, ell_lam);

        bool short_of_zero = false;
        int64_t lam_actual = 1;
        Dyadic eps = Dyadic::pow2(-ell_lam);
        for (const auto& l : lam) {
            Dyadic lb = l.abs_lb() - eps;
            if (!(Dyadic(0) < lb)) {
                short_of_zero = true;
                break;
            }
            lam_actual = std::max(lam_actual, -lb.log2_lb());
        }
        if (!short_of_zero && lam_actual <= lam_hat) break;
        if (attempt >= cap)
            throw CoincidentPoints(
                "interpolate: could not certify the denominators away from zero");
        lam_hat = short_of_zero ? 2 * lam_hat : lam_actual;
    }

    // mu_i = v_i / lambda_i at each leaf's own target
    std::vector<ApproxPoly> mu(n);
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        const TreeNode& nd = tree.nodes[i];
        if (nd.left >= 0) continue;
        int64_t ell_mu = tgt[i];
        DyadicComplex r = recip_approx(lam[nd.lo], ell_mu + vhat + 3);
        ApproxPoly& p = mu[nd.lo];
        p.coeffs = {(vals[nd.lo] * r).round_frac(ell_mu + 2)};
        p.err_bits = ell_mu;
        p.trim();
    }

    ApproxPoly f = combine(tree, tgt, mu, tree.root);
    f.trim();
    if (f.degree() >= nn) throw std::logic_error("interpolate: degree bound violated");
    return f;
}

}  // namespace polyeval
