#include "polyeval/root_refine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyeval/errors.hpp"
#include "polyeval/mp_eval.hpp"
#include "polyeval/oracle.hpp"

namespace polyeval {

namespace {

// correctly rounded F(x) on the 2^(-p) grid, recovered from a band
// |center - F(x)| <= 2^(-band_bits); the rare band that straddles a rounding
// boundary is settled by one exact evaluation. The result depends only on
// (F, x, p), never on the band's provenance -- this is what makes batched and
// sequential refinement bit-identical.
Dyadic canonical_value(const ApproxPoly& F, const Dyadic& x, const Dyadic& center,
                       int64_t band_bits, int64_t p) {
    Dyadic eps = Dyadic::pow2(-band_bits);
    Dyadic rlo = (center - eps).round_frac(p);
    Dyadic rhi = (center + eps).round_frac(p);
    if (rlo == rhi) return rlo;
    return horner_exact(F, DyadicComplex(x, Dyadic())).re.round_frac(p);
}

// |v| must clear the rounding slack on either side of zero before its sign
// counts as certified
bool decided(const Dyadic& v, int64_t p) { return Dyadic::pow2(-p + 1) < v.abs(); }

int sign_of(const Dyadic& v) { return v.sign(); }

struct Ctx {
    const ApproxPoly& F;
    int64_t L;
    int64_t tau;
    int64_t p_cap;
};

struct Item {
    IsolatingInterval iv;
    Dyadic va, vb;  // canonical endpoint values from when the signs were established
    int64_t p = 0;
    int stage = -1;  // -1 init, 0 slot attempt, 1 bisection, 2 perturbation
    Dyadic cl, cr;
    bool need_cl = false, need_cr = false;
    Dyadic mid;
    Dyadic failed;  // first evaluation point left undecided at the cap
    int64_t pt = 0;
    Dyadic pcand;
    int steps = 0;
    bool done = false;
};

int64_t width_bits(const Dyadic& w) { return std::max<int64_t>(1, -w.log2_ub()); }

void schedule(const Ctx& c, Item& it) {
    Dyadic w = it.iv.b - it.iv.a;
    it.p = std::min(c.tau + 2 * width_bits(w) + 16, c.p_cap);
}

// j = floor(N * |F(a)| / (|F(a)| + |F(b)|)): the N-section slot the secant
// through the cached endpoint values points into
mpz_class slot_index(const Item& it) {
    Dyadic num = it.va.abs().mul_pow2(it.iv.log2_n);
    Dyadic den = it.va.abs() + it.vb.abs();
    mpz_class nm = num.mantissa(), dm = den.mantissa();
    int64_t sh = num.exponent() - den.exponent();
    if (sh >= 0)
        nm <<= static_cast<unsigned long>(sh);
    else
        dm <<= static_cast<unsigned long>(-sh);
    mpz_class j = nm / dm;
    mpz_class nmax = (mpz_class(1) << static_cast<unsigned long>(it.iv.log2_n)) - 1;
    if (j > nmax) j = nmax;
    return j;
}

void prepare_slot(const Ctx& c, Item& it) {
    if (it.iv.exact || it.iv.b - it.iv.a <= Dyadic::pow2(-c.L)) {
        it.done = true;
        return;
    }
    schedule(c, it);
    Dyadic w = it.iv.b - it.iv.a;
    mpz_class j = slot_index(it);
    mpz_class j1 = j + 1;
    bool left_is_a = j == 0;
    bool right_is_b = j1 == (mpz_class(1) << static_cast<unsigned long>(it.iv.log2_n));
    it.cl = left_is_a ? it.iv.a : it.iv.a + w * Dyadic(j, -it.iv.log2_n);
    it.cr = right_is_b ? it.iv.b : it.iv.a + w * Dyadic(j1, -it.iv.log2_n);
    it.need_cl = !left_is_a;
    it.need_cr = !right_is_b;
    it.stage = 0;
}

void accept(const Ctx& c, Item& it, Dyadic na, Dyadic nb, int sa, int sb, Dyadic nva, Dyadic nvb,
            bool success) {
    it.iv.a = std::move(na);
    it.iv.b = std::move(nb);
    it.iv.sign_a = sa;
    it.iv.sign_b = sb;
    it.va = std::move(nva);
    it.vb = std::move(nvb);
    it.iv.log2_n = success ? 2 * it.iv.log2_n : std::max<int64_t>(2, it.iv.log2_n / 2);
    ++it.steps;
    prepare_slot(c, it);
}

void exact_hit(Item& it, const Dyadic& x) {
    it.iv.a = x;
    it.iv.b = x;
    it.iv.sign_a = 0;
    it.iv.sign_b = 0;
    it.iv.exact = true;
    it.done = true;
    ++it.steps;
}

// next in-range perturbation candidate failed +- t * w / N^2, order
// t = +1, -1, +2, -2, ...; the sweep is bounded so a step always terminates
bool next_perturb(Item& it) {
    int64_t nu = it.iv.log2_n;
    int64_t tmax = nu >= 13 ? 4096 : (int64_t{1} << nu) - 1;
    Dyadic w = it.iv.b - it.iv.a;
    while (it.pt < 2 * tmax) {
        int64_t t = it.pt / 2 + 1;
        bool neg = (it.pt % 2) != 0;
        ++it.pt;
        Dyadic off = (w * Dyadic(mpz_class(t), 0)).mul_pow2(-2 * nu);
        Dyadic cand = neg ? it.failed - off : it.failed + off;
        if (it.iv.a < cand && cand < it.iv.b) {
            it.pcand = cand;
            return true;
        }
    }
    return false;
}

void cap_undecided(const Ctx& c, Item& it, const Dyadic& x) {
    if (horner_exact(c.F, DyadicComplex(x, Dyadic())).re.is_zero()) {
        exact_hit(it, x);
        return;
    }
    it.failed = x;
    it.pt = 0;
    it.stage = 2;
    it.p = c.p_cap;
    if (!next_perturb(it))
        throw EvaluationUndecidable("refine: every candidate split point near " +
                                    x.to_hex_string() + " stayed undecided at the precision cap");
}

void escalate_or_cap(const Ctx& c, Item& it, const Dyadic& undecided_point) {
    if (it.p < c.p_cap)
        it.p = std::min(2 * it.p, c.p_cap);
    else
        cap_undecided(c, it, undecided_point);
}

std::vector<IsolatingInterval> run(const Ctx& c, const std::vector<IsolatingInterval>& input,
                                   int max_steps) {
    std::vector<Item> items(input.size());
    for (size_t i = 0; i < input.size(); ++i) {
        Item& it = items[i];
        it.iv = input[i];
        if (it.iv.b < it.iv.a)
            throw std::invalid_argument("refine: interval with b < a");
        if (it.iv.exact || it.iv.b - it.iv.a <= Dyadic::pow2(-c.L)) {
            it.done = true;
            continue;
        }
        it.stage = -1;
        schedule(c, it);
    }

    for (int sweep = 0; sweep < 100000; ++sweep) {
        // gather this sweep's evaluation points across all still-active items
        std::vector<Dyadic> xs;
        std::vector<std::vector<size_t>> want(items.size());
        int64_t p_sweep = 0;
        auto request = [&](size_t item_idx, const Dyadic& x) {
            size_t k = 0;
            while (k < xs.size() && xs[k] != x) ++k;
            if (k == xs.size()) xs.push_back(x);
            want[item_idx].push_back(k);
        };
        for (size_t i = 0; i < items.size(); ++i) {
            Item& it = items[i];
            if (it.done || (max_steps >= 0 && it.steps >= max_steps)) continue;
            switch (it.stage) {
                case -1:
                    request(i, it.iv.a);
                    request(i, it.iv.b);
                    break;
                case 0:
                    if (it.need_cl) request(i, it.cl);
                    if (it.need_cr) request(i, it.cr);
                    break;
                case 1:
                    request(i, it.mid);
                    break;
                case 2:
                    request(i, it.pcand);
                    break;
            }
            p_sweep = std::max(p_sweep, it.p);
        }
        if (xs.empty()) break;
        p_sweep += 32;

        std::vector<DyadicComplex> pts(xs.size());
        for (size_t k = 0; k < xs.size(); ++k) pts[k] = DyadicComplex(xs[k], Dyadic());
        std::vector<DyadicComplex> ys = multipoint_eval(c.F, pts, p_sweep);

        for (size_t i = 0; i < items.size(); ++i) {
            Item& it = items[i];
            if (it.done || (max_steps >= 0 && it.steps >= max_steps) || want[i].empty()) continue;
            auto value = [&](size_t nth) {
                size_t k = want[i][nth];
                return canonical_value(c.F, xs[k], ys[k].re, p_sweep, it.p);
            };
            switch (it.stage) {
                case -1: {
                    Dyadic va = value(0), vb = value(1);
                    if (!decided(va, it.p)) {
                        escalate_or_cap(c, it, it.iv.a);
                        if (it.stage == 2)
                            throw EvaluationUndecidable("refine: endpoint sign undecided at cap");
                        break;
                    }
                    if (!decided(vb, it.p)) {
                        escalate_or_cap(c, it, it.iv.b);
                        if (it.stage == 2)
                            throw EvaluationUndecidable("refine: endpoint sign undecided at cap");
                        break;
                    }
                    int sa = sign_of(va), sb = sign_of(vb);
                    if ((it.iv.sign_a != 0 && it.iv.sign_a != sa) ||
                        (it.iv.sign_b != 0 && it.iv.sign_b != sb))
                        throw std::invalid_argument("refine: stored endpoint sign contradicts evaluation");
                    if (sa == sb)
                        throw std::invalid_argument("refine: endpoints do not bracket a sign change");
                    it.iv.sign_a = sa;
                    it.iv.sign_b = sb;
                    it.va = va;
                    it.vb = vb;
                    prepare_slot(c, it);
                    break;
                }
                case 0: {
                    size_t nth = 0;
                    Dyadic vl = it.need_cl ? value(nth++) : it.va;
                    Dyadic vr = it.need_cr ? value(nth) : it.vb;
                    bool dl = !it.need_cl || decided(vl, it.p);
                    bool dr = !it.need_cr || decided(vr, it.p);
                    if (!dl || !dr) {
                        escalate_or_cap(c, it, !dl ? it.cl : it.cr);
                        break;
                    }
                    int sl = it.need_cl ? sign_of(vl) : it.iv.sign_a;
                    int sr = it.need_cr ? sign_of(vr) : it.iv.sign_b;
                    if (sl != sr) {
                        accept(c, it, it.cl, it.cr, sl, sr, vl, vr, true);
                    } else {
                        it.mid = it.iv.a + (it.iv.b - it.iv.a).mul_pow2(-1);
                        it.stage = 1;
                    }
                    break;
                }
                case 1: {
                    Dyadic vm = value(0);
                    if (!decided(vm, it.p)) {
                        escalate_or_cap(c, it, it.mid);
                        break;
                    }
                    int sm = sign_of(vm);
                    if (sm != it.iv.sign_a)
                        accept(c, it, it.iv.a, it.mid, it.iv.sign_a, sm, it.va, vm, false);
                    else
                        accept(c, it, it.mid, it.iv.b, sm, it.iv.sign_b, vm, it.vb, false);
                    break;
                }
                case 2: {
                    Dyadic v = value(0);
                    if (decided(v, it.p)) {
                        int s = sign_of(v);
                        if (s != it.iv.sign_a)
                            accept(c, it, it.iv.a, it.pcand, it.iv.sign_a, s, it.va, v, false);
                        else
                            accept(c, it, it.pcand, it.iv.b, s, it.iv.sign_b, v, it.vb, false);
                        break;
                    }
                    if (horner_exact(c.F, DyadicComplex(it.pcand, Dyadic())).re.is_zero()) {
                        exact_hit(it, it.pcand);
                        break;
                    }
                    if (!next_perturb(it))
                        throw EvaluationUndecidable(
                            "refine: every candidate split point near " + it.failed.to_hex_string() +
                            " stayed undecided at the precision cap");
                    break;
                }
            }
        }
    }

    std::vector<IsolatingInterval> out(items.size());
    for (size_t i = 0; i < items.size(); ++i) out[i] = items[i].iv;
    return out;
}

Ctx make_ctx(const ApproxPoly& F, int64_t L) {
    if (L < 0) throw std::invalid_argument("refine: L must be >= 0");
    for (const auto& cf : F.coeffs)
        if (!cf.im.is_zero()) throw std::invalid_argument("refine: polynomial must be real");
    ApproxPoly t = F;
    t.trim();
    if (t.degree() < 1) throw std::invalid_argument("refine: polynomial must have degree >= 1");
    int64_t tau = std::max<int64_t>(1, one_norm_log2ub(F));
    return Ctx{F, L, tau, L + 8 * t.degree() + tau + 64};
}

}  // namespace

int certified_sign(const ApproxPoly& F, const Dyadic& x, int64_t start_bits, int64_t cap_bits) {
    if (start_bits < 1 || cap_bits < start_bits)
        throw std::invalid_argument("certified_sign: need 1 <= start_bits <= cap_bits");
    DyadicComplex xc(x, Dyadic());
    for (int64_t p = start_bits;;) {
        DyadicComplex y = horner_eval_hp(F, xc, p + 2);
        Dyadic eps = Dyadic::pow2(-p - 2);
        if (eps < y.re) return 1;
        if (y.re < -eps) return -1;
        if (p >= cap_bits) return 0;
        p = std::min(2 * p, cap_bits);
    }
}

IsolatingInterval qir_step(const ApproxPoly& F, const IsolatingInterval& I, int64_t L) {
    Ctx c = make_ctx(F, L);
    return run(c, {I}, 1).front();
}

std::vector<IsolatingInterval> refine_batch(const RefineJob& job, int64_t L) {
    Ctx c = make_ctx(job.poly, L);
    return run(c, job.intervals, -1);
}

}  // namespace polyeval
