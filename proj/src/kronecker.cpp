#include "polyeval/kronecker.hpp"

#include <cstring>

namespace polyeval {

namespace {

int64_t max_bitlen(const std::vector<mpz_class>& v) {
    int64_t best = 0;
    for (const auto& x : v)
        if (mpz_sgn(x.get_mpz_t()) != 0)
            best = std::max<int64_t>(best, static_cast<int64_t>(mpz_sizeinbase(x.get_mpz_t(), 2)));
    return best;
}

bool all_zero(const std::vector<mpz_class>& v) {
    for (const auto& x : v)
        if (mpz_sgn(x.get_mpz_t()) != 0) return false;
    return true;
}

std::vector<mpz_class> schoolbook(const std::vector<mpz_class>& a,
                                  const std::vector<mpz_class>& b) {
    std::vector<mpz_class> c(a.size() + b.size() - 1);
    mpz_class t;
    for (size_t i = 0; i < a.size(); ++i) {
        if (mpz_sgn(a[i].get_mpz_t()) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (mpz_sgn(b[j].get_mpz_t()) == 0) continue;
            t = a[i] * b[j];
            c[i + j] += t;
        }
    }
    return c;
}

// pack signed coefficients as N+ - N- where each part is imported from a
// little-endian byte buffer with `slot_bytes` bytes per coefficient
mpz_class pack(const std::vector<mpz_class>& v, size_t slot_bytes) {
    std::vector<unsigned char> pos(v.size() * slot_bytes, 0), neg(v.size() * slot_bytes, 0);
    bool any_neg = false;
    mpz_class mag;
    for (size_t i = 0; i < v.size(); ++i) {
        int s = mpz_sgn(v[i].get_mpz_t());
        if (s == 0) continue;
        unsigned char* dst = s > 0 ? &pos[i * slot_bytes] : &neg[i * slot_bytes];
        if (s < 0) any_neg = true;
        mag = ::abs(v[i]);
        size_t count = 0;
        mpz_export(dst, &count, -1, 1, 0, 0, mag.get_mpz_t());
    }
    mpz_class np, nn;
    mpz_import(np.get_mpz_t(), pos.size(), -1, 1, 0, 0, pos.data());
    if (any_neg) {
        mpz_import(nn.get_mpz_t(), neg.size(), -1, 1, 0, 0, neg.data());
        np -= nn;
    }
    return np;
}

}  // namespace

std::vector<mpz_class> kronecker_mul(const std::vector<mpz_class>& a,
                                     const std::vector<mpz_class>& b) {
    if (a.empty() || b.empty()) return {};
    size_t out_len = a.size() + b.size() - 1;
    if (all_zero(a) || all_zero(b)) return std::vector<mpz_class>(out_len);
    if (std::min(a.size(), b.size()) <= 2) return schoolbook(a, b);

    int64_t ba = max_bitlen(a), bb = max_bitlen(b);
    int64_t w = ba + bb + ceil_log2(static_cast<int64_t>(std::min(a.size(), b.size()))) + 2;
    w = (w + 7) & ~int64_t(7);
    size_t slot_bytes = static_cast<size_t>(w / 8);

    mpz_class na = pack(a, slot_bytes);
    mpz_class nb = pack(b, slot_bytes);
    mpz_class nc = na * nb;

    // additive offset 2^(w-1) per slot makes every digit nonnegative: carry-free unpack
    std::vector<unsigned char> buf(out_len * slot_bytes, 0);
    for (size_t i = 0; i < out_len; ++i) buf[i * slot_bytes + slot_bytes - 1] = 0x80;
    mpz_class offset;
    mpz_import(offset.get_mpz_t(), buf.size(), -1, 1, 0, 0, buf.data());
    nc += offset;

    std::fill(buf.begin(), buf.end(), 0);
    size_t count = 0;
    mpz_export(buf.data(), &count, -1, 1, 0, 0, nc.get_mpz_t());

    std::vector<mpz_class> c(out_len);
    mpz_class half;
    mpz_setbit(half.get_mpz_t(), static_cast<mp_bitcnt_t>(w - 1));
    for (size_t i = 0; i < out_len; ++i) {
        mpz_import(c[i].get_mpz_t(), slot_bytes, -1, 1, 0, 0, &buf[i * slot_bytes]);
        c[i] -= half;
    }
    return c;
}

GaussianIntPoly exact_int_poly_mul(const GaussianIntPoly& F, const GaussianIntPoly& G) {
    GaussianIntPoly H;
    if (F.re.empty() || G.re.empty()) return H;
    size_t out_len = F.re.size() + G.re.size() - 1;
    bool f_real = all_zero(F.im), g_real = all_zero(G.im);
    bool f_imag = all_zero(F.re), g_imag = all_zero(G.re);

    auto zero_vec = [out_len] { return std::vector<mpz_class>(out_len); };

    if (f_real && g_real) {
        H.re = kronecker_mul(F.re, G.re);
        H.im = zero_vec();
        return H;
    }
    if (f_real) {
        H.re = kronecker_mul(F.re, G.re);
        H.im = kronecker_mul(F.re, G.im);
        return H;
    }
    if (g_real) {
        H.re = kronecker_mul(F.re, G.re);
        H.im = kronecker_mul(F.im, G.re);
        return H;
    }
    if (f_imag && g_imag) {  // (i u)(i v) = -uv
        H.re = kronecker_mul(F.im, G.im);
        for (auto& x : H.re) x = -x;
        H.im = zero_vec();
        return H;
    }

    // general: 3 real products
    std::vector<mpz_class> p1 = kronecker_mul(F.re, G.re);
    std::vector<mpz_class> p2 = kronecker_mul(F.im, G.im);
    std::vector<mpz_class> sf(F.re.size()), sg(G.re.size());
    for (size_t i = 0; i < sf.size(); ++i) sf[i] = F.re[i] + F.im[i];
    for (size_t i = 0; i < sg.size(); ++i) sg[i] = G.re[i] + G.im[i];
    std::vector<mpz_class> p3 = kronecker_mul(sf, sg);
    H.re.resize(out_len);
    H.im.resize(out_len);
    for (size_t i = 0; i < out_len; ++i) {
        H.re[i] = p1[i] - p2[i];
        H.im[i] = p3[i] - p1[i] - p2[i];
    }
    return H;
}

}  // namespace polyeval
