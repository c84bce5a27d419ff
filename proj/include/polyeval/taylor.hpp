#pragma once

#include <cstdint>
#include <vector>

#include "polyeval/poly.hpp"

namespace polyeval {

// The n-th roots of unity in order, |result_k - e^(2 pi i k/n)| <= 2^(-ell).
// Mirrored entries share mantissas exactly: result[n-k] = conj(result[k]),
// and the half/quarter points are the exact -1 and +-i when n permits.
std::vector<DyadicComplex> unit_circle_points(int64_t n, int64_t ell);

struct ShiftProblem {
    ApproxPoly poly;
    DyadicComplex m;
};

// Coefficients of F(x + m): evaluate F on a circle of points centered at m,
// then interpolate back at the circle offsets. Certified
// ||result - F(. + m)||_1 <= 2^(-L); the degree never exceeds deg F.
ApproxPoly taylor_shift(const ShiftProblem& problem, int64_t L);

}  // namespace polyeval
