#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "polyeval/dyadic.hpp"
#include "polyeval/dyadic_complex.hpp"
#include "polyeval/errors.hpp"
#include "polyeval/poly.hpp"

namespace polyeval::io {

// Bit-exact scalar literals.
//   dyadic:  [-]0x<hex-mantissa>p<signed-decimal-exponent>     e.g. 0x3p-2 = 0.75
//   complex: <dyadic>[+|-]<dyadic>i                            e.g. 0x1p1+0x0p0i
// print always emits the full complex form; parse also accepts a bare real.
std::string print_dyadic(const Dyadic& d);
std::string print_complex(const DyadicComplex& z);
Dyadic parse_dyadic(std::string_view s, long line = 0);
DyadicComplex parse_complex(std::string_view s, long line = 0);

// Polynomial file: `degree <n>` header, then n+1 ascending coefficients, one per line.
ApproxPoly read_poly(std::istream& in);
void write_poly(std::ostream& out, const ApproxPoly& f);
ApproxPoly read_poly_file(const std::string& path);
void write_poly_file(const std::string& path, const ApproxPoly& f);

// Point/value files: one complex literal per line.
std::vector<DyadicComplex> read_complex_lines(std::istream& in);
void write_complex_lines(std::ostream& out, const std::vector<DyadicComplex>& v);
std::vector<DyadicComplex> read_complex_file(const std::string& path);
void write_complex_file(const std::string& path, const std::vector<DyadicComplex>& v);

// Interval files: `<dyadic-a> <dyadic-b>` per line; output appends ` exact`
// for zero-width exact hits.
struct IntervalLine {
    Dyadic a, b;
    bool exact = false;
};
std::vector<IntervalLine> read_intervals(std::istream& in);
void write_intervals(std::ostream& out, const std::vector<IntervalLine>& v);
std::vector<IntervalLine> read_intervals_file(const std::string& path);
void write_intervals_file(const std::string& path, const std::vector<IntervalLine>& v);

}  // namespace polyeval::io
