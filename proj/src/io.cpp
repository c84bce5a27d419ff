#include "polyeval/io.hpp"

#include <fstream>
#include <sstream>

namespace polyeval::io {

std::string print_dyadic(const Dyadic& d) { return d.to_hex_string(); }

std::string print_complex(const DyadicComplex& z) {
    std::string s = print_dyadic(z.re);
    s += z.im.sign() < 0 ? '-' : '+';
    s += print_dyadic(z.im.abs());
    s += 'i';
    return s;
}

namespace {

struct Cursor {
    std::string_view s;
    size_t pos = 0;
    long line;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " in '" + std::string(s) + "'", line);
    }
    bool done() const { return pos >= s.size(); }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    void expect(char c, const char* what) {
        if (peek() != c) fail(std::string("expected ") + what);
        ++pos;
    }
};

bool is_hex(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

// [-]0x<hex>p<signed-dec>; allow_sign=false for the imaginary magnitude
Dyadic parse_dyadic_at(Cursor& c, bool allow_sign) {
    bool neg = false;
    if (allow_sign && c.peek() == '-') {
        neg = true;
        ++c.pos;
    }
    c.expect('0', "'0x' prefix");
    c.expect('x', "'0x' prefix");
    size_t h0 = c.pos;
    while (is_hex(c.peek())) ++c.pos;
    if (c.pos == h0) c.fail("expected hex mantissa");
    mpz_class m;
    if (mpz_set_str(m.get_mpz_t(), std::string(c.s.substr(h0, c.pos - h0)).c_str(), 16) != 0)
        c.fail("bad hex mantissa");
    c.expect('p', "'p' exponent marker");
    bool eneg = false;
    if (c.peek() == '-' || c.peek() == '+') {
        eneg = c.peek() == '-';
        ++c.pos;
    }
    size_t e0 = c.pos;
    while (c.peek() >= '0' && c.peek() <= '9') ++c.pos;
    if (c.pos == e0) c.fail("expected decimal exponent");
    std::string digits(c.s.substr(e0, c.pos - e0));
    if (digits.size() > 18) c.fail("exponent out of range");
    int64_t e = std::stoll(digits);
    if (eneg) e = -e;
    if (neg) m = -m;
    return Dyadic(std::move(m), e);
}

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

}  // namespace

Dyadic parse_dyadic(std::string_view s, long line) {
    Cursor c{trimmed(s), 0, line};
    Dyadic d = parse_dyadic_at(c, true);
    if (!c.done()) c.fail("trailing characters");
    return d;
}

DyadicComplex parse_complex(std::string_view s, long line) {
    Cursor c{trimmed(s), 0, line};
    Dyadic re = parse_dyadic_at(c, true);
    if (c.done()) return {re, Dyadic()};
    char sep = c.peek();
    if (sep != '+' && sep != '-') c.fail("expected '+' or '-' before imaginary part");
    ++c.pos;
    Dyadic im = parse_dyadic_at(c, false);
    c.expect('i', "'i' suffix");
    if (!c.done()) c.fail("trailing characters");
    if (sep == '-') im = -im;
    return {re, im};
}

namespace {

// reads next non-blank line; returns false at EOF
bool next_line(std::istream& in, std::string& out, long& line) {
    while (std::getline(in, out)) {
        ++line;
        if (!trimmed(out).empty()) return true;
    }
    return false;
}

}  // namespace

ApproxPoly read_poly(std::istream& in) {
    long line = 0;
    std::string s;
    if (!next_line(in, s, line)) throw ParseError("missing 'degree <n>' header", 1);
    std::istringstream hdr{std::string(trimmed(s))};
    std::string kw;
    long long n = -1;
    hdr >> kw >> n;
    if (kw != "degree" || n < 0 || !hdr.eof()) throw ParseError("malformed 'degree <n>' header", line);
    ApproxPoly f;
    f.coeffs.reserve(static_cast<size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i) {
        if (!next_line(in, s, line))
            throw ParseError("expected " + std::to_string(n + 1) + " coefficients, got " +
                                 std::to_string(i),
                             line);
        f.coeffs.push_back(parse_complex(trimmed(s), line));
    }
    if (next_line(in, s, line)) throw ParseError("unexpected extra line", line);
    return f;
}

void write_poly(std::ostream& out, const ApproxPoly& f) {
    size_t n = f.coeffs.empty() ? 1 : f.coeffs.size();
    out << "degree " << (n - 1) << "\n";
    for (size_t i = 0; i < n; ++i) out << print_complex(f.at(i)) << "\n";
}

std::vector<DyadicComplex> read_complex_lines(std::istream& in) {
    std::vector<DyadicComplex> v;
    long line = 0;
    std::string s;
    while (next_line(in, s, line)) v.push_back(parse_complex(trimmed(s), line));
    return v;
}

void write_complex_lines(std::ostream& out, const std::vector<DyadicComplex>& v) {
    for (const auto& z : v) out << print_complex(z) << "\n";
}

std::vector<IntervalLine> read_intervals(std::istream& in) {
    std::vector<IntervalLine> v;
    long line = 0;
    std::string s;
    while (next_line(in, s, line)) {
        std::string_view t = trimmed(s);
        size_t sp = t.find_first_of(" \t");
        if (sp == std::string_view::npos)
            throw ParseError("expected '<dyadic> <dyadic>'", line);
        IntervalLine iv;
        iv.a = parse_dyadic(t.substr(0, sp), line);
        std::string_view rest = trimmed(t.substr(sp + 1));
        size_t sp2 = rest.find_first_of(" \t");
        if (sp2 != std::string_view::npos) {
            std::string_view flag = trimmed(rest.substr(sp2 + 1));
            if (flag != "exact") throw ParseError("unexpected trailing token", line);
            iv.exact = true;
            rest = rest.substr(0, sp2);
        }
        iv.b = parse_dyadic(rest, line);
        v.push_back(std::move(iv));
    }
    return v;
}

void write_intervals(std::ostream& out, const std::vector<IntervalLine>& v) {
    for (const auto& iv : v) {
        out << print_dyadic(iv.a) << " " << print_dyadic(iv.b);
        if (iv.exact) out << " exact";
        out << "\n";
    }
}

namespace {

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing", 0);
    return out;
}

}  // namespace

ApproxPoly read_poly_file(const std::string& path) {
    auto in = open_in(path);
    return read_poly(in);
}
void write_poly_file(const std::string& path, const ApproxPoly& f) {
    auto out = open_out(path);
    write_poly(out, f);
}
std::vector<DyadicComplex> read_complex_file(const std::string& path) {
    auto in = open_in(path);
    return read_complex_lines(in);
}
void write_complex_file(const std::string& path, const std::vector<DyadicComplex>& v) {
    auto out = open_out(path);
    write_complex_lines(out, v);
}
std::vector<IntervalLine> read_intervals_file(const std::string& path) {
    auto in = open_in(path);
    return read_intervals(in);
}
void write_intervals_file(const std::string& path, const std::vector<IntervalLine>& v) {
    auto out = open_out(path);
    write_intervals(out, v);
}

}  // namespace polyeval::io
