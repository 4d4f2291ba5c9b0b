#include "pnorm/func.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pnorm/error.hpp"

namespace pnorm {

PAryFunction::PAryFunction(int p, int n, std::vector<Digit> table) : PAryFunction(CoordSpace(p, n), std::move(table)) {}

PAryFunction::PAryFunction(const CoordSpace& space, std::vector<Digit> table)
    : space_(space), table_(std::move(table)) {
    if (table_.size() != space_.size())
        throw Error("length mismatch: table has " + std::to_string(table_.size()) + " entries, expected " +
                    std::to_string(space_.size()));
    for (Digit v : table_)
        if (v >= space_.p())
            throw Error("table value " + std::to_string(v) + " out of range for p=" + std::to_string(space_.p()));
}

PAryFunction PAryFunction::zero(int p, int n) { return constant(p, n, 0); }

PAryFunction PAryFunction::constant(int p, int n, int c) {
    CoordSpace sp(p, n);
    c = ((c % p) + p) % p;
    return {sp, std::vector<Digit>(sp.size(), Digit(c))};
}

PAryFunction PAryFunction::affine(int p, int n, Point v, int c) { return add_linear(zero(p, n), v, c); }

PAryFunction from_trace_spec(const TraceSpec& spec) {
    const ExtField& F = spec.field;
    const Point q = F.order();
    const std::int64_t m = std::int64_t(q) - 1;
    for (const auto& t : spec.terms) {
        if (t.mono_exp < 0) throw Error("monomial exponent must be nonnegative");
        if (t.coeff_exp < 0 || t.coeff_exp >= m)
            throw Error("coefficient exponent " + std::to_string(t.coeff_exp) + " outside [0, p^n - 1)");
    }
    std::vector<Digit> table(q, 0);
    for (Point x = 0; x < q; ++x) {
        int s = 0;
        const FieldElem xe = F.element(x);
        for (const auto& t : spec.terms) {
            const FieldElem v = F.mul(F.gen_pow(t.coeff_exp), F.pow(xe, t.mono_exp));
            s += F.trace(v);
        }
        table[x] = Digit(s % F.p());
    }
    return {F.space(), std::move(table)};
}

namespace {

char symbol(Digit d) { return d < 10 ? char('0' + d) : char('a' + (d - 10)); }

int symbol_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
    return -1;
}

}  // namespace

void write_table(std::ostream& out, const PAryFunction& f) {
    out << f.p() << ' ' << f.n() << '\n';
    std::string line(f.size(), '0');
    for (Point x = 0; x < f.size(); ++x) line[x] = symbol(f(x));
    out << line << '\n';
}

PAryFunction read_table(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw Error("malformed header: empty input");
    std::istringstream hs(header);
    int p = 0, n = 0;
    std::string extra;
    if (!(hs >> p >> n) || (hs >> extra)) throw Error("malformed header: expected \"p n\", got \"" + header + "\"");
    CoordSpace sp(p, n);

    std::string body;
    std::getline(in, body);
    if (!body.empty() && body.back() == '\r') body.pop_back();
    std::string rest;
    while (std::getline(in, rest))
        if (rest.find_first_not_of(" \t\r") != std::string::npos) throw Error("unexpected content after table line");
    if (body.size() != sp.size())
        throw Error("length mismatch: " + std::to_string(body.size()) + " digits for p^n = " +
                    std::to_string(sp.size()));
    std::vector<Digit> table(sp.size());
    for (std::size_t i = 0; i < body.size(); ++i) {
        const int v = symbol_value(body[i]);
        if (v < 0 || v >= p)
            throw Error(std::string("digit '") + body[i] + "' at position " + std::to_string(i) +
                        " is not a value below p=" + std::to_string(p));
        table[i] = Digit(v);
    }
    return {sp, std::move(table)};
}

void to_table_file(const PAryFunction& f, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_table(out, f);
    if (!out) throw Error("write failed: " + path.string());
}

PAryFunction from_table_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return read_table(in);
}

PAryFunction derivative(const PAryFunction& f, Point b) {
    const auto& sp = f.space();
    if (b >= sp.size()) throw Error("direction out of range");
    std::vector<Digit> t(sp.size());
    for (Point x = 0; x < sp.size(); ++x) t[x] = Digit((f(x) + sp.p() - f(sp.add(x, b))) % sp.p());
    return {sp, std::move(t)};
}

PAryFunction add_linear(const PAryFunction& f, Point v, int c) {
    const auto& sp = f.space();
    if (v >= sp.size()) throw Error("linear form out of range");
    const int p = sp.p();
    c = ((c % p) + p) % p;
    std::vector<Digit> t(sp.size());
    for (Point x = 0; x < sp.size(); ++x) t[x] = Digit((f(x) + sp.dot(v, x) + c) % p);
    return {sp, std::move(t)};
}

PAryFunction translate(const PAryFunction& f, Point a) {
    const auto& sp = f.space();
    std::vector<Digit> t(sp.size());
    for (Point x = 0; x < sp.size(); ++x) t[x] = f(sp.add(x, a));
    return {sp, std::move(t)};
}

namespace {

using Matrix = std::vector<std::vector<int>>;

int mod_inv(int a, int p) {
    int r = 1;
    for (int e = p - 2; e > 0; e >>= 1) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
    }
    return r;
}

// Vandermonde V[t][j] = t^j over F_p (0^0 = 1) and its inverse.
Matrix vandermonde(int p) {
    Matrix v(p, std::vector<int>(p));
    for (int t = 0; t < p; ++t) {
        int acc = 1;
        for (int j = 0; j < p; ++j) {
            v[t][j] = acc;
            acc = acc * t % p;
        }
    }
    return v;
}

Matrix invert(Matrix a, int p) {
    const int n = int(a.size());
    Matrix inv(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (a[piv][col] == 0) ++piv;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const int s = mod_inv(a[col][col], p);
        for (int j = 0; j < n; ++j) {
            a[col][j] = a[col][j] * s % p;
            inv[col][j] = inv[col][j] * s % p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const int c = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] = ((a[r][j] - c * a[col][j]) % p + p) % p;
                inv[r][j] = ((inv[r][j] - c * inv[col][j]) % p + p) % p;
            }
        }
    }
    return inv;
}

// Applies the same p x p matrix along every coordinate axis.
std::vector<Digit> tensor_apply(const CoordSpace& sp, std::span<const Digit> in, const Matrix& m) {
    const int p = sp.p();
    std::vector<Digit> cur(in.begin(), in.end());
    std::vector<int> buf(p);
    for (int axis = 0; axis < sp.n(); ++axis) {
        const Point stride = sp.pow(axis);
        const Point block = stride * Point(p);
        for (Point base = 0; base < sp.size(); base += block) {
            for (Point off = 0; off < stride; ++off) {
                for (int r = 0; r < p; ++r) {
                    int s = 0;
                    for (int c = 0; c < p; ++c) s += m[r][c] * cur[base + off + Point(c) * stride];
                    buf[r] = s % p;
                }
                for (int r = 0; r < p; ++r) cur[base + off + Point(r) * stride] = Digit(buf[r]);
            }
        }
    }
    return cur;
}

}  // namespace

std::vector<Digit> anf(const PAryFunction& f) {
    return tensor_apply(f.space(), f.table(), invert(vandermonde(f.p()), f.p()));
}

PAryFunction from_anf(int p, int n, std::span<const Digit> coefficients) {
    CoordSpace sp(p, n);
    if (coefficients.size() != sp.size()) throw Error("length mismatch in ANF coefficient table");
    return {sp, tensor_apply(sp, coefficients, vandermonde(p))};
}

int algebraic_degree(const PAryFunction& f) {
    const auto coeffs = anf(f);
    int best = 0;
    for (Point e = 0; e < f.size(); ++e) {
        if (!coeffs[e]) continue;
        int d = 0;
        for (Digit v : f.space().digits(e)) d += v;
        best = std::max(best, d);
    }
    return best;
}

}  // namespace pnorm
