#pragma once

// Helpers shared by the test binaries. Everything here is written against
// plain integers and sets so it can serve as an oracle for the library.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "pnorm/cyclotomic.hpp"
#include "pnorm/func.hpp"
#include "pnorm/space.hpp"
#include "pnorm/subspace.hpp"

namespace testing_support {

using pnorm::Digit;
using pnorm::Point;

inline pnorm::PAryFunction random_function(int p, int n, std::mt19937_64& rng) {
    pnorm::CoordSpace sp(p, n);
    std::uniform_int_distribution<int> d(0, p - 1);
    std::vector<Digit> t(sp.size());
    for (auto& v : t) v = Digit(d(rng));
    return {sp, std::move(t)};
}

inline std::vector<int> digits_of(Point x, int p, int n) {
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[std::size_t(i)] = int(x % Point(p));
        x /= Point(p);
    }
    return out;
}

inline Point from_digits(const std::vector<int>& d, int p) {
    Point x = 0;
    for (std::size_t i = d.size(); i-- > 0;) x = x * Point(p) + Point(((d[i] % p) + p) % p);
    return x;
}

inline Point vadd(Point x, Point y, int p, int n, int c = 1) {
    auto a = digits_of(x, p, n), b = digits_of(y, p, n);
    for (int i = 0; i < n; ++i) a[std::size_t(i)] += c * b[std::size_t(i)];
    return from_digits(a, p);
}

inline int vdot(Point x, Point y, int p, int n) {
    auto a = digits_of(x, p, n), b = digits_of(y, p, n);
    int s = 0;
    for (int i = 0; i < n; ++i) s += a[std::size_t(i)] * b[std::size_t(i)];
    return s % p;
}

/// Span of the vectors as a sorted point set, by closure.
inline std::vector<Point> span_set(const std::vector<Point>& vs, int p, int n) {
    std::set<Point> s{0};
    for (Point v : vs) {
        std::set<Point> next;
        for (Point x : s)
            for (int t = 0; t < p; ++t) next.insert(vadd(x, v, p, n, t));
        s = std::move(next);
    }
    return {s.begin(), s.end()};
}

/// Random subspace of dimension s from random vectors (rejection until independent).
inline pnorm::Subspace random_subspace(const pnorm::CoordSpace& sp, int s, std::mt19937_64& rng) {
    std::uniform_int_distribution<Point> d(1, sp.size() - 1);
    pnorm::Subspace u(sp);
    while (u.dim() < s) {
        const Point v = d(rng);
        if (!u.contains(v)) u = u.extend(v);
    }
    return u;
}

/// Gaussian binomial by the product formula in 128-bit arithmetic.
inline unsigned __int128 gauss_binom(int p, int n, int k) {
    if (k < 0 || k > n) return 0;
    unsigned __int128 num = 1, den = 1;
    auto pw = [p](int e) {
        unsigned __int128 r = 1;
        for (int i = 0; i < e; ++i) r *= unsigned(p);
        return r;
    };
    for (int i = 0; i < k; ++i) {
        num *= pw(n - i) - 1;
        den *= pw(i + 1) - 1;
    }
    return num / den;
}

inline bool constant_on(const pnorm::PAryFunction& f, const std::vector<Point>& pts) {
    for (Point x : pts)
        if (f(x) != f(pts[0])) return false;
    return true;
}

/// Whether f is affine on rep + span(basis): tries every candidate
/// c + sum t_i s_i (p^(k+1) of them) against every point of the flat.
inline bool affine_on(const pnorm::PAryFunction& f, Point rep, const std::vector<Point>& basis) {
    const int p = f.p(), n = f.n(), k = int(basis.size());
    std::vector<int> cand(std::size_t(k) + 1, 0);
    for (;;) {
        bool ok = true;
        std::vector<int> t(std::size_t(k), 0);
        for (bool more = true; more && ok;) {
            Point x = rep;
            int want = cand[0];
            for (int i = 0; i < k; ++i) {
                x = vadd(x, basis[std::size_t(i)], p, n, t[std::size_t(i)]);
                want += cand[std::size_t(i) + 1] * t[std::size_t(i)];
            }
            ok = f(x) == want % p;
            more = false;
            for (int i = 0; i < k && !more; ++i) {
                if (++t[std::size_t(i)] < p) more = true;
                else t[std::size_t(i)] = 0;
            }
        }
        if (ok) return true;
        std::size_t i = 0;
        while (i < cand.size() && ++cand[i] == p) cand[i++] = 0;
        if (i == cand.size()) return false;
    }
}

// Sums over a coset a + W; f_a is the restriction of f to a + W.

// sum_{x in W} e^(f(a + x) - <v, x>)
inline pnorm::CyclotomicInt restricted_walsh(const pnorm::PAryFunction& f, Point a, const std::vector<Point>& w, Point v = 0) {
    const auto& sp = f.space();
    const int p = sp.p();
    std::vector<pnorm::CyclotomicInt::Coeff> c(std::size_t(p), 0);
    for (Point x : w) ++c[std::size_t((f(sp.add(a, x)) - sp.dot(v, x) + p) % p)];
    return {p, c};
}

// sum_{x in W} e^(f(a + x) - f(a + x + b)), b in W
inline pnorm::CyclotomicInt restricted_derivative(const pnorm::PAryFunction& f, Point a, const std::vector<Point>& w, Point b) {
    const auto& sp = f.space();
    const int p = sp.p();
    std::vector<pnorm::CyclotomicInt::Coeff> c(std::size_t(p), 0);
    for (Point x : w) {
        const Point y = sp.add(a, x);
        ++c[std::size_t((f(y) - f(sp.add(y, b)) + p) % p)];
    }
    return {p, c};
}

// sum_x e^(D_b f(x))
inline pnorm::CyclotomicInt derivative_at_zero(const pnorm::PAryFunction& f, Point b) {
    const auto& sp = f.space();
    std::vector<pnorm::CyclotomicInt::Coeff> c(std::size_t(sp.p()), 0);
    for (Point x = 0; x < sp.size(); ++x) ++c[std::size_t((f(x) - f(sp.add(x, b)) + sp.p()) % sp.p())];
    return {sp.p(), c};
}

}  // namespace testing_support
