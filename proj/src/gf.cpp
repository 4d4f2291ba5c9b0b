#include "pnorm/gf.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>

#include "pnorm/error.hpp"

namespace pnorm {

namespace {

// Conway polynomials, coefficients low to high. Covers every (p, n) with
// p <= 13 and p^n <= 3^10.
const std::map<std::pair<int, int>, std::vector<int>>& conway_table() {
    static const std::map<std::pair<int, int>, std::vector<int>> table = {
        {{2, 1}, {1, 1}},
        {{2, 2}, {1, 1, 1}},
        {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
        {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
        {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {{2, 9}, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
        {{2, 10}, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1}},
        {{2, 11}, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
        {{2, 12}, {1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1}},
        {{2, 13}, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
        {{2, 14}, {1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
        {{2, 15}, {1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
        {{3, 1}, {1, 1}},
        {{3, 2}, {2, 2, 1}},
        {{3, 3}, {1, 2, 0, 1}},
        {{3, 4}, {2, 0, 0, 2, 1}},
        {{3, 5}, {1, 2, 0, 0, 0, 1}},
        {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
        {{3, 7}, {1, 0, 2, 0, 0, 0, 0, 1}},
        {{3, 8}, {2, 2, 2, 0, 1, 2, 0, 0, 1}},
        {{3, 9}, {1, 1, 2, 2, 0, 0, 0, 0, 0, 1}},
        {{3, 10}, {2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1}},
        {{5, 1}, {3, 1}},
        {{5, 2}, {2, 4, 1}},
        {{5, 3}, {3, 3, 0, 1}},
        {{5, 4}, {2, 4, 4, 0, 1}},
        {{5, 5}, {3, 4, 0, 0, 0, 1}},
        {{5, 6}, {2, 0, 1, 4, 1, 0, 1}},
        {{7, 1}, {4, 1}},
        {{7, 2}, {3, 6, 1}},
        {{7, 3}, {4, 0, 6, 1}},
        {{7, 4}, {3, 4, 5, 0, 1}},
        {{7, 5}, {4, 1, 0, 0, 0, 1}},
        {{11, 1}, {9, 1}},
        {{11, 2}, {2, 7, 1}},
        {{11, 3}, {9, 2, 0, 1}},
        {{11, 4}, {2, 10, 8, 0, 1}},
        {{13, 1}, {11, 1}},
        {{13, 2}, {2, 12, 1}},
        {{13, 3}, {11, 2, 0, 1}},
        {{13, 4}, {2, 12, 3, 0, 1}},
    };
    return table;
}

using Poly = std::vector<int>;

int inv_mod(int a, int p) {
    int r = 1;
    for (int e = p - 2; e > 0; e >>= 1) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
    }
    return r;
}

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a * b mod m, all reduced; m monic of degree d, result has length d.
Poly mulmod(const Poly& a, const Poly& b, std::span<const int> m, int p) {
    const int d = int(m.size()) - 1;
    std::vector<long long> r(2 * d + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    for (auto& v : r) v %= p;
    for (int k = 2 * d; k >= d; --k) {
        const long long c = r[k] % p;
        if (!c) continue;
        for (int t = 0; t <= d; ++t) r[k - d + t] = ((r[k - d + t] - c * m[t]) % p + p) % p;
    }
    Poly out(d);
    for (int i = 0; i < d; ++i) out[i] = int(((r[i] % p) + p) % p);
    return out;
}

Poly powmod(Poly a, std::uint64_t e, std::span<const int> m, int p) {
    const int d = int(m.size()) - 1;
    Poly r(d, 0);
    r[0] = 1 % p;
    if (d == 0) return r;
    a.resize(d, 0);
    while (e) {
        if (e & 1) r = mulmod(r, a, m, p);
        a = mulmod(a, a, m, p);
        e >>= 1;
    }
    return r;
}

Poly x_mod(std::span<const int> m, int p) {
    const int d = int(m.size()) - 1;
    Poly x(d, 0);
    if (d >= 2) {
        x[1] = 1;
    } else {
        x[0] = ((-m[0]) % p + p) % p;
    }
    return x;
}

Poly poly_gcd(Poly a, Poly b, int p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        const int inv_lead = inv_mod(b.back(), p);
        while (a.size() >= b.size() && !a.empty()) {
            const int c = a.back() * inv_lead % p;
            const std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
            trim(a);
        }
        std::swap(a, b);
    }
    return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

void check_monic(int p, std::span<const int> m) {
    if (m.size() < 2) throw Error("modulus must have degree at least 1");
    if (m.back() != 1) throw Error("modulus must be monic");
    for (int c : m)
        if (c < 0 || c >= p) throw Error("modulus coefficient " + std::to_string(c) + " out of range for p=" +
                                         std::to_string(p));
}

}  // namespace

namespace poly {

bool is_irreducible(int p, std::span<const int> m) {
    check_monic(p, m);
    const int d = int(m.size()) - 1;
    if (d == 1) return true;
    const Poly x = x_mod(m, p);
    // x^(p^d) == x mod m, and gcd(x^(p^(d/r)) - x, m) == 1 for every prime r | d.
    std::vector<Poly> frob(d + 1);
    frob[0] = x;
    for (int i = 1; i <= d; ++i) frob[i] = powmod(frob[i - 1], std::uint64_t(p), m, p);
    if (frob[d] != x) return false;
    for (auto r : prime_factors(std::uint64_t(d))) {
        Poly diff = frob[d / r];
        for (std::size_t i = 0; i < x.size(); ++i) diff[i] = ((diff[i] - x[i]) % p + p) % p;
        Poly g = poly_gcd(Poly(m.begin(), m.end()), diff, p);
        if (g.size() > 1) return false;
    }
    return true;
}

bool is_primitive(int p, std::span<const int> m) {
    if (!is_irreducible(p, m)) return false;
    const int d = int(m.size()) - 1;
    std::uint64_t q = 1;
    for (int i = 0; i < d; ++i) q *= std::uint64_t(p);
    const Poly x = x_mod(m, p);
    Poly one(d, 0);
    one[0] = 1;
    if (powmod(x, q - 1, m, p) != one) return false;
    for (auto r : prime_factors(q - 1))
        if (powmod(x, (q - 1) / r, m, p) == one) return false;
    return true;
}

}  // namespace poly

PrimeModulus::PrimeModulus(int p) : p_(p) {
    if (!is_prime(p) || p > 13) throw Error("p=" + std::to_string(p) + " is not a supported prime (2..13)");
}

bool ExtField::has_conway(int p, int n) { return conway_table().count({p, n}) != 0; }

ExtField ExtField::conway(int p, int n) {
    PrimeModulus pm(p);
    auto it = conway_table().find({pm.value(), n});
    if (it == conway_table().end())
        throw Error("no built-in modulus for GF(" + std::to_string(p) + "^" + std::to_string(n) +
                    "); supply an explicit primitive modulus");
    // Cached: field handles for the same (p, n) share tables.
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const Impl>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{p, n}];
    if (!slot) slot = build(p, it->second).impl_;
    return ExtField(slot);
}

ExtField ExtField::with_modulus(int p, std::span<const int> modulus) {
    PrimeModulus pm(p);
    check_monic(pm.value(), modulus);
    if (!poly::is_irreducible(p, modulus)) throw Error("modulus is reducible over F_" + std::to_string(p));
    if (!poly::is_primitive(p, modulus)) throw Error("modulus is irreducible but not primitive");
    return build(p, std::vector<int>(modulus.begin(), modulus.end()));
}

ExtField ExtField::build(int p, std::vector<int> modulus) {
    const int n = int(modulus.size()) - 1;
    auto impl = std::make_shared<Impl>(Impl{CoordSpace(p, n), std::move(modulus), {}, {}, {}});
    const CoordSpace& sp = impl->space;
    const Point q = sp.size();

    impl->exp.resize(q - 1);
    impl->log.assign(q, 0);
    std::vector<Digit> cur(n, 0);
    cur[0] = 1;
    std::vector<bool> seen(q, false);
    for (Point i = 0; i < q - 1; ++i) {
        const Point code = sp.encode(cur);
        if (seen[code] || code == 0) throw Error("modulus is not primitive: generator order below p^n - 1");
        seen[code] = true;
        impl->exp[i] = code;
        impl->log[code] = i;
        // multiply by x
        const int top = cur[n - 1];
        for (int j = n - 1; j >= 1; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        for (int j = 0; j < n; ++j) cur[j] = Digit(((cur[j] - top * impl->modulus[j]) % p + p) % p);
    }
    if (sp.encode(cur) != 1) throw Error("modulus is not primitive: generator order is not p^n - 1");

    // Trace of the basis elements g^i by summing conjugates, then extended linearly.
    std::vector<int> basis_trace(n);
    for (int i = 0; i < n; ++i) {
        Point acc = 0;
        std::uint64_t e = std::uint64_t(i);
        for (int j = 0; j < n; ++j) {
            acc = sp.add(acc, impl->exp[e % (q - 1)]);
            e = e * std::uint64_t(p) % (q - 1);
        }
        if (acc >= Point(p)) throw ConsistencyError("trace left the prime field");
        basis_trace[i] = int(acc);
    }
    impl->trace.resize(q);
    for (Point x = 0; x < q; ++x) {
        int t = 0;
        for (int i = 0; i < n; ++i) t += sp.digit(x, i) * basis_trace[i];
        impl->trace[x] = Digit(t % p);
    }
    return ExtField(std::move(impl));
}

Point ExtField::check(FieldElem a) const {
    if (a.owner_ != impl_.get()) throw Error("field element belongs to a different field");
    return a.code_;
}

FieldElem ExtField::element(Point code) const {
    if (code >= order()) throw Error("element code " + std::to_string(code) + " out of range");
    return {impl_.get(), code};
}

FieldElem ExtField::gen_pow(std::int64_t e) const {
    const std::int64_t m = std::int64_t(order()) - 1;
    std::int64_t r = e % m;
    if (r < 0) r += m;
    return {impl_.get(), impl_->exp[std::size_t(r)]};
}

FieldElem ExtField::add(FieldElem a, FieldElem b) const {
    return {impl_.get(), space().add(check(a), check(b))};
}

FieldElem ExtField::sub(FieldElem a, FieldElem b) const {
    return {impl_.get(), space().sub(check(a), check(b))};
}

FieldElem ExtField::neg(FieldElem a) const { return {impl_.get(), space().neg(check(a))}; }

FieldElem ExtField::mul(FieldElem a, FieldElem b) const {
    const Point x = check(a), y = check(b);
    if (x == 0 || y == 0) return zero();
    const std::uint64_t m = order() - 1;
    return {impl_.get(), impl_->exp[(std::uint64_t(impl_->log[x]) + impl_->log[y]) % m]};
}

FieldElem ExtField::pow(FieldElem a, std::int64_t e) const {
    const Point x = check(a);
    if (x == 0) {
        if (e == 0) return one();
        if (e < 0) throw Error("zero has no negative powers");
        return zero();
    }
    const std::int64_t m = std::int64_t(order()) - 1;
    std::int64_t r = (std::int64_t(impl_->log[x]) * (e % m)) % m;
    if (r < 0) r += m;
    return {impl_.get(), impl_->exp[std::size_t(r)]};
}

FieldElem ExtField::inv(FieldElem a) const {
    if (check(a) == 0) throw Error("zero is not invertible");
    return pow(a, -1);
}

std::uint32_t ExtField::log(FieldElem a) const {
    const Point x = check(a);
    if (x == 0) throw Error("logarithm of zero");
    return impl_->log[x];
}

std::uint64_t ExtField::multiplicative_order(FieldElem a) const {
    const std::uint64_t m = order() - 1;
    const std::uint64_t l = log(a);
    return m / std::gcd(m, l);
}

std::vector<Digit> ExtField::to_vector(FieldElem a) const {
    auto d = space().digits(check(a));
    return {d.begin(), d.end()};
}

FieldElem ExtField::from_vector(std::span<const Digit> v) const { return {impl_.get(), space().encode(v)}; }

}  // namespace pnorm
