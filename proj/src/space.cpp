#include "pnorm/space.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "pnorm/error.hpp"

namespace pnorm {

bool is_prime(int v) {
    if (v < 2) return false;
    for (int d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

CoordSpace::CoordSpace(int p, int n) : tables_(tables_for(p, n)) {}

std::shared_ptr<const CoordSpace::Tables> CoordSpace::tables_for(int p, int n) {
    if (!is_prime(p) || p > 13)
        throw Error("unsupported characteristic p=" + std::to_string(p) + " (need a prime 2 <= p <= 13)");
    if (n < 1) throw Error("dimension must be at least 1, got " + std::to_string(n));
    std::uint64_t size = 1;
    for (int i = 0; i < n; ++i) {
        size *= std::uint64_t(p);
        if (size > kMaxSpaceSize)
            throw Error("space F_" + std::to_string(p) + "^" + std::to_string(n) + " exceeds the supported size 3^10");
    }

    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const Tables>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{p, n}];
    if (slot) return slot;

    auto t = std::make_shared<Tables>();
    t->p = p;
    t->n = n;
    t->size = Point(size);
    t->pow.resize(n + 1);
    t->pow[0] = 1;
    for (int i = 0; i < n; ++i) t->pow[i + 1] = t->pow[i] * Point(p);
    t->digits.resize(std::size_t(size) * n);
    for (Point x = 0; x < t->size; ++x) {
        Point r = x;
        for (int i = 0; i < n; ++i) {
            t->digits[std::size_t(x) * n + i] = Digit(r % Point(p));
            r /= Point(p);
        }
    }
    slot = std::move(t);
    return slot;
}

Point CoordSpace::encode(std::span<const Digit> coords) const {
    if (int(coords.size()) != n())
        throw Error("vector length " + std::to_string(coords.size()) + " does not match dimension " +
                    std::to_string(n()));
    Point x = 0;
    for (int i = 0; i < n(); ++i) {
        if (coords[i] >= p()) throw Error("coordinate " + std::to_string(coords[i]) + " out of range for p=" +
                                          std::to_string(p()));
        x += coords[i] * pow(i);
    }
    return x;
}

Point CoordSpace::add(Point x, Point y) const {
    const int q = p();
    const Digit* dx = digits(x).data();
    const Digit* dy = digits(y).data();
    Point r = 0;
    for (int i = 0; i < n(); ++i) {
        int d = dx[i] + dy[i];
        if (d >= q) d -= q;
        r += Point(d) * tables_->pow[i];
    }
    return r;
}

Point CoordSpace::sub(Point x, Point y) const {
    const int q = p();
    const Digit* dx = digits(x).data();
    const Digit* dy = digits(y).data();
    Point r = 0;
    for (int i = 0; i < n(); ++i) {
        int d = dx[i] - dy[i];
        if (d < 0) d += q;
        r += Point(d) * tables_->pow[i];
    }
    return r;
}

Point CoordSpace::neg(Point x) const { return sub(0, x); }

Point CoordSpace::scale(Point x, int c) const {
    const int q = p();
    c %= q;
    if (c < 0) c += q;
    const Digit* dx = digits(x).data();
    Point r = 0;
    for (int i = 0; i < n(); ++i) r += Point((dx[i] * c) % q) * tables_->pow[i];
    return r;
}

Point CoordSpace::axpy(Point x, int c, Point y) const {
    const int q = p();
    c %= q;
    if (c < 0) c += q;
    const Digit* dx = digits(x).data();
    const Digit* dy = digits(y).data();
    Point r = 0;
    for (int i = 0; i < n(); ++i) r += Point((dx[i] + c * dy[i]) % q) * tables_->pow[i];
    return r;
}

int CoordSpace::dot(Point x, Point y) const {
    const Digit* dx = digits(x).data();
    const Digit* dy = digits(y).data();
    int s = 0;
    for (int i = 0; i < n(); ++i) s += dx[i] * dy[i];
    return s % p();
}

}  // namespace pnorm
