#include "pnorm/spectrum.hpp"

#include <array>
#include <ostream>

#include "pnorm/error.hpp"

namespace pnorm {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

CyclotomicInt walsh_at(const PAryFunction& f, Point u) {
    const auto& sp = f.space();
    if (u >= sp.size()) throw Error("Walsh point out of range");
    const int p = sp.p();
    std::vector<CyclotomicInt::Coeff> counts(std::size_t(p), 0);
    for (Point x = 0; x < sp.size(); ++x) counts[std::size_t((f(x) + p - sp.dot(u, x)) % p)] += 1;
    return {p, std::move(counts)};
}

std::vector<CyclotomicInt> walsh_spectrum(const PAryFunction& f) {
    const auto& sp = f.space();
    const int p = sp.p();
    const std::size_t q = sp.size();
    // data[x * p + j]: coefficient of e^j at position x
    std::vector<CyclotomicInt::Coeff> data(q * std::size_t(p), 0), buf(std::size_t(p) * std::size_t(p));
    for (Point x = 0; x < q; ++x) data[std::size_t(x) * p + f(x)] = 1;

    for (int axis = 0; axis < sp.n(); ++axis) {
        const Point stride = sp.pow(axis);
        const Point block = stride * Point(p);
        for (Point base = 0; base < q; base += block) {
            for (Point off = 0; off < stride; ++off) {
                std::fill(buf.begin(), buf.end(), 0);
                // out[t] = sum_s e^(-t s) in[s]
                for (int s = 0; s < p; ++s) {
                    const auto* in = &data[std::size_t(base + off + Point(s) * stride) * p];
                    for (int t = 0; t < p; ++t) {
                        const int shift = (p - (t * s) % p) % p;
                        auto* out = &buf[std::size_t(t) * p];
                        for (int j = 0; j < p; ++j) out[(j + shift) % p] += in[j];
                    }
                }
                for (int t = 0; t < p; ++t)
                    std::copy_n(&buf[std::size_t(t) * p], p, &data[std::size_t(base + off + Point(t) * stride) * p]);
            }
        }
    }

    std::vector<CyclotomicInt> out;
    out.reserve(q);
    for (std::size_t u = 0; u < q; ++u)
        out.emplace_back(p, std::vector<CyclotomicInt::Coeff>(data.begin() + std::ptrdiff_t(u * p),
                                                               data.begin() + std::ptrdiff_t((u + 1) * p)));
    return out;
}

bool is_bent(const std::vector<CyclotomicInt>& spectrum, int p, int n) {
    const std::int64_t target = ipow(p, n);
    for (const auto& w : spectrum) {
        const auto v = w.norm_sq().as_integer();
        if (!v || *v != target) return false;
    }
    return true;
}

bool is_bent(const PAryFunction& f) { return is_bent(walsh_spectrum(f), f.p(), f.n()); }

std::string_view to_string(RegularityKind k) {
    switch (k) {
        case RegularityKind::regular: return "regular";
        case RegularityKind::weakly_regular: return "weakly_regular";
        case RegularityKind::non_weakly_regular: return "non_weakly_regular";
        case RegularityKind::not_bent: return "not_bent";
    }
    return "?";
}

std::string_view to_string(Zeta z) {
    switch (z) {
        case Zeta::plus_one: return "+1";
        case Zeta::minus_one: return "-1";
        case Zeta::plus_i: return "+i";
        case Zeta::minus_i: return "-i";
    }
    return "?";
}

RegularityVerdict classify_regularity(const PAryFunction& f) {
    const int p = f.p(), n = f.n();
    const auto spectrum = walsh_spectrum(f);
    RegularityVerdict verdict;
    if (!is_bent(spectrum, p, n)) return verdict;

    // Scale S with f^(b) = +-S e^j: p^(n/2) for even n (or p = 2), else
    // p^((n-1)/2) * G where G = sqrt(p) (p = 1 mod 4) or i sqrt(p) (p = 3 mod 4).
    const bool odd = (n % 2 == 1) && p != 2;
    CyclotomicInt scale = CyclotomicInt::integer(p, ipow(p, n / 2));
    if (odd) {
        const auto g = CyclotomicInt::gauss_sum(p);
        const auto g2 = (g * g).as_integer();
        const std::int64_t expect = (p % 4 == 1) ? p : -p;
        if (!g2 || *g2 != expect) throw ConsistencyError("Gauss sum does not square to +-p");
        scale = g * ipow(p, (n - 1) / 2);
    }
    const bool imaginary = odd && p % 4 == 3;

    verdict.pointwise_dual.resize(f.size());
    verdict.signs.resize(f.size());
    const std::array<CyclotomicInt, 2> bases{scale, -scale};
    for (Point b = 0; b < f.size(); ++b) {
        bool found = false;
        for (int s = 0; s < 2 && !found; ++s) {
            for (int j = 0; j < p; ++j) {
                if (spectrum[b] == bases[std::size_t(s)].shifted(j)) {
                    verdict.pointwise_dual[b] = Digit(j);
                    if (imaginary)
                        verdict.signs[b] = s == 0 ? Zeta::plus_i : Zeta::minus_i;
                    else
                        verdict.signs[b] = s == 0 ? Zeta::plus_one : Zeta::minus_one;
                    found = true;
                    break;
                }
            }
        }
        if (!found)
            throw ConsistencyError("bent Walsh value " + spectrum[b].to_string() + " at u=" + std::to_string(b) +
                                   " matches no unit pattern");
    }

    const Zeta first = verdict.signs[0];
    bool uniform = true;
    for (Zeta z : verdict.signs) uniform = uniform && z == first;
    if (uniform) {
        verdict.kind = first == Zeta::plus_one ? RegularityKind::regular : RegularityKind::weakly_regular;
        verdict.zeta = first;
        verdict.dual = PAryFunction(f.space(), verdict.pointwise_dual);
    } else {
        verdict.kind = RegularityKind::non_weakly_regular;
    }
    return verdict;
}

PAryFunction dual(const PAryFunction& f) {
    auto v = classify_regularity(f);
    if (v.kind == RegularityKind::not_bent) throw Error("dual requested for a function that is not bent");
    if (!v.dual) throw Error("dual requested for a non-weakly regular bent function; its dual need not be bent");
    return std::move(*v.dual);
}

void write_spectrum(std::ostream& out, const PAryFunction& f) {
    const auto spectrum = walsh_spectrum(f);
    for (Point u = 0; u < f.size(); ++u) {
        out << u;
        for (auto c : spectrum[u].counts()) out << ' ' << c;
        const auto norm = spectrum[u].norm_sq();
        if (auto v = norm.as_integer())
            out << ' ' << *v;
        else
            out << ' ' << norm.canonical().to_string();
        out << '\n';
    }
}

}  // namespace pnorm
