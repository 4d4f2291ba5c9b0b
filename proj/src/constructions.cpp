#include "pnorm/constructions.hpp"

#include <functional>

#include "pnorm/error.hpp"
#include "pnorm/subspace.hpp"

namespace pnorm {

namespace {

BigInt big_pow(int b, std::int64_t e) {
    BigInt r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= b;
    return r;
}

std::int64_t choose(std::int64_t n, std::int64_t r) {
    if (r < 0 || r > n) return 0;
    std::int64_t out = 1;
    for (std::int64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

void check_prime(int p) {
    if (!is_prime(p)) throw Error("p=" + std::to_string(p) + " is not prime");
}

PAryFunction quadratic(int e) { return from_trace_spec({ExtField::conway(3, 4), {{e, 2}}}); }

}  // namespace

PAryFunction coulter_matthews(int n, int k, std::int64_t coeff_exp) {
    if (!ExtField::has_conway(3, n)) throw Error("no field table for p=3, n=" + std::to_string(n));
    if (k < 0) throw Error("Coulter-Matthews parameter k must be nonnegative");
    std::int64_t e = 1;
    for (int i = 0; i < k; ++i) e *= 3;
    return from_trace_spec({ExtField::conway(3, n), {{coeff_exp, (e + 1) / 2}}});
}

PAryFunction trace_bent(const TraceSpec& spec, bool assert_bent) {
    auto f = from_trace_spec(spec);
    if (assert_bent && !is_bent(f)) throw Error("trace expression is not bent");
    return f;
}

PAryFunction product_construction(const ExtField& field, std::int64_t alpha_exp, std::int64_t beta_exp) {
    const int p = field.p(), n = field.degree();
    const CoordSpace out(p, n + 2);
    const FieldElem a = field.gen_pow(alpha_exp), b = field.gen_pow(beta_exp);
    const std::vector<Point> gens{field.one().code(), a.code(), b.code()};
    if (Subspace::span(field.space(), gens).dim() != 3)
        throw Error("1, alpha, beta are linearly dependent over F_" + std::to_string(p));

    const Point q = field.order();
    std::vector<int> f(q), h1(q), h2(q);
    for (Point x = 0; x < q; ++x) {
        const FieldElem x2 = field.mul(field.element(x), field.element(x));
        f[x] = field.trace(x2);
        h1[x] = field.trace(field.mul(a, x2));
        h2[x] = field.trace(field.mul(b, x2));
    }
    std::vector<Digit> table(out.size());
    for (Point i = 0; i < out.size(); ++i) {
        const Point x = i % q;
        const int y1 = out.digit(i, n), y2 = out.digit(i, n + 1);
        table[i] = Digit((f[x] + (y1 + h1[x]) * (y2 + h2[x])) % p);
    }
    return {out, std::move(table)};
}

PAryFunction direct_sum_extend(const PAryFunction& f) {
    const int p = f.p(), n = f.n();
    const CoordSpace out(p, n + 2);
    std::vector<Digit> table(out.size());
    for (Point i = 0; i < out.size(); ++i)
        table[i] = Digit((f(i % f.size()) + out.digit(i, n) * out.digit(i, n + 1)) % p);
    return {out, std::move(table)};
}

PAryFunction maiorana_mcfarland(int p, int m, const std::vector<Point>& pi, const std::vector<Digit>& g) {
    const CoordSpace half(p, m);
    const CoordSpace out(p, 2 * m);
    if (pi.size() != half.size() || g.size() != half.size())
        throw Error("permutation and g tables need p^m entries");
    std::vector<bool> seen(half.size(), false);
    for (Point v : pi) {
        if (v >= half.size() || seen[v]) throw Error("pi is not a permutation of F_p^m");
        seen[v] = true;
    }
    for (Digit d : g)
        if (d >= p) throw Error("g value out of range");
    std::vector<Digit> table(out.size());
    for (Point i = 0; i < out.size(); ++i) {
        const Point x = i % half.size(), y = i / half.size();
        table[i] = Digit((half.dot(x, pi[y]) + g[y]) % p);
    }
    return {out, std::move(table)};
}

int normality_cap(int p, int n, std::optional<RegularityKind> kind) {
    check_prime(p);
    if (n < 1) throw Error("n must be positive");
    if (kind == RegularityKind::not_bent) throw Error("normality cap is defined for bent functions only");
    if (kind == RegularityKind::weakly_regular && n % 2 == 0) return n / 2 - 1;
    return n / 2;
}

ExistenceBound nonnormal_existence(int p, int n, int k) {
    check_prime(p);
    if (k < 1 || k > n) throw Error("need 1 <= k <= n");
    ExistenceBound out;
    out.exponent = BigInt(n) * (k + 1) - BigInt(k) * k + k + 1 - big_pow(p, k);
    if (out.exponent < 0) {
        // p^E < 1 <= (p-1)^k
        out.exists = true;
    } else {
        out.exists = big_pow(p, out.exponent.convert_to<std::int64_t>()) < big_pow(p - 1, k);
    }
    return out;
}

std::int64_t cubic_density_exponent(int p, int n, int l) {
    check_prime(p);
    if (l < 0 || l > n) throw Error("need 0 <= l <= n");
    return std::int64_t(n) * (l + 1) - std::int64_t(l) * l - choose(l, 2) - choose(l, 3);
}

BigInt gaussian_binomial(int p, int n, int k) {
    check_prime(p);
    if (k < 0 || k > n) return 0;
    BigInt num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= big_pow(p, n - i) - 1;
        den *= big_pow(p, i + 1) - 1;
    }
    return num / den;
}

BigInt affine_flat_count(int p, int n, int k) {
    if (k < 0 || k > n) return 0;
    return big_pow(p, n - k) * gaussian_binomial(p, n, k);
}

namespace {

struct Entry {
    Fixture info;
    std::function<PAryFunction()> build;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries{
        {{"example-I", "Tr_6(g^3 x^1094) over GF(3^6)"}, [] { return coulter_matthews(6, 7, 3); }},
        {{"example-II", "Tr_4(g^138 x^24 + g^184 x^336) over GF(5^4)"},
         [] { return from_trace_spec({ExtField::conway(5, 4), {{138, 24}, {184, 336}}}); }},
        {{"example-III", "Tr_7(g^6 x^9842) over GF(3^7)"}, [] { return coulter_matthews(7, 9, 6); }},
        {{"example-IV", "Tr_9(g^5 x^88574) over GF(3^9)"}, [] { return coulter_matthews(9, 11, 5); }},
        {{"example-V", "Tr_6(g^7 x^98) over GF(3^6)"},
         [] { return from_trace_spec({ExtField::conway(3, 6), {{7, 98}}}); }},
        {{"example-VI", "Tr_6(g^7 x^14 + g^35 x^70) over GF(3^6)"},
         [] { return from_trace_spec({ExtField::conway(3, 6), {{7, 14}, {35, 70}}}); }},
        {{"example-VII", "Tr_4(x^2) + (y1 + Tr_4(g^73 x^2)) (y2 + Tr_4(g^76 x^2)) on GF(3^4) x F_3^2"},
         [] { return product_construction(ExtField::conway(3, 4), 73, 76); }},
        {{"example-VII-alt", "Tr_4(x^2) + (y1 + Tr_4(g^21 x^2)) (y2 + Tr_4(g^42 x^2)) on GF(3^4) x F_3^2"},
         [] { return product_construction(ExtField::conway(3, 4), 21, 42); }},
        {{"quad-regular-3-4", "Tr_4(g x^2) over GF(3^4)"}, [] { return quadratic(1); }},
        {{"quad-wrnr-3-4", "Tr_4(x^2) over GF(3^4)"}, [] { return quadratic(0); }},
        {{"cmp-normal-3-4", "Tr_4(g^10 x^22 + x^4) over GF(3^4)"},
         [] { return from_trace_spec({ExtField::conway(3, 4), {{10, 22}, {0, 4}}}); }},
    };
    return entries;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> out = [] {
        std::vector<Fixture> v;
        for (const auto& e : registry()) v.push_back(e.info);
        return v;
    }();
    return out;
}

PAryFunction build_fixture(std::string_view name) {
    for (const auto& e : registry())
        if (e.info.name == name) return e.build();
    throw Error("unknown fixture \"" + std::string(name) + "\"");
}

}  // namespace pnorm
