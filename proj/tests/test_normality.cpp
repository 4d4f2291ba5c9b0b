#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <set>

#include "pnorm/constructions.hpp"
#include "pnorm/error.hpp"
#include "pnorm/normality.hpp"
#include "pnorm/spectrum.hpp"
#include "support.hpp"

using namespace pnorm;
namespace ts = testing_support;

namespace {

// Flats of F_p^n built from point sets only: spans by closure, then translates.
struct PlainFlat {
    std::vector<Point> points;  // sorted
    Point rep;
    std::vector<Point> gens;
};

std::vector<PlainFlat> plain_flats(int p, int n, int k) {
    const CoordSpace sp(p, n);
    std::map<std::vector<Point>, std::vector<Point>> subspaces;  // point set -> generators
    std::vector<std::vector<Point>> frontier{{}};
    for (int d = 0; d < k; ++d) {
        std::vector<std::vector<Point>> next;
        std::set<std::vector<Point>> seen;
        for (const auto& gens : frontier) {
            const auto span = ts::span_set(gens, p, n);
            for (Point v = 1; v < sp.size(); ++v) {
                if (std::binary_search(span.begin(), span.end(), v)) continue;
                auto g = gens;
                g.push_back(v);
                if (seen.insert(ts::span_set(g, p, n)).second) next.push_back(g);
            }
        }
        frontier = std::move(next);
    }
    for (const auto& g : frontier) subspaces.emplace(ts::span_set(g, p, n), g);
    std::map<std::vector<Point>, PlainFlat> flats;
    for (const auto& [span, gens] : subspaces)
        for (Point a = 0; a < sp.size(); ++a) {
            std::vector<Point> pts;
            for (Point x : span) pts.push_back(ts::vadd(a, x, p, n));
            std::sort(pts.begin(), pts.end());
            if (!flats.count(pts)) flats.emplace(pts, PlainFlat{pts, a, gens});
        }
    std::vector<PlainFlat> out;
    for (auto& [pts, fl] : flats) out.push_back(std::move(fl));
    return out;
}

const std::vector<PlainFlat>& cached_flats(int p, int n, int k) {
    static std::map<std::tuple<int, int, int>, std::vector<PlainFlat>> cache;
    auto key = std::make_tuple(p, n, k);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, plain_flats(p, n, k)).first;
    return it->second;
}

std::set<std::vector<Point>> oracle_sets(const PAryFunction& f, int k, Mode mode) {
    std::set<std::vector<Point>> out;
    for (const auto& fl : cached_flats(f.p(), f.n(), k)) {
        const bool ok = mode == Mode::constant ? ts::constant_on(f, fl.points) : ts::affine_on(f, fl.rep, fl.gens);
        if (ok) out.insert(fl.points);
    }
    return out;
}

std::set<std::vector<Point>> as_sets(const std::vector<AffineFlat>& flats) {
    std::set<std::vector<Point>> out;
    for (const auto& a : flats) {
        auto pts = a.points();
        std::sort(pts.begin(), pts.end());
        out.insert(pts);
    }
    return out;
}

PAryFunction from_values(const CoordSpace& sp, const std::function<int(const std::vector<int>&)>& g) {
    std::vector<Digit> t(sp.size());
    for (Point x = 0; x < sp.size(); ++x) t[x] = Digit(((g(ts::digits_of(x, sp.p(), sp.n())) % sp.p()) + sp.p()) % sp.p());
    return {sp, std::move(t)};
}

// x -> f(M x + b) + <w, x> + c for a random invertible M.
PAryFunction random_affine_equivalent(const PAryFunction& f, std::mt19937_64& rng) {
    const int p = f.p(), n = f.n();
    const CoordSpace sp(p, n);
    std::uniform_int_distribution<Point> pick(0, sp.size() - 1);
    std::vector<Point> cols;
    while (Subspace::span(sp, cols).dim() < n || int(cols.size()) < n) {
        cols.clear();
        for (int i = 0; i < n; ++i) cols.push_back(pick(rng));
    }
    const Point b = pick(rng), w = pick(rng);
    const int c = int(pick(rng) % Point(p));
    std::vector<Digit> t(sp.size());
    for (Point x = 0; x < sp.size(); ++x) {
        const auto d = ts::digits_of(x, p, n);
        Point y = b;
        for (int i = 0; i < n; ++i) y = ts::vadd(y, cols[std::size_t(i)], p, n, d[std::size_t(i)]);
        t[x] = Digit((f(y) + ts::vdot(w, x, p, n) + c) % p);
    }
    return {sp, std::move(t)};
}

}  // namespace

TEST(Normality, ConstantCosetsExamples) {
    const CoordSpace sp(3, 2);
    const auto e2 = Subspace::span(sp, std::vector<Point>{3});
    const auto zero = from_values(sp, [](auto&) { return 0; });
    for (const auto& u : enumerate_subspaces(sp, 1)) {
        const auto r = constant_cosets(zero, u);
        EXPECT_EQ(r.reps[0].size(), 3u);
        EXPECT_TRUE(r.reps[1].empty() && r.reps[2].empty());
    }
    const auto x1 = from_values(sp, [](auto& d) { return d[0]; });
    const auto r = constant_cosets(x1, e2);
    for (int c = 0; c < 3; ++c) EXPECT_EQ(r.reps[std::size_t(c)], std::vector<Point>{Point(c)});

    const auto balanced = from_values(sp, [](auto& d) { return d[0] + d[1]; });
    EXPECT_EQ(constant_cosets(balanced, Subspace::whole(sp)).total(), 0u);
}

TEST(Normality, CombineExamples) {
    const CoordSpace sp(3, 2);
    const auto e2 = Subspace::span(sp, std::vector<Point>{3});
    for (int c = 0; c < 3; ++c) {
        const auto f = from_values(sp, [c](auto&) { return c; });
        const auto out = combine_constant(f, constant_cosets(f, e2));
        ASSERT_EQ(out.size(), 1u);
        EXPECT_EQ(out[0].flat.space, Subspace::whole(sp));
        EXPECT_EQ(out[0].flat.rep, 0u);
        EXPECT_EQ(out[0].value, c);
    }
    const auto x1 = from_values(sp, [](auto& d) { return d[0]; });
    const auto rec = constant_cosets(x1, e2);
    EXPECT_TRUE(combine_constant(x1, rec).empty());
    const auto aff = combine_affine(x1, rec);
    ASSERT_EQ(aff.size(), 1u);
    EXPECT_EQ(aff[0].space, Subspace::whole(sp));

    // constants 0, 1, 0 along the only 1-flat of reps
    const auto bump = from_values(sp, [](auto& d) { return d[0] == 1; });
    const auto rb = constant_cosets(bump, e2);
    EXPECT_EQ(rb.total(), 3u);
    EXPECT_TRUE(combine_affine(bump, rb).empty());
    EXPECT_TRUE(combine_constant(bump, rb).empty());
}

TEST(Normality, SmallExamples) {
    const CoordSpace sp(3, 2);
    const auto x1x2 = from_values(sp, [](auto& d) { return d[0] * d[1]; });
    EXPECT_TRUE(test_normality(x1x2, 1, Mode::constant).normal);
    const auto zero = from_values(sp, [](auto&) { return 0; });
    EXPECT_EQ(max_normality(zero, Mode::constant).k_max, 2);
}

TEST(Normality, OracleEquivalenceF33) {
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 200; ++i) {
        const auto f = ts::random_function(3, 3, rng);
        for (int k : {1, 2})
            for (Mode mode : {Mode::constant, Mode::affine}) {
                const auto found = find_normal_flats(f, k, mode);
                const auto want = oracle_sets(f, k, mode);
                ASSERT_EQ(as_sets(found), want) << "i=" << i << " k=" << k << " " << to_string(mode);
                ASSERT_EQ(as_sets(brute_force_flats(f, k, mode)), want);
                const auto r = test_normality(f, k, mode);
                const auto o = brute_force_oracle(f, k, mode);
                ASSERT_EQ(r.normal, !want.empty());
                ASSERT_EQ(o.normal, r.normal);
                ASSERT_EQ(r.witness_count, want.size());
            }
    }
}

TEST(Normality, OracleEquivalenceF34) {
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 50; ++i) {
        // Sparse value patterns make higher-dimensional witnesses likely.
        auto f = ts::random_function(3, 4, rng);
        if (i % 2) f = from_values(f.space(), [&](auto& d) { return (d[0] * d[1] + d[2] * (f(Point(d[3])) % 2)); });
        for (int k : {1, 2})
            for (Mode mode : {Mode::constant, Mode::affine}) {
                const auto want = oracle_sets(f, k, mode);
                ASSERT_EQ(as_sets(find_normal_flats(f, k, mode)), want) << "i=" << i << " k=" << k;
                ASSERT_EQ(as_sets(brute_force_flats(f, k, mode)), want);
            }
    }
}

TEST(Normality, OracleEquivalenceF52) {
    std::mt19937_64 rng(55);
    for (int i = 0; i < 30; ++i) {
        auto f = ts::random_function(5, 2, rng);
        if (i % 3 == 0) f = from_values(f.space(), [&](auto& d) { return d[0] * (f(Point(d[1])) % 2) + d[1]; });
        for (Mode mode : {Mode::constant, Mode::affine}) {
            const auto want = oracle_sets(f, 1, mode);
            ASSERT_EQ(as_sets(find_normal_flats(f, 1, mode)), want);
        }
    }
}

TEST(Normality, WitnessesPassCheck) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto f = ts::random_function(3, 4, rng);
        for (Mode mode : {Mode::constant, Mode::affine}) {
            const auto r = test_normality(f, 2, mode);
            for (const auto& w : r.witnesses) {
                EXPECT_TRUE(check_witness(f, w.flat, mode));
                const auto d = describe_witness(f, w.flat);
                EXPECT_EQ(d.value, w.value);
                if (mode == Mode::constant)
                    for (auto s : w.slopes) EXPECT_EQ(s, 0);
            }
        }
    }
}

TEST(Normality, CheckWitnessMatchesDirectEvaluation) {
    std::mt19937_64 rng(17);
    const CoordSpace sp(3, 4);
    std::uniform_int_distribution<Point> pick(0, sp.size() - 1);
    int rejected = 0;
    for (int i = 0; i < 300; ++i) {
        const auto f = ts::random_function(3, 4, rng);
        const auto u = ts::random_subspace(sp, 2, rng);
        const auto a = AffineFlat::coset_of(pick(rng), u);
        const auto pts = a.points();
        EXPECT_EQ(check_witness(f, a, Mode::constant), ts::constant_on(f, pts));
        EXPECT_EQ(check_witness(f, a, Mode::affine), ts::affine_on(f, a.rep, u.basis()));
        rejected += !check_witness(f, a, Mode::affine);
    }
    EXPECT_GT(rejected, 250);
    const auto zero = from_values(sp, [](auto&) { return 2; });
    EXPECT_TRUE(check_witness(zero, AffineFlat::coset_of(0, Subspace::whole(sp)), Mode::constant));
}

TEST(Normality, Monotonicity) {
    std::mt19937_64 rng(8);
    std::vector<PAryFunction> fs{build_fixture("quad-regular-3-4"), build_fixture("quad-wrnr-3-4"),
                                 build_fixture("cmp-normal-3-4")};
    for (int i = 0; i < 10; ++i)
        fs.push_back(from_values(CoordSpace(3, 4), [&](auto& d) { return d[0] * d[1] + int(rng() % 2) * d[2]; }));
    for (const auto& f : fs)
        for (Mode mode : {Mode::constant, Mode::affine}) {
            const auto m = max_normality(f, mode);
            for (int k = 1; k <= f.n(); ++k) EXPECT_EQ(test_normality(f, k, mode).normal, k <= m.k_max) << k;
            if (m.report) EXPECT_EQ(m.report->k, m.k_max);
        }
}

TEST(Normality, AffineInvariance) {
    std::mt19937_64 rng(99);
    std::vector<PAryFunction> fs{build_fixture("quad-regular-3-4"), build_fixture("quad-wrnr-3-4"),
                                 build_fixture("cmp-normal-3-4")};
    for (int i = 0; i < 6; ++i) fs.push_back(ts::random_function(3, 3, rng));
    for (const auto& f : fs)
        for (int rep = 0; rep < 3; ++rep) {
            const auto g = random_affine_equivalent(f, rng);
            for (int k = 1; k <= 2; ++k) {
                EXPECT_EQ(test_normality(g, k, Mode::affine).normal, test_normality(f, k, Mode::affine).normal);
                EXPECT_EQ(test_normality(g, k, Mode::affine).witness_count,
                          test_normality(f, k, Mode::affine).witness_count);
            }
        }
}

TEST(Normality, WeakNormalityIsNormalityOfSomeLinearShift) {
    std::vector<PAryFunction> fs;
    const auto field = ExtField::conway(3, 3);
    for (auto e : {2, 4, 5, 10})
        for (auto a : {0, 1, 7}) fs.push_back(from_trace_spec({field, {{a, e}}}));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) fs.push_back(ts::random_function(3, 3, rng));
    for (const auto& f : fs)
        for (int k : {1, 2}) {
            bool any = false;
            for (Point v = 0; v < f.size(); ++v) any = any || test_normality(add_linear(f, v, 0), k, Mode::constant).normal;
            EXPECT_EQ(test_normality(f, k, Mode::affine).normal, any);
        }
}

TEST(Normality, DeterministicAcrossWorkersAndPaths) {
    for (const char* name : {"example-I", "example-V", "quad-regular-3-4"}) {
        const auto f = build_fixture(name);
        for (Mode mode : {Mode::constant, Mode::affine}) {
            const auto base = report_to_json(test_normality(f, 2, mode));
            for (unsigned w : {2u, 3u, 0u}) {
                NormalityOptions o;
                o.workers = w;
                EXPECT_EQ(report_to_json(test_normality(f, 2, mode, o)), base);
            }
            NormalityOptions r;
            r.rescan_cosets = true;
            EXPECT_EQ(report_to_json(test_normality(f, 2, mode, r)), base);
            EXPECT_EQ(report_to_json(test_normality(f, 2, mode)), base);
        }
    }
    const auto f = build_fixture("example-I");
    NormalityOptions r;
    r.rescan_cosets = true;
    EXPECT_EQ(report_to_json(test_normality(f, 3, Mode::affine, r)), report_to_json(test_normality(f, 3, Mode::affine)));
}

TEST(Normality, StartDimensionDoesNotChangeFlats) {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 20; ++i) {
        const auto f = from_values(CoordSpace(3, 4), [&](auto& d) { return d[0] * d[1] + int(rng() % 3 == 0) * d[3]; });
        for (Mode mode : {Mode::constant, Mode::affine})
            for (int k = 1; k <= 3; ++k) {
                const auto base = find_normal_flats(f, k, mode);
                for (int s = 2; s <= k; ++s) {
                    NormalityOptions o;
                    o.start_dim = s;
                    EXPECT_EQ(find_normal_flats(f, k, mode, o), base) << k << " " << s;
                }
            }
    }
}

TEST(Normality, BentShortcut) {
    const auto f = build_fixture("quad-regular-3-4");
    NormalityOptions o;
    o.bent_shortcut = true;
    const auto a = test_normality(f, 3, Mode::affine, o);
    EXPECT_FALSE(a.normal);
    EXPECT_TRUE(a.shortcut_used);
    const auto b = test_normality(f, 3, Mode::affine);
    EXPECT_FALSE(b.normal);
    EXPECT_FALSE(b.shortcut_used);
    const auto c = test_normality(f, 2, Mode::constant, o);
    EXPECT_TRUE(c.normal);
    EXPECT_FALSE(c.shortcut_used);
    EXPECT_NE(report_to_json(a).find("\"shortcut_used\": true"), std::string::npos);
}

TEST(Normality, BentFixturesRespectSquareRootBound) {
    for (const char* name : {"example-I", "example-II", "example-V", "example-VI", "quad-regular-3-4", "quad-wrnr-3-4",
                             "cmp-normal-3-4"}) {
        const auto f = build_fixture(name);
        const auto m = max_normality(f, Mode::affine);
        EXPECT_LE(m.k_max, f.n() / 2) << name;
    }
    EXPECT_EQ(max_normality(build_fixture("quad-wrnr-3-4"), Mode::affine).k_max, 1);
}

TEST(Normality, ReportJson) {
    const auto f = build_fixture("example-I");
    NormalityOptions o;
    o.witness_cap = 3;
    const auto r = test_normality(f, 2, Mode::constant, o);
    EXPECT_EQ(r.witness_count, 280u);
    EXPECT_EQ(r.witnesses.size(), 3u);
    const auto j = nlohmann::json::parse(report_to_json(r));
    EXPECT_EQ(j["p"], 3);
    EXPECT_EQ(j["n"], 6);
    EXPECT_EQ(j["k"], 2);
    EXPECT_EQ(j["mode"], "constant");
    EXPECT_EQ(j["verdict"], "normal");
    EXPECT_EQ(j["witness_count"], 280);
    EXPECT_EQ(j["witnesses"].size(), 3u);
    EXPECT_TRUE(j["witnesses"][0].contains("flat"));
    EXPECT_TRUE(j["stats"].contains("level_counts"));
    EXPECT_FALSE(j["stats"].contains("elapsed_ms"));
    EXPECT_TRUE(nlohmann::json::parse(report_to_json(r, true))["stats"].contains("elapsed_ms"));
    const auto flat = AffineFlat::parse(f.space(), j["witnesses"][0]["flat"].get<std::string>());
    EXPECT_TRUE(check_witness(f, flat, Mode::constant));

    const auto text = report_to_text(r);
    EXPECT_NE(text.find("normal"), std::string::npos);
}

TEST(Normality, ModeNames) {
    EXPECT_EQ(parse_mode("affine"), Mode::affine);
    EXPECT_EQ(to_string(Mode::constant), "constant");
    EXPECT_THROW(parse_mode("weak"), Error);
}
