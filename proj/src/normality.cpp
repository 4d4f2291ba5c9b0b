#include "pnorm/normality.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "pnorm/error.hpp"
#include "pnorm/spectrum.hpp"

namespace pnorm {

std::string_view to_string(Mode m) { return m == Mode::constant ? "constant" : "affine"; }

Mode parse_mode(std::string_view s) {
    if (s == "constant") return Mode::constant;
    if (s == "affine") return Mode::affine;
    throw Error("unknown mode \"" + std::string(s) + "\" (expected constant or affine)");
}

std::size_t ConstantFlatRecord::total() const {
    std::size_t t = 0;
    for (const auto& r : reps) t += r.size();
    return t;
}

namespace {

// Points fit in 16 bits since p^n <= 3^10 < 2^16.
using Packed = std::uint16_t;
constexpr int kMaxDim = 16;

// Compact flat identity used while merging search results.
struct FlatKey {
    std::array<Packed, kMaxDim> basis{};
    std::uint8_t dim = 0;
    Packed rep = 0;

    friend bool operator==(const FlatKey&, const FlatKey&) = default;
    friend auto operator<=>(const FlatKey& a, const FlatKey& b) {
        if (auto c = a.dim <=> b.dim; c != 0) return c;
        for (int i = 0; i < a.dim; ++i)
            if (auto c = a.basis[i] <=> b.basis[i]; c != 0) return c;
        return a.rep <=> b.rep;
    }

    static FlatKey of(const AffineFlat& flat) {
        FlatKey k;
        k.dim = std::uint8_t(flat.space.dim());
        for (int i = 0; i < k.dim; ++i) k.basis[i] = Packed(flat.space.basis()[i]);
        k.rep = Packed(flat.rep);
        return k;
    }

    std::vector<Point> basis_vector() const { return {basis.begin(), basis.begin() + dim}; }

    AffineFlat to_flat(const CoordSpace& sp) const {
        return {rep, Subspace::from_canonical(sp, basis_vector())};
    }
};

bool same_subspace(const FlatKey& a, const FlatKey& b) {
    return a.dim == b.dim && std::equal(a.basis.begin(), a.basis.begin() + a.dim, b.basis.begin());
}

void sort_unique(std::vector<FlatKey>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Per-worker marks: cls[x] = c + 1 when x is a constant-coset rep with value c.
struct Scratch {
    explicit Scratch(Point size) : cls(size, 0) {}
    std::vector<std::uint8_t> cls;
};

void collect_record(const PAryFunction& f, const Subspace& u, ConstantFlatRecord& rec) {
    const auto& sp = f.space();
    const auto elems = u.elements();
    // Elements of the standard complement come out in increasing order.
    const auto reps = u.standard_complement().elements();
    rec.reps.assign(std::size_t(sp.p()), {});
    for (Point r : reps) {
        const Digit v = f(r);
        bool constant = true;
        for (std::size_t i = 1; i < elems.size(); ++i) {
            if (f(sp.add(r, elems[i])) != v) {
                constant = false;
                break;
            }
        }
        if (constant) rec.reps[v].push_back(r);
    }
}

int mod_inverse(int a, int p) {
    for (int b = 1; b < p; ++b)
        if (a * b % p == 1) return b;
    return 0;
}

void mark(const ConstantFlatRecord& rec, Scratch& s) {
    for (std::size_t c = 0; c < rec.reps.size(); ++c)
        for (Point r : rec.reps[c]) s.cls[r] = std::uint8_t(c + 1);
}

void unmark(const ConstantFlatRecord& rec, Scratch& s) {
    for (const auto& rs : rec.reps)
        for (Point r : rs) s.cls[r] = 0;
}

// (a1, a2) names the 1-flat {a1 + t (a2 - a1)}; each flat is reported once,
// from the pair of its two smallest points.
template <class Emit>
void combine_constant_impl(const CoordSpace& sp, const ConstantFlatRecord& rec, Scratch& s, Emit&& emit) {
    const int p = sp.p();
    mark(rec, s);
    for (std::size_t c = 0; c < rec.reps.size(); ++c) {
        const auto& R = rec.reps[c];
        if (R.size() < std::size_t(p)) continue;
        for (std::size_t i = 0; i < R.size(); ++i) {
            for (std::size_t j = i + 1; j < R.size(); ++j) {
                const Point a1 = R[i], a2 = R[j];
                const Point d = sp.sub(a2, a1);
                bool ok = true;
                // For p = 3 the single step t = 2 lands on -(a1 + a2).
                for (int t = 2; t < p && ok; ++t) {
                    const Point x = sp.axpy(a1, t, d);
                    ok = x > a2 && s.cls[x] == c + 1;
                }
                if (ok) emit(a1, d, Digit(c));
            }
        }
    }
    unmark(rec, s);
}

template <class Emit>
void combine_affine_impl(const CoordSpace& sp, const ConstantFlatRecord& rec, Scratch& s, Emit&& emit) {
    const int p = sp.p();
    std::vector<Point> all;
    all.reserve(rec.total());
    for (const auto& rs : rec.reps) all.insert(all.end(), rs.begin(), rs.end());
    if (all.size() < std::size_t(p)) return;
    std::sort(all.begin(), all.end());
    mark(rec, s);
    for (std::size_t i = 0; i < all.size(); ++i) {
        const Point a1 = all[i];
        const int c1 = s.cls[a1] - 1;
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const Point a2 = all[j];
            const int step = (s.cls[a2] - 1 - c1 + p) % p;
            const Point d = sp.sub(a2, a1);
            bool ok = true;
            for (int t = 2; t < p && ok; ++t) {
                const Point x = sp.axpy(a1, t, d);
                ok = x > a2 && s.cls[x] == (c1 + t * step) % p + 1;
            }
            if (ok) emit(a1, d, Digit(c1));
        }
    }
    unmark(rec, s);
}

// Canonical key of a1 + <U, d> without a full re-reduction: reduce d by U,
// normalize its lowest coordinate, clear that column from the other rows.
FlatKey make_key(const Subspace& u, Point a1, Point d) {
    const auto& sp = u.space();
    const int p = sp.p();
    Point v = u.reduce(d);
    int j = 0;
    while (sp.digit(v, j) == 0) ++j;
    v = sp.scale(v, mod_inverse(sp.digit(v, j), p));
    FlatKey key;
    const auto& basis = u.basis();
    const auto& pivots = u.pivots();
    std::size_t out = 0;
    bool placed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!placed && pivots[i] > j) {
            key.basis[out++] = Packed(v);
            placed = true;
        }
        const int c = sp.digit(basis[i], j);
        key.basis[out++] = Packed(c ? sp.axpy(basis[i], p - c, v) : basis[i]);
    }
    if (!placed) key.basis[out++] = Packed(v);
    key.dim = std::uint8_t(out);
    // Reduce a1 by the new basis: pivot coordinates are u's pivots and j.
    Point r = a1;
    for (std::size_t i = 0; i < out; ++i) {
        const Point b = key.basis[i];
        int pc = 0;
        while (sp.digit(b, pc) == 0) ++pc;
        const int c = sp.digit(r, pc);
        if (c) r = sp.axpy(r, p - c, b);
    }
    key.rep = Packed(r);
    return key;
}

struct LevelOutput {
    std::vector<FlatKey> constant_flats;
    std::vector<FlatKey> affine_flats;
    LevelStats stats;
};

// Subspaces to process at one level. A scanned frontier lists bare subspaces
// whose constant cosets are found by a pass over all points. A derived
// frontier lists the complete, sorted set of constant flats of the previous
// level; each run of equal directions already is the record of that subspace.
struct Frontier {
    std::vector<FlatKey> keys;
    bool derived = false;
};

unsigned resolve_workers(unsigned w) {
    if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
    return w;
}

std::vector<std::size_t> group_starts(const Frontier& fr) {
    std::vector<std::size_t> starts;
    for (std::size_t i = 0; i < fr.keys.size(); ++i)
        if (!fr.derived || i == 0 || !same_subspace(fr.keys[i - 1], fr.keys[i])) starts.push_back(i);
    starts.push_back(fr.keys.size());
    return starts;
}

// Builds the record of every frontier subspace and combines it. Workers take
// chunks from a shared counter; fragments are merged and sorted afterwards, so
// the output does not depend on the worker count.
LevelOutput expand_level(const PAryFunction& f, const Frontier& frontier, int dim, bool want_constant, bool want_affine,
                         unsigned workers) {
    const auto& sp = f.space();
    const int p = sp.p();
    const auto starts = group_starts(frontier);
    const std::size_t groups = starts.size() - 1;
    workers = std::min<unsigned>(resolve_workers(workers), unsigned(std::max<std::size_t>(1, groups)));
    constexpr std::size_t kChunk = 64;
    static constexpr std::size_t kCompactAt = 1u << 22;

    std::atomic<std::size_t> next{0};
    std::vector<LevelOutput> parts(workers);

    auto work = [&](LevelOutput& out) {
        Scratch scratch(sp.size());
        ConstantFlatRecord rec{Subspace(sp), {}};
        // Compaction thresholds grow with the deduplicated size so the total
        // sorting work stays O(N log N).
        std::size_t limit_c = kCompactAt, limit_a = kCompactAt;
        auto compact = [](std::vector<FlatKey>& v, std::size_t& limit) {
            if (v.size() <= limit) return;
            sort_unique(v);
            limit = std::max(kCompactAt, 2 * v.size());
        };
        for (;;) {
            const std::size_t begin = next.fetch_add(kChunk);
            if (begin >= groups) break;
            const std::size_t end = std::min(groups, begin + kChunk);
            for (std::size_t g = begin; g < end; ++g) {
                rec.space = Subspace::from_canonical(sp, frontier.keys[starts[g]].basis_vector());
                if (frontier.derived) {
                    rec.reps.assign(std::size_t(p), {});
                    for (std::size_t i = starts[g]; i < starts[g + 1]; ++i) {
                        const Point r = frontier.keys[i].rep;
                        rec.reps[f(r)].push_back(r);
                    }
                } else {
                    collect_record(f, rec.space, rec);
                }
                ++out.stats.subspaces_visited;
                bool any_class = false;
                for (const auto& r : rec.reps) any_class = any_class || r.size() >= std::size_t(p);
                const bool try_constant = want_constant && any_class;
                const bool try_affine = want_affine && rec.total() >= std::size_t(p);
                if (!try_constant && !try_affine) {
                    ++out.stats.subspaces_pruned;
                    continue;
                }
                if (try_constant)
                    combine_constant_impl(sp, rec, scratch, [&](Point a1, Point d, Digit) {
                        out.constant_flats.push_back(make_key(rec.space, a1, d));
                        ++out.stats.flats_combined;
                    });
                if (try_affine)
                    combine_affine_impl(sp, rec, scratch, [&](Point a1, Point d, Digit) {
                        out.affine_flats.push_back(make_key(rec.space, a1, d));
                        if (!want_constant) ++out.stats.flats_combined;
                    });
                compact(out.constant_flats, limit_c);
                compact(out.affine_flats, limit_a);
            }
        }
    };

    if (workers == 1) {
        work(parts[0]);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, std::ref(parts[w]));
        for (auto& t : threads) t.join();
    }

    LevelOutput merged;
    merged.stats.dim = dim;
    if (workers == 1) {
        merged = std::move(parts[0]);
        merged.stats.dim = dim;
    } else {
        for (auto& part : parts) {
            merged.stats.subspaces_visited += part.stats.subspaces_visited;
            merged.stats.subspaces_pruned += part.stats.subspaces_pruned;
            merged.stats.flats_combined += part.stats.flats_combined;
            merged.constant_flats.insert(merged.constant_flats.end(), part.constant_flats.begin(),
                                         part.constant_flats.end());
            merged.affine_flats.insert(merged.affine_flats.end(), part.affine_flats.begin(),
                                       part.affine_flats.end());
            part = {};
        }
    }
    sort_unique(merged.constant_flats);
    sort_unique(merged.affine_flats);
    merged.stats.distinct_flats = want_affine ? merged.affine_flats.size() : merged.constant_flats.size();
    return merged;
}

// Frontier for the next level from this level's constant flats.
Frontier next_frontier(std::vector<FlatKey>&& flats, bool rescan) {
    if (!rescan) return {std::move(flats), true};
    std::vector<FlatKey> out;
    for (const auto& k : flats) {
        if (!out.empty() && same_subspace(out.back(), k)) continue;
        FlatKey d = k;
        d.rep = 0;
        out.push_back(d);
    }
    return {std::move(out), false};
}

Frontier full_level(const CoordSpace& sp, int s) {
    std::vector<FlatKey> out;
    SubspaceEnumerator e(sp, s);
    while (auto u = e.next()) out.push_back(FlatKey::of(AffineFlat{0, *u}));
    std::sort(out.begin(), out.end());
    return {std::move(out), false};
}

std::vector<AffineFlat> to_flats(const CoordSpace& sp, const std::vector<FlatKey>& keys) {
    std::vector<AffineFlat> out;
    out.reserve(keys.size());
    for (const auto& k : keys) out.push_back(k.to_flat(sp));
    return out;
}

NormalityReport make_report(const PAryFunction& f, int k, Mode mode, const std::vector<FlatKey>& keys,
                            std::size_t cap) {
    const auto& sp = f.space();
    NormalityReport r;
    r.p = f.p();
    r.n = f.n();
    r.k = k;
    r.mode = mode;
    r.normal = !keys.empty();
    r.witness_count = keys.size();
    // Every emitted flat is re-verified, not only the listed ones.
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto flat = keys[i].to_flat(sp);
        if (!check_witness(f, flat, mode))
            throw ConsistencyError("emitted flat " + flat.serialize() + " fails direct verification");
        if (i < cap) r.witnesses.push_back(describe_witness(f, flat));
    }
    return r;
}

void check_k(const PAryFunction& f, int k) {
    if (k < 1 || k > f.n())
        throw Error("k=" + std::to_string(k) + " outside 1.." + std::to_string(f.n()));
}

}  // namespace

ConstantFlatRecord constant_cosets(const PAryFunction& f, const Subspace& u) {
    if (!(u.space() == f.space())) throw Error("subspace and function live in different spaces");
    ConstantFlatRecord rec{u, {}};
    collect_record(f, u, rec);
    return rec;
}

std::vector<ConstantFlat> combine_constant(const PAryFunction& f, const ConstantFlatRecord& record) {
    const auto& sp = f.space();
    Scratch s(sp.size());
    std::vector<std::pair<FlatKey, Digit>> keys;
    combine_constant_impl(sp, record, s, [&](Point a1, Point d, Digit c) {
        keys.emplace_back(make_key(record.space, a1, d), c);
    });
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<ConstantFlat> out;
    for (const auto& [k, c] : keys) out.push_back({k.to_flat(sp), c});
    return out;
}

std::vector<AffineFlat> combine_affine(const PAryFunction& f, const ConstantFlatRecord& record) {
    const auto& sp = f.space();
    Scratch s(sp.size());
    std::vector<FlatKey> keys;
    combine_affine_impl(sp, record, s, [&](Point a1, Point d, Digit) { keys.push_back(make_key(record.space, a1, d)); });
    sort_unique(keys);
    return to_flats(sp, keys);
}

Witness describe_witness(const PAryFunction& f, const AffineFlat& flat) {
    const auto& sp = f.space();
    Witness w{flat, f(flat.rep), {}};
    for (Point b : flat.space.basis()) w.slopes.push_back(Digit((f(sp.add(flat.rep, b)) + sp.p() - w.value) % sp.p()));
    return w;
}

bool check_witness(const PAryFunction& f, const AffineFlat& flat, Mode mode) {
    const auto& sp = f.space();
    const int p = sp.p();
    const Witness w = describe_witness(f, flat);
    if (mode == Mode::constant)
        for (Digit s : w.slopes)
            if (s != 0) return false;
    // Walk the flat point by point, carrying the value the affine form predicts.
    std::vector<std::pair<Point, int>> pts{{flat.rep, w.value}};
    const auto& basis = flat.space.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const std::size_t m = pts.size();
        for (int t = 1; t < p; ++t)
            for (std::size_t j = 0; j < m; ++j)
                pts.emplace_back(sp.axpy(pts[j].first, t, basis[i]), (pts[j].second + t * w.slopes[i]) % p);
    }
    return std::all_of(pts.begin(), pts.end(), [&](const auto& pv) { return f(pv.first) == pv.second; });
}

namespace {

std::vector<FlatKey> find_keys(const PAryFunction& f, int k, Mode mode, const NormalityOptions& options,
                               std::vector<LevelStats>* stats) {
    check_k(f, k);
    const int s0 = options.start_dim;
    if (s0 < 1 || s0 > k) throw Error("start dimension must satisfy 1 <= s0 <= k");
    const auto& sp = f.space();

    // Base level: every subspace of the base dimension. When k == s0 the final
    // combine runs directly on all (k-1)-dimensional subspaces.
    const int base = (k == s0) ? s0 - 1 : s0;
    Frontier frontier = full_level(sp, base);
    for (int s = base; s < k - 1; ++s) {
        auto out = expand_level(f, frontier, s, true, false, options.workers);
        if (stats) stats->push_back(out.stats);
        frontier = next_frontier(std::move(out.constant_flats), options.rescan_cosets);
    }
    auto out = expand_level(f, frontier, k - 1, mode == Mode::constant, mode == Mode::affine, options.workers);
    if (stats) stats->push_back(out.stats);
    return std::move(mode == Mode::constant ? out.constant_flats : out.affine_flats);
}

}  // namespace

std::vector<AffineFlat> find_normal_flats(const PAryFunction& f, int k, Mode mode, const NormalityOptions& options,
                                          std::vector<LevelStats>* stats) {
    return to_flats(f.space(), find_keys(f, k, mode, options, stats));
}

NormalityReport test_normality(const PAryFunction& f, int k, Mode mode, const NormalityOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    check_k(f, k);
    if (options.start_dim < 1 || options.start_dim > k) throw Error("start dimension must satisfy 1 <= s0 <= k");

    NormalityReport r;
    if (options.bent_shortcut && k > f.n() / 2 && is_bent(f)) {
        // A bent function is at most floor(n/2)-normal, even weakly.
        r.p = f.p();
        r.n = f.n();
        r.k = k;
        r.mode = mode;
        r.normal = false;
        r.shortcut_used = true;
    } else {
        std::vector<LevelStats> levels;
        const auto keys = find_keys(f, k, mode, options, &levels);
        r = make_report(f, k, mode, keys, options.witness_cap);
        r.levels = std::move(levels);
    }
    r.start_dim = options.start_dim;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

MaxNormality max_normality(const PAryFunction& f, Mode mode, const NormalityOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const auto& sp = f.space();
    MaxNormality result;
    std::vector<FlatKey> best;
    auto finish = [&](std::vector<FlatKey> const& keys, int k) {
        result.k_max = k;
        best = keys;
    };

    // k = 1 from the points themselves.
    auto first = expand_level(f, full_level(sp, 0), 0, mode == Mode::constant, mode == Mode::affine, options.workers);
    result.levels.push_back(first.stats);
    const auto& ones = mode == Mode::constant ? first.constant_flats : first.affine_flats;
    if (!ones.empty()) {
        finish(ones, 1);
        Frontier frontier = full_level(sp, 1);
        for (int s = 1; s < f.n(); ++s) {
            auto out = expand_level(f, frontier, s, true, mode == Mode::affine, options.workers);
            result.levels.push_back(out.stats);
            const auto& found = mode == Mode::constant ? out.constant_flats : out.affine_flats;
            if (found.empty()) break;
            finish(found, s + 1);
            frontier = next_frontier(std::move(out.constant_flats), options.rescan_cosets);
            if (frontier.keys.empty()) break;
        }
    }
    if (result.k_max > 0) {
        result.report = make_report(f, result.k_max, mode, best, options.witness_cap);
        result.report->start_dim = 1;
        result.report->levels = result.levels;
        result.report->elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return result;
}

std::vector<AffineFlat> brute_force_flats(const PAryFunction& f, int k, Mode mode) {
    check_k(f, k);
    std::vector<AffineFlat> out;
    AffineFlatEnumerator e(f.space(), k);
    while (auto flat = e.next())
        if (check_witness(f, *flat, mode)) out.push_back(std::move(*flat));
    std::sort(out.begin(), out.end());
    return out;
}

NormalityReport brute_force_oracle(const PAryFunction& f, int k, Mode mode, std::size_t witness_cap) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<FlatKey> keys;
    for (const auto& flat : brute_force_flats(f, k, mode)) keys.push_back(FlatKey::of(flat));
    std::sort(keys.begin(), keys.end());
    auto r = make_report(f, k, mode, keys, witness_cap);
    r.start_dim = 0;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string report_to_json(const NormalityReport& r, bool include_timing) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["k"] = r.k;
    j["mode"] = std::string(to_string(r.mode));
    j["verdict"] = r.normal ? "normal" : "not_normal";
    j["start_dim"] = r.start_dim;
    j["witness_count"] = r.witness_count;
    ordered_json ws = ordered_json::array();
    for (const auto& w : r.witnesses) {
        ordered_json o;
        o["flat"] = w.flat.serialize();
        o["rep"] = w.flat.rep;
        o["basis"] = w.flat.space.basis();
        o["value"] = int(w.value);
        std::vector<int> slopes(w.slopes.begin(), w.slopes.end());
        o["slopes"] = slopes;
        ws.push_back(std::move(o));
    }
    j["witnesses"] = std::move(ws);
    ordered_json stats;
    std::vector<std::uint64_t> counts;
    ordered_json levels = ordered_json::array();
    for (const auto& l : r.levels) {
        counts.push_back(l.subspaces_visited);
        ordered_json o;
        o["dim"] = l.dim;
        o["subspaces_visited"] = l.subspaces_visited;
        o["subspaces_pruned"] = l.subspaces_pruned;
        o["flats_combined"] = l.flats_combined;
        o["distinct_flats"] = l.distinct_flats;
        levels.push_back(std::move(o));
    }
    stats["level_counts"] = counts;
    stats["levels"] = std::move(levels);
    stats["shortcut_used"] = r.shortcut_used;
    if (include_timing) stats["elapsed_ms"] = r.elapsed_ms;
    j["stats"] = std::move(stats);
    return j.dump(2) + "\n";
}

std::string report_to_text(const NormalityReport& r) {
    std::ostringstream os;
    os << "F_" << r.p << "^" << r.n << ", k=" << r.k << ", mode=" << to_string(r.mode) << ": "
       << (r.normal ? "normal" : "not normal") << " (" << r.witness_count << " flat"
       << (r.witness_count == 1 ? "" : "s") << ")\n";
    for (const auto& w : r.witnesses) os << "  " << w.flat.serialize() << " value=" << int(w.value) << '\n';
    if (r.witness_count > r.witnesses.size())
        os << "  ... " << (r.witness_count - r.witnesses.size()) << " more\n";
    for (const auto& l : r.levels)
        os << "  level dim=" << l.dim << ": visited=" << l.subspaces_visited << " pruned=" << l.subspaces_pruned
           << " combined=" << l.flats_combined << " distinct=" << l.distinct_flats << '\n';
    if (r.shortcut_used) os << "  decided by the bent bound without search\n";
    os << "  elapsed " << std::llround(r.elapsed_ms) << " ms\n";
    return os.str();
}

}  // namespace pnorm
