#include "pnorm/subspace.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "pnorm/error.hpp"

namespace pnorm {

namespace {

int mod_inv(int a, int p) {
    int r = 1;
    for (int e = p - 2; e > 0; e >>= 1) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
    }
    return r;
}

}  // namespace

Subspace::Subspace(const CoordSpace& space) : space_(space) {}

Subspace Subspace::span(const CoordSpace& space, std::span<const Point> vectors) {
    const int p = space.p(), n = space.n();
    std::vector<std::vector<int>> rows;
    rows.reserve(vectors.size());
    for (Point v : vectors) {
        if (v >= space.size()) throw Error("vector out of range for F_p^n");
        auto d = space.digits(v);
        rows.emplace_back(d.begin(), d.end());
    }

    std::vector<int> pivots;
    std::size_t rank = 0;
    for (int col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t r = rank;
        while (r < rows.size() && rows[r][col] == 0) ++r;
        if (r == rows.size()) continue;
        std::swap(rows[r], rows[rank]);
        const int s = mod_inv(rows[rank][col], p);
        for (auto& v : rows[rank]) v = v * s % p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            const int c = rows[i][col];
            for (int j = 0; j < n; ++j) rows[i][j] = ((rows[i][j] - c * rows[rank][j]) % p + p) % p;
        }
        pivots.push_back(col);
        ++rank;
    }

    std::vector<Point> basis;
    basis.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        Point x = 0;
        for (int j = 0; j < n; ++j) x += Point(rows[i][j]) * space.pow(j);
        basis.push_back(x);
    }
    return {space, std::move(basis), std::move(pivots)};
}

Subspace Subspace::whole(const CoordSpace& space) {
    std::vector<Point> basis;
    std::vector<int> pivots;
    for (int i = 0; i < space.n(); ++i) {
        basis.push_back(space.unit(i));
        pivots.push_back(i);
    }
    return {space, std::move(basis), std::move(pivots)};
}

Subspace Subspace::from_canonical(const CoordSpace& space, std::vector<Point> basis) {
    std::vector<int> pivots;
    pivots.reserve(basis.size());
    for (Point b : basis) {
        int j = 0;
        while (j < space.n() && space.digit(b, j) == 0) ++j;
        if (j == space.n() || space.digit(b, j) != 1) throw Error("basis vector is not in echelon form");
        if (!pivots.empty() && j <= pivots.back()) throw Error("basis pivots are not increasing");
        pivots.push_back(j);
    }
    return {space, std::move(basis), std::move(pivots)};
}

Point Subspace::reduce(Point x) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const int c = space_.digit(x, pivots_[i]);
        if (c) x = space_.axpy(x, space_.p() - c, basis_[i]);
    }
    return x;
}

bool Subspace::contains(const Subspace& other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(), [&](Point b) { return contains(b); });
}

Subspace Subspace::extend(Point d) const {
    if (contains(d)) throw Error("extension vector " + std::to_string(d) + " already lies in the subspace");
    std::vector<Point> vs = basis_;
    vs.push_back(d);
    return span(space_, vs);
}

Subspace Subspace::standard_complement() const {
    std::vector<Point> basis;
    std::vector<int> pivots;
    std::size_t k = 0;
    for (int j = 0; j < space_.n(); ++j) {
        if (k < pivots_.size() && pivots_[k] == j) {
            ++k;
            continue;
        }
        basis.push_back(space_.unit(j));
        pivots.push_back(j);
    }
    return {space_, std::move(basis), std::move(pivots)};
}

Subspace Subspace::orthogonal() const {
    const int p = space_.p();
    std::vector<Point> vs;
    std::size_t k = 0;
    for (int j = 0; j < space_.n(); ++j) {
        if (k < pivots_.size() && pivots_[k] == j) {
            ++k;
            continue;
        }
        // e_j - sum_i row_i[j] e_(pivot_i)
        Point v = space_.unit(j);
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const int c = space_.digit(basis_[i], j);
            if (c) v = space_.axpy(v, p - c, space_.unit(pivots_[i]));
        }
        vs.push_back(v);
    }
    return span(space_, vs);
}

std::vector<Point> Subspace::elements() const {
    std::vector<Point> out{0};
    for (Point b : basis_) {
        const std::size_t m = out.size();
        for (int t = 1; t < space_.p(); ++t)
            for (std::size_t i = 0; i < m; ++i) out.push_back(space_.axpy(out[i], t, b));
    }
    return out;
}

AffineFlat AffineFlat::coset_of(Point x, const Subspace& u) {
    if (x >= u.space().size()) throw Error("point out of range");
    return {u.reduce(x), u};
}

std::vector<Point> AffineFlat::points() const {
    auto pts = space.elements();
    for (auto& x : pts) x = space.space().add(rep, x);
    return pts;
}

std::string AffineFlat::serialize() const {
    std::ostringstream os;
    os << "rep=" << rep << " basis=[";
    for (std::size_t i = 0; i < space.basis().size(); ++i) os << (i ? "," : "") << space.basis()[i];
    os << ']';
    return os.str();
}

AffineFlat AffineFlat::parse(const CoordSpace& sp, const std::string& text) {
    auto fail = [&] { return Error("malformed flat \"" + text + "\""); };
    const auto rp = text.find("rep=");
    const auto bp = text.find("basis=[");
    const auto close = text.find(']', bp == std::string::npos ? 0 : bp);
    if (rp == std::string::npos || bp == std::string::npos || close == std::string::npos) throw fail();
    Point rep = 0;
    try {
        rep = Point(std::stoul(text.substr(rp + 4)));
    } catch (const std::exception&) {
        throw fail();
    }
    std::vector<Point> vs;
    std::string inner = text.substr(bp + 7, close - bp - 7);
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(' ') == std::string::npos) continue;
        try {
            vs.push_back(Point(std::stoul(item)));
        } catch (const std::exception&) {
            throw fail();
        }
    }
    auto u = Subspace::span(sp, vs);
    if (u.dim() != int(vs.size())) throw Error("flat basis is linearly dependent: \"" + text + "\"");
    return AffineFlat::coset_of(rep, u);
}

SubspaceEnumerator::SubspaceEnumerator(const CoordSpace& space, int s) : space_(space), s_(s) {
    if (s < 0 || s > space.n()) throw Error("subspace dimension out of range");
    pivots_.resize(std::size_t(s));
    for (int i = 0; i < s; ++i) pivots_[std::size_t(i)] = i;
    reset_free();
}

void SubspaceEnumerator::reset_free() {
    free_.clear();
    std::vector<bool> is_pivot(std::size_t(space_.n()), false);
    for (int c : pivots_) is_pivot[std::size_t(c)] = true;
    for (int r = 0; r < s_; ++r)
        for (int c = pivots_[std::size_t(r)] + 1; c < space_.n(); ++c)
            if (!is_pivot[std::size_t(c)]) free_.emplace_back(r, c);
    values_.assign(free_.size(), 0);
}

bool SubspaceEnumerator::advance_pivots() {
    const int n = space_.n();
    int i = s_ - 1;
    while (i >= 0 && pivots_[std::size_t(i)] == n - s_ + i) --i;
    if (i < 0) return false;
    ++pivots_[std::size_t(i)];
    for (int j = i + 1; j < s_; ++j) pivots_[std::size_t(j)] = pivots_[std::size_t(j - 1)] + 1;
    reset_free();
    return true;
}

std::optional<Subspace> SubspaceEnumerator::next() {
    if (done_) return std::nullopt;
    std::vector<Point> basis(static_cast<std::size_t>(s_));
    for (int r = 0; r < s_; ++r) basis[std::size_t(r)] = space_.unit(pivots_[std::size_t(r)]);
    for (std::size_t k = 0; k < free_.size(); ++k)
        basis[std::size_t(free_[k].first)] += Point(values_[k]) * space_.pow(free_[k].second);
    Subspace out(space_, std::move(basis), pivots_);

    // odometer, last slot fastest
    std::size_t k = values_.size();
    while (k > 0) {
        --k;
        if (++values_[k] < space_.p()) return out;
        values_[k] = 0;
    }
    if (!advance_pivots()) done_ = true;
    return out;
}

std::vector<Subspace> enumerate_subspaces(const CoordSpace& space, int s) {
    std::vector<Subspace> out;
    SubspaceEnumerator e(space, s);
    while (auto u = e.next()) out.push_back(std::move(*u));
    return out;
}

AffineFlatEnumerator::AffineFlatEnumerator(const CoordSpace& space, int k) : subspaces_(space, k) {}

std::optional<AffineFlat> AffineFlatEnumerator::next() {
    while (!current_ || index_ == reps_.size()) {
        current_ = subspaces_.next();
        if (!current_) return std::nullopt;
        reps_ = current_->standard_complement().elements();
        std::sort(reps_.begin(), reps_.end());
        index_ = 0;
    }
    return AffineFlat{reps_[index_++], *current_};
}

std::vector<Point> one_flat_completion(const CoordSpace& space, Point a1, Point a2) {
    if (a1 == a2) throw Error("1-flat needs two distinct points");
    if (a1 >= space.size() || a2 >= space.size()) throw Error("point out of range");
    const Point d = space.sub(a2, a1);
    std::vector<Point> out;
    out.reserve(std::size_t(space.p()));
    for (int t = 0; t < space.p(); ++t) out.push_back(space.axpy(a1, t, d));
    return out;
}

bool is_affine_set(const CoordSpace& space, std::span<const Point> points) {
    if (points.empty()) return false;
    std::unordered_set<Point> diffs;
    for (Point x : points) diffs.insert(space.sub(x, points[0]));
    if (diffs.size() != points.size()) return false;
    for (Point a : diffs) {
        for (int t = 2; t < space.p(); ++t)
            if (!diffs.count(space.scale(a, t))) return false;
        for (Point b : diffs)
            if (!diffs.count(space.add(a, b))) return false;
    }
    return true;
}

}  // namespace pnorm
