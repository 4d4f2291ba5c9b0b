#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pnorm/space.hpp"

namespace pnorm {

/// Linear subspace of F_p^n held by its reduced row-echelon basis.
///
/// The pivot of a row is its lowest nonzero coordinate. Rows are sorted by
/// pivot, each pivot entry is 1, and pivot columns are zero in all other rows,
/// so two subspaces are equal iff their bases are identical.
class Subspace {
public:
    /// The zero subspace.
    explicit Subspace(const CoordSpace& space);

    /// Canonical basis of the span of arbitrary (possibly dependent) vectors.
    static Subspace span(const CoordSpace& space, std::span<const Point> vectors);
    static Subspace whole(const CoordSpace& space);
    /// Wraps a basis that is already in reduced row-echelon form (as produced
    /// by basis()); pivots are recomputed, the form itself is not re-derived.
    static Subspace from_canonical(const CoordSpace& space, std::vector<Point> basis);

    const CoordSpace& space() const { return space_; }
    int dim() const { return int(basis_.size()); }
    const std::vector<Point>& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    /// Eliminates the pivot coordinates of x using the basis. The result is the
    /// projection of x onto the standard complement along this subspace, and is
    /// the canonical representative of the coset x + U.
    Point reduce(Point x) const;
    bool contains(Point x) const { return reduce(x) == 0; }
    bool contains(const Subspace& other) const;

    /// Span of U and d; d must lie outside U.
    Subspace extend(Point d) const;
    /// Span of the unit vectors at the non-pivot coordinates.
    Subspace standard_complement() const;
    /// Orthogonal complement under the coordinate dot product.
    Subspace orthogonal() const;
    /// All p^dim elements: sum_i t_i b_i with (t_0, t_1, ...) counted little-endian.
    std::vector<Point> elements() const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.space_ == b.space_ && a.basis_ == b.basis_;
    }
    friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
        if (auto c = a.basis_.size() <=> b.basis_.size(); c != 0) return c;
        return a.basis_ <=> b.basis_;
    }

private:
    friend class SubspaceEnumerator;
    Subspace(const CoordSpace& space, std::vector<Point> basis, std::vector<int> pivots)
        : space_(space), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    CoordSpace space_;
    std::vector<Point> basis_;
    std::vector<int> pivots_;
};

/// Coset rep + U with rep the canonical representative (pivot coordinates zero).
struct AffineFlat {
    Point rep;
    Subspace space;

    /// The coset of U containing x.
    static AffineFlat coset_of(Point x, const Subspace& u);

    int dim() const { return space.dim(); }
    bool contains(Point x) const { return space.reduce(x) == rep; }
    std::vector<Point> points() const;

    /// "rep=<int> basis=[<int>,...]"
    std::string serialize() const;
    static AffineFlat parse(const CoordSpace& space, const std::string& text);

    friend bool operator==(const AffineFlat& a, const AffineFlat& b) { return a.rep == b.rep && a.space == b.space; }
    friend std::strong_ordering operator<=>(const AffineFlat& a, const AffineFlat& b) {
        if (auto c = a.space <=> b.space; c != 0) return c;
        return a.rep <=> b.rep;
    }
};

/// Lazily yields every s-dimensional subspace of F_p^n once: pivot sets in
/// lexicographic order, then free entries in odometer order.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(const CoordSpace& space, int s);
    std::optional<Subspace> next();

private:
    bool advance_pivots();
    void reset_free();

    CoordSpace space_;
    int s_;
    std::vector<int> pivots_;
    std::vector<std::pair<int, int>> free_;  // (row, column) slots
    std::vector<int> values_;
    bool done_ = false;
};

/// All s-dimensional subspaces, in enumeration order.
std::vector<Subspace> enumerate_subspaces(const CoordSpace& space, int s);

/// Lazily yields every k-flat once: subspaces in enumeration order, then
/// representatives of the standard complement in increasing order.
class AffineFlatEnumerator {
public:
    AffineFlatEnumerator(const CoordSpace& space, int k);
    std::optional<AffineFlat> next();

private:
    SubspaceEnumerator subspaces_;
    std::optional<Subspace> current_;
    std::vector<Point> reps_;
    std::size_t index_ = 0;
};

/// The 1-flat {a1 + t (a2 - a1) : t = 0 .. p-1}, in order of t.
std::vector<Point> one_flat_completion(const CoordSpace& space, Point a1, Point a2);

/// True iff the point set is an affine subspace (closed under affine
/// combinations), checked directly from the set.
bool is_affine_set(const CoordSpace& space, std::span<const Point> points);

}  // namespace pnorm
