#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace pnorm {

using Digit = std::uint8_t;

/// A point of F_p^n, encoded as the little-endian base-p integer of its coordinates.
using Point = std::uint32_t;

/// Largest supported p^n.
inline constexpr Point kMaxSpaceSize = 59049;  // 3^10

/// Returns true iff v is a prime.
bool is_prime(int v);

/// Coordinate space F_p^n with digit-wise arithmetic on encoded points.
///
/// Instances are cheap handles onto shared immutable tables, one per (p, n).
class CoordSpace {
public:
    CoordSpace(int p, int n);

    int p() const { return tables_->p; }
    int n() const { return tables_->n; }
    /// p^n
    Point size() const { return tables_->size; }
    Point pow(int i) const { return tables_->pow[i]; }

    Digit digit(Point x, int i) const { return tables_->digits[std::size_t(x) * tables_->n + i]; }
    std::span<const Digit> digits(Point x) const {
        return {tables_->digits.data() + std::size_t(x) * tables_->n, std::size_t(tables_->n)};
    }
    Point encode(std::span<const Digit> coords) const;
    Point unit(int i) const { return tables_->pow[i]; }

    Point add(Point x, Point y) const;
    Point sub(Point x, Point y) const;
    Point neg(Point x) const;
    Point scale(Point x, int c) const;
    /// x + c*y
    Point axpy(Point x, int c, Point y) const;
    /// Coordinate dot product, reduced mod p.
    int dot(Point x, Point y) const;

    bool operator==(const CoordSpace& o) const { return p() == o.p() && n() == o.n(); }

private:
    struct Tables {
        int p = 0;
        int n = 0;
        Point size = 0;
        std::vector<Point> pow;
        std::vector<Digit> digits;
    };
    std::shared_ptr<const Tables> tables_;

    static std::shared_ptr<const Tables> tables_for(int p, int n);
};

}  // namespace pnorm
