#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pnorm/space.hpp"

namespace pnorm {

/// A prime characteristic 2 <= p <= 13, validated on construction.
class PrimeModulus {
public:
    explicit PrimeModulus(int p);
    int value() const { return p_; }

private:
    int p_;
};

class ExtField;

/// Element of GF(p^n), stored as the packed coefficient vector in the basis
/// {1, g, ..., g^(n-1)} of the field's generator g. The packed code doubles
/// as the element's point index in F_p^n.
class FieldElem {
public:
    FieldElem() = default;

    Point code() const { return code_; }
    bool is_zero() const { return code_ == 0; }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return a.owner_ == b.owner_ && a.code_ == b.code_;
    }

private:
    friend class ExtField;
    FieldElem(const void* owner, Point code) : owner_(owner), code_(code) {}

    const void* owner_ = nullptr;
    Point code_ = 0;
};

/// GF(p^n) = F_p[x] / (modulus) with a primitive modulus, so the residue
/// class of x generates the multiplicative group.
class ExtField {
public:
    /// Canonical field from the built-in Conway polynomial table.
    static ExtField conway(int p, int n);
    /// Field from a caller-supplied monic modulus, coefficients low to high
    /// (length n+1, last entry 1). Must be irreducible and primitive.
    static ExtField with_modulus(int p, std::span<const int> modulus);
    /// Whether the built-in table holds a modulus for (p, n).
    static bool has_conway(int p, int n);

    int p() const { return impl_->space.p(); }
    int degree() const { return impl_->space.n(); }
    /// p^n
    Point order() const { return impl_->space.size(); }
    const CoordSpace& space() const { return impl_->space; }
    /// Monic modulus, coefficients low to high.
    const std::vector<int>& modulus() const { return impl_->modulus; }

    FieldElem zero() const { return {impl_.get(), 0}; }
    FieldElem one() const { return {impl_.get(), 1}; }
    FieldElem generator() const { return {impl_.get(), impl_->exp[1 % (order() - 1)]}; }
    /// Element with the given packed code (point index).
    FieldElem element(Point code) const;
    /// generator^e for any integer e.
    FieldElem gen_pow(std::int64_t e) const;

    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem sub(FieldElem a, FieldElem b) const;
    FieldElem neg(FieldElem a) const;
    FieldElem mul(FieldElem a, FieldElem b) const;
    /// Square-and-multiply semantics; the exponent is reduced mod p^n - 1 for
    /// nonzero a. 0^0 = 1.
    FieldElem pow(FieldElem a, std::int64_t e) const;
    FieldElem inv(FieldElem a) const;
    /// Discrete logarithm to the base of the generator. a must be nonzero.
    std::uint32_t log(FieldElem a) const;

    /// Absolute trace a + a^p + ... + a^(p^(n-1)), an element of F_p.
    int trace(FieldElem a) const { return impl_->trace[check(a)]; }
    /// Multiplicative order of a nonzero element.
    std::uint64_t multiplicative_order(FieldElem a) const;

    std::vector<Digit> to_vector(FieldElem a) const;
    FieldElem from_vector(std::span<const Digit> v) const;

    bool same_field(const ExtField& o) const { return impl_ == o.impl_; }

private:
    struct Impl {
        CoordSpace space;
        std::vector<int> modulus;
        std::vector<Point> exp;  // exp[i] = code of g^i, i < q-1
        std::vector<std::uint32_t> log;
        std::vector<Digit> trace;
    };
    explicit ExtField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    static ExtField build(int p, std::vector<int> modulus);
    Point check(FieldElem a) const;

    std::shared_ptr<const Impl> impl_;
};

/// Polynomial helpers over F_p (coefficients low to high), exposed for the
/// modulus checks.
namespace poly {
/// True iff the monic polynomial m is irreducible over F_p.
bool is_irreducible(int p, std::span<const int> m);
/// True iff x has order p^deg(m) - 1 modulo m (m irreducible and primitive).
bool is_primitive(int p, std::span<const int> m);
}  // namespace poly

}  // namespace pnorm
