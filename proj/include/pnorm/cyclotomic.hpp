#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pnorm {

/// Exact element sum_j c_j * e^j of Z[e], e = exp(2 pi i / p).
///
/// Raw coefficient vectors are not unique because 1 + e + ... + e^(p-1) = 0;
/// comparisons go through canonical(), which forces c_(p-1) = 0.
class CyclotomicInt {
public:
    using Coeff = std::int64_t;

    explicit CyclotomicInt(int p);
    CyclotomicInt(int p, std::vector<Coeff> counts);
    /// The rational integer v.
    static CyclotomicInt integer(int p, Coeff v);
    /// e^j
    static CyclotomicInt root(int p, int j);
    /// Quadratic Gauss sum sum_t e^(t^2); squares to +p or -p.
    static CyclotomicInt gauss_sum(int p);

    int p() const { return int(c_.size()); }
    const std::vector<Coeff>& counts() const { return c_; }
    Coeff operator[](int j) const { return c_[j]; }

    CyclotomicInt canonical() const;
    /// Value N when this is the rational integer N.
    std::optional<Coeff> as_integer() const;
    bool is_zero() const { return canonical().c_ == std::vector<Coeff>(c_.size(), 0); }

    /// Complex conjugate (e^j -> e^-j).
    CyclotomicInt conj() const;
    /// Multiplication by e^k (a cyclic shift of coefficients).
    CyclotomicInt shifted(int k) const;
    /// z * conj(z), via the autocorrelation of the coefficients.
    CyclotomicInt norm_sq() const;

    CyclotomicInt& operator+=(const CyclotomicInt& o);
    CyclotomicInt& operator-=(const CyclotomicInt& o);
    CyclotomicInt& operator*=(Coeff s);
    friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
    friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
    friend CyclotomicInt operator-(CyclotomicInt a) { return a *= -1; }
    friend CyclotomicInt operator*(CyclotomicInt a, Coeff s) { return a *= s; }
    friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b);

    /// Equality in Z[e] (not of raw coefficients).
    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b);

    std::string to_string() const;

private:
    void check_same(const CyclotomicInt& o) const;
    std::vector<Coeff> c_;
};

}  // namespace pnorm
