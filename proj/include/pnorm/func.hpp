#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pnorm/gf.hpp"
#include "pnorm/space.hpp"

namespace pnorm {

/// A function f: F_p^n -> F_p held as its truth table in canonical point order.
class PAryFunction {
public:
    PAryFunction(int p, int n, std::vector<Digit> table);
    PAryFunction(const CoordSpace& space, std::vector<Digit> table);

    static PAryFunction zero(int p, int n);
    static PAryFunction constant(int p, int n, int c);
    /// x -> <v, x> + c
    static PAryFunction affine(int p, int n, Point v, int c);

    int p() const { return space_.p(); }
    int n() const { return space_.n(); }
    Point size() const { return space_.size(); }
    const CoordSpace& space() const { return space_; }
    std::span<const Digit> table() const { return table_; }

    Digit operator()(Point x) const { return table_[x]; }

    friend bool operator==(const PAryFunction& a, const PAryFunction& b) {
        return a.space_ == b.space_ && a.table_ == b.table_;
    }

private:
    CoordSpace space_;
    std::vector<Digit> table_;
};

/// One term Tr(g^coeff_exp * x^mono_exp) of a trace expression.
struct TraceTerm {
    std::int64_t coeff_exp = 0;
    std::int64_t mono_exp = 0;
};

/// Sum of trace monomials over a fixed extension field.
struct TraceSpec {
    ExtField field;
    std::vector<TraceTerm> terms;
};

/// table[x] = sum of Tr(g^a * x^e) over the terms, with 0^0 = 1.
PAryFunction from_trace_spec(const TraceSpec& spec);

/// Truth-table text format: "p n" on the first line, then p^n symbols.
/// Symbols are 0-9 followed by a, b, c for p = 11, 13.
void write_table(std::ostream& out, const PAryFunction& f);
PAryFunction read_table(std::istream& in);
void to_table_file(const PAryFunction& f, const std::filesystem::path& path);
PAryFunction from_table_file(const std::filesystem::path& path);

/// x -> f(x) - f(x + b)
PAryFunction derivative(const PAryFunction& f, Point b);

/// x -> f(x) + <v, x> + c
PAryFunction add_linear(const PAryFunction& f, Point v, int c);

/// x -> f(x + a)
PAryFunction translate(const PAryFunction& f, Point a);

/// ANF coefficients indexed like points: the digit vector of an index is the
/// exponent vector of the monomial (each exponent at most p-1).
std::vector<Digit> anf(const PAryFunction& f);
/// Inverse of anf(): evaluates a coefficient table on every point.
PAryFunction from_anf(int p, int n, std::span<const Digit> coefficients);
/// Largest total degree with a nonzero ANF coefficient; 0 for constants.
int algebraic_degree(const PAryFunction& f);

}  // namespace pnorm
