#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pnorm/func.hpp"
#include "pnorm/spectrum.hpp"

namespace pnorm {

using BigInt = boost::multiprecision::cpp_int;

/// Tr_n(g^coeff_exp x^((3^k+1)/2)) over the Conway field GF(3^n).
PAryFunction coulter_matthews(int n, int k, std::int64_t coeff_exp);

/// from_trace_spec, optionally throwing when the result is not bent.
PAryFunction trace_bent(const TraceSpec& spec, bool assert_bent = true);

/// F(x, y1, y2) = Tr(x^2) + (y1 + Tr(a x^2)) (y2 + Tr(b x^2)) with a = g^alpha_exp,
/// b = g^beta_exp. x occupies the first n coordinates, y1 and y2 the next two.
/// Requires 1, a, b linearly independent over F_p.
PAryFunction product_construction(const ExtField& field, std::int64_t alpha_exp, std::int64_t beta_exp);

/// g(x, y, z) = f(x) + y z on F_p^(n+2); y is coordinate n, z coordinate n+1.
PAryFunction direct_sum_extend(const PAryFunction& f);

/// f(x, y) = <x, pi(y)> + g(y) on F_p^(2m); x is the first m coordinates.
/// pi must be a permutation of F_p^m, g a table of length p^m.
PAryFunction maiorana_mcfarland(int p, int m, const std::vector<Point>& pi, const std::vector<Digit>& g);

/// Largest k for which a bent function of the given kind can be k-normal.
/// nullopt means the kind is unknown. Throws for not_bent.
int normality_cap(int p, int n, std::optional<RegularityKind> kind);

struct ExistenceBound {
    /// E = n(k+1) - k^2 + k + 1 - p^k
    BigInt exponent;
    /// p^E < (p-1)^k, i.e. some bent-free fraction of functions is not k-normal.
    bool exists = false;
};

/// Counting bound: when p^E / (p-1)^k < 1, functions that are not k-normal exist.
ExistenceBound nonnormal_existence(int p, int n, int k);

/// Base-p exponent n(l+1) - l^2 - C(l,2) - C(l,3) of the density bound for
/// weakly l-normal functions of degree at most 3.
std::int64_t cubic_density_exponent(int p, int n, int l);

/// Number of k-dimensional subspaces of F_p^n.
BigInt gaussian_binomial(int p, int n, int k);
/// Number of k-flats of F_p^n: p^(n-k) times the Gaussian binomial.
BigInt affine_flat_count(int p, int n, int k);

struct Fixture {
    std::string name;
    std::string formula;
};

/// Registered fixtures in a fixed order.
const std::vector<Fixture>& fixtures();
/// Builds a registered fixture; throws for unknown names.
PAryFunction build_fixture(std::string_view name);

}  // namespace pnorm
