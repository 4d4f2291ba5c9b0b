#pragma once

#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "pnorm/cyclotomic.hpp"
#include "pnorm/func.hpp"

namespace pnorm {

/// Walsh value f^(u) = sum_x e^(f(x) - <u,x>) as exact counts:
/// counts[j] = #{x : f(x) - <u,x> = j mod p}.
CyclotomicInt walsh_at(const PAryFunction& f, Point u);

/// All Walsh values in canonical u order, by a p-ary butterfly over the
/// coordinates. Agrees exactly with walsh_at at every u.
std::vector<CyclotomicInt> walsh_spectrum(const PAryFunction& f);

/// |f^(u)|^2 = p^n at every u, decided by exact integer equality.
bool is_bent(const PAryFunction& f);
bool is_bent(const std::vector<CyclotomicInt>& spectrum, int p, int n);

enum class RegularityKind { regular, weakly_regular, non_weakly_regular, not_bent };
enum class Zeta { plus_one, minus_one, plus_i, minus_i };

std::string_view to_string(RegularityKind k);
std::string_view to_string(Zeta z);

struct RegularityVerdict {
    RegularityKind kind = RegularityKind::not_bent;
    /// Common unit when weakly regular (plus_one when regular).
    std::optional<Zeta> zeta;
    /// The dual f*, present iff the function is weakly regular.
    std::optional<PAryFunction> dual;
    /// Pointwise f*(b) and unit at each b, in b order; filled for every bent input.
    std::vector<Digit> pointwise_dual;
    std::vector<Zeta> signs;
};

/// Matches every normalized Walsh value against the unit-times-root-of-unity
/// patterns; odd n uses the Gauss sum in place of sqrt(p).
RegularityVerdict classify_regularity(const PAryFunction& f);

/// The dual of a weakly regular bent function; throws otherwise.
PAryFunction dual(const PAryFunction& f);

/// One line per u: "u c_0 ... c_(p-1) norm_sq". norm_sq is printed as an
/// integer when rational, else as its canonical coefficient vector.
void write_spectrum(std::ostream& out, const PAryFunction& f);

}  // namespace pnorm
