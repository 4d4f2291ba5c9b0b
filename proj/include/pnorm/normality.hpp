#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pnorm/func.hpp"
#include "pnorm/subspace.hpp"

namespace pnorm {

/// constant: f constant on the flat (k-normality);
/// affine: f affine on the flat (weak k-normality).
enum class Mode { constant, affine };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);

/// Cosets a + U (a in the standard complement) on which f is constant,
/// grouped by the constant.
struct ConstantFlatRecord {
    Subspace space;
    /// reps[c]: sorted canonical representatives with f = c on rep + U.
    std::vector<std::vector<Point>> reps;

    std::size_t total() const;
};

struct ConstantFlat {
    AffineFlat flat;
    Digit value;
};

/// Records every coset of U on which f is constant. U may be the zero
/// subspace, in which case every point is its own constant coset.
ConstantFlatRecord constant_cosets(const PAryFunction& f, const Subspace& u);

/// Unions of p same-constant cosets whose representatives form a 1-flat:
/// the (dim U + 1)-flats a1 + <U, a2 - a1> on which f is constant.
/// Sorted, without duplicates.
std::vector<ConstantFlat> combine_constant(const PAryFunction& f, const ConstantFlatRecord& record);

/// Unions of p constant cosets a1 + t a0 + U whose constants run c + t d
/// along the 1-flat, i.e. (dim U + 1)-flats on which f is affine.
/// d = 0 gives the constant flats. Sorted, without duplicates.
std::vector<AffineFlat> combine_affine(const PAryFunction& f, const ConstantFlatRecord& record);

/// f restricted to a witness flat: f(rep + sum t_i b_i) = value + sum t_i slopes[i].
struct Witness {
    AffineFlat flat;
    Digit value = 0;
    std::vector<Digit> slopes;
};

/// Value and slopes of f on the flat (meaningful when f is affine there).
Witness describe_witness(const PAryFunction& f, const AffineFlat& flat);

/// Direct evaluation at all p^dim points of the flat.
bool check_witness(const PAryFunction& f, const AffineFlat& flat, Mode mode);

struct LevelStats {
    /// Dimension of the subspaces U processed at this level.
    int dim = 0;
    std::uint64_t subspaces_visited = 0;
    /// Subspaces skipped because no combine could succeed.
    std::uint64_t subspaces_pruned = 0;
    /// Flats of dimension dim + 1 emitted before deduplication.
    std::uint64_t flats_combined = 0;
    /// Distinct flats of dimension dim + 1.
    std::uint64_t distinct_flats = 0;
};

struct NormalityOptions {
    /// Dimension of the fully enumerated base level.
    int start_dim = 1;
    unsigned workers = 1;
    std::size_t witness_cap = 64;
    /// Answer not_normal without searching when f is bent and k > floor(n/2).
    bool bent_shortcut = false;
    /// Rebuild the constant cosets of every frontier subspace by a pass over
    /// all points instead of reading them off the previous level's flats.
    bool rescan_cosets = false;
};

struct NormalityReport {
    int p = 0;
    int n = 0;
    int k = 0;
    Mode mode = Mode::constant;
    bool normal = false;
    int start_dim = 1;
    /// Number of distinct k-flats found (all of them, independent of the cap).
    std::uint64_t witness_count = 0;
    /// The first witness_cap flats in (subspace, rep) order.
    std::vector<Witness> witnesses;
    std::vector<LevelStats> levels;
    bool shortcut_used = false;
    double elapsed_ms = 0;
};

/// Every k-flat on which f is constant (resp. affine), found bottom-up from a
/// fully enumerated base level. Sorted by (subspace, rep).
std::vector<AffineFlat> find_normal_flats(const PAryFunction& f, int k, Mode mode, const NormalityOptions& options = {},
                                          std::vector<LevelStats>* stats = nullptr);

NormalityReport test_normality(const PAryFunction& f, int k, Mode mode, const NormalityOptions& options = {});

struct MaxNormality {
    /// Largest k with a witness; 0 when f is not even 1-normal.
    int k_max = 0;
    /// Report at k_max (absent when k_max = 0).
    std::optional<NormalityReport> report;
    std::vector<LevelStats> levels;
};

/// Ascends k, reusing each level's frontier for the next.
MaxNormality max_normality(const PAryFunction& f, Mode mode, const NormalityOptions& options = {});

/// All qualifying k-flats by enumerating every k-flat and evaluating f on it.
std::vector<AffineFlat> brute_force_flats(const PAryFunction& f, int k, Mode mode);
NormalityReport brute_force_oracle(const PAryFunction& f, int k, Mode mode, std::size_t witness_cap = 64);

/// JSON document with p, n, k, mode, verdict, witnesses and stats. Wall time is
/// included only when requested, so default reports are reproducible byte for byte.
std::string report_to_json(const NormalityReport& report, bool include_timing = false);
std::string report_to_text(const NormalityReport& report);

}  // namespace pnorm
