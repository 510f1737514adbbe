#pragma once

#include <kneser/families.hpp>
#include <kneser/solver.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kneser
{
    /// Sign vectors over {-1, 0, +1} are stored as integer vectors; they are indexed by the
    /// base-3 number whose digit for coordinate i (weight 3^(i-1)) is 0, 1 for +1, 2 for -1.
    struct FanLabeling
    {
        int n = 0;
        int m = 0;

        /// Labels up to this absolute value come from alternation, larger ones from colors.
        int threshold = 0;

        /// labels[index]; labels[0] belongs to the zero vector and is unused.
        std::vector<int> labels;

        auto label(const std::vector<int> & x) const -> int;
        auto points() const -> std::uint64_t { return labels.size() - 1; }
    };

    auto fan_index(const std::vector<int> & x) -> std::uint64_t;
    auto fan_vector(std::uint64_t index, int n) -> std::vector<int>;

    struct FanOptions
    {
        /// With an odd alternation threshold, work over n + 1 coordinates (the extra one in no
        /// member) instead of raising the threshold by one on n coordinates.
        bool extend_ambient = false;
    };

    /// Labeling of {-1,0,+1}^n minus zero from a proper coloring of KG^2(F): +-alt(X) (sign of
    /// the first nonzero entry) while alt(X) stays within the threshold, otherwise
    /// +-(threshold + c) with c the largest color of a member inside X^+ or X^-, signed by the
    /// side holding it. The threshold is alt_{2,I}(F), made even. Throws NotProper.
    auto build_fan_labeling(const Hypergraph & family, const Coloring & coloring, const FanOptions & options = {})
        -> FanLabeling;

    struct FanCheck
    {
        bool ok = true;
        std::uint64_t points_checked = 0;
        std::uint64_t pairs_checked = 0;
        std::string failure;
        std::optional<std::vector<int>> x;
        std::optional<std::vector<int>> y;
    };

    /// Antipodality, label range, and no X <= Y with opposite labels. Throws TooLarge above
    /// `cap` coordinates.
    auto check_fan_hypotheses(const FanLabeling & labeling, int cap = 10) -> FanCheck;

    struct FanChain
    {
        /// X_1 <= ... <= X_n, supports growing by one coordinate per step.
        std::vector<std::vector<int>> vectors;
        std::vector<int> labels;
    };

    /// A chain whose labels, sorted by absolute value, read +c_1, -c_2, +c_3, ... Chains along
    /// which the labels already alternate with growing absolute value are preferred. Throws
    /// TheoremViolation when none exists (impossible for a labeling passing the check).
    auto find_fan_chain(const FanLabeling & labeling, int cap = 10) -> FanChain;

    /// A colorful K_{ceil(r/2), floor(r/2)}: left and right members pairwise disjoint across
    /// the sides, all colors distinct, and sides alternating when colors are read in increasing
    /// order, starting on the left.
    struct ColorfulWitness
    {
        std::vector<int> left;
        std::vector<int> right;
        std::vector<int> left_colors;
        std::vector<int> right_colors;
    };

    /// Direct search over vertices in color order. Throws TheoremViolation when no witness exists.
    auto find_colorful_bipartite(const Hypergraph & family, const Coloring & coloring, int r) -> ColorfulWitness;

    /// Whether `witness` has the shape and properties above for the given r.
    auto is_colorful_witness(const Hypergraph & family, const Coloring & coloring, int r,
            const ColorfulWitness & witness) -> bool;

    /// Reads the witness off the high-label part of a chain: a label threshold + c at a +
    /// position yields a left member of color c inside X^+, and symmetrically on the right.
    auto colorful_from_chain(const Hypergraph & family, const Coloring & coloring, const FanLabeling & labeling,
            const FanChain & chain) -> ColorfulWitness;

    /// Vectors over Z_p u {0}: entry 0 is zero, entry j in 1..p stands for omega^(j-1). Indexed
    /// in base p+1 with coordinate i at weight (p+1)^(i-1). lambda1 is the exponent of omega.
    struct ZpLabeling
    {
        int n = 0;
        int p = 2;
        int m = 0;
        int alpha = 0;
        std::vector<int> lambda1;
        std::vector<int> lambda2;

        auto index(const std::vector<int> & x) const -> std::uint64_t;
        auto vector(std::uint64_t index) const -> std::vector<int>;
        auto points() const -> std::uint64_t { return lambda1.size() - 1; }
    };

    /// Built from a proper coloring h of KG^p(F) with C colors at level i: alpha = alt_{p,I}(F,i),
    /// m = alpha + C - i + 1. Below the threshold lambda = (first nonzero, alt); above it lambda2
    /// = hbar(X) - i + 1 + alpha and lambda1 names the part holding the biggest member (size,
    /// then lexicographic) of color hbar(X). Throws NotProper, TooLarge (p > 3 or n > 8).
    auto build_zp_labeling(const Hypergraph & family, const Coloring & coloring, int p, int level) -> ZpLabeling;

    struct ZpCheck
    {
        bool ok = true;
        bool conclusion = false;
        std::uint64_t points_checked = 0;
        std::string failure;

        /// The violating chain (a single point for equivariance or range failures).
        std::vector<std::vector<int>> chain;
    };

    /// Equivariance, range, equal low lambda2 along X <= Y forcing equal lambda1, and no chain of
    /// p vectors with a common high lambda2 and pairwise distinct lambda1. Also evaluates
    /// alpha + (m - alpha)(p - 1) >= n.
    auto check_zp_hypotheses(const ZpLabeling & labeling) -> ZpCheck;

    struct TightCycle
    {
        bool found = false;
        std::vector<int> cycle;
    };

    /// A cycle along which colors step by +1 mod t (t = coloring.palette). For t = 2 any cycle
    /// qualifies. Requires a graph (all edges of size 2).
    auto find_tight_cycle(const ColoringProblem & graph, const Coloring & coloring) -> TightCycle;

    struct TightCycleCensus
    {
        std::uint64_t colorings = 0;
        std::uint64_t with_cycle = 0;
    };

    /// Every proper t-coloring with vertex 0 pinned to color 1 (no loss under color rotation),
    /// counting those with a tight cycle.
    auto tight_cycle_census(const ColoringProblem & graph, int t) -> TightCycleCensus;
}
