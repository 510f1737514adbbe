#pragma once

#include <kneser/families.hpp>
#include <kneser/solver.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kneser
{
    /// Exact rational with positive denominator, always reduced.
    struct Fraction
    {
        std::int64_t num = 0;
        std::int64_t den = 1;

        static auto make(std::int64_t num, std::int64_t den) -> Fraction;

        auto ceil() const -> std::int64_t;
        auto to_double() const -> double { return static_cast<double>(num) / static_cast<double>(den); }
        auto to_string() const -> std::string;

        friend auto operator== (const Fraction &, const Fraction &) -> bool = default;
        friend auto operator<=> (const Fraction & a, const Fraction & b) -> std::strong_ordering
        {
            return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
        }
    };

    enum class PermutationStrategy
    {
        identity_only,
        exhaustive,
        user_list
    };

    /// Parameters of an alternation-number computation.
    struct AltQuery
    {
        Hypergraph family;
        int r = 2;
        int level = 1;
        PermutationStrategy strategy = PermutationStrategy::identity_only;

        /// Candidate orderings for user_list, each a permutation of the ground set (1-based).
        std::vector<std::vector<int>> permutations;

        /// Exhaustive minimization is refused above this ground-set size.
        int exhaustive_cap = 9;

        unsigned threads = 1;

        /// Budget for the colorability tests behind level >= 2 admissibility.
        SolveBudget budget;
    };

    struct AltLevelResult
    {
        int value = 0;

        /// Lexicographically least maximizer (entries read in the query's order, 0 < w_1 < ...),
        /// absent when no nonzero vector is admissible.
        std::optional<SignVector> witness;
    };

    struct AltMinResult
    {
        int value = 0;
        std::vector<int> permutation;
        std::optional<SignVector> witness;

        /// Set when the value is only an upper bound on the true minimum over all orderings.
        bool heuristic = false;
        std::uint64_t permutations_examined = 0;
    };

    struct DefectResult
    {
        int value = 0;

        /// A largest r-colorable set of ground elements, and a proper coloring of it.
        Subset kept;
        std::vector<int> kept_coloring;
    };

    struct BoundResult
    {
        /// Clamped below at zero.
        Fraction value;
        std::int64_t ceiling = 0;
        bool heuristic = false;

        /// cd_r for the Dol'nikov-Kriz bound, the alternation number for the alternation bound.
        int parameter = 0;
        std::vector<int> permutation;
    };

    /// Length of a longest alternating subsequence of nonzero entries read in the order
    /// order[0], order[1], ... (1-based elements). Empty order means the identity.
    auto alt_of(const SignVector & x, std::span<const int> order = {}) -> int;

    /// The largest alt over nonzero X (arity q.r, supported in the ground set) such that
    /// chi(KG^r(F restricted to X)) <= level - 1, reading entries in the given order.
    auto alt_level(const AltQuery & q, std::span<const int> order = {}) -> AltLevelResult;

    /// alt_level minimized over the orderings selected by the strategy. Throws TooLarge when
    /// an exhaustive minimization exceeds the cap.
    auto alt_min(const AltQuery & q) -> AltMinResult;

    /// Fewest ground elements to delete so the rest admits a proper r-coloring of F.
    auto colorability_defect(const Hypergraph & family, int r, int cap = 20, const SolveBudget & budget = {})
        -> DefectResult;

    /// cd_r(F) / (r - 1).
    auto bound_dolnikov_kriz(const Hypergraph & family, int r) -> BoundResult;

    /// (n - alt_r(F, i)) / (r - 1) + i - 1, with n the ground-set size. Levels >= 2 require a
    /// prime r (NonPrimeLevel) and i <= chi(KG^r(F)) + 1 (HypothesisFail).
    auto bound_alternation(const AltQuery & q) -> BoundResult;

    struct ConcatAlt
    {
        int combined = 0;
        int nested_sum = 0;
        SignVector z;
    };

    /// Merges r nested sign vectors Y_j (each of arity s, supported inside X^j) into one vector Z
    /// of arity r*s and returns alt(Z) alongside the sum of alt(Y_j), all read in `order`.
    auto concat_alt(const SignVector & x, std::span<const SignVector> nested, std::span<const int> order = {})
        -> ConcatAlt;

    auto is_prime(int p) -> bool;
}
