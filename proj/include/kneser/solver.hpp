#pragma once

#include <kneser/families.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace kneser
{
    struct SolveBudget
    {
        std::size_t max_vertices = 48;
        std::uint64_t max_nodes = 50'000'000;
        std::chrono::duration<double> time_limit{300.0};
    };

    /// A total map from vertex indices to colors 1..palette.
    struct Coloring
    {
        std::vector<int> colors;
        int palette = 0;

        /// Number of distinct colors actually used.
        auto used_colors() const -> int;
    };

    /// A hypergraph to be colored: vertices 0..num_vertices-1, each edge a list of distinct
    /// vertex indices. An edge may have any size >= 1; a size-one edge can never be
    /// non-monochromatic.
    struct ColoringProblem
    {
        int num_vertices = 0;
        std::vector<std::vector<int>> edges;

        static auto from_kneser(const KneserInstance & instance) -> ColoringProblem;

        /// The members of `family` inside T become edges over the elements of T (vertex i is
        /// the i-th smallest element of T).
        static auto from_restriction(const Hypergraph & family, Subset t) -> ColoringProblem;
    };

    struct SolveOptions
    {
        SolveBudget budget;

        /// For r >= 3 Kneser instances, start the search at the alternation lower bound.
        bool theorem_lower_bound = true;

        /// Optional tie-break priority: vertex_order[0] is preferred first. Must be a
        /// permutation of the vertex indices when nonempty.
        std::vector<int> vertex_order;
    };

    struct ChromaticResult
    {
        /// Exact chromatic number; meaningless when `infinite`.
        int chi = 0;
        bool infinite = false;
        Coloring witness;
        std::uint64_t nodes = 0;
        int initial_lower = 0;
        int initial_upper = 0;
    };

    struct ProperCheck
    {
        bool proper = true;
        std::optional<std::vector<int>> violating_edge;
    };

    /// Checks that no hyperedge is monochromatic. Throws ValidationError when the coloring is not
    /// total on the instance's vertices.
    auto is_proper(const KneserInstance & instance, const Coloring & coloring) -> ProperCheck;
    auto is_proper(const ColoringProblem & problem, const Coloring & coloring) -> ProperCheck;

    /// Exact chromatic number by iterative deepening over the palette size. Throws
    /// BudgetExceeded carrying the bracket reached so far.
    auto chromatic_number(const KneserInstance & instance, const SolveOptions & options = {}) -> ChromaticResult;
    auto chromatic_number(const ColoringProblem & problem, const SolveOptions & options = {}, int lower_hint = 0)
        -> ChromaticResult;

    /// A proper coloring with at most t colors, or nullopt when none exists. `nodes`, when
    /// given, accumulates the search-node count.
    auto find_coloring(const ColoringProblem & problem, int t, const SolveOptions & options = {},
            std::uint64_t * nodes = nullptr) -> std::optional<Coloring>;

    /// Whether `family` restricted to T admits a proper r-coloring.
    auto is_r_colorable(const Hypergraph & family, Subset t, int r, const SolveBudget & budget = {}) -> bool;

    /// Visits every proper coloring with colors 1..t (optionally with vertex 0 pinned to a
    /// color). Returns the number visited; stops early when `visit` returns false.
    auto for_each_proper_coloring(const ColoringProblem & problem, int t,
            const std::function<bool (const Coloring &)> & visit,
            std::optional<int> first_vertex_color = std::nullopt) -> std::uint64_t;

    /// Greedy first-fit coloring in degree-descending order.
    auto greedy_coloring(const ColoringProblem & problem) -> Coloring;
}
