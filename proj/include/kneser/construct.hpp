#pragma once

#include <kneser/families.hpp>
#include <kneser/formulas.hpp>
#include <kneser/solver.hpp>

#include <vector>

namespace kneser
{
    /// The intermediate objects of the block coloring of a multiple Kneser hypergraph.
    struct ConstructiveColoringTrace
    {
        /// 0-based part indices achieving M, ascending.
        std::vector<int> selected;

        /// Parts in processing order (unselected first, selected last), as original indices.
        std::vector<int> order;

        std::int64_t m_value = 0;
        Subset l_set;
        Subset t_set;
        Subset c_set;
        std::vector<Subset> blocks;
        int palette = 0;
        int used = 0;
    };

    struct ConstructiveColoring
    {
        /// Vertices of KG^r(pi; s; k) in lexicographic order; `coloring` is indexed alike.
        Hypergraph family;
        Coloring coloring;
        ConstructiveColoringTrace trace;
    };

    /// At most max{1, ceil((n - M) / (r - 1)) + 1} colors. Throws TheoremViolation if the
    /// region T ever carries a hyperedge.
    auto color_multiple_kneser(const PartitionInstance & instance) -> ConstructiveColoring;

    struct StableColoring
    {
        Hypergraph family;
        Coloring coloring;
        ConstructiveColoringTrace trace;
    };

    /// Restriction of the block coloring of s-blocks with unit capacities to the s-stable
    /// k-subsets; at most ceil((n - s(k-1)) / (r-1)) colors. Requires n >= sk and s >= r >= 2.
    auto color_stable_kneser(int n, int k, int s, int r) -> StableColoring;
}
