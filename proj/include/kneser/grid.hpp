#pragma once

#include <kneser/solver.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace kneser
{
    struct GridOptions
    {
        std::uint64_t seed = 20240917;
        unsigned threads = 1;
        int property_cases = 1000;
        SolveBudget budget;
    };

    struct GridRow
    {
        int id = 0;
        std::string tag;
        bool passed = false;
        std::vector<std::string> details;
        double seconds = 0.0;
    };

    constexpr int grid_rows = 11;

    /// Runs one acceptance row (1..11). Errors are caught and reported as failures.
    auto run_grid_row(int id, const GridOptions & options = {}) -> GridRow;

    auto run_grid(const GridOptions & options = {}) -> std::vector<GridRow>;
}
