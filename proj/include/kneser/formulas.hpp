#pragma once

#include <kneser/families.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kneser
{
    /// Outcome of a closed-form chromatic-number formula. `value` is present only when some exact
    /// clause applies; `trace` lists every hypothesis consulted and whether it held.
    struct FormulaReport
    {
        std::string name;
        bool applicable = false;
        std::optional<std::int64_t> value;
        std::vector<std::pair<std::string, bool>> trace;

        /// Best upper bound known to hold, if any.
        std::optional<std::int64_t> upper_bound;

        /// Value predicted by an open conjecture whose hypotheses hold. Never an exact claim.
        std::optional<std::int64_t> conjectured_value;
    };

    /// r * s_i when p_i >= r * s_i, otherwise p_i.
    auto f_r_pi(int part_size, int capacity, int r) -> int;

    struct MResult
    {
        std::int64_t value = 0;

        /// 0-based part indices, ascending: the lexicographically least maximizer among those of
        /// largest cardinality.
        std::vector<int> selected;
    };

    /// max { rk - 1 + sum(|P| - f(P)) : selected parts with sum f(P) <= rk - 1 }.
    auto m_r_pi(const PartitionInstance & instance) -> MResult;

    /// Subset enumeration; throws TooLarge above 24 parts.
    auto m_r_pi_enumerate(const PartitionInstance & instance) -> MResult;

    /// Knapsack over the budget rk - 1 with weight f(P) and gain |P| - f(P).
    auto m_r_pi_knapsack(const PartitionInstance & instance) -> MResult;

    /// ceil((n - r(k-1)) / (r-1)); HypothesisFail when n < rk.
    auto chi_formula_kneser(int n, int k, int r) -> std::int64_t;

    /// max{1, n - M_2 + 1}; HypothesisFail when r != 2.
    auto chi_formula_multiple_r2(const PartitionInstance & instance) -> std::int64_t;

    /// 0-based indices of parts with |P_i| > 2 s_i.
    auto smallparts_offenders(const PartitionInstance & instance) -> std::vector<int>;

    /// ceil((n - r(k-1)) / (r-1)), at least 1, when every part has |P_i| <= 2 s_i;
    /// HypothesisFail listing the offending parts otherwise.
    auto chi_formula_multiple_smallparts(const PartitionInstance & instance) -> std::int64_t;

    /// Report for KG^r(n,k)_{s-stab}, or for the almost-stable family when `almost` is set.
    auto chi_formula_stable(int n, int k, int r, int s, bool almost = false) -> FormulaReport;

    /// ceil(a / b) for b > 0.
    auto ceil_div(std::int64_t a, std::int64_t b) -> std::int64_t;
}
