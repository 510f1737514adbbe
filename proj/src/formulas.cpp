#include <kneser/formulas.hpp>
#include <kneser/errors.hpp>

#include <algorithm>
#include <limits>

using namespace kneser;

namespace
{
    struct Item
    {
        int weight;
        std::int64_t gain;
    };

    auto items_of(const PartitionInstance & inst) -> std::vector<Item>
    {
        inst.validate();
        std::vector<Item> items;
        for (std::size_t i = 0 ; i < inst.parts.size() ; ++i) {
            int size = inst.parts[i].size();
            int f = f_r_pi(size, inst.capacities[i], inst.r);
            items.push_back(Item{f, size - f});
        }
        return items;
    }

    auto budget_of(const PartitionInstance & inst) -> std::int64_t
    {
        return static_cast<std::int64_t>(inst.r) * inst.k - 1;
    }

    // (value, cardinality) compared lexicographically; selections are then ordered as index lists.
    auto better(std::int64_t v, int c, const std::vector<int> & sel, const MResult & best, int best_c) -> bool
    {
        if (v != best.value)
            return v > best.value;
        if (c != best_c)
            return c > best_c;
        return sel < best.selected;
    }
}

auto kneser::ceil_div(std::int64_t a, std::int64_t b) -> std::int64_t
{
    if (b <= 0)
        throw ValidationError("ceil_div: positive divisor");
    std::int64_t q = a / b;
    if (a % b != 0 && a > 0)
        ++q;
    return q;
}

auto kneser::f_r_pi(int part_size, int capacity, int r) -> int
{
    if (capacity < 1 || capacity > part_size)
        throw ValidationError("f_r_pi: 1 <= s_i <= |P_i|");
    if (r < 2)
        throw ValidationError("f_r_pi: r >= 2");
    return part_size >= r * capacity ? r * capacity : part_size;
}

auto kneser::m_r_pi_enumerate(const PartitionInstance & instance) -> MResult
{
    auto items = items_of(instance);
    const int m = static_cast<int>(items.size());
    if (m > 24)
        throw TooLarge("m_r_pi_enumerate: more than 24 parts");
    const std::int64_t budget = budget_of(instance);

    MResult best;
    best.value = std::numeric_limits<std::int64_t>::min();
    int best_c = -1;
    std::vector<int> sel;
    for (std::uint32_t mask = 0 ; mask < (std::uint32_t{1} << m) ; ++mask) {
        std::int64_t weight = 0, gain = 0;
        sel.clear();
        for (int i = 0 ; i < m ; ++i)
            if (mask & (std::uint32_t{1} << i)) {
                weight += items[i].weight;
                gain += items[i].gain;
                sel.push_back(i);
            }
        if (weight > budget)
            continue;
        std::int64_t v = budget + gain;
        int c = static_cast<int>(sel.size());
        if (better(v, c, sel, best, best_c)) {
            best.value = v;
            best.selected = sel;
            best_c = c;
        }
    }
    return best;
}

auto kneser::m_r_pi_knapsack(const PartitionInstance & instance) -> MResult
{
    auto items = items_of(instance);
    const int m = static_cast<int>(items.size());
    const std::int64_t budget = budget_of(instance);
    const std::int64_t cap = std::min<std::int64_t>(budget, instance.n);

    // suffix[i][w]: best (gain, count) from items i.. with capacity w. Weights are at least 1 and
    // total at most n, so capacities above n behave like n.
    using Score = std::pair<std::int64_t, int>;
    std::vector<std::vector<Score>> suffix(m + 1, std::vector<Score>(cap + 1, Score{0, 0}));
    for (int i = m - 1 ; i >= 0 ; --i)
        for (std::int64_t w = 0 ; w <= cap ; ++w) {
            Score skip = suffix[i + 1][w];
            Score take{std::numeric_limits<std::int64_t>::min(), 0};
            if (items[i].weight <= w) {
                auto rest = suffix[i + 1][w - items[i].weight];
                take = Score{rest.first + items[i].gain, rest.second + 1};
            }
            suffix[i][w] = std::max(skip, take);
        }

    // Greedy reconstruction: taking the smallest index that still reaches the optimum yields the
    // lexicographically least selection.
    MResult result;
    Score target = suffix[0][cap];
    result.value = budget + target.first;
    std::int64_t w = cap;
    Score need = target;
    for (int i = 0 ; i < m && need.second > 0 ; ++i) {
        if (items[i].weight > w)
            continue;
        auto rest = suffix[i + 1][w - items[i].weight];
        if (rest.first + items[i].gain == need.first && rest.second + 1 == need.second) {
            result.selected.push_back(i);
            w -= items[i].weight;
            need = Score{need.first - items[i].gain, need.second - 1};
        }
    }
    return result;
}

auto kneser::m_r_pi(const PartitionInstance & instance) -> MResult
{
    if (instance.part_count() <= 24)
        return m_r_pi_enumerate(instance);
    return m_r_pi_knapsack(instance);
}

auto kneser::chi_formula_kneser(int n, int k, int r) -> std::int64_t
{
    if (r < 2 || k < 1)
        throw ValidationError("chi_formula_kneser: r >= 2 and k >= 1");
    if (n < r * k)
        throw HypothesisFail("chi_formula_kneser: n >= rk fails (n = " + std::to_string(n)
                + ", rk = " + std::to_string(r * k) + ")");
    return ceil_div(n - static_cast<std::int64_t>(r) * (k - 1), r - 1);
}

auto kneser::chi_formula_multiple_r2(const PartitionInstance & instance) -> std::int64_t
{
    if (instance.r != 2)
        throw HypothesisFail("chi_formula_multiple_r2: r = 2 fails (r = " + std::to_string(instance.r) + ")");
    auto m = m_r_pi(instance);
    return std::max<std::int64_t>(1, instance.n - m.value + 1);
}

auto kneser::smallparts_offenders(const PartitionInstance & instance) -> std::vector<int>
{
    instance.validate();
    std::vector<int> out;
    for (int i = 0 ; i < instance.part_count() ; ++i)
        if (instance.parts[i].size() > 2 * instance.capacities[i])
            out.push_back(i);
    return out;
}

auto kneser::chi_formula_multiple_smallparts(const PartitionInstance & instance) -> std::int64_t
{
    auto offenders = smallparts_offenders(instance);
    if (! offenders.empty()) {
        std::string list;
        for (int i : offenders)
            list += (list.empty() ? "" : ", ") + std::to_string(i + 1);
        throw HypothesisFail("chi_formula_multiple_smallparts: |P_i| <= 2 s_i fails for parts " + list);
    }
    std::int64_t v = ceil_div(instance.n - static_cast<std::int64_t>(instance.r) * (instance.k - 1), instance.r - 1);
    return std::max<std::int64_t>(1, v);
}

auto kneser::chi_formula_stable(int n, int k, int r, int s, bool almost) -> FormulaReport
{
    if (n < 1 || k < 1 || r < 2 || s < 1)
        throw ValidationError("chi_formula_stable: n, k, s >= 1 and r >= 2");

    FormulaReport report;
    report.name = almost ? "almost_stable" : "stable";
    auto note = [&] (std::string condition, bool holds) {
        report.trace.emplace_back(std::move(condition), holds);
        return holds;
    };

    const bool big = note("n >= r*k", n >= r * k);
    std::optional<std::int64_t> kneser_value;
    if (big)
        kneser_value = chi_formula_kneser(n, k, r);

    // A subfamily of all k-subsets never needs more colors.
    if (note("upper bound: subfamily of KG^r(n,k) (needs n >= r*k)", big))
        report.upper_bound = kneser_value;

    const bool meunier_hyp = n >= s * k && s >= r;
    if (! almost && note("upper bound: block construction (needs n >= s*k and s >= r)", meunier_hyp)) {
        auto v = ceil_div(n - static_cast<std::int64_t>(s) * (k - 1), r - 1);
        report.upper_bound = report.upper_bound ? std::min(*report.upper_bound, v) : v;
    }

    auto fire = [&] (const std::string & clause) {
        if (! report.applicable) {
            report.applicable = true;
            report.value = kneser_value;
            report.name += ": " + clause;
        }
    };

    if (almost) {
        if (note("exact: almost 2-stable (needs s = 2 and n >= r*k)", s == 2 && big))
            fire("almost 2-stable");
        else if (note("exact: s = 1 is the full Kneser hypergraph (needs n >= r*k)", s == 1 && big))
            fire("full Kneser");
    }
    else {
        if (note("exact: s = 1 is the full Kneser hypergraph (needs n >= r*k)", s == 1 && big))
            fire("full Kneser");

        bool residue = (n - k) % (r - 1) != 0;
        if (note("exact: s = 2 with r even or n != k mod (r-1) (needs n >= r*k)",
                    s == 2 && big && (r % 2 == 0 || residue)))
            fire("2-stable with r even or n != k mod (r-1)");

        bool power_of_two = s >= 2 && (s & (s - 1)) == 0;
        if (note("exact: s = 2^a with 2^a dividing r (needs n >= r*k)", power_of_two && r % s == 0 && big))
            fire("power-of-two stability dividing r");
    }

    if (! almost && note("conjecture: s >= r and n >= s*k", meunier_hyp))
        report.conjectured_value = ceil_div(n - static_cast<std::int64_t>(s) * (k - 1), r - 1);

    return report;
}
