#include <kneser/construct.hpp>
#include <kneser/errors.hpp>

#include <algorithm>

using namespace kneser;

auto kneser::color_multiple_kneser(const PartitionInstance & instance) -> ConstructiveColoring
{
    instance.validate();
    const int r = instance.r;
    const int parts = instance.part_count();

    auto m = m_r_pi(instance);
    ConstructiveColoringTrace trace;
    trace.selected = m.selected;
    trace.m_value = m.value;

    std::vector<char> chosen(parts, 0);
    for (int i : m.selected)
        chosen[i] = 1;
    for (int i = 0 ; i < parts ; ++i)
        if (! chosen[i])
            trace.order.push_back(i);
    const int unselected = static_cast<int>(trace.order.size());
    trace.order.insert(trace.order.end(), m.selected.begin(), m.selected.end());

    Hypergraph family(instance.n, multiple_kneser_vertices(instance));
    Coloring coloring;
    coloring.colors.assign(family.size(), 1);

    if (0 == unselected) {
        trace.t_set = Subset::range(instance.n);
        trace.palette = 1;
    }
    else {
        std::int64_t f_sum = 0;
        for (int i : m.selected) {
            f_sum += f_r_pi(instance.parts[i].size(), instance.capacities[i], r);
            trace.t_set = trace.t_set | instance.parts[i];
        }

        const Subset last = instance.parts[trace.order[unselected - 1]];
        const std::int64_t l_size = static_cast<std::int64_t>(r) * instance.k - 1 - f_sum;
        if (l_size < 0 || l_size >= last.size())
            throw TheoremViolation("color_multiple_kneser: |L| = " + std::to_string(l_size)
                    + " does not fit strictly inside the last unselected part");

        auto last_elements = last.elements();
        for (std::int64_t i = 0 ; i < l_size ; ++i)
            trace.l_set = trace.l_set.with(last_elements[i]);
        trace.t_set = trace.t_set | trace.l_set;
        trace.c_set = Subset::range(instance.n) - trace.t_set;

        if (trace.t_set.size() != m.value)
            throw TheoremViolation("color_multiple_kneser: |T| differs from M");

        auto c_elements = trace.c_set.elements();
        for (std::size_t i = 0 ; i < c_elements.size() ; i += r - 1) {
            Subset block;
            for (std::size_t j = i ; j < std::min(c_elements.size(), i + r - 1) ; ++j)
                block = block.with(c_elements[j]);
            trace.blocks.push_back(block);
        }

        const int b = static_cast<int>(trace.blocks.size());
        trace.palette = b + 1;
        for (std::size_t v = 0 ; v < family.size() ; ++v) {
            Subset a = family.edge(v);
            if (a.is_subset_of(trace.t_set)) {
                coloring.colors[v] = b + 1;
                continue;
            }
            for (int j = 0 ; j < b ; ++j)
                if (! a.disjoint(trace.blocks[j])) {
                    coloring.colors[v] = j + 1;
                    break;
                }
        }
    }

    // No r pairwise disjoint vertices fit inside T.
    std::vector<Subset> inside;
    for (auto a : family.edges())
        if (a.is_subset_of(trace.t_set))
            inside.push_back(a);
    KneserInstance region(Hypergraph(instance.n, std::move(inside)), r);
    if (region.begin() != region.end())
        throw TheoremViolation("color_multiple_kneser: the region T carries a hyperedge");

    coloring.palette = trace.palette;
    trace.used = coloring.used_colors();
    return ConstructiveColoring{std::move(family), std::move(coloring), std::move(trace)};
}

auto kneser::color_stable_kneser(int n, int k, int s, int r) -> StableColoring
{
    if (r < 2 || s < r)
        throw ValidationError("color_stable_kneser: s >= r >= 2");
    if (k < 1 || n < s * k)
        throw ValidationError("color_stable_kneser: n >= s*k");

    std::vector<int> sizes;
    for (int left = n ; left > 0 ; left -= s)
        sizes.push_back(std::min(left, s));
    std::vector<int> caps(sizes.size(), 1);
    auto multiple = color_multiple_kneser(PartitionInstance::consecutive(sizes, caps, k, r));

    Hypergraph family(n, enumerate_stable(n, k, s));
    Coloring coloring;
    coloring.palette = multiple.coloring.palette;
    for (auto a : family.edges()) {
        long idx = multiple.family.index_of(a);
        if (idx < 0)
            throw TheoremViolation("color_stable_kneser: stable vertex " + a.to_string()
                    + " is not a vertex of the block instance");
        coloring.colors.push_back(multiple.coloring.colors[idx]);
    }
    auto trace = std::move(multiple.trace);
    trace.used = coloring.used_colors();
    return StableColoring{std::move(family), std::move(coloring), std::move(trace)};
}
