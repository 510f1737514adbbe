#include <kneser/witness.hpp>
#include <kneser/errors.hpp>

#include <algorithm>
#include <functional>
#include <set>

using namespace kneser;

auto kneser::find_colorful_bipartite(const Hypergraph & family, const Coloring & coloring, int r) -> ColorfulWitness
{
    if (r < 1)
        throw ValidationError("find_colorful_bipartite: r >= 1");
    if (coloring.colors.size() != family.size())
        throw ValidationError("find_colorful_bipartite: one color per member");

    std::vector<int> by_color(family.size());
    for (std::size_t v = 0 ; v < by_color.size() ; ++v)
        by_color[v] = static_cast<int>(v);
    std::stable_sort(by_color.begin(), by_color.end(), [&] (int a, int b) {
            return coloring.colors[a] < coloring.colors[b];
            });

    // Position i takes the i-th smallest color; even positions sit on the left.
    std::vector<int> picked;
    std::function<bool (std::size_t)> extend = [&] (std::size_t from) -> bool {
        const int i = static_cast<int>(picked.size());
        if (i == r)
            return true;
        const int last_color = picked.empty() ? 0 : coloring.colors[picked.back()];
        for (std::size_t pos = from ; pos < by_color.size() ; ++pos) {
            int v = by_color[pos];
            if (coloring.colors[v] <= last_color)
                continue;
            bool ok = true;
            for (int j = 1 - i % 2 ; j < i && ok ; j += 2)
                ok = family.edge(v).disjoint(family.edge(picked[j]));
            if (! ok)
                continue;
            picked.push_back(v);
            if (extend(pos + 1))
                return true;
            picked.pop_back();
        }
        return false;
    };

    if (! extend(0))
        throw TheoremViolation("find_colorful_bipartite: no colorful K_{" + std::to_string((r + 1) / 2) + ","
                + std::to_string(r / 2) + "} exists in this coloring");

    ColorfulWitness witness;
    for (int i = 0 ; i < r ; ++i) {
        int v = picked[i];
        if (i % 2 == 0) {
            witness.left.push_back(v);
            witness.left_colors.push_back(coloring.colors[v]);
        }
        else {
            witness.right.push_back(v);
            witness.right_colors.push_back(coloring.colors[v]);
        }
    }
    return witness;
}

auto kneser::is_colorful_witness(const Hypergraph & family, const Coloring & coloring, int r,
        const ColorfulWitness & witness) -> bool
{
    if (static_cast<int>(witness.left.size()) != (r + 1) / 2 || static_cast<int>(witness.right.size()) != r / 2)
        return false;
    if (witness.left_colors.size() != witness.left.size() || witness.right_colors.size() != witness.right.size())
        return false;

    std::vector<std::pair<int, int>> merged;
    auto gather = [&] (const std::vector<int> & vs, const std::vector<int> & cs, int side) {
        for (std::size_t i = 0 ; i < vs.size() ; ++i) {
            if (vs[i] < 0 || static_cast<std::size_t>(vs[i]) >= family.size())
                return false;
            if (coloring.colors[vs[i]] != cs[i])
                return false;
            merged.emplace_back(cs[i], side);
        }
        return true;
    };
    if (! gather(witness.left, witness.left_colors, 0) || ! gather(witness.right, witness.right_colors, 1))
        return false;

    for (int a : witness.left)
        for (int b : witness.right)
            if (! family.edge(a).disjoint(family.edge(b)))
                return false;

    std::sort(merged.begin(), merged.end());
    for (std::size_t i = 0 ; i < merged.size() ; ++i) {
        if (i > 0 && merged[i].first == merged[i - 1].first)
            return false;
        if (merged[i].second != static_cast<int>(i % 2))
            return false;
    }
    return true;
}
