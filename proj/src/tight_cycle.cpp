#include <kneser/witness.hpp>
#include <kneser/errors.hpp>

#include <algorithm>
#include <functional>

using namespace kneser;

namespace
{
    auto adjacency(const ColoringProblem & graph) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> adj(graph.num_vertices);
        for (auto & e : graph.edges) {
            if (e.size() != 2)
                throw ValidationError("find_tight_cycle: every edge has two vertices");
            adj[e[0]].push_back(e[1]);
            adj[e[1]].push_back(e[0]);
        }
        for (auto & a : adj)
            std::sort(a.begin(), a.end());
        return adj;
    }

    auto find_in(const std::vector<std::vector<int>> & adj, const Coloring & coloring) -> TightCycle
    {
        const int n = static_cast<int>(adj.size());
        const int t = coloring.palette;
        TightCycle result;
        if (t < 2)
            return result;

        // Arcs u -> v when c(v) = c(u) + 1 mod t. For t = 2 every edge gives arcs both ways, so
        // a back edge to the parent does not count as a cycle.
        auto arc = [&] (int u, int v) { return ((coloring.colors[v] - coloring.colors[u] - 1) % t + t) % t == 0; };
        std::vector<int> state(n, 0), parent(n, -1), stack;

        std::function<bool (int)> dfs = [&] (int u) -> bool {
            state[u] = 1;
            stack.push_back(u);
            for (int v : adj[u]) {
                if (! arc(u, v))
                    continue;
                if (2 == t && v == parent[u])
                    continue;
                if (1 == state[v]) {
                    auto it = std::find(stack.begin(), stack.end(), v);
                    result.cycle.assign(it, stack.end());
                    result.found = true;
                    return true;
                }
                if (0 == state[v]) {
                    parent[v] = u;
                    if (dfs(v))
                        return true;
                }
            }
            stack.pop_back();
            state[u] = 2;
            return false;
        };

        for (int s = 0 ; s < n ; ++s)
            if (0 == state[s] && dfs(s))
                break;
        return result;
    }
}

auto kneser::find_tight_cycle(const ColoringProblem & graph, const Coloring & coloring) -> TightCycle
{
    if (static_cast<int>(coloring.colors.size()) != graph.num_vertices)
        throw ValidationError("find_tight_cycle: one color per vertex");
    auto check = is_proper(graph, coloring);
    if (! check.proper)
        throw NotProper("find_tight_cycle: the coloring has a monochromatic edge");
    return find_in(adjacency(graph), coloring);
}

auto kneser::tight_cycle_census(const ColoringProblem & graph, int t) -> TightCycleCensus
{
    auto adj = adjacency(graph);
    TightCycleCensus census;
    for_each_proper_coloring(graph, t, [&] (const Coloring & c) {
            ++census.colorings;
            if (find_in(adj, c).found)
                ++census.with_cycle;
            return true;
            }, graph.num_vertices > 0 ? std::optional<int>(1) : std::nullopt);
    return census;
}
