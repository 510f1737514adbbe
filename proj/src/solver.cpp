#include <kneser/solver.hpp>
#include <kneser/errors.hpp>
#include <kneser/invariants.hpp>

#include <algorithm>
#include <numeric>
#include <set>

using namespace kneser;

using std::chrono::steady_clock;

namespace
{
    struct Aborted { };

    auto validate_problem(const ColoringProblem & problem) -> void
    {
        for (auto & e : problem.edges) {
            if (e.empty())
                throw ValidationError("ColoringProblem: edges are nonempty");
            for (int v : e)
                if (v < 0 || v >= problem.num_vertices)
                    throw ValidationError("ColoringProblem: edge member out of range");
        }
    }

    auto has_singleton(const ColoringProblem & problem) -> bool
    {
        return std::any_of(problem.edges.begin(), problem.edges.end(), [] (auto & e) { return e.size() == 1; });
    }

    auto incidence(const ColoringProblem & problem) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> result(problem.num_vertices);
        for (std::size_t i = 0 ; i < problem.edges.size() ; ++i)
            for (int v : problem.edges[i])
                result[v].push_back(static_cast<int>(i));
        return result;
    }

    auto ranks(int count, const std::vector<int> & order) -> std::vector<int>
    {
        std::vector<int> rank(count);
        if (order.empty()) {
            std::iota(rank.begin(), rank.end(), 0);
            return rank;
        }
        if (static_cast<int>(order.size()) != count)
            throw ValidationError("SolveOptions: vertex_order must be a permutation of the vertices");
        std::vector<bool> seen(count, false);
        for (int i = 0 ; i < count ; ++i) {
            int v = order[i];
            if (v < 0 || v >= count || seen[v])
                throw ValidationError("SolveOptions: vertex_order must be a permutation of the vertices");
            seen[v] = true;
            rank[v] = i;
        }
        return rank;
    }

    // Backtracking t-colorability with forward checking and color-symmetry breaking.
    class Search
    {
        public:
            Search(const ColoringProblem & problem, int t, const SolveOptions & options,
                    steady_clock::time_point start) :
                _problem(problem),
                _t(t),
                _budget(options.budget),
                _start(start),
                _incident(incidence(problem)),
                _rank(ranks(problem.num_vertices, options.vertex_order)),
                _color(problem.num_vertices, 0),
                _domain(problem.num_vertices, t >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << t) - 1)
            {
            }

            auto run() -> std::optional<Coloring>
            {
                if (_problem.num_vertices == 0)
                    return Coloring{{}, _t};
                if (_t < 1)
                    return std::nullopt;
                if (dfs(0))
                    return Coloring{_color, _t};
                return std::nullopt;
            }

            auto nodes() const -> std::uint64_t { return _nodes; }

        private:
            auto allowed_mask() const -> std::uint64_t
            {
                int top = std::min(_t, _max_used + 1);
                return top >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << top) - 1;
            }

            auto pick() const -> int
            {
                int best = -1, best_count = 0;
                std::uint64_t allowed = allowed_mask();
                for (int v = 0 ; v < _problem.num_vertices ; ++v) {
                    if (_color[v])
                        continue;
                    int count = __builtin_popcountll(_domain[v] & allowed);
                    if (best == -1 || count < best_count
                            || (count == best_count && (_incident[v].size() > _incident[best].size()
                                    || (_incident[v].size() == _incident[best].size() && _rank[v] < _rank[best])))) {
                        best = v;
                        best_count = count;
                    }
                }
                return best;
            }

            auto tick() -> void
            {
                ++_nodes;
                if (_nodes > _budget.max_nodes)
                    throw Aborted{};
                if (0 == (_nodes & 0xfff) && steady_clock::now() - _start > _budget.time_limit)
                    throw Aborted{};
            }

            // Applies v := c and prunes c from the last open member of each edge whose colored
            // members all carry c.
            auto propagate(int v, int c) -> bool
            {
                const std::uint64_t bit = std::uint64_t{1} << (c - 1);
                for (int e : _incident[v]) {
                    int open = -1, open_count = 0;
                    bool uniform = true;
                    for (int u : _problem.edges[e]) {
                        if (0 == _color[u]) {
                            open = u;
                            ++open_count;
                        }
                        else if (_color[u] != c) {
                            uniform = false;
                            break;
                        }
                    }
                    if (! uniform || open_count > 1)
                        continue;
                    if (0 == open_count)
                        return false;
                    if (_domain[open] & bit) {
                        _domain[open] &= ~bit;
                        _trail.emplace_back(open, bit);
                        if (0 == _domain[open])
                            return false;
                    }
                }
                return true;
            }

            auto dfs(int colored) -> bool
            {
                if (colored == _problem.num_vertices)
                    return true;

                int v = pick();
                std::uint64_t options = _domain[v] & allowed_mask();
                for (std::uint64_t m = options ; m ; m &= m - 1) {
                    int c = __builtin_ctzll(m) + 1;
                    tick();
                    std::size_t mark = _trail.size();
                    int saved_max = _max_used;
                    _color[v] = c;
                    _max_used = std::max(_max_used, c);

                    if (propagate(v, c) && dfs(colored + 1))
                        return true;

                    while (_trail.size() > mark) {
                        _domain[_trail.back().first] |= _trail.back().second;
                        _trail.pop_back();
                    }
                    _color[v] = 0;
                    _max_used = saved_max;
                }
                return false;
            }

            const ColoringProblem & _problem;
            int _t;
            SolveBudget _budget;
            steady_clock::time_point _start;
            std::vector<std::vector<int>> _incident;
            std::vector<int> _rank;
            std::vector<int> _color;
            std::vector<std::uint64_t> _domain;
            std::vector<std::pair<int, std::uint64_t>> _trail;
            int _max_used = 0;
            std::uint64_t _nodes = 0;
    };

    auto greedy_clique(const ColoringProblem & problem) -> int
    {
        const int count = problem.num_vertices;
        std::vector<std::vector<bool>> adjacent(count, std::vector<bool>(count, false));
        std::vector<int> degree(count, 0);
        for (auto & e : problem.edges) {
            adjacent[e[0]][e[1]] = adjacent[e[1]][e[0]] = true;
            ++degree[e[0]];
            ++degree[e[1]];
        }
        std::vector<int> order(count);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&] (int a, int b) { return degree[a] > degree[b]; });

        std::vector<int> clique;
        for (int v : order)
            if (std::all_of(clique.begin(), clique.end(), [&] (int u) { return adjacent[u][v]; }))
                clique.push_back(v);
        return static_cast<int>(clique.size());
    }

    auto monochromatic_with(const ColoringProblem & problem, const std::vector<int> & edge_ids,
            const std::vector<int> & color, int v, int c) -> bool
    {
        for (int e : edge_ids) {
            bool mono = true;
            for (int u : problem.edges[e])
                if (u != v && color[u] != c) {
                    mono = false;
                    break;
                }
            if (mono)
                return true;
        }
        return false;
    }
}

auto Coloring::used_colors() const -> int
{
    std::set<int> used(colors.begin(), colors.end());
    return static_cast<int>(used.size());
}

auto ColoringProblem::from_kneser(const KneserInstance & instance) -> ColoringProblem
{
    ColoringProblem problem;
    problem.num_vertices = static_cast<int>(instance.num_vertices());
    for (auto it = instance.begin() ; it != instance.end() ; ++it)
        problem.edges.push_back(*it);
    return problem;
}

auto ColoringProblem::from_restriction(const Hypergraph & family, Subset t) -> ColoringProblem
{
    ColoringProblem problem;
    std::vector<int> index(max_ground + 1, -1);
    int next = 0;
    for (int e : t.elements())
        index[e] = next++;
    problem.num_vertices = next;
    for (auto member : family.edges()) {
        if (! member.is_subset_of(t))
            continue;
        std::vector<int> edge;
        for (int e : member.elements())
            edge.push_back(index[e]);
        problem.edges.push_back(std::move(edge));
    }
    return problem;
}

auto kneser::is_proper(const ColoringProblem & problem, const Coloring & coloring) -> ProperCheck
{
    if (static_cast<int>(coloring.colors.size()) != problem.num_vertices)
        throw ValidationError("Coloring: every vertex colored");
    for (int c : coloring.colors)
        if (c < 1 || (coloring.palette > 0 && c > coloring.palette))
            throw ValidationError("Coloring: colors drawn from 1..t");

    for (auto & e : problem.edges) {
        bool mono = std::all_of(e.begin(), e.end(), [&] (int v) { return coloring.colors[v] == coloring.colors[e[0]]; });
        if (mono)
            return ProperCheck{false, e};
    }
    return ProperCheck{};
}

auto kneser::is_proper(const KneserInstance & instance, const Coloring & coloring) -> ProperCheck
{
    if (coloring.colors.size() != instance.num_vertices())
        throw ValidationError("Coloring: every vertex colored");
    for (int c : coloring.colors)
        if (c < 1 || (coloring.palette > 0 && c > coloring.palette))
            throw ValidationError("Coloring: colors drawn from 1..t");

    for (auto it = instance.begin() ; it != instance.end() ; ++it) {
        auto & e = *it;
        bool mono = std::all_of(e.begin(), e.end(), [&] (int v) { return coloring.colors[v] == coloring.colors[e[0]]; });
        if (mono)
            return ProperCheck{false, e};
    }
    return ProperCheck{};
}

auto kneser::greedy_coloring(const ColoringProblem & problem) -> Coloring
{
    auto incident = incidence(problem);
    std::vector<int> order(problem.num_vertices);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&] (int a, int b) { return incident[a].size() > incident[b].size(); });

    std::vector<int> color(problem.num_vertices, 0);
    int palette = problem.num_vertices > 0 ? 1 : 0;
    for (int v : order) {
        int c = 1;
        // A singleton edge is monochromatic under any color; give up on it.
        while (c <= problem.num_vertices && monochromatic_with(problem, incident[v], color, v, c))
            ++c;
        color[v] = std::min(c, std::max(problem.num_vertices, 1));
        palette = std::max(palette, color[v]);
    }
    return Coloring{color, palette};
}

auto kneser::find_coloring(const ColoringProblem & problem, int t, const SolveOptions & options,
        std::uint64_t * nodes) -> std::optional<Coloring>
{
    validate_problem(problem);
    if (has_singleton(problem))
        return std::nullopt;
    if (t > 64)
        t = 64;

    Search search(problem, t, options, steady_clock::now());
    try {
        auto result = search.run();
        if (nodes)
            *nodes += search.nodes();
        return result;
    }
    catch (const Aborted &) {
        if (nodes)
            *nodes += search.nodes();
        throw BudgetExceeded("coloring search exhausted its budget at t = " + std::to_string(t), 0, 0);
    }
}

auto kneser::chromatic_number(const ColoringProblem & problem, const SolveOptions & options, int lower_hint)
    -> ChromaticResult
{
    validate_problem(problem);
    ChromaticResult result;

    if (has_singleton(problem)) {
        result.infinite = true;
        return result;
    }
    if (0 == problem.num_vertices)
        return result;
    if (problem.edges.empty()) {
        result.chi = 1;
        result.witness = Coloring{std::vector<int>(problem.num_vertices, 1), 1};
        result.initial_lower = result.initial_upper = 1;
        return result;
    }

    Coloring incumbent = greedy_coloring(problem);
    int upper = incumbent.palette;

    int lower = 2;
    bool graph = std::all_of(problem.edges.begin(), problem.edges.end(), [] (auto & e) { return e.size() == 2; });
    if (graph)
        lower = std::max(lower, greedy_clique(problem));
    lower = std::max(lower, lower_hint);
    result.initial_lower = lower;
    result.initial_upper = upper;

    if (static_cast<std::size_t>(problem.num_vertices) > options.budget.max_vertices)
        throw BudgetExceeded("instance has " + std::to_string(problem.num_vertices)
                + " vertices, above the budget of " + std::to_string(options.budget.max_vertices),
                std::min(lower, upper), upper);

    auto start = steady_clock::now();
    for (int t = lower ; t < upper ; ++t) {
        Search search(problem, t, options, start);
        std::optional<Coloring> found;
        try {
            found = search.run();
        }
        catch (const Aborted &) {
            throw BudgetExceeded("search budget exhausted while testing " + std::to_string(t) + " colors", t, upper);
        }
        result.nodes += search.nodes();
        if (found) {
            result.chi = t;
            result.witness = *found;
            return result;
        }
    }

    // The greedy incumbent is only the fallback witness.
    result.chi = upper;
    result.witness = incumbent;
    Search search(problem, upper, options, start);
    try {
        if (auto found = search.run())
            result.witness = *found;
    }
    catch (const Aborted &) {
    }
    result.nodes += search.nodes();
    return result;
}

auto kneser::chromatic_number(const KneserInstance & instance, const SolveOptions & options) -> ChromaticResult
{
    // Pairwise disjoint members span a complete r-uniform hypergraph.
    int hint = 0;
    if (instance.r() >= 3) {
        Subset used;
        int disjoint = 0;
        for (Subset v : instance.base().edges())
            if (! v.empty() && (v & used).empty()) {
                used = used | v;
                ++disjoint;
            }
        hint = static_cast<int>((disjoint + instance.r() - 2) / (instance.r() - 1));
    }
    if (options.theorem_lower_bound && instance.r() >= 3 && instance.base().ground_size() <= 14
            && instance.num_vertices() > 0) {
        AltQuery query;
        query.family = instance.base();
        query.r = instance.r();
        hint = std::max<int>(hint, bound_alternation(query).ceiling);
    }
    auto problem = ColoringProblem::from_kneser(instance);
    return chromatic_number(problem, options, hint);
}

auto kneser::is_r_colorable(const Hypergraph & family, Subset t, int r, const SolveBudget & budget) -> bool
{
    auto problem = ColoringProblem::from_restriction(family, t);
    if (static_cast<std::size_t>(problem.num_vertices) > budget.max_vertices)
        throw BudgetExceeded("restriction too large for the coloring budget", 0, 0);
    SolveOptions options;
    options.budget = budget;
    return find_coloring(problem, r, options).has_value();
}

auto kneser::for_each_proper_coloring(const ColoringProblem & problem, int t,
        const std::function<bool (const Coloring &)> & visit, std::optional<int> first_vertex_color) -> std::uint64_t
{
    validate_problem(problem);
    auto incident = incidence(problem);
    std::vector<int> color(problem.num_vertices, 0);
    std::uint64_t count = 0;
    bool stop = false;

    // Vertex v is assigned last among its edge's members when all others have smaller index.
    auto closes_mono = [&] (int v) {
        for (int e : incident[v]) {
            auto & edge = problem.edges[e];
            if (std::any_of(edge.begin(), edge.end(), [&] (int u) { return u > v; }))
                continue;
            if (std::all_of(edge.begin(), edge.end(), [&] (int u) { return color[u] == color[v]; }))
                return true;
        }
        return false;
    };

    auto rec = [&] (auto & self, int v) -> void {
        if (stop)
            return;
        if (v == problem.num_vertices) {
            ++count;
            if (! visit(Coloring{color, t}))
                stop = true;
            return;
        }
        int lo = 1, hi = t;
        if (0 == v && first_vertex_color)
            lo = hi = *first_vertex_color;
        for (int c = lo ; c <= hi && ! stop ; ++c) {
            color[v] = c;
            if (! closes_mono(v))
                self(self, v + 1);
        }
        color[v] = 0;
    };
    rec(rec, 0);
    return count;
}
