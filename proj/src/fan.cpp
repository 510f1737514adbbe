#include <kneser/witness.hpp>
#include <kneser/errors.hpp>
#include <kneser/invariants.hpp>

#include <algorithm>
#include <bit>
#include <functional>

using namespace kneser;

namespace
{
    auto pow3(int n) -> std::uint64_t
    {
        std::uint64_t v = 1;
        for (int i = 0 ; i < n ; ++i)
            v *= 3;
        return v;
    }

    auto alt_identity(const std::vector<int> & x) -> int
    {
        int alt = 0, last = 0;
        for (int v : x)
            if (v != 0 && v != last) {
                ++alt;
                last = v;
            }
        return alt;
    }

    auto side(const std::vector<int> & x, int sign) -> Subset
    {
        Subset s;
        for (std::size_t i = 0 ; i < x.size() ; ++i)
            if (x[i] == sign)
                s = s.with(static_cast<int>(i) + 1);
        return s;
    }

    auto max_color_inside(const Hypergraph & family, const Coloring & coloring, Subset s) -> int
    {
        int best = 0;
        for (std::size_t v = 0 ; v < family.size() ; ++v)
            if (family.edge(v).is_subset_of(s))
                best = std::max(best, coloring.colors[v]);
        return best;
    }

    auto check_coords(const FanLabeling & labeling, int cap) -> void
    {
        if (labeling.n > cap)
            throw TooLarge("Fan labeling over " + std::to_string(labeling.n)
                    + " coordinates exceeds the exhaustive cap of " + std::to_string(cap));
        if (labeling.labels.size() != pow3(labeling.n))
            throw ValidationError("FanLabeling: one label per point of {-1,0,+1}^n");
    }

    auto with_entry(std::uint64_t index, int coord, int sign) -> std::uint64_t
    {
        return index + pow3(coord) * (sign > 0 ? 1 : 2);
    }
}

auto kneser::fan_index(const std::vector<int> & x) -> std::uint64_t
{
    std::uint64_t index = 0, weight = 1;
    for (int v : x) {
        if (v < -1 || v > 1)
            throw ValidationError("fan_index: entries lie in {-1, 0, +1}");
        index += weight * (v > 0 ? 1 : v < 0 ? 2 : 0);
        weight *= 3;
    }
    return index;
}

auto kneser::fan_vector(std::uint64_t index, int n) -> std::vector<int>
{
    std::vector<int> x(n, 0);
    for (int i = 0 ; i < n ; ++i) {
        int d = static_cast<int>(index % 3);
        x[i] = d == 1 ? 1 : d == 2 ? -1 : 0;
        index /= 3;
    }
    return x;
}

auto FanLabeling::label(const std::vector<int> & x) const -> int
{
    if (static_cast<int>(x.size()) != n)
        throw ValidationError("FanLabeling: vector length differs from n");
    return labels[fan_index(x)];
}

auto kneser::build_fan_labeling(const Hypergraph & family, const Coloring & coloring, const FanOptions & options)
    -> FanLabeling
{
    KneserInstance graph(family, 2);
    auto proper = is_proper(graph, coloring);
    if (! proper.proper)
        throw NotProper("build_fan_labeling: the coloring has a monochromatic edge");

    // Alternation over all of [n]: coordinates outside the family's ground set count too.
    AltQuery query;
    query.family = Hypergraph(family.n(), std::vector<Subset>(family.edges().begin(), family.edges().end()));
    query.r = 2;
    const int alt2 = alt_level(query).value;

    FanLabeling lab;
    lab.n = family.n();
    lab.threshold = alt2 + (alt2 % 2);
    if (alt2 % 2 == 1 && options.extend_ambient)
        lab.n = family.n() + 1;
    if (lab.n > 12)
        throw TooLarge("build_fan_labeling: more than 12 coordinates");
    lab.m = lab.threshold + coloring.palette;

    const std::uint64_t total = pow3(lab.n);
    lab.labels.assign(total, 0);
    for (std::uint64_t idx = 1 ; idx < total ; ++idx) {
        auto x = fan_vector(idx, lab.n);
        int alt = alt_identity(x);
        if (alt <= lab.threshold) {
            int first = *std::find_if(x.begin(), x.end(), [] (int v) { return v != 0; });
            lab.labels[idx] = first * alt;
            continue;
        }
        int plus = max_color_inside(family, coloring, side(x, 1));
        int minus = max_color_inside(family, coloring, side(x, -1));
        if (0 == plus && 0 == minus)
            throw TheoremViolation("build_fan_labeling: a vector above the alternation threshold holds no member");
        lab.labels[idx] = plus > minus ? lab.threshold + plus : -(lab.threshold + minus);
    }
    return lab;
}

auto kneser::check_fan_hypotheses(const FanLabeling & labeling, int cap) -> FanCheck
{
    check_coords(labeling, cap);
    const int n = labeling.n;
    const std::uint64_t total = labeling.labels.size();

    FanCheck check;
    auto fail = [&] (std::string what, std::uint64_t x, std::optional<std::uint64_t> y) {
        check.ok = false;
        check.failure = std::move(what);
        check.x = fan_vector(x, n);
        if (y)
            check.y = fan_vector(*y, n);
        return check;
    };

    for (std::uint64_t idx = 1 ; idx < total ; ++idx) {
        ++check.points_checked;
        int l = labeling.labels[idx];
        if (0 == l || std::abs(l) > labeling.m)
            return fail("label outside {+-1..+-m}", idx, std::nullopt);
        auto x = fan_vector(idx, n);
        for (int & v : x)
            v = -v;
        std::uint64_t neg = fan_index(x);
        if (labeling.labels[neg] != -l)
            return fail("antipodality: lambda(-X) != -lambda(X)", idx, neg);
    }

    std::vector<std::uint64_t> contrib, sub_index;
    for (std::uint64_t y = 1 ; y < total ; ++y) {
        contrib.clear();
        std::uint64_t rest = y, weight = 1;
        for (int i = 0 ; i < n ; ++i) {
            int d = static_cast<int>(rest % 3);
            if (d != 0)
                contrib.push_back(weight * d);
            rest /= 3;
            weight *= 3;
        }
        const std::uint32_t full = (std::uint32_t{1} << contrib.size()) - 1;
        sub_index.assign(full + 1, 0);
        const int ly = labeling.labels[y];
        for (std::uint32_t mask = 1 ; mask <= full ; ++mask) {
            sub_index[mask] = sub_index[mask & (mask - 1)] + contrib[std::countr_zero(mask)];
            ++check.pairs_checked;
            if (labeling.labels[sub_index[mask]] == -ly)
                return fail("complementary pair: X <= Y with lambda(X) = -lambda(Y)", sub_index[mask], y);
        }
    }
    return check;
}

auto kneser::find_fan_chain(const FanLabeling & labeling, int cap) -> FanChain
{
    check_coords(labeling, cap);
    const int n = labeling.n;
    std::vector<std::uint64_t> path;
    std::vector<char> dead(labeling.labels.size(), 0);

    // Labels alternate in chain order with growing absolute value. Failure from a point does not
    // depend on how it was reached, so dead ends are remembered.
    std::function<bool (std::uint64_t, int)> grow = [&] (std::uint64_t x, int depth) -> bool {
        if (depth == n)
            return true;
        if (dead[x])
            return false;
        const int here = std::abs(labeling.labels[x]);
        const int want_sign = depth % 2 == 0 ? 1 : -1;
        auto entries = fan_vector(x, n);
        for (int coord = 0 ; coord < n ; ++coord) {
            if (entries[coord] != 0)
                continue;
            for (int sign : {1, -1}) {
                std::uint64_t y = with_entry(x, coord, sign);
                int l = labeling.labels[y];
                if (l * want_sign <= 0 || std::abs(l) <= here)
                    continue;
                path.push_back(y);
                if (grow(y, depth + 1))
                    return true;
                path.pop_back();
            }
        }
        dead[x] = 1;
        return false;
    };

    FanChain chain;
    auto emit = [&] {
        for (auto idx : path) {
            chain.vectors.push_back(fan_vector(idx, n));
            chain.labels.push_back(labeling.labels[idx]);
        }
        return chain;
    };

    for (int coord = 0 ; coord < n ; ++coord)
        for (int sign : {1, -1}) {
            std::uint64_t x = with_entry(0, coord, sign);
            if (labeling.labels[x] <= 0)
                continue;
            path.assign(1, x);
            if (grow(x, 1))
                return emit();
        }

    // General form: only the set of labels must alternate once sorted by absolute value.
    std::vector<int> used;
    std::function<bool (std::uint64_t, int)> general = [&] (std::uint64_t x, int depth) -> bool {
        if (depth == n) {
            auto sorted = used;
            std::sort(sorted.begin(), sorted.end(), [] (int a, int b) { return std::abs(a) < std::abs(b); });
            for (int i = 0 ; i < n ; ++i)
                if ((sorted[i] > 0) != (i % 2 == 0))
                    return false;
            return true;
        }
        auto entries = fan_vector(x, n);
        for (int coord = 0 ; coord < n ; ++coord) {
            if (entries[coord] != 0)
                continue;
            for (int sign : {1, -1}) {
                std::uint64_t y = with_entry(x, coord, sign);
                int l = labeling.labels[y];
                if (std::any_of(used.begin(), used.end(), [&] (int u) { return std::abs(u) == std::abs(l); }))
                    continue;
                used.push_back(l);
                path.push_back(y);
                if (general(y, depth + 1))
                    return true;
                path.pop_back();
                used.pop_back();
            }
        }
        return false;
    };

    for (int coord = 0 ; coord < n ; ++coord)
        for (int sign : {1, -1}) {
            std::uint64_t x = with_entry(0, coord, sign);
            path.assign(1, x);
            used.assign(1, labeling.labels[x]);
            if (general(x, 1))
                return emit();
        }

    throw TheoremViolation("find_fan_chain: no alternating chain exists");
}

auto kneser::colorful_from_chain(const Hypergraph & family, const Coloring & coloring, const FanLabeling & labeling,
        const FanChain & chain) -> ColorfulWitness
{
    std::vector<std::size_t> order(chain.labels.size());
    for (std::size_t i = 0 ; i < order.size() ; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&] (std::size_t a, std::size_t b) {
            return std::abs(chain.labels[a]) < std::abs(chain.labels[b]);
            });

    ColorfulWitness witness;
    for (auto i : order) {
        int l = chain.labels[i];
        if (std::abs(l) <= labeling.threshold)
            continue;
        int color = std::abs(l) - labeling.threshold;
        Subset holder = side(chain.vectors[i], l > 0 ? 1 : -1);
        int found = -1;
        for (std::size_t v = 0 ; v < family.size() ; ++v)
            if (coloring.colors[v] == color && family.edge(v).is_subset_of(holder)) {
                found = static_cast<int>(v);
                break;
            }
        if (found < 0)
            throw TheoremViolation("colorful_from_chain: no member of color " + std::to_string(color)
                    + " inside the labeled side");
        if (l > 0) {
            witness.left.push_back(found);
            witness.left_colors.push_back(color);
        }
        else {
            witness.right.push_back(found);
            witness.right_colors.push_back(color);
        }
    }
    bool right_first = ! witness.right_colors.empty()
        && (witness.left_colors.empty() || witness.right_colors.front() < witness.left_colors.front());
    if (right_first) {
        std::swap(witness.left, witness.right);
        std::swap(witness.left_colors, witness.right_colors);
    }
    return witness;
}
