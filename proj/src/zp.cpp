#include <kneser/witness.hpp>
#include <kneser/errors.hpp>
#include <kneser/invariants.hpp>

#include <algorithm>
#include <bit>
#include <bitset>
#include <functional>

using namespace kneser;

namespace
{
    constexpr int max_p = 3;
    constexpr int max_n = 8;
    constexpr int max_bits = 256;

    auto ipow(int base, int e) -> std::uint64_t
    {
        std::uint64_t v = 1;
        for (int i = 0 ; i < e ; ++i)
            v *= base;
        return v;
    }

    auto check_size(int p, int n) -> void
    {
        if (! is_prime(p))
            throw ValidationError("Z_p labeling: p must be prime, got " + std::to_string(p));
        if (p > max_p || n > max_n)
            throw TooLarge("Z_p labeling: exhaustive work is capped at p <= 3 and n <= 8");
    }
}

auto ZpLabeling::index(const std::vector<int> & x) const -> std::uint64_t
{
    if (static_cast<int>(x.size()) != n)
        throw ValidationError("ZpLabeling: vector length differs from n");
    std::uint64_t idx = 0, weight = 1;
    for (int v : x) {
        if (v < 0 || v > p)
            throw ValidationError("ZpLabeling: entries lie in 0..p");
        idx += weight * v;
        weight *= p + 1;
    }
    return idx;
}

auto ZpLabeling::vector(std::uint64_t idx) const -> std::vector<int>
{
    std::vector<int> x(n, 0);
    for (int i = 0 ; i < n ; ++i) {
        x[i] = static_cast<int>(idx % (p + 1));
        idx /= p + 1;
    }
    return x;
}

auto kneser::build_zp_labeling(const Hypergraph & family, const Coloring & coloring, int p, int level) -> ZpLabeling
{
    check_size(p, family.n());
    if (level < 1)
        throw ValidationError("build_zp_labeling: level >= 1");
    KneserInstance hyper(family, p);
    if (! is_proper(hyper, coloring).proper)
        throw NotProper("build_zp_labeling: the coloring has a monochromatic hyperedge");

    AltQuery query;
    query.family = Hypergraph(family.n(), std::vector<Subset>(family.edges().begin(), family.edges().end()));
    query.r = p;
    query.level = level;

    ZpLabeling lab;
    lab.n = family.n();
    lab.p = p;
    lab.alpha = alt_level(query).value;
    lab.m = lab.alpha + coloring.palette - level + 1;

    const std::uint64_t total = ipow(p + 1, lab.n);
    lab.lambda1.assign(total, 0);
    lab.lambda2.assign(total, 0);

    for (std::uint64_t idx = 1 ; idx < total ; ++idx) {
        auto x = lab.vector(idx);
        int alt = 0, last = 0, first = 0;
        std::vector<Subset> parts(p + 1);
        for (int i = 0 ; i < lab.n ; ++i) {
            int v = x[i];
            if (0 == v)
                continue;
            if (0 == first)
                first = v;
            if (v != last) {
                ++alt;
                last = v;
            }
            parts[v] = parts[v].with(i + 1);
        }

        if (alt <= lab.alpha) {
            lab.lambda1[idx] = first - 1;
            lab.lambda2[idx] = alt;
            continue;
        }

        // hbar(X), then the biggest member of that color (size first, then lexicographic).
        int hbar = 0, holder = 0;
        Subset biggest;
        for (std::size_t v = 0 ; v < family.size() ; ++v) {
            Subset a = family.edge(v);
            int part = 0;
            for (int j = 1 ; j <= p && 0 == part ; ++j)
                if (a.is_subset_of(parts[j]))
                    part = j;
            if (0 == part)
                continue;
            int c = coloring.colors[v];
            bool bigger = a.size() > biggest.size() || (a.size() == biggest.size() && a > biggest);
            if (c > hbar || (c == hbar && bigger)) {
                hbar = c;
                biggest = a;
                holder = part;
            }
        }
        lab.lambda1[idx] = holder > 0 ? holder - 1 : 0;
        lab.lambda2[idx] = hbar > 0 ? hbar - level + 1 + lab.alpha : 0;
    }
    return lab;
}

auto kneser::check_zp_hypotheses(const ZpLabeling & lab) -> ZpCheck
{
    check_size(lab.p, lab.n);
    const int p = lab.p;
    const int n = lab.n;
    const std::uint64_t total = ipow(p + 1, n);
    if (lab.lambda1.size() != total || lab.lambda2.size() != total)
        throw ValidationError("ZpLabeling: one label per point of (Z_p u {0})^n");
    if (lab.m * p > max_bits)
        throw TooLarge("check_zp_hypotheses: m * p exceeds 256");

    ZpCheck check;
    check.conclusion = lab.alpha + static_cast<std::int64_t>(lab.m - lab.alpha) * (p - 1) >= n;

    auto fail = [&] (std::string what, std::vector<std::uint64_t> chain) {
        check.ok = false;
        check.failure = std::move(what);
        for (auto idx : chain)
            check.chain.push_back(lab.vector(idx));
        return check;
    };

    std::vector<std::uint64_t> weight(n);
    for (int i = 0 ; i < n ; ++i)
        weight[i] = ipow(p + 1, i);

    for (std::uint64_t idx = 1 ; idx < total ; ++idx) {
        ++check.points_checked;
        if (lab.lambda1[idx] < 0 || lab.lambda1[idx] >= p || lab.lambda2[idx] < 1 || lab.lambda2[idx] > lab.m)
            return fail("label outside Z_p x [m]", {idx});
        auto x = lab.vector(idx);
        for (int & v : x)
            if (v != 0)
                v = v % p + 1;
        std::uint64_t rotated = lab.index(x);
        if (lab.lambda1[rotated] != (lab.lambda1[idx] + 1) % p || lab.lambda2[rotated] != lab.lambda2[idx])
            return fail("equivariance: lambda(omega X) != (omega lambda1(X), lambda2(X))", {idx, rotated});
    }

    // Low labels: X <= Y with equal lambda2 <= alpha share lambda1.
    std::vector<std::uint64_t> contrib, sub_index;
    for (std::uint64_t y = 1 ; y < total ; ++y) {
        if (lab.lambda2[y] > lab.alpha)
            continue;
        contrib.clear();
        auto entries = lab.vector(y);
        for (int i = 0 ; i < n ; ++i)
            if (entries[i] != 0)
                contrib.push_back(weight[i] * entries[i]);
        const std::uint32_t full = (std::uint32_t{1} << contrib.size()) - 1;
        sub_index.assign(full + 1, 0);
        for (std::uint32_t mask = 1 ; mask <= full ; ++mask) {
            std::uint64_t x = sub_index[mask & (mask - 1)] + contrib[std::countr_zero(mask)];
            sub_index[mask] = x;
            if (lab.lambda2[x] == lab.lambda2[y] && lab.lambda1[x] != lab.lambda1[y])
                return fail("X <= Y with equal lambda2 <= alpha but different lambda1", {x, y});
        }
    }

    // up[X] records every (lambda2, lambda1) carried by some Z >= X; filled from full supports down.
    using Bits = std::bitset<max_bits>;
    auto bit = [&] (std::uint64_t idx) { return (lab.lambda2[idx] - 1) * p + lab.lambda1[idx]; };
    std::vector<Bits> up(total);
    std::vector<std::uint64_t> by_support(total - 1);
    for (std::uint64_t i = 1 ; i < total ; ++i)
        by_support[i - 1] = i;
    std::vector<int> support_size(total, 0);
    for (std::uint64_t i = 1 ; i < total ; ++i) {
        auto x = lab.vector(i);
        support_size[i] = static_cast<int>(std::count_if(x.begin(), x.end(), [] (int v) { return v != 0; }));
    }
    std::stable_sort(by_support.begin(), by_support.end(), [&] (auto a, auto b) { return support_size[a] > support_size[b]; });
    for (auto idx : by_support) {
        up[idx].set(bit(idx));
        auto x = lab.vector(idx);
        for (int i = 0 ; i < n ; ++i)
            if (0 == x[i])
                for (int v = 1 ; v <= p ; ++v)
                    up[idx] |= up[idx + weight[i] * v];
    }

    // Chains of p vectors with a common lambda2 >= alpha + 1 and pairwise distinct lambda1.
    std::vector<std::uint64_t> chain;
    std::vector<char> used(p, 0);
    auto reachable = [&] (std::uint64_t idx, int level) {
        for (int c = 0 ; c < p ; ++c)
            if (! used[c] && up[idx].test((level - 1) * p + c))
                return true;
        return false;
    };

    std::function<bool ()> extend = [&] () -> bool {
        if (static_cast<int>(chain.size()) == p)
            return true;
        const std::uint64_t last = chain.back();
        const int level = lab.lambda2[last];
        if (! reachable(last, level))
            return false;

        auto x = lab.vector(last);
        std::vector<int> zeros;
        for (int i = 0 ; i < n ; ++i)
            if (0 == x[i])
                zeros.push_back(i);
        const std::uint64_t count = ipow(p + 1, static_cast<int>(zeros.size()));
        for (std::uint64_t code = 1 ; code < count ; ++code) {
            std::uint64_t y = last, rest = code;
            for (int i : zeros) {
                y += weight[i] * (rest % (p + 1));
                rest /= p + 1;
            }
            if (lab.lambda2[y] != level || used[lab.lambda1[y]])
                continue;
            used[lab.lambda1[y]] = 1;
            chain.push_back(y);
            if (extend())
                return true;
            chain.pop_back();
            used[lab.lambda1[y]] = 0;
        }
        return false;
    };

    for (std::uint64_t idx = 1 ; idx < total ; ++idx) {
        if (lab.lambda2[idx] <= lab.alpha)
            continue;
        chain.assign(1, idx);
        std::fill(used.begin(), used.end(), 0);
        used[lab.lambda1[idx]] = 1;
        if (extend())
            return fail("chain of p vectors with common lambda2 > alpha and distinct lambda1", chain);
    }
    return check;
}
