#include <doctest.h>

#include <kneser/errors.hpp>
#include <kneser/families.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

using namespace kneser;

namespace
{
    // All k-subsets of [n] by bitmask scan, sorted with std::lexicographical_compare on element lists.
    auto all_k_subsets(int n, int k) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        for (std::uint32_t mask = 0 ; mask < (1u << n) ; ++mask) {
            if (__builtin_popcount(mask) != k)
                continue;
            std::vector<int> s;
            for (int i = 0 ; i < n ; ++i)
                if (mask & (1u << i))
                    s.push_back(i + 1);
            out.push_back(s);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    auto as_lists(const std::vector<Subset> & family) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        for (auto s : family)
            out.push_back(s.elements());
        return out;
    }

    auto stable_by_definition(const std::vector<int> & a, int n, int s) -> bool
    {
        for (int x : a)
            for (int y : a)
                if (x < y && (y - x < s || y - x > n - s))
                    return false;
        return true;
    }

    auto almost_stable_by_definition(const std::vector<int> & a, int s) -> bool
    {
        for (std::size_t i = 1 ; i < a.size() ; ++i)
            if (a[i] - a[i - 1] < s)
                return false;
        return true;
    }

    auto filter(const std::vector<std::vector<int>> & in, auto keep) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        for (auto & a : in)
            if (keep(a))
                out.push_back(a);
        return out;
    }

    auto disjoint_lists(const std::vector<int> & a, const std::vector<int> & b) -> bool
    {
        for (int x : a)
            if (std::find(b.begin(), b.end(), x) != b.end())
                return false;
        return true;
    }

    // Every r-tuple of vertex indices i_1 < ... < i_r with pairwise disjoint members.
    auto brute_hyperedges(const std::vector<std::vector<int>> & vertices, int r) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        std::vector<int> pick;
        auto rec = [&] (auto & self, int from) -> void {
            if (static_cast<int>(pick.size()) == r) {
                out.push_back(pick);
                return;
            }
            for (int v = from ; v < static_cast<int>(vertices.size()) ; ++v) {
                bool ok = true;
                for (int u : pick)
                    ok = ok && disjoint_lists(vertices[u], vertices[v]);
                if (! ok)
                    continue;
                pick.push_back(v);
                self(self, v + 1);
                pick.pop_back();
            }
        };
        rec(rec, 0);
        return out;
    }

    auto streamed(const KneserInstance & inst) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        for (auto it = inst.begin() ; it != inst.end() ; ++it)
            out.push_back(*it);
        return out;
    }
}

TEST_CASE("subset basics and lexicographic order")
{
    auto a = Subset::from_elements({1, 2});
    auto b = Subset::from_elements({1, 2, 3});
    auto c = Subset::from_elements({1, 3});
    auto d = Subset::from_elements({2});
    CHECK(a < b);
    CHECK(b < c);
    CHECK(c < d);
    CHECK(a.size() == 2);
    CHECK(b.max_element() == 3);
    CHECK(d.min_element() == 2);
    CHECK(Subset::range(4).elements() == std::vector<int>{1, 2, 3, 4});
    CHECK(Subset::from_elements({64}).contains(64));
    CHECK_THROWS_AS(Subset::from_elements({0}), ValidationError);
    CHECK_THROWS_AS(Subset::from_elements({65}), ValidationError);
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(3, 5) == 0);
}

TEST_CASE("enumerate_k_subsets examples")
{
    CHECK(enumerate_k_subsets(5, 2).size() == 10);
    auto full = enumerate_k_subsets(4, 4);
    REQUIRE(full.size() == 1);
    CHECK(full[0] == Subset::range(4));
    auto six = enumerate_k_subsets(6, 3);
    CHECK(six.size() == 20);
    CHECK(six.front() == Subset::from_elements({1, 2, 3}));
}

TEST_CASE("enumerate_k_subsets agrees with a bitmask scan")
{
    for (int n = 0 ; n <= 9 ; ++n)
        for (int k = 0 ; k <= n ; ++k)
            CHECK(as_lists(enumerate_k_subsets(n, k)) == all_k_subsets(n, k));
}

TEST_CASE("stable and almost stable examples")
{
    CHECK(enumerate_stable(6, 2, 2).size() == 9);
    CHECK(enumerate_stable(4, 2, 2) == std::vector<Subset>{Subset::from_elements({1, 3}), Subset::from_elements({2, 4})});
    CHECK(enumerate_stable(7, 3, 1) == enumerate_k_subsets(7, 3));
    CHECK(enumerate_almost_stable(5, 2, 2).size() == 6);
    CHECK(enumerate_almost_stable(4, 2, 2) == std::vector<Subset>{Subset::from_elements({1, 3}),
            Subset::from_elements({1, 4}), Subset::from_elements({2, 4})});
}

TEST_CASE("stable families match the distance definitions")
{
    for (int n = 1 ; n <= 10 ; ++n)
        for (int k = 1 ; k <= std::min(n, 4) ; ++k)
            for (int s = 1 ; s <= 5 ; ++s) {
                auto all = all_k_subsets(n, k);
                auto stable = as_lists(enumerate_stable(n, k, s));
                auto almost = as_lists(enumerate_almost_stable(n, k, s));
                CHECK(stable == filter(all, [&] (auto & a) { return stable_by_definition(a, n, s); }));
                CHECK(almost == filter(all, [&] (auto & a) { return almost_stable_by_definition(a, s); }));
                CHECK(std::includes(almost.begin(), almost.end(), stable.begin(), stable.end()));
                CHECK(std::includes(all.begin(), all.end(), almost.begin(), almost.end()));
            }
}

TEST_CASE("multiple Kneser vertices")
{
    std::vector<int> sizes{3, 3, 3}, caps{1, 1, 1};
    auto inst = PartitionInstance::consecutive(sizes, caps, 2, 2);
    auto verts = multiple_kneser_vertices(inst);
    CHECK(verts.size() == 27);
    auto same_part = [] (const std::vector<int> & a) { return (a[0] - 1) / 3 == (a[1] - 1) / 3; };
    CHECK(as_lists(verts) == filter(all_k_subsets(9, 2), [&] (auto & a) { return ! same_part(a); }));

    std::vector<int> ones(6, 1);
    auto singles = PartitionInstance::consecutive(ones, ones, 3, 2);
    CHECK(multiple_kneser_vertices(singles) == enumerate_k_subsets(6, 3));

    std::vector<int> two{2}, one{1};
    auto k1 = PartitionInstance::consecutive(two, one, 1, 2);
    CHECK(multiple_kneser_vertices(k1) == std::vector<Subset>{Subset::from_elements({1}), Subset::from_elements({2})});
    CHECK_THROWS_AS(PartitionInstance::consecutive(two, one, 2, 2), ValidationError);
}

TEST_CASE("full capacities give every k-subset")
{
    std::mt19937_64 rng(7);
    for (int trial = 0 ; trial < 50 ; ++trial) {
        std::vector<int> sizes;
        int n = 0;
        int parts = 1 + static_cast<int>(rng() % 4);
        for (int i = 0 ; i < parts ; ++i) {
            sizes.push_back(1 + static_cast<int>(rng() % 3));
            n += sizes.back();
        }
        int k = 1 + static_cast<int>(rng() % n);
        auto inst = PartitionInstance::consecutive(sizes, sizes, k, 2);
        CHECK(multiple_kneser_vertices(inst) == enumerate_k_subsets(n, k));
    }
}

TEST_CASE("partition validation names the invariant")
{
    std::vector<int> sizes{2, 2}, caps{3, 1};
    try {
        PartitionInstance::consecutive(sizes, caps, 2, 2).validate();
        FAIL("expected a validation error");
    }
    catch (const ValidationError & e) {
        CHECK(std::string(e.what()).find("s_i <= |P_i|") != std::string::npos);
    }

    PartitionInstance overlap;
    overlap.n = 3;
    overlap.parts = {Subset::from_elements({1, 2}), Subset::from_elements({2, 3})};
    overlap.capacities = {1, 1};
    overlap.k = 2;
    CHECK_THROWS_AS(overlap.validate(), ValidationError);

    PartitionInstance gap;
    gap.n = 3;
    gap.parts = {Subset::from_elements({1, 2})};
    gap.capacities = {1};
    gap.k = 1;
    CHECK_THROWS_AS(gap.validate(), ValidationError);

    auto ok = PartitionInstance::consecutive(std::vector<int>{2, 3}, std::vector<int>{1, 2}, 3, 2);
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.is_consecutive());
}

TEST_CASE("Kneser instance examples")
{
    KneserInstance petersen(Hypergraph(5, enumerate_k_subsets(5, 2)), 2);
    CHECK(petersen.num_vertices() == 10);
    CHECK(petersen.count_hyperedges() == 15);

    KneserInstance none(Hypergraph(4, enumerate_k_subsets(4, 2)), 3);
    CHECK(none.count_hyperedges() == 0);
    CHECK((none.begin() == none.end()));

    Hypergraph mixed(3, {Subset::from_elements({1}), Subset::from_elements({2, 3})});
    CHECK(mixed.has_singleton_edge());
    KneserInstance one(mixed, 2);
    CHECK(streamed(one) == std::vector<std::vector<int>>{{0, 1}});

    CHECK_THROWS_AS(KneserInstance(mixed, 1), ValidationError);
}

TEST_CASE("hyperedge count of KG^2(n,k) is C(n,k) C(n-k,k) / 2")
{
    for (int n = 1 ; n <= 8 ; ++n)
        for (int k = 1 ; k <= n ; ++k) {
            KneserInstance inst(Hypergraph(n, enumerate_k_subsets(n, k)), 2);
            CHECK(inst.count_hyperedges() == binomial(n, k) * binomial(n - k, k) / 2);
        }
}

TEST_CASE("hyperedge iterator agrees with brute force")
{
    std::mt19937_64 rng(11);
    for (int trial = 0 ; trial < 40 ; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);
        int r = 2 + static_cast<int>(rng() % 3);
        std::vector<Subset> edges;
        for (std::uint32_t mask = 1 ; mask < (1u << n) ; ++mask)
            if (rng() % 4 == 0)
                edges.push_back(Subset::from_mask(mask));
        Hypergraph family(n, edges);
        KneserInstance inst(family, r);
        auto expected = brute_hyperedges(as_lists(std::vector<Subset>(family.edges().begin(), family.edges().end())), r);
        CHECK(streamed(inst) == expected);
        CHECK(inst.count_hyperedges() == expected.size());
        std::vector<std::vector<int>> callback;
        inst.for_each_hyperedge([&] (std::span<const int> e) { callback.emplace_back(e.begin(), e.end()); });
        CHECK(callback == expected);
    }
}

TEST_CASE("hypergraph validation and lookup")
{
    CHECK_THROWS_AS(Hypergraph(3, {Subset()}), ValidationError);
    CHECK_THROWS_AS(Hypergraph(3, {Subset::from_elements({1}), Subset::from_elements({1})}), ValidationError);
    CHECK_THROWS_AS(Hypergraph(3, {Subset::from_elements({4})}), ValidationError);
    Hypergraph h(4, {Subset::from_elements({3, 4}), Subset::from_elements({1, 2})});
    CHECK(h.edge(0) == Subset::from_elements({1, 2}));
    CHECK(h.index_of(Subset::from_elements({3, 4})) == 1);
    CHECK(h.index_of(Subset::from_elements({1, 3})) == -1);
}

TEST_CASE("sign vectors")
{
    auto x = SignVector::from_entries(4, {4, 0, 2, 1, 0, 1, 3, 1});
    CHECK(x.part(1) == Subset::from_elements({4, 6, 8}));
    CHECK(x.part(4) == Subset::from_elements({1}));
    CHECK(x.support() == Subset::from_elements({1, 3, 4, 6, 7, 8}));
    CHECK(x[3] == 2);

    CHECK_THROWS_AS(SignVector::from_entries(2, {0, 0}), ValidationError);
    CHECK_THROWS_AS(SignVector::from_entries(2, {3, 0}), ValidationError);
    CHECK_THROWS_AS(SignVector::from_entries(1, {1}), ValidationError);
    CHECK_THROWS_AS(SignVector::from_parts(3, {Subset::from_elements({1, 2}), Subset::from_elements({2})}),
            ValidationError);

    auto small = SignVector::from_entries(2, {1, 0, 0});
    auto big = SignVector::from_entries(2, {1, 2, 0});
    auto other = SignVector::from_entries(2, {2, 2, 0});
    CHECK(small.precedes(big));
    CHECK(! big.precedes(small));
    CHECK(! small.precedes(other));
    CHECK(small.precedes(small));
}

TEST_CASE("sign vector round trip through parts")
{
    for (int r = 2 ; r <= 5 ; ++r)
        for (int n = 1 ; n <= 8 ; ++n) {
            std::uint64_t total = 1;
            for (int i = 0 ; i < n ; ++i)
                total *= static_cast<std::uint64_t>(r + 1);
            if (total > 40000)
                continue;
            int bad = 0;
            for (std::uint64_t code = 1 ; code < total ; ++code) {
                std::vector<int> entries(n);
                std::uint64_t c = code;
                for (int i = 0 ; i < n ; ++i) {
                    entries[i] = static_cast<int>(c % (r + 1));
                    c /= r + 1;
                }
                auto x = SignVector::from_entries(r, entries);
                std::vector<Subset> parts(x.parts().begin(), x.parts().end());
                auto y = SignVector::from_parts(n, parts);
                if (! (x == y) || std::vector<int>(y.entries().begin(), y.entries().end()) != entries)
                    ++bad;
            }
            CHECK(bad == 0);
        }
}

TEST_CASE("induced restriction")
{
    Hypergraph all4(4, enumerate_k_subsets(4, 2));
    auto x = SignVector::from_parts(4, {Subset::from_elements({1, 2}), Subset::from_elements({3})});
    auto restricted = induced_restriction(all4, x);
    CHECK(restricted.size() == 1);
    CHECK(restricted.edge(0) == Subset::from_elements({1, 2}));
    CHECK(restricted.ground() == Subset::from_elements({1, 2, 3}));

    auto singletons = SignVector::from_parts(4, {Subset::from_elements({1}), Subset::from_elements({2})});
    CHECK(induced_restriction(all4, singletons).size() == 0);

    auto stable = enumerate_stable(6, 2, 2);
    Hypergraph sg(6, stable);
    auto odd_even = SignVector::from_parts(6, {Subset::from_elements({1, 3, 5}), Subset::from_elements({2, 4, 6})});
    std::vector<Subset> expected;
    for (auto a : stable)
        if (a.is_subset_of(odd_even.part(1)) || a.is_subset_of(odd_even.part(2)))
            expected.push_back(a);
    auto got = induced_restriction(sg, odd_even);
    CHECK(got.size() == 6);
    CHECK(std::vector<Subset>(got.edges().begin(), got.edges().end()) == expected);
}
