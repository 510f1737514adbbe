#include <doctest.h>

#include <kneser/construct.hpp>
#include <kneser/errors.hpp>
#include <kneser/families.hpp>
#include <kneser/formulas.hpp>
#include <kneser/solver.hpp>

#include <algorithm>
#include <random>
#include <vector>

using namespace kneser;

namespace
{
    auto blocks(std::vector<int> sizes, std::vector<int> caps, int k, int r) -> PartitionInstance
    {
        return PartitionInstance::consecutive(sizes, caps, k, r);
    }

    auto lemma_bound(const PartitionInstance & inst) -> std::int64_t
    {
        auto m = m_r_pi(inst).value;
        return std::max<std::int64_t>(1, ceil_div(inst.n - m, inst.r - 1) + 1);
    }

    auto proper(const ConstructiveColoring & c, int r) -> bool
    {
        return is_proper(KneserInstance(c.family, r), c.coloring).proper;
    }

    // Whether r pairwise disjoint members all lie inside `region`.
    auto region_holds_hyperedge(const Hypergraph & family, Subset region, int r) -> bool
    {
        std::vector<Subset> inside;
        for (auto a : family.edges())
            if (a.is_subset_of(region))
                inside.push_back(a);
        auto rec = [&] (auto & self, std::size_t from, Subset used, int picked) -> bool {
            if (picked == r)
                return true;
            for (std::size_t i = from ; i < inside.size() ; ++i)
                if (inside[i].disjoint(used) && self(self, i + 1, used | inside[i], picked + 1))
                    return true;
            return false;
        };
        return rec(rec, 0, Subset(), 0);
    }
}

TEST_CASE("block coloring examples")
{
    auto k3 = blocks({3, 3, 3}, {1, 1, 1}, 2, 2);
    auto c = color_multiple_kneser(k3);
    CHECK(proper(c, 2));
    CHECK(c.coloring.used_colors() == 6);
    CHECK(c.trace.m_value == 4);
    CHECK(c.trace.palette == 6);
    CHECK(c.coloring.used_colors() == chi_formula_multiple_r2(k3));

    std::vector<int> ones(5, 1);
    auto petersen = color_multiple_kneser(blocks(ones, ones, 2, 2));
    CHECK(proper(petersen, 2));
    CHECK(petersen.coloring.used_colors() == 3);
    CHECK(petersen.trace.m_value == 3);
    CHECK(petersen.trace.blocks.size() == 2);

    // Every part selected: the whole hypergraph takes one color.
    auto whole = color_multiple_kneser(blocks({5, 1}, {1, 1}, 2, 2));
    CHECK(whole.trace.selected.size() == 2);
    CHECK(whole.coloring.used_colors() == 1);
    CHECK(proper(whole, 2));
}

TEST_CASE("trace invariants")
{
    auto inst = blocks({3, 2, 4, 1}, {1, 1, 2, 1}, 3, 2);
    auto c = color_multiple_kneser(inst);
    auto & t = c.trace;
    std::int64_t f_sum = 0;
    Subset selected;
    for (int i : t.selected) {
        f_sum += f_r_pi(inst.parts[i].size(), inst.capacities[i], inst.r);
        selected = selected | inst.parts[i];
    }
    CHECK(t.l_set.size() == inst.r * inst.k - 1 - f_sum);
    CHECK(t.t_set == (t.l_set | selected));
    CHECK(t.c_set.size() == inst.n - t.m_value);
    CHECK((t.c_set | t.t_set) == Subset::range(inst.n));
    for (std::size_t j = 0 ; j + 1 < t.blocks.size() ; ++j)
        CHECK(t.blocks[j].size() == inst.r - 1);
    if (! t.blocks.empty()) {
        CHECK(t.blocks.back().size() > 0);
        CHECK(t.blocks.back().size() <= inst.r - 1);
    }
    CHECK(! region_holds_hyperedge(c.family, t.t_set, inst.r));
    auto order = t.order;
    std::sort(order.begin(), order.end());
    CHECK(order == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("random partitions stay proper and within the bound")
{
    std::mt19937_64 rng(307);
    int built = 0;
    for (int trial = 0 ; trial < 400 && built < 150 ; ++trial) {
        int r = 2 + static_cast<int>(rng() % 2);
        std::vector<int> sizes, caps;
        int n = 0, total = 0;
        while (n < 14) {
            int size = 1 + static_cast<int>(rng() % 4);
            if (n + size > 14)
                break;
            sizes.push_back(size);
            caps.push_back(1 + static_cast<int>(rng() % size));
            n += size;
            total += caps.back();
            if (rng() % 4 == 0)
                break;
        }
        int k = 1 + static_cast<int>(rng() % std::min(total, 3));
        auto inst = blocks(sizes, caps, k, r);
        if (multiple_kneser_vertices(inst).size() > 400)
            continue;
        auto c = color_multiple_kneser(inst);
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(r);
        CHECK(proper(c, r));
        CHECK(c.coloring.used_colors() <= lemma_bound(inst));
        CHECK(c.trace.palette <= lemma_bound(inst));
        CHECK(! region_holds_hyperedge(c.family, c.trace.t_set, r));
        ++built;
    }
    CHECK(built >= 100);
}

TEST_CASE("non-consecutive parts")
{
    PartitionInstance inst;
    inst.n = 6;
    inst.parts = {Subset::from_elements({1, 4}), Subset::from_elements({2, 5}), Subset::from_elements({3, 6})};
    inst.capacities = {1, 1, 1};
    inst.k = 2;
    inst.r = 2;
    auto c = color_multiple_kneser(inst);
    CHECK(proper(c, 2));
    CHECK(c.coloring.used_colors() == chi_formula_multiple_r2(inst));
}

TEST_CASE("the construction meets exact values")
{
    std::mt19937_64 rng(401);
    int compared = 0;
    for (int trial = 0 ; trial < 200 && compared < 40 ; ++trial) {
        std::vector<int> sizes, caps;
        int parts = 1 + static_cast<int>(rng() % 4);
        int total = 0;
        for (int i = 0 ; i < parts ; ++i) {
            sizes.push_back(1 + static_cast<int>(rng() % 3));
            caps.push_back(1 + static_cast<int>(rng() % sizes.back()));
            total += caps.back();
        }
        int k = 1 + static_cast<int>(rng() % std::min(total, 2));
        auto inst = blocks(sizes, caps, k, 2);
        auto c = color_multiple_kneser(inst);
        if (c.family.size() > 30)
            continue;
        auto chi = chromatic_number(KneserInstance(c.family, 2)).chi;
        CHECK(c.coloring.used_colors() == chi_formula_multiple_r2(inst));
        CHECK(c.coloring.used_colors() == std::max(chi, 1));
        ++compared;
    }
    CHECK(compared >= 20);
}

TEST_CASE("stable colorings")
{
    auto seven = color_stable_kneser(7, 2, 2, 2);
    CHECK(seven.family.size() == 14);
    CHECK(is_proper(KneserInstance(seven.family, 2), seven.coloring).proper);
    CHECK(seven.coloring.used_colors() <= 5);

    auto six = color_stable_kneser(6, 2, 2, 2);
    CHECK(is_proper(KneserInstance(six.family, 2), six.coloring).proper);
    CHECK(six.coloring.used_colors() <= 4);
    CHECK(six.coloring.used_colors() == *chi_formula_stable(6, 2, 2, 2).value);

    auto eight = color_stable_kneser(8, 2, 4, 2);
    CHECK(is_proper(KneserInstance(eight.family, 2), eight.coloring).proper);
    CHECK(eight.coloring.used_colors() <= 4);

    CHECK_THROWS_AS(color_stable_kneser(6, 2, 1, 2), ValidationError);
    CHECK_THROWS_AS(color_stable_kneser(5, 3, 2, 2), ValidationError);
}

TEST_CASE("stable colorings across parameters")
{
    for (int r = 2 ; r <= 3 ; ++r)
        for (int s = r ; s <= 4 ; ++s)
            for (int k = 1 ; k <= 3 ; ++k)
                for (int n = s * k ; n <= 12 ; ++n) {
                    auto c = color_stable_kneser(n, k, s, r);
                    CHECK(c.family.size() == enumerate_stable(n, k, s).size());
                    CHECK(is_proper(KneserInstance(c.family, r), c.coloring).proper);
                    CHECK(c.coloring.used_colors() <= std::max<std::int64_t>(1, ceil_div(n - s * (k - 1), r - 1)));
                }
}
