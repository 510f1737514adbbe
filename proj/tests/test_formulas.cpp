#include <doctest.h>

#include <kneser/errors.hpp>
#include <kneser/families.hpp>
#include <kneser/formulas.hpp>
#include <kneser/solver.hpp>

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

using namespace kneser;

namespace
{
    auto blocks(std::vector<int> sizes, std::vector<int> caps, int k, int r) -> PartitionInstance
    {
        return PartitionInstance::consecutive(sizes, caps, k, r);
    }

    // Direct maximization over every subset of parts, including the raw f computed inline.
    auto brute_m(const PartitionInstance & inst) -> std::int64_t
    {
        const int m = inst.part_count();
        const std::int64_t budget = static_cast<std::int64_t>(inst.r) * inst.k - 1;
        std::int64_t best = std::numeric_limits<std::int64_t>::min();
        for (std::uint32_t mask = 0 ; mask < (1u << m) ; ++mask) {
            std::int64_t weight = 0, gain = 0;
            for (int i = 0 ; i < m ; ++i)
                if (mask & (1u << i)) {
                    int p = inst.parts[i].size(), s = inst.capacities[i];
                    int f = p >= inst.r * s ? inst.r * s : p;
                    weight += f;
                    gain += p - f;
                }
            if (weight <= budget)
                best = std::max(best, budget + gain);
        }
        return best;
    }

    auto chi_of(const std::vector<Subset> & members, int n, int r) -> int
    {
        return chromatic_number(KneserInstance(Hypergraph(n, members), r)).chi;
    }

    auto random_partition(std::mt19937_64 & rng, int max_parts, int max_size, int r) -> PartitionInstance
    {
        std::vector<int> sizes, caps;
        int parts = 1 + static_cast<int>(rng() % max_parts);
        int total = 0;
        for (int i = 0 ; i < parts ; ++i) {
            sizes.push_back(1 + static_cast<int>(rng() % max_size));
            caps.push_back(1 + static_cast<int>(rng() % sizes.back()));
            total += caps.back();
        }
        int k = 1 + static_cast<int>(rng() % std::min(total, 3));
        return blocks(sizes, caps, k, r);
    }
}

TEST_CASE("f_r_pi")
{
    CHECK(f_r_pi(3, 1, 2) == 2);
    CHECK(f_r_pi(1, 1, 2) == 1);
    CHECK(f_r_pi(4, 2, 2) == 4);
    CHECK_THROWS_AS(f_r_pi(2, 3, 2), ValidationError);
    CHECK_THROWS_AS(f_r_pi(2, 1, 1), ValidationError);
}

TEST_CASE("M examples")
{
    auto three = m_r_pi(blocks({3, 3, 3}, {1, 1, 1}, 2, 2));
    CHECK(three.value == 4);
    CHECK(three.selected.size() == 1);
    CHECK(three.selected == std::vector<int>{0});

    for (int r = 2 ; r <= 4 ; ++r)
        for (int k = 1 ; k <= 4 ; ++k)
            for (int m = k ; m <= 12 ; ++m) {
                std::vector<int> ones(m, 1);
                auto inst = blocks(ones, ones, k, r);
                CHECK(m_r_pi(inst).value == r * k - 1);
                CHECK(brute_m(inst) == r * k - 1);
            }

    // q parts of size s and one of size t <= s, unit capacities.
    for (int s = 2 ; s <= 4 ; ++s)
        for (int r = 2 ; r <= s ; ++r)
            for (int k = 1 ; k <= 3 ; ++k)
                for (int t = 1 ; t <= s ; ++t) {
                    int q = k + 1;
                    std::vector<int> sizes(q, s);
                    sizes.push_back(t);
                    std::vector<int> ones(sizes.size(), 1);
                    CHECK(m_r_pi(blocks(sizes, ones, k, r)).value == (k - 1) * s + r - 1);
                }
}

TEST_CASE("M enumeration, knapsack and brute force agree")
{
    std::mt19937_64 rng(101);
    for (int trial = 0 ; trial < 400 ; ++trial) {
        int r = 2 + static_cast<int>(rng() % 3);
        auto inst = random_partition(rng, 10, 5, r);
        auto e = m_r_pi_enumerate(inst);
        auto d = m_r_pi_knapsack(inst);
        CHECK(e.value == brute_m(inst));
        CHECK(e.value == d.value);
        CHECK(e.selected == d.selected);
    }
    std::vector<int> many(30, 1);
    auto wide = blocks(many, many, 3, 2);
    CHECK_THROWS_AS(m_r_pi_enumerate(wide), TooLarge);
    CHECK(m_r_pi(wide).value == 5);
}

TEST_CASE("Kneser closed form")
{
    CHECK(chi_formula_kneser(5, 2, 2) == 3);
    CHECK(chi_formula_kneser(7, 2, 3) == 2);
    for (int r = 2 ; r <= 5 ; ++r)
        for (int k = 1 ; k <= 4 ; ++k)
            CHECK(chi_formula_kneser(r * k, k, r) == 2);
    CHECK(chromatic_number(KneserInstance(Hypergraph(4, enumerate_k_subsets(4, 2)), 2)).chi == 2);
    CHECK_THROWS_AS(chi_formula_kneser(5, 3, 2), HypothesisFail);
}

TEST_CASE("multiple Kneser graphs")
{
    CHECK(chi_formula_multiple_r2(blocks({3, 3, 3}, {1, 1, 1}, 2, 2)) == 6);
    for (int n = 2 ; n <= 16 ; ++n)
        for (int k = 1 ; 2 * k <= n ; ++k) {
            std::vector<int> ones(n, 1);
            CHECK(chi_formula_multiple_r2(blocks(ones, ones, k, 2)) == chi_formula_kneser(n, k, 2));
        }
    // M = 6 = n, so the value clamps to a single color.
    CHECK(m_r_pi(blocks({5, 1}, {1, 1}, 2, 2)).value == 6);
    CHECK(chi_formula_multiple_r2(blocks({5, 1}, {1, 1}, 2, 2)) == 1);
    CHECK(chi_formula_multiple_r2(blocks({4}, {2}, 2, 2)) == 2);
    CHECK(chi_formula_multiple_r2(blocks({2, 2}, {1, 1}, 1, 2)) == 4);
    CHECK_THROWS_AS(chi_formula_multiple_r2(blocks({3, 3}, {1, 1}, 1, 3)), HypothesisFail);

    // t(m - k + 1) for m parts of size t >= 2.
    for (int t = 2 ; t <= 3 ; ++t)
        for (int m = 1 ; m <= 4 ; ++m)
            for (int k = 1 ; k <= m ; ++k) {
                std::vector<int> sizes(m, t), ones(m, 1);
                CHECK(chi_formula_multiple_r2(blocks(sizes, ones, k, 2)) == t * (m - k + 1));
            }
}

TEST_CASE("small parts formula")
{
    CHECK(chi_formula_multiple_smallparts(blocks({2, 2, 2}, {1, 1, 1}, 2, 2)) == 4);
    CHECK(chi_formula_multiple_smallparts(blocks({3, 3}, {2, 2}, 2, 3)) == 2);
    auto bad = blocks({3, 3}, {1, 1}, 2, 2);
    CHECK(smallparts_offenders(bad) == std::vector<int>{0, 1});
    try {
        chi_formula_multiple_smallparts(bad);
        FAIL("expected a hypothesis failure");
    }
    catch (const HypothesisFail & e) {
        CHECK(std::string(e.what()).find("parts 1, 2") != std::string::npos);
    }
}

TEST_CASE("multiple Kneser formulas agree with the solver")
{
    std::mt19937_64 rng(211);
    int compared = 0;
    for (int trial = 0 ; trial < 300 && compared < 60 ; ++trial) {
        int r = 2 + static_cast<int>(rng() % 2);
        auto inst = random_partition(rng, 4, 4, r);
        auto verts = multiple_kneser_vertices(inst);
        if (verts.empty() || verts.size() > 30)
            continue;
        KneserInstance kg(Hypergraph(inst.n, verts), r);
        if (kg.count_hyperedges() == 0)
            continue;
        int chi = chromatic_number(kg).chi;
        CAPTURE(inst.n);
        CAPTURE(inst.k);
        CAPTURE(r);
        if (r == 2) {
            CHECK(chi_formula_multiple_r2(inst) == chi);
            ++compared;
        }
        if (smallparts_offenders(inst).empty() && inst.n >= r * inst.k) {
            CHECK(chi_formula_multiple_smallparts(inst) == chi);
            ++compared;
        }
    }
    CHECK(compared >= 30);
}

TEST_CASE("stable reports")
{
    auto six = chi_formula_stable(6, 2, 2, 2);
    CHECK(six.applicable);
    CHECK(six.value == 4);
    CHECK(six.name.find("r even") != std::string::npos);

    auto nine = chi_formula_stable(9, 2, 3, 2);
    CHECK(nine.applicable);
    CHECK(nine.value == 3);

    auto eight = chi_formula_stable(8, 2, 3, 2);
    CHECK(! eight.applicable);
    CHECK(! eight.value.has_value());
    CHECK(eight.upper_bound == 3);
    CHECK(! eight.trace.empty());

    auto ten = chi_formula_stable(10, 2, 2, 4);
    CHECK(! ten.applicable);
    CHECK(ten.upper_bound == 6);
    CHECK(ten.conjectured_value == 6);

    auto almost = chi_formula_stable(7, 2, 3, 2, true);
    CHECK(almost.applicable);
    CHECK(almost.value == chi_formula_kneser(7, 2, 3));

    auto tiny = chi_formula_stable(3, 2, 2, 2);
    CHECK(! tiny.applicable);
    CHECK(! tiny.upper_bound.has_value());
}

TEST_CASE("exact stable clauses agree with the solver")
{
    int compared = 0;
    for (int almost = 0 ; almost <= 1 ; ++almost)
        for (int r = 2 ; r <= 4 ; ++r)
            for (int s = 1 ; s <= 4 ; ++s)
                for (int k = 1 ; k <= 3 ; ++k)
                    for (int n = r * k ; n <= 11 ; ++n) {
                        auto report = chi_formula_stable(n, k, r, s, almost == 1);
                        if (! report.applicable)
                            continue;
                        auto members = almost ? enumerate_almost_stable(n, k, s) : enumerate_stable(n, k, s);
                        if (members.empty() || members.size() > 36)
                            continue;
                        CAPTURE(n);
                        CAPTURE(k);
                        CAPTURE(r);
                        CAPTURE(s);
                        CHECK(report.value == chi_of(members, n, r));
                        ++compared;
                    }
    CHECK(compared >= 40);
}

TEST_CASE("stable upper bounds hold")
{
    int compared = 0;
    for (int r = 2 ; r <= 3 ; ++r)
        for (int s = r ; s <= 4 ; ++s)
            for (int k = 1 ; k <= 3 ; ++k)
                for (int n = s * k ; n <= 11 ; ++n) {
                    auto members = enumerate_stable(n, k, s);
                    if (members.empty() || members.size() > 36)
                        continue;
                    auto report = chi_formula_stable(n, k, r, s);
                    REQUIRE(report.upper_bound.has_value());
                    CHECK(chi_of(members, n, r) <= *report.upper_bound);
                    ++compared;
                }
    CHECK(compared >= 20);
}

TEST_CASE("ceil_div")
{
    CHECK(ceil_div(7, 2) == 4);
    CHECK(ceil_div(6, 2) == 3);
    CHECK(ceil_div(0, 3) == 0);
    CHECK(ceil_div(-3, 2) == -1);
    CHECK_THROWS_AS(ceil_div(1, 0), ValidationError);
}
