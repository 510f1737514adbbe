#include <kneser/grid.hpp>
#include <kneser/construct.hpp>
#include <kneser/errors.hpp>
#include <kneser/formulas.hpp>
#include <kneser/invariants.hpp>
#include <kneser/witness.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace kneser;

namespace
{
    using Clock = std::chrono::steady_clock;

    class Row
    {
        public:
            Row(GridRow & row) : _row(row) { }

            auto expect(bool ok, const std::string & what) -> void
            {
                _row.details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
                if (! ok)
                    _row.passed = false;
            }

        private:
            GridRow & _row;
    };

    auto elapsed(Clock::time_point since) -> double
    {
        return std::chrono::duration<double>(Clock::now() - since).count();
    }

    auto str(double v) -> std::string
    {
        std::ostringstream o;
        o.precision(3);
        o << v;
        return o.str();
    }

    auto independent(const GridOptions & options) -> SolveOptions
    {
        SolveOptions o;
        o.budget = options.budget;
        o.theorem_lower_bound = false;
        return o;
    }

    auto all_k(int n, int k) -> Hypergraph { return Hypergraph(n, enumerate_k_subsets(n, k)); }
    auto stable(int n, int k, int s) -> Hypergraph { return Hypergraph(n, enumerate_stable(n, k, s)); }

    auto fractional_multiple(int t, int m, int k, int r) -> PartitionInstance
    {
        std::vector<int> sizes(m, t), caps(m, 1);
        return PartitionInstance::consecutive(sizes, caps, k, r);
    }

    auto singleton_partition(int n, int k, int r) -> PartitionInstance
    {
        std::vector<int> sizes(n, 1), caps(n, 1);
        return PartitionInstance::consecutive(sizes, caps, k, r);
    }

    // Exact chromatic number compared against a closed form within a time limit.
    auto solver_matches(Row & row, const GridOptions & options, const std::string & name, const Hypergraph & family,
            int r, std::int64_t expected, double limit) -> void
    {
        auto start = Clock::now();
        KneserInstance instance(family, r);
        auto result = chromatic_number(instance, independent(options));
        double secs = elapsed(start);
        bool proper = is_proper(instance, result.witness).proper;
        row.expect(result.chi == expected && proper,
                "chi(" + name + ") = " + std::to_string(result.chi) + ", closed form " + std::to_string(expected)
                + ", witness proper: " + (proper ? "yes" : "no"));
        row.expect(secs < limit, name + " solved in " + str(secs) + " s (limit " + str(limit) + " s)");
    }

    auto row_petersen(Row & row, const GridOptions & o) -> void
    {
        solver_matches(row, o, "KG^2(5,2)", all_k(5, 2), 2, chi_formula_kneser(5, 2, 2), 1.0);
        row.expect(chi_formula_kneser(5, 2, 2) == 3, "closed form ceil((5-2)/1) = 3");
    }

    auto row_kneser_graphs(Row & row, const GridOptions & o) -> void
    {
        solver_matches(row, o, "KG^2(6,2)", all_k(6, 2), 2, chi_formula_kneser(6, 2, 2), 5.0);
        solver_matches(row, o, "KG^2(7,2)", all_k(7, 2), 2, chi_formula_kneser(7, 2, 2), 5.0);
        row.expect(chi_formula_kneser(6, 2, 2) == 4 && chi_formula_kneser(7, 2, 2) == 5, "closed forms 4 and 5");
    }

    auto row_kneser_hypergraphs(Row & row, const GridOptions & o) -> void
    {
        auto a = all_k(7, 2), b = all_k(9, 2);
        row.expect(a.size() == 21 && b.size() == 36, "vertex counts 21 and 36");
        solver_matches(row, o, "KG^3(7,2)", a, 3, chi_formula_kneser(7, 2, 3), 60.0);
        solver_matches(row, o, "KG^3(9,2)", b, 3, chi_formula_kneser(9, 2, 3), 60.0);
        row.expect(chi_formula_kneser(7, 2, 3) == 2 && chi_formula_kneser(9, 2, 3) == 3, "closed forms 2 and 3");
    }

    auto row_schrijver_hypergraph(Row & row, const GridOptions & o) -> void
    {
        auto family = stable(9, 2, 2);
        row.expect(family.size() == 27, "KG^3(9,2)_2-stab has 27 vertices");
        auto report = chi_formula_stable(9, 2, 3, 2);
        row.expect(report.applicable && report.value == 3, "exact clause fires with value 3 (9 - 2 not divisible by 2)");
        solver_matches(row, o, "KG^3(9,2)_2-stab", family, 3, report.value.value_or(-1), 300.0);
    }

    auto row_schrijver_graphs(Row & row, const GridOptions & o) -> void
    {
        solver_matches(row, o, "KG^2(6,2)_2-stab", stable(6, 2, 2), 2, 6 - 4 + 2, 10.0);
        solver_matches(row, o, "KG^2(8,3)_2-stab", stable(8, 3, 2), 2, 8 - 6 + 2, 10.0);
        auto a = chi_formula_stable(6, 2, 2, 2), b = chi_formula_stable(8, 3, 2, 2);
        row.expect(a.value == 4 && b.value == 4, "stable formula reports 4 for both");
    }

    auto row_fractional_multiple(Row & row, const GridOptions & o) -> void
    {
        auto inst = fractional_multiple(3, 3, 2, 2);
        auto family = Hypergraph(inst.n, multiple_kneser_vertices(inst));
        row.expect(family.size() == 27, "K^{2,3}_3 has 27 vertices");
        auto formula = chi_formula_multiple_r2(inst);
        row.expect(formula == 3 * (3 - 2 + 1), "max{1, n - M + 1} = 6 = t(m-k+1)");
        solver_matches(row, o, "K^{2,3}_3", family, 2, formula, 30.0);
    }

    auto row_constructive(Row & row, const GridOptions & o) -> void
    {
        auto check = [&] (const std::string & name, const PartitionInstance & inst) {
            auto built = color_multiple_kneser(inst);
            KneserInstance instance(built.family, inst.r);
            auto chi = chromatic_number(instance, independent(o)).chi;
            bool proper = is_proper(instance, built.coloring).proper;
            row.expect(built.trace.used == chi && proper,
                    name + ": block coloring uses " + std::to_string(built.trace.used) + " colors, chi = "
                    + std::to_string(chi) + ", proper: " + (proper ? "yes" : "no"));
        };
        check("KG^2(5,2)", singleton_partition(5, 2, 2));
        check("KG^2(6,2)", singleton_partition(6, 2, 2));
        check("KG^2(7,2)", singleton_partition(7, 2, 2));
        check("K^{2,3}_3", fractional_multiple(3, 3, 2, 2));

        auto st = color_stable_kneser(7, 2, 2, 2);
        bool proper = is_proper(KneserInstance(st.family, 2), st.coloring).proper;
        row.expect(st.family.size() == 14 && st.trace.used <= 5 && proper,
                "KG^2(7,2)_2-stab: " + std::to_string(st.trace.used) + " colors (<= 5), proper: "
                + (proper ? "yes" : "no"));
    }

    auto row_dominance(Row & row, const GridOptions &) -> void
    {
        int compared = 0, failures = 0;
        bool strict_at_6_2 = false;
        for (int k = 1 ; k <= 3 ; ++k)
            for (int n = 2 * k ; n <= 9 ; ++n) {
                auto family = stable(n, k, 2);
                AltQuery q;
                q.family = family;
                q.r = 2;
                auto alt = bound_alternation(q);
                auto dk = bound_dolnikov_kriz(family, 2);
                ++compared;
                if (alt.value < dk.value) {
                    ++failures;
                    row.expect(false, "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": alternation "
                            + alt.value.to_string() + " < defect " + dk.value.to_string());
                }
                if (6 == n && 2 == k) {
                    strict_at_6_2 = alt.value == Fraction::make(3, 1) && dk.value == Fraction::make(2, 1);
                    row.expect(strict_at_6_2, "(6,2): alternation bound " + alt.value.to_string()
                            + " > defect bound " + dk.value.to_string());
                }
            }
        row.expect(0 == failures, std::to_string(compared) + " stable families compared, alternation bound never below");
    }

    auto row_labelings(Row & row, const GridOptions & o) -> void
    {
        auto start = Clock::now();
        auto sg = stable(6, 2, 2);
        auto coloring = chromatic_number(KneserInstance(sg, 2), independent(o)).witness;
        auto fan = build_fan_labeling(sg, coloring);
        auto fan_check = check_fan_hypotheses(fan);
        row.expect(fan_check.ok && fan_check.points_checked == 728,
                "Fan labeling of SG(6,2): " + std::string(fan_check.ok ? "both conditions hold" : fan_check.failure)
                + " over " + std::to_string(fan_check.points_checked) + " points (m = " + std::to_string(fan.m) + ")");
        auto chain = find_fan_chain(fan);
        row.expect(static_cast<int>(chain.vectors.size()) == 6, "alternating chain of length 6 found");

        auto k52 = all_k(5, 2);
        auto three = chromatic_number(KneserInstance(k52, 2), independent(o)).witness;
        auto zp = build_zp_labeling(k52, three, 2, 2);
        auto zp_check = check_zp_hypotheses(zp);
        row.expect(zp_check.ok && zp_check.points_checked == 242,
                "Z_2 labeling of ([5] choose 2) at level 2: " + std::string(zp_check.ok ? "all three conditions hold" : zp_check.failure)
                + " over " + std::to_string(zp_check.points_checked) + " points");
        row.expect(zp_check.conclusion, "alpha + (m - alpha)(p - 1) = " + std::to_string(zp.alpha + (zp.m - zp.alpha))
                + " >= n = 5 (alpha = " + std::to_string(zp.alpha) + ", m = " + std::to_string(zp.m) + ")");
        double secs = elapsed(start);
        row.expect(secs < 60.0, "labelings verified in " + str(secs) + " s (limit 60 s)");
    }

    auto row_colorful(Row & row, const GridOptions & o) -> void
    {
        auto sg = stable(6, 2, 2);
        AltQuery q;
        q.family = sg;
        q.r = 2;
        q.strategy = PermutationStrategy::exhaustive;
        q.threads = o.threads;
        auto alt = alt_min(q);
        row.expect(alt.value == 3 && ! alt.heuristic, "alt_2(SG(6,2)) = " + std::to_string(alt.value)
                + " over " + std::to_string(alt.permutations_examined) + " orderings");
        const int r = 6 - alt.value;

        std::mt19937_64 rng(o.seed);
        std::set<std::vector<int>> distinct;
        int found = 0;
        for (int trial = 0 ; trial < 10 ; ++trial) {
            auto opts = independent(o);
            opts.vertex_order.resize(sg.size());
            std::iota(opts.vertex_order.begin(), opts.vertex_order.end(), 0);
            std::shuffle(opts.vertex_order.begin(), opts.vertex_order.end(), rng);
            auto result = chromatic_number(KneserInstance(sg, 2), opts);
            if (result.chi != 4) {
                row.expect(false, "solver returned chi = " + std::to_string(result.chi));
                continue;
            }
            distinct.insert(result.witness.colors);
            try {
                auto w = find_colorful_bipartite(sg, result.witness, r);
                if (is_colorful_witness(sg, result.witness, r, w))
                    ++found;
                else
                    row.expect(false, "trial " + std::to_string(trial) + ": witness fails validation");
            }
            catch (const TheoremViolation & e) {
                row.expect(false, "trial " + std::to_string(trial) + ": " + e.what());
            }
        }
        row.expect(10 == found, std::to_string(found) + "/10 optimal colorings carry an alternating K_{2,1} ("
                + std::to_string(distinct.size()) + " distinct colorings)");
    }

    auto row_properties(Row & row, const GridOptions & o) -> void
    {
        std::mt19937_64 rng(o.seed);
        auto uniform = [&] (int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
        auto permutation = [&] (int n) {
            std::vector<int> p(n);
            std::iota(p.begin(), p.end(), 1);
            std::shuffle(p.begin(), p.end(), rng);
            return p;
        };
        const int cases = o.property_cases;

        int bad = 0;
        for (int c = 0 ; c < cases ; ++c) {
            int n = uniform(1, 8), r = uniform(2, 3);
            std::vector<int> x(n), y(n);
            do
                for (auto & v : x)
                    v = uniform(0, r);
            while (std::all_of(x.begin(), x.end(), [] (int v) { return 0 == v; }));
            for (int i = 0 ; i < n ; ++i)
                y[i] = x[i] != 0 ? x[i] : uniform(0, r);
            auto sx = SignVector::from_entries(r, x), sy = SignVector::from_entries(r, y);
            auto sigma = permutation(n);
            if (! sx.precedes(sy) || alt_of(sx, sigma) > alt_of(sy, sigma))
                ++bad;
        }
        row.expect(0 == bad, "alt monotonicity under X <= Y: " + std::to_string(cases) + " cases, "
                + std::to_string(bad) + " failures");

        bad = 0;
        for (int c = 0 ; c < cases ; ++c) {
            int r = uniform(2, 3), s = uniform(2, 3), n = uniform(r, 10);
            std::vector<int> x(n);
            auto covers = [&] {
                for (int j = 1 ; j <= r ; ++j)
                    if (std::find(x.begin(), x.end(), j) == x.end())
                        return false;
                return true;
            };
            do
                for (auto & v : x)
                    v = uniform(0, r);
            while (! covers());
            auto sx = SignVector::from_entries(r, x);
            std::vector<SignVector> nested;
            for (int j = 1 ; j <= r ; ++j) {
                std::vector<int> y(n, 0);
                bool any = false;
                while (! any)
                    for (int i = 0 ; i < n ; ++i)
                        if (x[i] == j) {
                            y[i] = uniform(0, s);
                            any = any || y[i] != 0;
                        }
                nested.push_back(SignVector::from_entries(s, y));
            }
            try {
                auto z = concat_alt(sx, nested, permutation(n));
                if (z.combined < z.nested_sum)
                    ++bad;
            }
            catch (const Error &) {
                ++bad;
            }
        }
        row.expect(0 == bad, "concatenated alternation >= sum of nested alternations: " + std::to_string(cases)
                + " cases, " + std::to_string(bad) + " failures");

        bad = 0;
        for (int c = 0 ; c < cases ; ++c) {
            int n = uniform(1, 12), k = uniform(1, n), s = uniform(1, 4);
            auto all = enumerate_k_subsets(n, k);
            auto st = enumerate_stable(n, k, s), al = enumerate_almost_stable(n, k, s);
            std::vector<Subset> st_ref, al_ref;
            for (auto a : all) {
                auto e = a.elements();
                bool gaps = true;
                for (std::size_t i = 0 ; i < e.size() ; ++i)
                    for (std::size_t j = i + 1 ; j < e.size() ; ++j)
                        gaps = gaps && e[j] - e[i] >= s;
                bool wrap = gaps;
                for (std::size_t i = 0 ; i < e.size() ; ++i)
                    for (std::size_t j = i + 1 ; j < e.size() ; ++j)
                        wrap = wrap && e[j] - e[i] <= n - s;
                if (gaps)
                    al_ref.push_back(a);
                if (wrap)
                    st_ref.push_back(a);
            }
            bool nested = std::includes(al.begin(), al.end(), st.begin(), st.end())
                && std::includes(all.begin(), all.end(), al.begin(), al.end());
            if (! nested || st != st_ref || al != al_ref)
                ++bad;
        }
        row.expect(0 == bad, "stable within almost stable within all k-subsets: " + std::to_string(cases)
                + " cases, " + std::to_string(bad) + " failures");

        bad = 0;
        for (int c = 0 ; c < cases ; ++c) {
            int m = uniform(1, 12);
            std::vector<int> sizes(m), caps(m);
            int total = 0;
            for (int i = 0 ; i < m ; ++i) {
                sizes[i] = uniform(1, 4);
                caps[i] = uniform(1, sizes[i]);
                total += caps[i];
            }
            auto inst = PartitionInstance::consecutive(sizes, caps, uniform(1, total), uniform(2, 4));
            auto a = m_r_pi_enumerate(inst), b = m_r_pi_knapsack(inst);
            if (a.value != b.value || a.selected != b.selected)
                ++bad;
        }
        row.expect(0 == bad, "M by subset enumeration = M by knapsack (value and witness): "
                + std::to_string(cases) + " cases, " + std::to_string(bad) + " failures");

        bad = 0;
        int checked = 0;
        for (int n = 1 ; n <= 8 ; ++n)
            for (int k = 1 ; k <= std::min(3, n) ; ++k)
                for (int t = 1 ; t <= 2 ; ++t) {
                    auto family = stable(n, k, t);
                    auto cd = colorability_defect(family, 2);
                    ++checked;
                    if (cd.value != std::max(n - t * 2 * (k - 1), 0)) {
                        ++bad;
                        row.expect(false, "cd_2 of (" + std::to_string(n) + "," + std::to_string(k) + ")_"
                                + std::to_string(t) + " = " + std::to_string(cd.value));
                    }
                }
        row.expect(0 == bad, "cd_2 of t-stable k-sets = max{n - 2t(k-1), 0}: " + std::to_string(checked)
                + " families, " + std::to_string(bad) + " failures");
    }

    struct RowSpec
    {
        const char * tag;
        void (*run)(Row &, const GridOptions &);
    };

    const RowSpec specs[grid_rows] = {
        {"Kneser graph formula on the Petersen graph", row_petersen},
        {"Kneser graph formula, KG(6,2) and KG(7,2)", row_kneser_graphs},
        {"Kneser hypergraph formula, r = 3", row_kneser_hypergraphs},
        {"2-stable hypergraph with n - k not divisible by r - 1", row_schrijver_hypergraph},
        {"2-stable Kneser graphs: n - 2k + 2", row_schrijver_graphs},
        {"fractional multiple Kneser graph: t(m - k + 1)", row_fractional_multiple},
        {"block colorings are proper and tight", row_constructive},
        {"alternation bound dominates the colorability-defect bound", row_dominance},
        {"Ky Fan and Z_p-Tucker labeling hypotheses", row_labelings},
        {"colorful alternating complete bipartite subgraph", row_colorful},
        {"seeded property suites", row_properties},
    };
}

auto kneser::run_grid_row(int id, const GridOptions & options) -> GridRow
{
    if (id < 1 || id > grid_rows)
        throw ValidationError("grid row must lie in 1.." + std::to_string(grid_rows));

    GridRow result;
    result.id = id;
    result.tag = specs[id - 1].tag;
    result.passed = true;
    Row row(result);

    auto start = Clock::now();
    try {
        specs[id - 1].run(row, options);
    }
    catch (const std::exception & e) {
        row.expect(false, std::string("error: ") + e.what());
    }
    result.seconds = elapsed(start);
    return result;
}

auto kneser::run_grid(const GridOptions & options) -> std::vector<GridRow>
{
    std::vector<GridRow> rows;
    for (int id = 1 ; id <= grid_rows ; ++id)
        rows.push_back(run_grid_row(id, options));
    return rows;
}
