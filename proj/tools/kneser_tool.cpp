#include <kneser/construct.hpp>
#include <kneser/errors.hpp>
#include <kneser/formulas.hpp>
#include <kneser/grid.hpp>
#include <kneser/instance_io.hpp>
#include <kneser/invariants.hpp>
#include <kneser/solver.hpp>
#include <kneser/witness.hpp>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace kneser;
using nlohmann::json;

namespace
{
    constexpr const char * version = "0.1.0";

    struct RunConfig
    {
        std::string command;
        std::string instance_path;
        std::string format = "json";
        std::uint64_t seed = 20240917;
        unsigned threads = 1;
        std::optional<std::uint64_t> budget_nodes;
        std::optional<double> budget_seconds;
        std::string what = "alt";
        int level = 1;
        std::string perm = "identity";
        std::string emit_witness;
        std::string method = "construct";
        std::string target = "fan";
        std::optional<int> alt_bound;
    };

    auto sha256(const std::string & data) -> std::string
    {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int length = 0;
        EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
        static const char * hex = "0123456789abcdef";
        std::string out;
        for (unsigned int i = 0 ; i < length ; ++i) {
            out += hex[digest[i] >> 4];
            out += hex[digest[i] & 15];
        }
        return out;
    }

    auto budget_of(const RunConfig & config) -> SolveBudget
    {
        SolveBudget budget;
        if (config.budget_nodes)
            budget.max_nodes = *config.budget_nodes;
        if (config.budget_seconds)
            budget.time_limit = std::chrono::duration<double>(*config.budget_seconds);
        return budget;
    }

    auto subset_json(Subset s) -> json
    {
        return s.elements();
    }

    auto coloring_json(const Hypergraph & family, const Coloring & c) -> json
    {
        json out = json::array();
        for (std::size_t v = 0 ; v < family.size() ; ++v)
            out.push_back({{"vertex", family.edge(v).elements()}, {"color", c.colors[v]}});
        return out;
    }

    auto sign_json(const std::optional<SignVector> & x) -> json
    {
        if (! x)
            return nullptr;
        return std::vector<int>(x->entries().begin(), x->entries().end());
    }

    auto fraction_json(const Fraction & f) -> json
    {
        return {{"num", f.num}, {"den", f.den}, {"text", f.to_string()}};
    }

    auto optimal(const Instance & inst, const RunConfig & config) -> ChromaticResult
    {
        SolveOptions options;
        options.budget = budget_of(config);
        return chromatic_number(inst.kneser(), options);
    }

    auto alt_query(const Instance & inst, const RunConfig & config, int r) -> AltQuery
    {
        AltQuery q;
        q.family = inst.family();
        q.r = r;
        q.level = config.level;
        q.threads = config.threads;
        q.budget = budget_of(config);
        if (config.perm == "exhaustive")
            q.strategy = PermutationStrategy::exhaustive;
        else if (config.perm != "identity")
            throw ValidationError("--perm must be identity or exhaustive");
        return q;
    }

    auto run_invariants(const Instance & inst, const RunConfig & config) -> json
    {
        if (config.what == "alt") {
            auto r = alt_min(alt_query(inst, config, inst.r));
            json flags = json::array();
            if (r.heuristic)
                flags.push_back("heuristic");
            return {{"value", r.value}, {"level", config.level}, {"permutation", r.permutation},
                {"witness", sign_json(r.witness)}, {"flags", flags}, {"permutations_examined", r.permutations_examined}};
        }
        if (config.what == "cd") {
            auto cd = colorability_defect(inst.family(), inst.r, 20, budget_of(config));
            return {{"value", cd.value}, {"kept", subset_json(cd.kept)}, {"kept_coloring", cd.kept_coloring}};
        }
        if (config.what == "bounds") {
            auto dk = bound_dolnikov_kriz(inst.family(), inst.r);
            auto alt = bound_alternation(alt_query(inst, config, inst.r));
            json flags = json::array();
            if (alt.heuristic)
                flags.push_back("heuristic");
            return {
                {"colorability_defect", {{"value", fraction_json(dk.value)}, {"ceiling", dk.ceiling}, {"cd", dk.parameter}}},
                {"alternation", {{"value", fraction_json(alt.value)}, {"ceiling", alt.ceiling}, {"alt", alt.parameter},
                    {"level", config.level}, {"permutation", alt.permutation}, {"flags", flags}}},
            };
        }
        throw ValidationError("--what must be alt, cd or bounds");
    }

    auto run_chromatic(const Instance & inst, const RunConfig & config) -> json
    {
        auto family = inst.family();
        auto result = optimal(inst, config);
        if (! config.emit_witness.empty()) {
            std::ofstream out(config.emit_witness);
            if (! out)
                throw ValidationError("cannot write witness file " + config.emit_witness);
            out << coloring_json(family, result.witness).dump(2) << "\n";
        }
        return {{"chi", result.chi}, {"infinite", result.infinite}, {"nodes", result.nodes},
            {"initial_lower", result.initial_lower}, {"initial_upper", result.initial_upper},
            {"witness", coloring_json(family, result.witness)}};
    }

    auto report_json(const FormulaReport & report) -> json
    {
        json trace = json::array();
        for (auto & [condition, holds] : report.trace)
            trace.push_back({{"condition", condition}, {"holds", holds}});
        json out = {{"name", report.name}, {"applicable", report.applicable}, {"hypothesis_trace", trace}};
        if (report.value)
            out["value"] = *report.value;
        if (report.upper_bound)
            out["upper_bound"] = *report.upper_bound;
        if (report.conjectured_value)
            out["conjectured_value"] = *report.conjectured_value;
        return out;
    }

    auto run_formula(const Instance & inst) -> json
    {
        switch (inst.kind) {
            case FamilyKind::kneser:
                {
                    FormulaReport report;
                    report.name = "kneser";
                    bool holds = inst.n >= inst.r * inst.k;
                    report.trace.emplace_back("n >= r*k", holds);
                    if (holds) {
                        report.applicable = true;
                        report.value = chi_formula_kneser(inst.n, inst.k, inst.r);
                        report.upper_bound = report.value;
                    }
                    return report_json(report);
                }
            case FamilyKind::stable:
            case FamilyKind::almost_stable:
                return report_json(chi_formula_stable(inst.n, inst.k, inst.r, inst.s,
                            inst.kind == FamilyKind::almost_stable));
            case FamilyKind::multiple:
                {
                    const auto & part = *inst.partition;
                    auto m = m_r_pi(part);
                    FormulaReport report;
                    report.name = "multiple";
                    bool r2 = part.r == 2;
                    report.trace.emplace_back("r = 2", r2);
                    auto offenders = smallparts_offenders(part);
                    report.trace.emplace_back("|P_i| <= 2 s_i for every part", offenders.empty());
                    if (r2) {
                        report.applicable = true;
                        report.value = chi_formula_multiple_r2(part);
                        report.name += ": r = 2";
                    }
                    else if (offenders.empty()) {
                        report.applicable = true;
                        report.value = chi_formula_multiple_smallparts(part);
                        report.name += ": small parts";
                    }
                    std::int64_t upper = ceil_div(part.n - m.value, part.r - 1) + 1;
                    report.upper_bound = std::max<std::int64_t>(1, upper);
                    auto out = report_json(report);
                    out["M"] = m.value;
                    out["M_selected_parts"] = m.selected;
                    return out;
                }
            case FamilyKind::explicit_edges:
                break;
        }
        throw ValidationError("formula: no closed form for explicit families");
    }

    auto trace_json(const ConstructiveColoringTrace & t) -> json
    {
        json blocks = json::array();
        for (auto b : t.blocks)
            blocks.push_back(subset_json(b));
        return {{"selected_parts", t.selected}, {"part_order", t.order}, {"M", t.m_value},
            {"L", subset_json(t.l_set)}, {"T", subset_json(t.t_set)}, {"C", subset_json(t.c_set)},
            {"blocks", blocks}, {"palette", t.palette}, {"used_colors", t.used}};
    }

    auto run_color(const Instance & inst, const RunConfig & config) -> json
    {
        if (config.method == "solver") {
            auto family = inst.family();
            auto result = optimal(inst, config);
            return {{"method", "solver"}, {"colors", result.witness.used_colors()}, {"proper", true},
                {"coloring", coloring_json(family, result.witness)}};
        }
        if (config.method != "construct")
            throw ValidationError("--method must be construct or solver");

        auto finish = [&] (const Hypergraph & family, const Coloring & coloring, const ConstructiveColoringTrace & trace) {
            bool proper = is_proper(KneserInstance(family, inst.r), coloring).proper;
            if (! proper)
                throw TheoremViolation("constructed coloring is not proper");
            return json{{"method", "construct"}, {"colors", coloring.used_colors()}, {"proper", proper},
                {"trace", trace_json(trace)}, {"coloring", coloring_json(family, coloring)}};
        };

        switch (inst.kind) {
            case FamilyKind::multiple:
                {
                    auto built = color_multiple_kneser(*inst.partition);
                    return finish(built.family, built.coloring, built.trace);
                }
            case FamilyKind::kneser:
                {
                    std::vector<int> ones(inst.n, 1);
                    auto built = color_multiple_kneser(PartitionInstance::consecutive(ones, ones, inst.k, inst.r));
                    return finish(built.family, built.coloring, built.trace);
                }
            case FamilyKind::stable:
                {
                    auto built = color_stable_kneser(inst.n, inst.k, inst.s, inst.r);
                    return finish(built.family, built.coloring, built.trace);
                }
            default:
                throw ValidationError("color --method construct needs a kneser, stable or multiple instance");
        }
    }

    auto run_verify(const Instance & inst, const RunConfig & config) -> json
    {
        auto family = inst.family();
        if (config.target == "fan") {
            if (inst.r != 2)
                throw ValidationError("verify fan needs r = 2");
            auto coloring = optimal(inst, config).witness;
            auto lab = build_fan_labeling(family, coloring);
            auto check = check_fan_hypotheses(lab);
            json out = {{"ok", check.ok}, {"points_checked", check.points_checked}, {"pairs_checked", check.pairs_checked},
                {"m", lab.m}, {"threshold", lab.threshold}};
            if (! check.ok) {
                out["counterexample"] = {{"failure", check.failure}, {"x", *check.x}};
                if (check.y)
                    out["counterexample"]["y"] = *check.y;
                return out;
            }
            auto chain = find_fan_chain(lab);
            out["witness"] = {{"chain", chain.vectors}, {"labels", chain.labels}};
            return out;
        }
        if (config.target == "zp") {
            auto coloring = optimal(inst, config).witness;
            auto lab = build_zp_labeling(family, coloring, inst.r, config.level);
            auto check = check_zp_hypotheses(lab);
            json out = {{"ok", check.ok}, {"points_checked", check.points_checked}, {"alpha", lab.alpha},
                {"m", lab.m}, {"p", lab.p}, {"conclusion_holds", check.conclusion}};
            if (! check.ok)
                out["counterexample"] = {{"failure", check.failure}, {"chain", check.chain}};
            return out;
        }
        if (config.target == "colorful") {
            if (inst.r != 2)
                throw ValidationError("verify colorful needs r = 2");
            auto coloring = optimal(inst, config).witness;
            int alt = 0;
            bool exact = false;
            if (config.alt_bound)
                alt = *config.alt_bound;
            else {
                AltQuery q;
                q.family = family;
                q.r = 2;
                q.threads = config.threads;
                q.strategy = family.ground_size() <= q.exhaustive_cap
                    ? PermutationStrategy::exhaustive : PermutationStrategy::identity_only;
                auto a = alt_min(q);
                alt = a.value;
                exact = ! a.heuristic;
            }
            int r = family.ground_size() - alt;
            if (r < 1)
                return {{"ok", true}, {"r", r}, {"alt_2", alt}, {"alt_exact", exact}, {"points_checked", 0}};
            auto w = find_colorful_bipartite(family, coloring, r);
            bool ok = is_colorful_witness(family, coloring, r, w);
            auto side = [&] (const std::vector<int> & vs) {
                json out = json::array();
                for (int v : vs)
                    out.push_back(family.edge(v).elements());
                return out;
            };
            return {{"ok", ok}, {"r", r}, {"alt_2", alt}, {"alt_exact", exact}, {"points_checked", family.size()},
                {"witness", {{"left", side(w.left)}, {"left_colors", w.left_colors},
                    {"right", side(w.right)}, {"right_colors", w.right_colors}}}};
        }
        if (config.target == "tight-cycle") {
            if (inst.r != 2)
                throw ValidationError("verify tight-cycle needs r = 2");
            auto result = optimal(inst, config);
            auto problem = ColoringProblem::from_kneser(inst.kneser());
            Coloring c = result.witness;
            c.palette = result.chi;
            auto cycle = find_tight_cycle(problem, c);
            json cycle_json = json::array();
            for (int v : cycle.cycle)
                cycle_json.push_back(family.edge(v).elements());
            return {{"ok", cycle.found}, {"chi", result.chi}, {"points_checked", problem.num_vertices},
                {"witness", cycle_json}};
        }
        throw ValidationError("--target must be fan, zp, colorful or tight-cycle");
    }

    auto run_grid_command(const RunConfig & config) -> std::pair<json, bool>
    {
        GridOptions options;
        options.seed = config.seed;
        options.threads = config.threads;
        options.budget = budget_of(config);
        json rows = json::array();
        bool all = true;
        for (auto & row : run_grid(options)) {
            all = all && row.passed;
            rows.push_back({{"id", row.id}, {"tag", row.tag}, {"passed", row.passed}, {"details", row.details}});
        }
        return {json{{"rows", rows}, {"all_passed", all}}, all};
    }

    auto flatten(const json & j, const std::string & prefix, std::vector<std::pair<std::string, std::string>> & out)
        -> void
    {
        if (j.is_object()) {
            for (auto & [key, value] : j.items())
                flatten(value, prefix.empty() ? key : prefix + "." + key, out);
        }
        else if (! j.is_array() && ! j.is_null())
            out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }

    auto emit(const json & report, const std::string & format) -> void
    {
        if (format == "csv") {
            std::vector<std::pair<std::string, std::string>> rows;
            flatten(report, "", rows);
            std::cout << "key,value\n";
            for (auto & [k, v] : rows)
                std::cout << k << "," << v << "\n";
        }
        else
            std::cout << report.dump(2) << "\n";
    }

    auto fail(const std::string & kind, const std::string & message, int code, json extra = json::object()) -> int
    {
        extra["error"] = kind;
        extra["message"] = message;
        std::cerr << extra.dump() << "\n";
        return code;
    }
}

int main(int argc, char ** argv)
{
    RunConfig config;
    std::string positional;

    CLI::App app{"Kneser hypergraph chromatic numbers, bounds, colorings and labelings"};
    app.add_option("command_name", positional, "invariants|chromatic|formula|color|verify|grid");
    app.add_option("--command", config.command, "Command to run (alternative to the positional form)");
    app.add_option("--instance", config.instance_path, "Instance JSON file");
    app.add_option("--format", config.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", config.seed, "Seed for randomized sweeps");
    app.add_option("--threads", config.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--budget-nodes", config.budget_nodes, "Search-node budget");
    app.add_option("--budget-seconds", config.budget_seconds, "Time budget in seconds");
    app.add_option("--what", config.what, "invariants: alt, cd or bounds");
    app.add_option("--i", config.level, "Alternation level (or Z_p level)")->check(CLI::PositiveNumber);
    app.add_option("--perm", config.perm, "identity or exhaustive");
    app.add_option("--emit-witness", config.emit_witness, "chromatic: write the optimal coloring here");
    app.add_option("--method", config.method, "color: construct or solver");
    app.add_option("--target", config.target, "verify: fan, zp, colorful or tight-cycle");
    app.add_option("--alt", config.alt_bound, "verify colorful: use this upper bound on alt_2 instead of computing it");

    CLI11_PARSE(app, argc, argv);

    if (config.command.empty())
        config.command = positional;
    if (config.command.empty())
        return fail("ValidationError", "a command is required", 2);

    try {
        auto start = std::chrono::steady_clock::now();
        json report = {{"command", config.command}, {"version", version}};
        json result;
        bool grid_ok = true;

        if (config.command == "grid") {
            report["instance_fingerprint"] = nullptr;
            std::tie(result, grid_ok) = run_grid_command(config);
        }
        else {
            if (config.instance_path.empty())
                throw ValidationError("--instance is required for " + config.command);
            auto text = read_file(config.instance_path);
            report["instance_fingerprint"] = "sha256:" + sha256(text);
            auto inst = parse_instance(text);

            if (config.command == "invariants")
                result = run_invariants(inst, config);
            else if (config.command == "chromatic")
                result = run_chromatic(inst, config);
            else if (config.command == "formula")
                result = run_formula(inst);
            else if (config.command == "color")
                result = run_color(inst, config);
            else if (config.command == "verify")
                result = run_verify(inst, config);
            else
                throw ValidationError("unknown command " + config.command);
        }

        auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report["result"] = result;
        report["timings"] = {{"wall_time_ms", ms}};
        emit(report, config.format);
        return grid_ok ? 0 : 1;
    }
    catch (const BudgetExceeded & e) {
        return fail("BudgetExceeded", e.what(), 3, {{"lower", e.lower}, {"upper", e.upper}});
    }
    catch (const TheoremViolation & e) {
        return fail("TheoremViolation", e.what(), 4);
    }
    catch (const ParseError & e) {
        return fail("ParseError", e.what(), 2);
    }
    catch (const ValidationError & e) {
        return fail("ValidationError", e.what(), 2);
    }
    catch (const HypothesisFail & e) {
        return fail("HypothesisFail", e.what(), 2);
    }
    catch (const NonPrimeLevel & e) {
        return fail("NonPrimeLevel", e.what(), 2);
    }
    catch (const TooLarge & e) {
        return fail("TooLarge", e.what(), 2);
    }
    catch (const NotProper & e) {
        return fail("NotProper", e.what(), 2);
    }
    catch (const std::exception & e) {
        return fail("Error", e.what(), 1);
    }
}
