#include <kneser/instance_io.hpp>
#include <kneser/errors.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace kneser;
using nlohmann::json;

namespace
{
    auto field(const json & j, const char * name) -> const json &
    {
        if (! j.contains(name))
            throw ParseError(std::string("instance: missing field \"") + name + "\"");
        return j.at(name);
    }

    auto integer(const json & j, const char * name) -> int
    {
        const auto & v = field(j, name);
        if (! v.is_number_integer())
            throw ParseError(std::string("instance: field \"") + name + "\" must be an integer");
        return v.get<int>();
    }

    auto integer_or(const json & j, const char * name, int fallback) -> int
    {
        return j.contains(name) ? integer(j, name) : fallback;
    }

    auto int_list(const json & v, const std::string & what) -> std::vector<int>
    {
        if (! v.is_array())
            throw ParseError("instance: " + what + " must be an array of integers");
        std::vector<int> out;
        for (const auto & e : v) {
            if (! e.is_number_integer())
                throw ParseError("instance: " + what + " must be an array of integers");
            out.push_back(e.get<int>());
        }
        return out;
    }

    auto subset_list(const json & v, const std::string & what) -> std::vector<Subset>
    {
        if (! v.is_array())
            throw ParseError("instance: " + what + " must be an array of arrays");
        std::vector<Subset> out;
        for (const auto & e : v) {
            auto elements = int_list(e, what + " entries");
            Subset s = Subset::from_elements(elements);
            if (static_cast<std::size_t>(s.size()) != elements.size())
                throw ValidationError("instance: " + what + " entries list distinct elements");
            out.push_back(s);
        }
        return out;
    }

    auto positive(int v, const std::string & name) -> void
    {
        if (v < 1)
            throw ValidationError("instance: " + name + " >= 1");
    }
}

auto Instance::family() const -> Hypergraph
{
    switch (kind) {
        case FamilyKind::kneser:
            return Hypergraph(n, enumerate_k_subsets(n, k));
        case FamilyKind::stable:
            return Hypergraph(n, enumerate_stable(n, k, s));
        case FamilyKind::almost_stable:
            return Hypergraph(n, enumerate_almost_stable(n, k, s));
        case FamilyKind::multiple:
            return Hypergraph(n, multiple_kneser_vertices(*partition));
        case FamilyKind::explicit_edges:
            return Hypergraph(n, edges);
    }
    throw Error("unreachable family kind");
}

auto Instance::kind_name() const -> std::string
{
    switch (kind) {
        case FamilyKind::kneser: return "kneser";
        case FamilyKind::stable: return "stable";
        case FamilyKind::almost_stable: return "almost_stable";
        case FamilyKind::multiple: return "multiple";
        case FamilyKind::explicit_edges: return "explicit";
    }
    return "unknown";
}

auto kneser::parse_instance(const std::string & text) -> Instance
{
    json j;
    try {
        j = json::parse(text);
    }
    catch (const json::parse_error & e) {
        throw ParseError(std::string("instance: malformed JSON: ") + e.what());
    }
    if (! j.is_object())
        throw ParseError("instance: top level must be a JSON object");

    const auto & fam = field(j, "family");
    if (! fam.is_string())
        throw ParseError("instance: field \"family\" must be a string");
    const std::string name = fam.get<std::string>();

    Instance inst;
    inst.r = integer_or(j, "r", 2);
    if (inst.r < 2)
        throw ValidationError("instance: r >= 2");

    if (name == "kneser" || name == "stable" || name == "almost_stable") {
        inst.kind = name == "kneser" ? FamilyKind::kneser
            : name == "stable" ? FamilyKind::stable : FamilyKind::almost_stable;
        inst.n = integer(j, "n");
        inst.k = integer(j, "k");
        inst.s = inst.kind == FamilyKind::kneser ? 1 : integer(j, "s");
        positive(inst.n, "n");
        positive(inst.k, "k");
        positive(inst.s, "s");
        if (inst.n > max_ground)
            throw ValidationError("instance: n <= 64");
        if (inst.k > inst.n)
            throw ValidationError("instance: k <= n");
    }
    else if (name == "multiple") {
        inst.kind = FamilyKind::multiple;
        PartitionInstance part;
        part.k = integer(j, "k");
        part.r = inst.r;
        part.capacities = int_list(field(j, "capacities"), "capacities");
        if (j.contains("parts")) {
            part.parts = subset_list(j.at("parts"), "parts");
            for (auto p : part.parts)
                if (! p.empty())
                    part.n = std::max(part.n, p.max_element());
            part.validate();
        }
        else {
            auto sizes = int_list(field(j, "part_sizes"), "part_sizes");
            for (int size : sizes)
                if (size < 1)
                    throw ValidationError("PartitionInstance: parts are nonempty");
            part = PartitionInstance::consecutive(sizes, part.capacities, part.k, part.r);
        }
        inst.n = part.n;
        inst.k = part.k;
        inst.partition = std::move(part);
    }
    else if (name == "explicit") {
        inst.kind = FamilyKind::explicit_edges;
        inst.n = integer(j, "n");
        if (inst.n < 0 || inst.n > max_ground)
            throw ValidationError("instance: 0 <= n <= 64");
        inst.edges = subset_list(field(j, "edges"), "edges");
        Hypergraph check(inst.n, inst.edges);
    }
    else
        throw ParseError("instance: unknown family \"" + name + "\"");

    return inst;
}

auto kneser::read_file(const std::string & path) -> std::string
{
    std::ifstream in(path, std::ios::binary);
    if (! in)
        throw ParseError("cannot read instance file " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}
