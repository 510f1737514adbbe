#pragma once

#include <kneser/families.hpp>

#include <optional>
#include <string>
#include <vector>

namespace kneser
{
    enum class FamilyKind
    {
        kneser,
        stable,
        almost_stable,
        multiple,
        explicit_edges
    };

    /// A parsed instance file. Families:
    ///   {"family":"kneser","n":5,"k":2,"r":2}
    ///   {"family":"stable"|"almost_stable","n":6,"k":2,"s":2,"r":2}
    ///   {"family":"multiple","parts":[[1,2],[3,4]] or "part_sizes":[2,2],"capacities":[1,1],"k":2,"r":2}
    ///   {"family":"explicit","n":4,"edges":[[1,2],[3,4]],"r":2}
    struct Instance
    {
        FamilyKind kind = FamilyKind::kneser;
        int n = 0;
        int k = 0;
        int r = 2;
        int s = 1;
        std::optional<PartitionInstance> partition;
        std::vector<Subset> edges;

        /// The family F whose Kneser hypergraph the instance denotes.
        auto family() const -> Hypergraph;
        auto kneser() const -> KneserInstance { return KneserInstance(family(), r); }
        auto kind_name() const -> std::string;
    };

    /// Throws ParseError for malformed JSON, missing fields or wrong types, and ValidationError
    /// naming the invariant when values are out of range.
    auto parse_instance(const std::string & text) -> Instance;

    auto read_file(const std::string & path) -> std::string;
}
