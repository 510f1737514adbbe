#pragma once

#include <kneser/subset.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <span>
#include <vector>

namespace kneser
{
    /// A family of distinct nonempty subsets of a ground set inside [n].
    ///
    /// Edges are kept in lexicographic order, which is also the vertex order of every Kneser
    /// hypergraph built from this family.
    class Hypergraph
    {
        public:
            Hypergraph() = default;

            /// Ground set [n]. Throws ValidationError for empty or duplicate edges, or edges
            /// outside [n].
            Hypergraph(int n, std::vector<Subset> edges);

            /// Ground set restricted to `ground`, which must lie inside [n] and contain every edge.
            Hypergraph(int n, std::vector<Subset> edges, Subset ground);

            auto n() const -> int { return _n; }
            auto ground() const -> Subset { return _ground; }
            auto ground_size() const -> int { return _ground.size(); }
            auto edges() const -> std::span<const Subset> { return _edges; }
            auto size() const -> std::size_t { return _edges.size(); }
            auto edge(std::size_t i) const -> Subset { return _edges[i]; }

            /// An edge of size one makes the chromatic number infinite.
            auto has_singleton_edge() const -> bool { return _has_singleton_edge; }

            /// Index of `edge` in the sorted edge list, or -1.
            auto index_of(Subset edge) const -> long;

        private:
            int _n = 0;
            Subset _ground;
            std::vector<Subset> _edges;
            bool _has_singleton_edge = false;
    };

    /// An element of ({w_1..w_r} u {0})^n with nonempty support. Entry value j in 1..r stands
    /// for w_j; 0 is zero. Part j is X^j = { i : x_i = w_j }.
    class SignVector
    {
        public:
            /// Throws ValidationError on arity < 2, out-of-range entries or empty support.
            static auto from_entries(int arity, std::vector<int> entries) -> SignVector;

            /// Arity is parts.size(). Parts must be pairwise disjoint subsets of [n].
            static auto from_parts(int n, std::vector<Subset> parts) -> SignVector;

            auto arity() const -> int { return static_cast<int>(_parts.size()); }
            auto n() const -> int { return static_cast<int>(_entries.size()); }

            /// Entry at 1-based element i.
            auto operator[] (int element) const -> int { return _entries[element - 1]; }
            auto entries() const -> std::span<const int> { return _entries; }

            /// 1-based part index.
            auto part(int j) const -> Subset { return _parts[j - 1]; }
            auto parts() const -> std::span<const Subset> { return _parts; }
            auto support() const -> Subset { return _support; }

            /// X <= Y: every part of X is contained in the same part of Y.
            auto precedes(const SignVector & other) const -> bool;

            friend auto operator== (const SignVector &, const SignVector &) -> bool = default;

        private:
            SignVector() = default;

            std::vector<int> _entries;
            std::vector<Subset> _parts;
            Subset _support;
    };

    /// A partition (P_1..P_m) of [n] with capacities s_i, subset size k and uniformity r.
    struct PartitionInstance
    {
        int n = 0;
        std::vector<Subset> parts;
        std::vector<int> capacities;
        int k = 1;
        int r = 2;

        /// Blocks {1..p_1}, {p_1+1..p_1+p_2}, ...
        static auto consecutive(std::span<const int> sizes, std::span<const int> capacities, int k, int r)
            -> PartitionInstance;

        /// Throws ValidationError naming the first failing invariant.
        auto validate() const -> void;

        /// True when each part is an interval and parts appear left to right.
        auto is_consecutive() const -> bool;

        auto part_count() const -> int { return static_cast<int>(parts.size()); }
    };

    /// KG^r(F): vertices are the edges of F (in F's order), hyperedges are the r-sets of
    /// pairwise disjoint edges. Hyperedges are produced lazily in lexicographic order of their
    /// vertex-index tuples.
    class KneserInstance
    {
        public:
            class HyperedgeIterator;
            struct Sentinel { };

            /// Throws ValidationError when r < 2.
            KneserInstance(Hypergraph base, int r);

            auto base() const -> const Hypergraph & { return _base; }
            auto r() const -> int { return _r; }
            auto num_vertices() const -> std::size_t { return _base.size(); }
            auto vertex(std::size_t i) const -> Subset { return _base.edge(i); }

            auto begin() const -> HyperedgeIterator;
            auto end() const -> Sentinel { return {}; }

            /// Streams every hyperedge; the span holds ascending vertex indices.
            auto for_each_hyperedge(const std::function<void (std::span<const int>)> & fn) const -> void;

            auto count_hyperedges() const -> std::uint64_t;

        private:
            Hypergraph _base;
            int _r;
    };

    class KneserInstance::HyperedgeIterator
    {
        public:
            using value_type = std::vector<int>;
            using difference_type = std::ptrdiff_t;

            HyperedgeIterator() = default;
            explicit HyperedgeIterator(const KneserInstance * instance);

            auto operator* () const -> const std::vector<int> & { return _chosen; }
            auto operator++ () -> HyperedgeIterator &;
            auto operator++ (int) -> void { ++*this; }
            friend auto operator== (const HyperedgeIterator & it, Sentinel) -> bool { return it._done; }

        private:
            auto seek(int from) -> void;

            const KneserInstance * _instance = nullptr;
            std::vector<int> _chosen;
            std::vector<Subset> _unions;
            bool _done = true;
    };

    /// All k-subsets of [n] in lexicographic order.
    auto enumerate_k_subsets(int n, int k) -> std::vector<Subset>;

    /// k-subsets whose distinct elements satisfy s <= |i-j| <= n-s.
    auto enumerate_stable(int n, int k, int s) -> std::vector<Subset>;

    /// k-subsets whose distinct elements satisfy |i-j| >= s.
    auto enumerate_almost_stable(int n, int k, int s) -> std::vector<Subset>;

    /// k-subsets A with |A n P_i| <= s_i for every part.
    auto multiple_kneser_vertices(const PartitionInstance & instance) -> std::vector<Subset>;

    /// Convenience constructor for KG^r(F).
    auto kneser_instance(Hypergraph family, int r) -> KneserInstance;

    /// F restricted to the signed set X: ground is the support of X, edges are the members of F
    /// contained in a single part of X.
    auto induced_restriction(const Hypergraph & family, const SignVector & x) -> Hypergraph;
}
