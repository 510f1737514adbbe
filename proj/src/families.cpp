#include <kneser/families.hpp>
#include <kneser/errors.hpp>

#include <algorithm>
#include <numeric>

using namespace kneser;

namespace
{
    auto check_ground(int n) -> void
    {
        if (n < 0 || n > max_ground)
            throw ValidationError("ground set size must lie in [0, 64], got " + std::to_string(n));
    }

    // Depth-first generation in increasing element order yields lexicographic output.
    template <typename Accept>
    auto generate(int n, int k, Accept && accept, std::vector<Subset> & out) -> void
    {
        std::vector<int> chosen;
        chosen.reserve(k);

        auto rec = [&] (auto & self, int from) -> void {
            if (static_cast<int>(chosen.size()) == k) {
                out.push_back(Subset::from_elements(chosen));
                return;
            }
            int needed = k - static_cast<int>(chosen.size());
            for (int e = from ; e <= n - needed + 1 ; ++e) {
                if (! accept(chosen, e))
                    continue;
                chosen.push_back(e);
                self(self, e + 1);
                chosen.pop_back();
            }
        };
        rec(rec, 1);
    }
}

Hypergraph::Hypergraph(int n, std::vector<Subset> edges) :
    Hypergraph(n, std::move(edges), Subset::range(n))
{
}

Hypergraph::Hypergraph(int n, std::vector<Subset> edges, Subset ground) :
    _n(n),
    _ground(ground),
    _edges(std::move(edges))
{
    check_ground(n);
    if (! _ground.is_subset_of(Subset::range(n)))
        throw ValidationError("Hypergraph: ground set must lie inside [n]");

    std::sort(_edges.begin(), _edges.end());
    for (std::size_t i = 0 ; i < _edges.size() ; ++i) {
        if (_edges[i].empty())
            throw ValidationError("Hypergraph: every edge is a nonempty subset of [n]");
        if (! _edges[i].is_subset_of(_ground))
            throw ValidationError("Hypergraph: edge " + _edges[i].to_string() + " is not inside the ground set");
        if (i > 0 && _edges[i] == _edges[i - 1])
            throw ValidationError("Hypergraph: no duplicate edges (" + _edges[i].to_string() + ")");
        if (1 == _edges[i].size())
            _has_singleton_edge = true;
    }
}

auto Hypergraph::index_of(Subset edge) const -> long
{
    auto it = std::lower_bound(_edges.begin(), _edges.end(), edge);
    if (it == _edges.end() || *it != edge)
        return -1;
    return it - _edges.begin();
}

auto SignVector::from_entries(int arity, std::vector<int> entries) -> SignVector
{
    if (arity < 2)
        throw ValidationError("SignVector: arity must be at least 2");
    check_ground(static_cast<int>(entries.size()));

    SignVector x;
    x._parts.assign(arity, Subset{});
    for (std::size_t i = 0 ; i < entries.size() ; ++i) {
        int v = entries[i];
        if (v < 0 || v > arity)
            throw ValidationError("SignVector: entry " + std::to_string(v) + " outside {0.." + std::to_string(arity) + "}");
        if (v != 0)
            x._parts[v - 1] = x._parts[v - 1].with(static_cast<int>(i) + 1);
    }
    x._entries = std::move(entries);
    for (auto p : x._parts)
        x._support = x._support | p;
    if (x._support.empty())
        throw ValidationError("SignVector: the all-zero vector is excluded");
    return x;
}

auto SignVector::from_parts(int n, std::vector<Subset> parts) -> SignVector
{
    check_ground(n);
    Subset seen;
    std::vector<int> entries(n, 0);
    for (std::size_t j = 0 ; j < parts.size() ; ++j) {
        if (! parts[j].is_subset_of(Subset::range(n)))
            throw ValidationError("SignVector: part " + std::to_string(j + 1) + " leaves [n]");
        if (! parts[j].disjoint(seen))
            throw ValidationError("SignVector: parts are pairwise disjoint");
        seen = seen | parts[j];
        for (int e : parts[j].elements())
            entries[e - 1] = static_cast<int>(j) + 1;
    }
    return from_entries(static_cast<int>(parts.size()), std::move(entries));
}

auto SignVector::precedes(const SignVector & other) const -> bool
{
    if (other.arity() != arity())
        return false;
    for (int j = 0 ; j < arity() ; ++j)
        if (! _parts[j].is_subset_of(other._parts[j]))
            return false;
    return true;
}

auto PartitionInstance::consecutive(std::span<const int> sizes, std::span<const int> caps, int k, int r)
    -> PartitionInstance
{
    PartitionInstance inst;
    int next = 1;
    for (int size : sizes) {
        if (size < 1)
            throw ValidationError("PartitionInstance: parts are nonempty");
        std::vector<int> block(size);
        std::iota(block.begin(), block.end(), next);
        inst.parts.push_back(Subset::from_elements(block));
        next += size;
    }
    inst.n = next - 1;
    inst.capacities.assign(caps.begin(), caps.end());
    inst.k = k;
    inst.r = r;
    inst.validate();
    return inst;
}

auto PartitionInstance::validate() const -> void
{
    check_ground(n);
    if (parts.empty())
        throw ValidationError("PartitionInstance: at least one part");
    if (capacities.size() != parts.size())
        throw ValidationError("PartitionInstance: one capacity per part");

    Subset seen;
    int capacity_total = 0;
    for (std::size_t i = 0 ; i < parts.size() ; ++i) {
        if (parts[i].empty())
            throw ValidationError("PartitionInstance: parts are nonempty");
        if (! parts[i].disjoint(seen))
            throw ValidationError("PartitionInstance: parts are pairwise disjoint");
        seen = seen | parts[i];
        if (capacities[i] < 1 || capacities[i] > parts[i].size())
            throw ValidationError("PartitionInstance: 1 <= s_i <= |P_i| fails for part " + std::to_string(i + 1));
        capacity_total += capacities[i];
    }
    if (seen != Subset::range(n))
        throw ValidationError("PartitionInstance: union of parts = [n]");
    if (k < 1 || k > capacity_total)
        throw ValidationError("PartitionInstance: 1 <= k <= sum of capacities");
    if (r < 2)
        throw ValidationError("PartitionInstance: r >= 2");
}

auto PartitionInstance::is_consecutive() const -> bool
{
    int next = 1;
    for (auto p : parts) {
        if (p.min_element() != next || p.max_element() - p.min_element() + 1 != p.size())
            return false;
        next = p.max_element() + 1;
    }
    return next == n + 1;
}

KneserInstance::KneserInstance(Hypergraph base, int r) :
    _base(std::move(base)),
    _r(r)
{
    if (r < 2)
        throw ValidationError("KneserInstance: r >= 2");
}

auto KneserInstance::begin() const -> HyperedgeIterator
{
    return HyperedgeIterator(this);
}

auto KneserInstance::for_each_hyperedge(const std::function<void (std::span<const int>)> & fn) const -> void
{
    for (auto it = begin() ; it != end() ; ++it)
        fn(*it);
}

auto KneserInstance::count_hyperedges() const -> std::uint64_t
{
    std::uint64_t count = 0;
    for (auto it = begin() ; it != end() ; ++it)
        ++count;
    return count;
}

KneserInstance::HyperedgeIterator::HyperedgeIterator(const KneserInstance * instance) :
    _instance(instance),
    _done(false)
{
    _unions.push_back(Subset{});
    seek(0);
}

auto KneserInstance::HyperedgeIterator::operator++ () -> HyperedgeIterator &
{
    if (! _done) {
        int last = _chosen.back();
        _chosen.pop_back();
        _unions.pop_back();
        seek(last + 1);
    }
    return *this;
}

auto KneserInstance::HyperedgeIterator::seek(int from) -> void
{
    const int count = static_cast<int>(_instance->num_vertices());
    const int r = _instance->r();
    int candidate = from;

    while (static_cast<int>(_chosen.size()) < r) {
        while (candidate < count && ! _instance->vertex(candidate).disjoint(_unions.back()))
            ++candidate;

        int needed = r - static_cast<int>(_chosen.size());
        if (candidate >= count || count - candidate < needed) {
            if (_chosen.empty()) {
                _done = true;
                return;
            }
            candidate = _chosen.back() + 1;
            _chosen.pop_back();
            _unions.pop_back();
            continue;
        }

        _chosen.push_back(candidate);
        _unions.push_back(_unions.back() | _instance->vertex(candidate));
        ++candidate;
    }
}

auto kneser::enumerate_k_subsets(int n, int k) -> std::vector<Subset>
{
    check_ground(n);
    if (k < 0 || k > n)
        throw ValidationError("enumerate_k_subsets: 0 <= k <= n");
    std::vector<Subset> out;
    out.reserve(binomial(n, k));
    generate(n, k, [] (const std::vector<int> &, int) { return true; }, out);
    return out;
}

auto kneser::enumerate_stable(int n, int k, int s) -> std::vector<Subset>
{
    check_ground(n);
    if (n < 1 || k < 1 || s < 1)
        throw ValidationError("enumerate_stable: n, k, s >= 1");
    std::vector<Subset> out;
    if (k > n)
        return out;
    // Sorted elements: consecutive gaps >= s and (last - first) <= n - s.
    generate(n, k, [&] (const std::vector<int> & chosen, int e) {
            if (chosen.empty())
                return true;
            return e - chosen.back() >= s && e - chosen.front() <= n - s;
            }, out);
    return out;
}

auto kneser::enumerate_almost_stable(int n, int k, int s) -> std::vector<Subset>
{
    check_ground(n);
    if (n < 1 || k < 1 || s < 1)
        throw ValidationError("enumerate_almost_stable: n, k, s >= 1");
    std::vector<Subset> out;
    if (k > n)
        return out;
    generate(n, k, [&] (const std::vector<int> & chosen, int e) {
            return chosen.empty() || e - chosen.back() >= s;
            }, out);
    return out;
}

auto kneser::multiple_kneser_vertices(const PartitionInstance & instance) -> std::vector<Subset>
{
    instance.validate();

    std::vector<int> part_of(instance.n + 1, -1);
    for (std::size_t i = 0 ; i < instance.parts.size() ; ++i)
        for (int e : instance.parts[i].elements())
            part_of[e] = static_cast<int>(i);

    std::vector<int> used(instance.parts.size(), 0);
    std::vector<Subset> out;
    std::vector<int> chosen;

    auto rec = [&] (auto & self, int from) -> void {
        if (static_cast<int>(chosen.size()) == instance.k) {
            out.push_back(Subset::from_elements(chosen));
            return;
        }
        int needed = instance.k - static_cast<int>(chosen.size());
        for (int e = from ; e <= instance.n - needed + 1 ; ++e) {
            int p = part_of[e];
            if (used[p] >= instance.capacities[p])
                continue;
            ++used[p];
            chosen.push_back(e);
            self(self, e + 1);
            chosen.pop_back();
            --used[p];
        }
    };
    rec(rec, 1);
    return out;
}

auto kneser::kneser_instance(Hypergraph family, int r) -> KneserInstance
{
    return KneserInstance(std::move(family), r);
}

auto kneser::induced_restriction(const Hypergraph & family, const SignVector & x) -> Hypergraph
{
    if (x.n() > family.n())
        throw ValidationError("induced_restriction: sign vector longer than the ground set");

    std::vector<Subset> kept;
    for (auto e : family.edges())
        for (auto part : x.parts())
            if (! part.empty() && e.is_subset_of(part)) {
                kept.push_back(e);
                break;
            }
    return Hypergraph(family.n(), std::move(kept), x.support() & family.ground());
}
