#include <kneser/invariants.hpp>
#include <kneser/errors.hpp>

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

using namespace kneser;

namespace
{
    auto gcd64(std::int64_t a, std::int64_t b) -> std::int64_t
    {
        return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
    }

    // Ground elements in the requested reading order. Accepts a permutation of [n] or of the
    // ground set; elements outside the ground set are dropped.
    auto reading_order(const Hypergraph & family, std::span<const int> order) -> std::vector<int>
    {
        auto ground = family.ground();
        if (order.empty())
            return ground.elements();

        std::vector<int> result;
        Subset seen;
        for (int e : order) {
            if (e < 1 || e > family.n() || seen.contains(e))
                throw ValidationError("ordering must list distinct elements of [n]");
            seen = seen.with(e);
            if (ground.contains(e))
                result.push_back(e);
        }
        if (! ground.is_subset_of(seen))
            throw ValidationError("ordering must cover the ground set");
        return result;
    }

    // Branch-and-bound over sign vectors in reading order. Labels are canonical (a new part is
    // always the lowest unused one), which loses nothing since alt and admissibility are
    // invariant under renaming parts.
    class AltSearch
    {
        public:
            AltSearch(const AltQuery & q, std::vector<int> order) :
                _q(q),
                _order(std::move(order)),
                _members_with(q.family.n() + 1),
                _parts(q.r + 1),
                _contained(q.family.size(), 0),
                _entries(q.family.n(), 0)
            {
                for (std::size_t i = 0 ; i < q.family.size() ; ++i)
                    for (int e : q.family.edge(i).elements())
                        _members_with[e].push_back(static_cast<int>(i));
            }

            // Largest alt, stopping early once `stop_at` is reached.
            auto maximize(int stop_at) -> int
            {
                _best = 0;
                _stop_at = stop_at;
                _mode = Mode::maximize;
                dfs(0, 0, 0, 0);
                return _best;
            }

            // Lexicographically least vector reaching `target`.
            auto least_witness(int target) -> std::optional<SignVector>
            {
                _target = target;
                _mode = Mode::witness;
                _found.reset();
                dfs(0, 0, 0, 0);
                return _found;
            }

        private:
            enum class Mode { maximize, witness };

            auto admissible_after(int element, int label, std::vector<int> & added) -> bool
            {
                Subset grown = _parts[label].with(element);
                for (int m : _members_with[element])
                    if (_q.family.edge(m).is_subset_of(grown))
                        added.push_back(m);

                if (added.empty())
                    return true;
                if (_q.level <= 1)
                    return false;

                for (int m : added)
                    _contained[m] = 1;
                bool ok = colorable_restriction();
                if (! ok)
                    for (int m : added)
                        _contained[m] = 0;
                return ok;
            }

            auto colorable_restriction() -> bool
            {
                std::vector<std::uint64_t> key((_contained.size() + 63) / 64, 0);
                std::vector<Subset> members;
                for (std::size_t i = 0 ; i < _contained.size() ; ++i)
                    if (_contained[i]) {
                        key[i / 64] |= std::uint64_t{1} << (i % 64);
                        members.push_back(_q.family.edge(i));
                    }

                auto cached = _cache.find(key);
                if (cached != _cache.end())
                    return cached->second;

                KneserInstance restricted(Hypergraph(_q.family.n(), std::move(members)), _q.r);
                auto problem = ColoringProblem::from_kneser(restricted);
                SolveOptions options;
                options.budget = _q.budget;
                bool ok = find_coloring(problem, _q.level - 1, options).has_value();
                _cache.emplace(std::move(key), ok);
                return ok;
            }

            auto snapshot(int depth) const -> SignVector
            {
                std::vector<int> entries(_q.family.n(), 0);
                for (int d = 0 ; d < depth ; ++d)
                    entries[_order[d] - 1] = _entries[_order[d] - 1];
                return SignVector::from_entries(_q.r, std::move(entries));
            }

            // Returns true to abort the whole search.
            auto dfs(int depth, int alt, int last, int used) -> bool
            {
                const int remaining = static_cast<int>(_order.size()) - depth;

                if (_mode == Mode::maximize) {
                    if (alt > _best)
                        _best = alt;
                    if (_best >= _stop_at)
                        return true;
                    if (0 == remaining || alt + remaining <= _best)
                        return false;
                }
                else {
                    if (alt >= _target) {
                        _found = snapshot(depth);
                        return true;
                    }
                    if (0 == remaining || alt + remaining < _target)
                        return false;
                }

                const int element = _order[depth];

                // A repeat of the previous label is dominated by a zero: same alt, smaller vector.
                auto try_label = [&] (int label) -> bool {
                    std::vector<int> added;
                    if (! admissible_after(element, label, added))
                        return false;
                    Subset before = _parts[label];
                    _parts[label] = before.with(element);
                    _entries[element - 1] = label;
                    bool stop = dfs(depth + 1, alt + 1, label, std::max(used, label));
                    _entries[element - 1] = 0;
                    _parts[label] = before;
                    for (int m : added)
                        _contained[m] = 0;
                    return stop;
                };

                const int top = std::min(_q.r, used + 1);
                if (_mode == Mode::witness && dfs(depth + 1, alt, last, used))
                    return true;
                for (int label = 1 ; label <= top ; ++label)
                    if (label != last && try_label(label))
                        return true;
                if (_mode == Mode::maximize && dfs(depth + 1, alt, last, used))
                    return true;
                return false;
            }

            const AltQuery & _q;
            std::vector<int> _order;
            std::vector<std::vector<int>> _members_with;
            std::vector<Subset> _parts;
            std::vector<char> _contained;
            std::vector<int> _entries;
            std::map<std::vector<std::uint64_t>, bool> _cache;

            Mode _mode = Mode::maximize;
            int _best = 0;
            int _stop_at = 0;
            int _target = 0;
            std::optional<SignVector> _found;
    };

    auto check_query(const AltQuery & q) -> void
    {
        if (q.r < 2)
            throw ValidationError("AltQuery: r >= 2");
        if (q.level < 1)
            throw ValidationError("AltQuery: level i >= 1");
    }

    auto level_value(const AltQuery & q, const std::vector<int> & order, int stop_at) -> int
    {
        AltSearch search(q, order);
        return search.maximize(stop_at);
    }

    struct ChunkResult
    {
        int value = std::numeric_limits<int>::max();
        std::vector<int> permutation;
        std::uint64_t examined = 0;
    };

    auto exhaustive_min(const AltQuery & q) -> AltMinResult
    {
        auto ground = q.family.ground().elements();
        const int g = static_cast<int>(ground.size());
        if (g > q.exhaustive_cap)
            throw TooLarge("exhaustive permutation search over " + std::to_string(g)
                    + " elements exceeds the cap of " + std::to_string(q.exhaustive_cap));

        AltMinResult result;
        if (0 == g) {
            result.value = 0;
            return result;
        }

        std::vector<ChunkResult> chunks(g);
        std::atomic<int> shared_best{std::numeric_limits<int>::max()};
        std::atomic<int> next_chunk{0};

        // Each chunk fixes the first element; pruning only drops orderings strictly worse than
        // the global best, so every chunk still reports its own lexicographically first minimizer.
        auto work = [&] {
            for (int c = next_chunk++ ; c < g ; c = next_chunk++) {
                std::vector<int> perm;
                perm.push_back(ground[c]);
                for (int j = 0 ; j < g ; ++j)
                    if (j != c)
                        perm.push_back(ground[j]);

                auto & chunk = chunks[c];
                do {
                    ++chunk.examined;
                    int global = shared_best.load();
                    int stop_at = chunk.value;
                    if (global != std::numeric_limits<int>::max())
                        stop_at = std::min(stop_at, global + 1);
                    int v = level_value(q, perm, stop_at);
                    if (v < stop_at && v < chunk.value) {
                        chunk.value = v;
                        chunk.permutation = perm;
                        int cur = shared_best.load();
                        while (v < cur && ! shared_best.compare_exchange_weak(cur, v))
                            ;
                    }
                } while (std::next_permutation(perm.begin() + 1, perm.end()));
            }
        };

        unsigned workers = std::max(1u, std::min<unsigned>(q.threads, static_cast<unsigned>(g)));
        if (workers == 1)
            work();
        else {
            std::vector<std::thread> pool;
            for (unsigned w = 0 ; w < workers ; ++w)
                pool.emplace_back(work);
            for (auto & t : pool)
                t.join();
        }

        result.value = std::numeric_limits<int>::max();
        for (auto & chunk : chunks) {
            result.permutations_examined += chunk.examined;
            if (chunk.value < result.value) {
                result.value = chunk.value;
                result.permutation = chunk.permutation;
            }
        }
        return result;
    }
}

auto Fraction::make(std::int64_t num, std::int64_t den) -> Fraction
{
    if (0 == den)
        throw ValidationError("Fraction: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = gcd64(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Fraction{num, den};
}

auto Fraction::ceil() const -> std::int64_t
{
    std::int64_t q = num / den;
    if (num % den != 0 && num > 0)
        ++q;
    return q;
}

auto Fraction::to_string() const -> std::string
{
    if (1 == den)
        return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

auto kneser::is_prime(int p) -> bool
{
    if (p < 2)
        return false;
    for (int d = 2 ; d * d <= p ; ++d)
        if (0 == p % d)
            return false;
    return true;
}

auto kneser::alt_of(const SignVector & x, std::span<const int> order) -> int
{
    std::vector<int> identity;
    if (order.empty()) {
        identity.resize(x.n());
        std::iota(identity.begin(), identity.end(), 1);
        order = identity;
    }

    Subset seen;
    int alt = 0, last = 0;
    for (int e : order) {
        if (e < 1 || e > x.n() || seen.contains(e))
            throw ValidationError("alt_of: ordering must list distinct elements of [n]");
        seen = seen.with(e);
        int v = x[e];
        if (v != 0 && v != last) {
            ++alt;
            last = v;
        }
    }
    if (! x.support().is_subset_of(seen))
        throw ValidationError("alt_of: ordering must cover the support");
    return alt;
}

auto kneser::alt_level(const AltQuery & q, std::span<const int> order) -> AltLevelResult
{
    check_query(q);
    auto reading = reading_order(q.family, order);
    AltSearch search(q, reading);
    AltLevelResult result;
    result.value = search.maximize(std::numeric_limits<int>::max());
    if (result.value > 0)
        result.witness = search.least_witness(result.value);
    return result;
}

auto kneser::alt_min(const AltQuery & q) -> AltMinResult
{
    check_query(q);
    AltMinResult result;

    switch (q.strategy) {
        case PermutationStrategy::identity_only:
            result.permutation = q.family.ground().elements();
            result.heuristic = true;
            result.permutations_examined = 1;
            break;

        case PermutationStrategy::user_list:
            {
                if (q.permutations.empty())
                    throw ValidationError("AltQuery: user_list strategy needs at least one ordering");
                result.value = std::numeric_limits<int>::max();
                for (auto & perm : q.permutations) {
                    auto reading = reading_order(q.family, perm);
                    int v = level_value(q, reading, result.value);
                    ++result.permutations_examined;
                    if (v < result.value) {
                        result.value = v;
                        result.permutation = perm;
                    }
                }
                result.heuristic = true;
            }
            break;

        case PermutationStrategy::exhaustive:
            result = exhaustive_min(q);
            result.heuristic = false;
            break;
    }

    auto level = alt_level(q, result.permutation);
    result.value = level.value;
    result.witness = level.witness;
    return result;
}

auto kneser::colorability_defect(const Hypergraph & family, int r, int cap, const SolveBudget & budget) -> DefectResult
{
    if (r < 1)
        throw ValidationError("colorability_defect: r >= 1");
    auto ground = family.ground().elements();
    const int g = static_cast<int>(ground.size());
    if (g > cap)
        throw TooLarge("colorability_defect: ground set of " + std::to_string(g)
                + " exceeds the cap of " + std::to_string(cap));

    SolveOptions options;
    options.budget = budget;
    options.budget.max_vertices = std::max<std::size_t>(options.budget.max_vertices, g);

    for (int size = g ; size >= 0 ; --size) {
        for (auto pick : enumerate_k_subsets(g, size)) {
            Subset t;
            for (int idx : pick.elements())
                t = t.with(ground[idx - 1]);
            auto problem = ColoringProblem::from_restriction(family, t);
            auto coloring = find_coloring(problem, r, options);
            if (coloring) {
                DefectResult result;
                result.value = g - size;
                result.kept = t;
                result.kept_coloring = coloring->colors;
                return result;
            }
        }
    }
    throw TheoremViolation("colorability_defect: the empty set is always colorable");
}

auto kneser::bound_dolnikov_kriz(const Hypergraph & family, int r) -> BoundResult
{
    if (r < 2)
        throw ValidationError("bound_dolnikov_kriz: r >= 2");
    auto cd = colorability_defect(family, r);
    BoundResult result;
    result.parameter = cd.value;
    result.value = Fraction::make(cd.value, r - 1);
    result.ceiling = result.value.ceil();
    return result;
}

auto kneser::bound_alternation(const AltQuery & q) -> BoundResult
{
    check_query(q);
    if (q.level >= 2) {
        if (! is_prime(q.r))
            throw NonPrimeLevel("the level-" + std::to_string(q.level)
                    + " alternation bound is only established for prime r, got r = " + std::to_string(q.r));

        // i <= chi + 1, i.e. KG^r(F) is not (i-2)-colorable.
        KneserInstance whole(q.family, q.r);
        auto problem = ColoringProblem::from_kneser(whole);
        SolveOptions options;
        options.budget = q.budget;
        if (find_coloring(problem, q.level - 2, options))
            throw HypothesisFail("level " + std::to_string(q.level) + " exceeds chi(KG^r(F)) + 1");
    }

    auto alt = alt_min(q);
    const std::int64_t g = q.family.ground_size();
    std::int64_t numerator = g - alt.value + static_cast<std::int64_t>(q.level - 1) * (q.r - 1);

    BoundResult result;
    result.parameter = alt.value;
    result.heuristic = alt.heuristic;
    result.permutation = alt.permutation;
    result.value = Fraction::make(std::max<std::int64_t>(numerator, 0), q.r - 1);
    result.ceiling = result.value.ceil();
    return result;
}

auto kneser::concat_alt(const SignVector & x, std::span<const SignVector> nested, std::span<const int> order)
    -> ConcatAlt
{
    const int r = x.arity();
    if (static_cast<int>(nested.size()) != r)
        throw ValidationError("concat_alt: one nested vector per part of X");
    const int s = nested[0].arity();

    std::vector<int> entries(x.n(), 0);
    int nested_sum = 0;
    for (int j = 1 ; j <= r ; ++j) {
        const auto & y = nested[j - 1];
        if (y.arity() != s || y.n() != x.n())
            throw ValidationError("concat_alt: nested vectors share arity and length");
        if (! y.support().is_subset_of(x.part(j)))
            throw NestingViolation("concat_alt: Y_" + std::to_string(j) + " escapes X^" + std::to_string(j));
        for (int e : y.support().elements())
            entries[e - 1] = (j - 1) * s + y[e];
        nested_sum += alt_of(y, order);
    }

    auto z = SignVector::from_entries(r * s, std::move(entries));
    int combined = alt_of(z, order);
    if (combined < nested_sum)
        throw TheoremViolation("concat_alt: alt(Z) = " + std::to_string(combined)
                + " < sum of nested alts = " + std::to_string(nested_sum));
    return ConcatAlt{combined, nested_sum, std::move(z)};
}
