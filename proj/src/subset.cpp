#include <kneser/subset.hpp>
#include <kneser/errors.hpp>

#include <limits>

using namespace kneser;

auto Subset::from_elements(std::span<const int> elements) -> Subset
{
    Subset s;
    for (int e : elements) {
        if (e < 1 || e > max_ground)
            throw ValidationError("subset element " + std::to_string(e) + " outside [1, 64]");
        s = s.with(e);
    }
    return s;
}

auto Subset::from_elements(std::initializer_list<int> elements) -> Subset
{
    return from_elements(std::span<const int>(elements.begin(), elements.size()));
}

auto Subset::range(int n) -> Subset
{
    if (n < 0 || n > max_ground)
        throw ValidationError("ground set size " + std::to_string(n) + " outside [0, 64]");
    return from_mask(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

auto Subset::elements() const -> std::vector<int>
{
    std::vector<int> result;
    result.reserve(size());
    for (std::uint64_t m = _mask ; m ; m &= m - 1)
        result.push_back(__builtin_ctzll(m) + 1);
    return result;
}

auto Subset::to_string() const -> std::string
{
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
        if (! first)
            s += ",";
        s += std::to_string(e);
        first = false;
    }
    return s + "}";
}

auto kneser::operator<=> (Subset a, Subset b) -> std::strong_ordering
{
    // The lowest differing element decides: whichever set holds it is smaller, unless the
    // other set has nothing beyond it (then the other is a proper prefix).
    std::uint64_t diff = a._mask ^ b._mask;
    if (0 == diff)
        return std::strong_ordering::equal;

    int x = __builtin_ctzll(diff);
    std::uint64_t above = (x == 63) ? 0 : (~std::uint64_t{0} << (x + 1));
    if ((a._mask >> x) & 1u)
        return (b._mask & above) ? std::strong_ordering::less : std::strong_ordering::greater;
    else
        return (a._mask & above) ? std::strong_ordering::greater : std::strong_ordering::less;
}

auto kneser::binomial(int n, int k) -> std::uint64_t
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (int i = 1 ; i <= k ; ++i) {
        result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (result > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(result);
}
