#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace kneser
{
    /// Largest ground set a Subset can address.
    inline constexpr int max_ground = 64;

    /// A subset of [n] for n <= 64. Element e lives in bit e-1.
    ///
    /// Ordering is lexicographic on the sorted element lists, so {1,2} < {1,2,3} < {1,3} < {2}.
    class Subset
    {
        public:
            constexpr Subset() = default;

            static constexpr auto from_mask(std::uint64_t mask) -> Subset
            {
                Subset s;
                s._mask = mask;
                return s;
            }

            /// Throws ValidationError for elements outside [1, 64].
            static auto from_elements(std::span<const int> elements) -> Subset;
            static auto from_elements(std::initializer_list<int> elements) -> Subset;

            /// The full set [n].
            static auto range(int n) -> Subset;

            auto mask() const -> std::uint64_t { return _mask; }
            auto size() const -> int { return __builtin_popcountll(_mask); }
            auto empty() const -> bool { return 0 == _mask; }
            auto contains(int element) const -> bool { return (_mask >> (element - 1)) & 1u; }
            auto with(int element) const -> Subset { return from_mask(_mask | (std::uint64_t{1} << (element - 1))); }
            auto without(int element) const -> Subset { return from_mask(_mask & ~(std::uint64_t{1} << (element - 1))); }
            auto is_subset_of(Subset other) const -> bool { return 0 == (_mask & ~other._mask); }
            auto disjoint(Subset other) const -> bool { return 0 == (_mask & other._mask); }

            /// Smallest element, or 0 when empty.
            auto min_element() const -> int { return empty() ? 0 : __builtin_ctzll(_mask) + 1; }

            /// Largest element, or 0 when empty.
            auto max_element() const -> int { return empty() ? 0 : 64 - __builtin_clzll(_mask); }

            auto elements() const -> std::vector<int>;
            auto to_string() const -> std::string;

            friend auto operator| (Subset a, Subset b) -> Subset { return from_mask(a._mask | b._mask); }
            friend auto operator& (Subset a, Subset b) -> Subset { return from_mask(a._mask & b._mask); }
            friend auto operator- (Subset a, Subset b) -> Subset { return from_mask(a._mask & ~b._mask); }
            friend auto operator== (Subset a, Subset b) -> bool { return a._mask == b._mask; }
            friend auto operator<=> (Subset a, Subset b) -> std::strong_ordering;

        private:
            std::uint64_t _mask = 0;
    };

    auto operator<=> (Subset a, Subset b) -> std::strong_ordering;

    /// Binomial coefficient; saturates at UINT64_MAX.
    auto binomial(int n, int k) -> std::uint64_t;
}
