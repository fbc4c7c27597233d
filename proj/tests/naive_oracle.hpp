#pragma once

// Test-only reference: minimum determining family size by enumerating families of distinct
// k-subsets directly. Shares nothing with the column search.

#include <cstdint>
#include <optional>
#include <vector>

namespace naive {

// Pair masks need n(n-1)/2 bits; 128 covers n <= 16.
using PairMask = unsigned __int128;

inline std::vector<std::uint32_t> all_k_subsets(int n, int k)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask)
        if (__builtin_popcount(mask) == k)
            out.push_back(mask);
    return out;
}

// Bitmask over the pairs (a, b), a < b, of {0, ..., n-1} that `set` separates.
inline PairMask separated_pairs(std::uint32_t set, int n)
{
    PairMask out = 0;
    int index = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b, ++index)
            if (((set >> a) & 1U) != ((set >> b) & 1U))
                out |= PairMask{1} << index;
    return out;
}

class Enumerator {
public:
    Enumerator(int n, int k) : n_(n), subsets_(all_k_subsets(n, k))
    {
        const int pairs = n * (n - 1) / 2;
        all_pairs_ = pairs == 128 ? ~PairMask{0} : (PairMask{1} << pairs) - 1;
        for (auto s : subsets_)
            separated_.push_back(separated_pairs(s, n));
    }

    // Is there a family of r distinct k-subsets separating every pair?
    bool exists(int r) const { return extend(0, r, 0); }

    std::optional<int> minimum(int r_cap) const
    {
        for (int r = 1; r <= r_cap; ++r)
            if (exists(r))
                return r;
        return std::nullopt;
    }

private:
    bool extend(std::size_t from, int remaining, PairMask covered) const
    {
        if (covered == all_pairs_)
            return true;
        if (remaining == 0)
            return false;
        for (std::size_t i = from; i < subsets_.size(); ++i)
            if (extend(i + 1, remaining - 1, covered | separated_[i]))
                return true;
        return false;
    }

    int n_;
    std::vector<std::uint32_t> subsets_;
    std::vector<PairMask> separated_;
    PairMask all_pairs_;
};

inline std::optional<int> det(int n, int k)
{
    return Enumerator(n, k).minimum(n - k);
}

} // namespace naive
