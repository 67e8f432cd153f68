#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

namespace omnikit::detail {

/// Advances `idx` (strictly increasing, values < n) to the next k-subset in
/// lexicographic order. Returns false after the last subset.
inline auto next_combination(std::vector<std::size_t> & idx, std::size_t n) -> bool
{
    const auto k = idx.size();
    if (k == 0)
        return false;
    std::size_t i = k;
    while (i-- > 0) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (auto j = i + 1; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

inline auto first_combination(std::size_t k) -> std::vector<std::size_t>
{
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

/// C(n, k) in 64 bits; saturates at UINT64_MAX.
inline auto binomial_u64(std::uint64_t n, std::uint64_t k) -> std::uint64_t
{
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > UINT64_MAX)
            return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(r);
}

} // namespace omnikit::detail
