#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace partita {

// Partition counts are arbitrary precision. Intermediate sums in the
// alternating recurrences go negative, so the type is signed underneath;
// every value handed back to a caller is >= 0.
using Natural = mpz_class;

// n, m, k, i. Machine sized.
using Index = std::uint64_t;

// Intermediate width for index arithmetic such as 8n + (2m-1)^2.
__extension__ using Wide = unsigned __int128;

// Largest n accepted at any public entry point. Keeps 8n + (2m-1)^2 and
// friends inside 128-bit intermediates.
inline constexpr Index kIndexCeiling = Index{1} << 62;

inline void check_index(Index v, const char* what)
{
    if (v > kIndexCeiling)
        throw std::out_of_range(std::string(what) + " exceeds the index ceiling 2^62");
}

// floor(sqrt(v)), exact.
constexpr Wide isqrt(Wide v)
{
    if (v < 2)
        return v;
    // Start above the root; Newton decreases monotonically to floor(sqrt(v)).
    Wide x = v;
    int shift = 0;
    while ((x >> shift) > 1)
        ++shift;
    x = static_cast<Wide>(1) << (shift / 2 + 1);
    for (;;) {
        Wide y = (x + v / x) / 2;
        if (y >= x)
            return x;
        x = y;
    }
}

constexpr bool is_perfect_square(Wide v)
{
    auto r = isqrt(v);
    return r * r == v;
}

} // namespace partita
