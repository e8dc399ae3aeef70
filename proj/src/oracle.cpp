#include "partita/oracle.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace partita::oracle {

namespace {

constexpr Index kAnyParts = ~Index{0};

void check_ceiling(Index n)
{
    if (n > kCeiling)
        throw std::out_of_range("oracle refuses n = " + std::to_string(n) + " (ceiling "
                                + std::to_string(kCeiling) + ")");
}

// Visits every sequence of parts, each at most `largest`, summing to
// `remaining`. Distinct walks shrink the bound by one per part. When
// parts_left is not kAnyParts the walk must use exactly that many parts.
std::uint64_t walk(Index remaining, Index largest, Index parts_left, bool distinct)
{
    if (remaining == 0)
        return (parts_left == kAnyParts || parts_left == 0) ? 1 : 0;
    if (parts_left == 0)
        return 0;
    const Index top = std::min(largest, remaining);
    // Not enough room left even with every part at the maximum.
    if (parts_left != kAnyParts && remaining > top * parts_left)
        return 0;
    std::uint64_t total = 0;
    for (Index part = top; part >= 1; --part) {
        const Index next_largest = distinct ? part - 1 : part;
        const Index next_left = parts_left == kAnyParts ? kAnyParts : parts_left - 1;
        total += walk(remaining - part, next_largest, next_left, distinct);
    }
    return total;
}

} // namespace

Natural count_partitions(Index n, std::optional<Index> m, bool distinct)
{
    check_ceiling(n);
    const Index parts = m ? *m : kAnyParts;
    if (m && *m > n)
        return n == 0 && *m == 0 ? 1 : 0;
    return Natural(static_cast<unsigned long>(walk(n, n, parts, distinct)));
}

Natural count_by_greatest_part(Index n, Index g)
{
    check_ceiling(n);
    if (g == 0)
        return n == 0 ? 1 : 0;
    if (g > n)
        return 0;
    // Fix the first part at g, then any partition of the rest with parts <= g.
    return Natural(static_cast<unsigned long>(walk(n - g, g, kAnyParts, false)));
}

} // namespace partita::oracle
