#include <doctest.h>

#include <array>
#include <stdexcept>

#include "partita/oracle.hpp"

using partita::Index;
using partita::Natural;
namespace oracle = partita::oracle;

TEST_CASE("oracle counts small cases by hand")
{
    CHECK(oracle::count_partitions(5, 2) == 2);          // 4+1, 3+2
    CHECK(oracle::count_partitions(6, std::nullopt, true) == 4); // 6, 5+1, 4+2, 3+2+1
    CHECK(oracle::count_partitions(0, 0) == 1);
    CHECK(oracle::count_partitions(0) == 1);
    CHECK(oracle::count_partitions(3, 7) == 0);
    CHECK(oracle::count_partitions(6, 3, true) == 1);
    CHECK(oracle::count_partitions(4, 3, true) == 0);
    CHECK(oracle::count_partitions(5, 0) == 0);
}

TEST_CASE("oracle matches published partition numbers")
{
    // A000041 and A000009.
    const std::array<unsigned, 21> p = {1,  1,  2,  3,   5,   7,   11,  15,  22,  30, 42,
                                        56, 77, 101, 135, 176, 231, 297, 385, 490, 627};
    const std::array<unsigned, 21> q = {1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10,
                                        12, 15, 18, 22, 27, 32, 38, 46, 54, 64};
    for (Index n = 0; n < p.size(); ++n) {
        CHECK(oracle::count_partitions(n) == p[n]);
        CHECK(oracle::count_partitions(n, std::nullopt, true) == q[n]);
    }
}

TEST_CASE("oracle refuses n above the ceiling")
{
    CHECK_THROWS_AS(oracle::count_partitions(oracle::kCeiling + 1), std::out_of_range);
    CHECK_THROWS_AS(oracle::count_by_greatest_part(oracle::kCeiling + 1, 2), std::out_of_range);
    CHECK_NOTHROW(oracle::count_partitions(oracle::kCeiling, 3));
}

TEST_CASE("exact-part counts sum to the unrestricted count")
{
    for (Index n = 0; n <= 40; ++n) {
        Natural total = 0, distinct_total = 0;
        for (Index m = 0; m <= n; ++m) {
            total += oracle::count_partitions(n, m);
            distinct_total += oracle::count_partitions(n, m, true);
        }
        CHECK(total == oracle::count_partitions(n));
        CHECK(distinct_total == oracle::count_partitions(n, std::nullopt, true));
    }
}

TEST_CASE("conjugation: greatest part m equals exactly m parts")
{
    for (Index n = 0; n <= 30; ++n)
        for (Index g = 0; g <= n + 1; ++g)
            CHECK(oracle::count_by_greatest_part(n, g) == oracle::count_partitions(n, g));
}
