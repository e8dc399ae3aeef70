#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "partita/core_pm.hpp"
#include "partita/oracle.hpp"

using namespace partita;

TEST_CASE("p_exact examples")
{
    PCache cache;
    CHECK(p_exact({0, 0}, cache) == 1);
    CHECK(p_exact({5, 2}, cache) == 2);
    CHECK(p_exact({7, 4}, cache) == 3);
    CHECK(p_exact({3, 7}, cache) == 0);
    CHECK(p_exact({5, 0}, cache) == 0);
    CHECK(p_exact({9, 9}, cache) == 1);

    // Frozen from the oracle.
    CHECK(oracle::count_partitions(7, 4) == 3);
}

TEST_CASE("p_alg1 examples")
{
    CHECK(p_alg1({6, 3}) == 3);
    CHECK(p_alg1({10, 10}) == 1);
    CHECK(p_alg1({20, 10}) == 42);
    CHECK(oracle::count_partitions(20, 10) == 42);
    CHECK(oracle::count_partitions(6, 3) == 3);
}

TEST_CASE("p_alg2 examples")
{
    PCache cache;
    CHECK(p_alg2({10, 3}, cache) == 8);
    CHECK(p_alg2({9, 5}, cache) == 5);
    CHECK(p_alg2({12, 4}, cache) == 15);
    CHECK(oracle::count_partitions(10, 3) == 8);
    CHECK(oracle::count_partitions(12, 4) == 15);
    CHECK(oracle::count_partitions(4) == 5);
}

TEST_CASE("closed forms for m <= 6")
{
    CHECK(p_closed_small_m({7, 4}) == 3);
    CHECK(p_closed_small_m({7, 5}) == 2);
    CHECK(p_closed_small_m({7, 6}) == 1);
    CHECK(p_closed_small_m({5, 2}) == 2);
    CHECK(p_closed_small_m({6, 3}) == 3);
    CHECK(p_closed_small_m({1, 1}) == 1);
    CHECK(oracle::count_partitions(7, 5) == 2);
    CHECK(oracle::count_partitions(7, 6) == 1);

    // Alg1 is the reference for larger n.
    for (Index m = 1; m <= 6; ++m)
        for (Index n = m; n <= 2000; n += (n < 200 ? 1 : 37))
            REQUIRE_MESSAGE(p_closed_small_m({n, m}) == p_alg1({n, m}), "n=" << n << " m=" << m);
}

TEST_CASE("closed forms reject m outside 1..6")
{
    CHECK_THROWS_AS(p_closed_small_m({10, 7}), std::invalid_argument);
    CHECK_THROWS_AS(p_closed_small_m({10, 0}), std::invalid_argument);
    CHECK_THROWS_AS(p_closed_small_m({3, 4}), std::invalid_argument);
}

TEST_CASE("algorithm preconditions")
{
    PCache cache;
    CHECK_THROWS_AS(p_alg1({5, 0}), std::invalid_argument);
    CHECK_THROWS_AS(p_alg1({5, 6}), std::invalid_argument);
    CHECK_THROWS_AS(p_alg2({5, 0}, cache), std::invalid_argument);
    CHECK_THROWS_AS(p_alg2({5, 6}, cache), std::invalid_argument);
    CHECK_THROWS_AS(steps_s1(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(i_max(10, 0), std::invalid_argument);
    CHECK_THROWS_AS(m_worst(0), std::invalid_argument);
    CHECK_THROWS_AS(p_exact({kIndexCeiling + 1, 1}, cache), std::out_of_range);
    CHECK_THROWS_AS(p_with(Algorithm::ClosedForm, {20, 7}, cache), std::invalid_argument);
    CHECK_THROWS_AS(p_with(Algorithm::FastPath, {20, 3}, cache), std::invalid_argument);
}

TEST_CASE("q_exact examples")
{
    PCache cache;
    CHECK(q_exact({6, 3}, cache) == 1);
    CHECK(q_exact({5, 2}, cache) == 2);
    CHECK(q_exact({4, 3}, cache) == 0);
    CHECK(q_exact({0, 0}, cache) == 1);
    CHECK(q_exact({3, 0}, cache) == 0);
    // m(m-1)/2 alone overflows 64 bits here; the answer is simply 0.
    CHECK(q_exact({100, Index{1} << 40}, cache) == 0);

    for (Index n = 0; n <= 40; ++n)
        for (Index m = 0; m <= 10; ++m)
            REQUIRE(q_exact({n, m}, cache) == oracle::count_partitions(n, m, true));
}

TEST_CASE("i_max examples and scan")
{
    CHECK(i_max(10, 3) == 1);
    CHECK(i_max(400, 54) == 6);
    CHECK(i_max(9, 5) == 0);
    CHECK(i_max(10, 5) == 0);

    // Largest i with n - m(i+1) >= i(i+1)/2, found by walking i upward.
    for (Index n = 0; n <= 500; ++n) {
        for (Index m = 1; m <= n; ++m) {
            Index best = 0;
            for (Index i = 1; m * (i + 1) + i * (i + 1) / 2 <= n; ++i)
                best = i;
            REQUIRE_MESSAGE(i_max(n, m) == best, "n=" << n << " m=" << m);
        }
    }
}

TEST_CASE("i_max stays exact near the index ceiling")
{
    const Index n = kIndexCeiling;
    const Index m = 1;
    const Index i = i_max(n, m);
    const Wide lhs = static_cast<Wide>(n) - static_cast<Wide>(m) * (i + 1);
    CHECK(lhs >= static_cast<Wide>(i) * (i + 1) / 2);
    const Wide next = static_cast<Wide>(i + 1) * (i + 2) / 2 + static_cast<Wide>(m) * (i + 2);
    CHECK(next > n);
}

TEST_CASE("m_worst and the practical threshold")
{
    CHECK(m_worst(400).approx() == doctest::Approx(15.84).epsilon(0.001));
    CHECK(std::abs(m_worst(400).approx() - 15.8375845) < 1e-6);
    CHECK(m_worst(400).floor == 15);
    CHECK(std::abs(m_worst(1).approx() - (std::sqrt(33.0) - 3) / 6) < 1e-9);
    CHECK(m_worst(1).floor == 0);
    CHECK(static_cast<Index>(practical_crossover(400)) == 54);

    for (Index n = 1; n <= 3000; ++n) {
        const auto w = m_worst(n);
        const long double ref = (std::sqrt(24.0L * n + 9) - 3) / 6;
        REQUIRE(std::abs(static_cast<long double>(w.approx()) - ref) < 1e-9);
        // i_max(n, m) >= m exactly up to the crossover.
        for (Index m = std::max<Index>(1, w.floor) - (w.floor > 1 ? 1 : 0); m <= w.floor + 2 && m <= n; ++m)
            REQUIRE((i_max(n, m) >= m) == (m <= w.floor));
    }
}

TEST_CASE("step models")
{
    CHECK(steps_s1(400, 50) == 15925);
    CHECK(steps_s1(400, 1) == 0);
    CHECK(steps_s1(37, 1) == 0);
    CHECK(steps_s1(10, 9) == 0);
    CHECK(steps_s2(10, 5) == 0);
    // i_max(400, 10) = 19: 19 * 761 / 2 = 7229.5, floored.
    CHECK(steps_s2(400, 10) == 7229);

    for (Index m = 1; m < 399; ++m)
        CHECK(steps_s2(400, m + 1) <= steps_s2(400, m));
}

TEST_CASE("dispatcher picks by region")
{
    CHECK(choose_algorithm({400, 54}) == Algorithm::Alg1);
    CHECK(choose_algorithm({400, 55}) == Algorithm::Alg2);
    CHECK(choose_algorithm({400, 6}) == Algorithm::ClosedForm);
    CHECK(choose_algorithm({400, 200}) == Algorithm::FastPath);
    CHECK(choose_algorithm({400, 199}) == Algorithm::Alg2);
    CHECK(choose_algorithm({0, 0}) == Algorithm::ClosedForm);
    CHECK(choose_algorithm({3, 7}) == Algorithm::ClosedForm);

    const auto e = estimate_steps({400, 50});
    CHECK(e.s1 == 15925);
    CHECK(e.chosen == Algorithm::Alg1);
    CHECK(estimate_steps({400, 50}, {.crossover_constant = 1.0}).chosen == Algorithm::Alg2);
}

TEST_CASE("agrees with the oracle for n <= 30")
{
    PCache cache;
    for (Index n = 0; n <= 30; ++n)
        for (Index m = 0; m <= n + 1; ++m)
            REQUIRE_MESSAGE(p_exact({n, m}, cache) == oracle::count_partitions(n, m),
                            "n=" << n << " m=" << m);
}

TEST_CASE("both algorithms agree for n <= 120")
{
    PCache cache;
    for (Index n = 1; n <= 120; ++n) {
        for (Index m = 1; m <= n; ++m) {
            const Natural a1 = p_alg1({n, m});
            REQUIRE_MESSAGE(p_alg2({n, m}, cache) == a1, "n=" << n << " m=" << m);
            REQUIRE(p_exact({n, m}, cache) == a1);
            if (m <= 6)
                REQUIRE(p_closed_small_m({n, m}) == a1);
        }
    }
}

TEST_CASE("recurrence P(n,m) = P(n-m,m) + P(n-1,m-1)")
{
    PCache cache;
    for (Index n = 1; n <= 200; ++n)
        for (Index m = 1; m <= n; ++m)
            REQUIRE(p_exact({n, m}, cache)
                    == p_exact({n - m, m}, cache) + p_exact({n - 1, m - 1}, cache));
}

TEST_CASE("at most m parts: sum_k P(n,k) = P(n+m,m)")
{
    PCache cache;
    for (Index n = 0; n <= 100; ++n) {
        Natural running = 0;
        for (Index m = 0; m <= n; ++m) {
            running += p_exact({n, m}, cache);
            REQUIRE(running == p_exact({n + m, m}, cache));
        }
    }
}

TEST_CASE("P(2n, n) = P(n) and the fast path")
{
    PCache cache;
    for (Index n = 0; n <= 200; ++n) {
        REQUIRE(p_exact({2 * n, n}, cache) == cache.at(n));
        for (Index m = (n + 1) / 2; m <= n; ++m)
            REQUIRE(p_exact({n, m}, cache) == cache.at(n - m));
    }
    CHECK(p_alg2({2000, 1000}, cache) == cache.at(1000));
    CHECK(p_alg1({2000, 1000}) == cache.at(1000));
}

TEST_CASE("crossover constant changes the route, not the value")
{
    PCache cache;
    for (double c : {0.0, 0.5, 1.0, 2.7, 5.0, 100.0}) {
        const DispatchOptions opts{.crossover_constant = c};
        for (Index n = 1; n <= 150; n += 7)
            for (Index m = 1; m <= n; ++m)
                REQUIRE(p_exact({n, m}, cache, opts) == p_alg1({n, m}));
    }
}

TEST_CASE("larger arguments cross-check")
{
    PCache cache;
    // Both sides of the dispatch threshold at n = 3000 (2.7 sqrt(3000) ~ 147.9).
    for (Index m : {7, 60, 147, 148, 149, 500, 1499}) {
        const Natural a1 = p_alg1({3000, m});
        CHECK(p_alg2({3000, m}, cache) == a1);
        CHECK(p_exact({3000, m}, cache) == a1);
    }
}
