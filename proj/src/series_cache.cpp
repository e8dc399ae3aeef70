#include "partita/series_cache.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace partita {

namespace {

using Offset = std::int64_t;

void reserve_for(std::vector<Natural>& values, Index n)
{
    if (n + 1 > values.capacity())
        values.reserve(std::max<std::size_t>(n + 1, values.capacity() * 2));
}

void check_seed(const std::vector<Natural>& values)
{
    if (values.empty() || values[0] != 1)
        throw std::invalid_argument("series values must start with 1");
}

} // namespace

void extend_p_euler(std::vector<Natural>& values, Index n)
{
    check_index(n, "n");
    reserve_for(values, n);
    Natural acc;
    for (Index i = values.size(); i <= n; ++i) {
        acc = 0;
        // Generalized pentagonal lags k(3k-1)/2 and k(3k+1)/2, sign (-1)^(k+1).
        for (Index k = 1;; ++k) {
            Index g1 = k * (3 * k - 1) / 2;
            if (g1 > i)
                break;
            Index g2 = g1 + k;
            if (k & 1) {
                acc += values[i - g1];
                if (g2 <= i)
                    acc += values[i - g2];
            } else {
                acc -= values[i - g1];
                if (g2 <= i)
                    acc -= values[i - g2];
            }
        }
        values.push_back(std::move(acc));
        acc = Natural();
    }
}

void extend_p_ewell(std::vector<Natural>& values, Index n)
{
    check_index(n, "n");
    reserve_for(values, n);

    // k(k+1)/2 mod 4 runs 0,1,3,2,2,3,1,0 with period 8, so the integral
    // quarter-arguments come from two residue classes of k. first[r] and
    // second[r] are the smallest such k for n = r mod 4.
    static constexpr std::array<Offset, 4> first = {0, 1, 3, 2};
    static constexpr std::array<Offset, 4> second = {7, 6, 4, 5};

    Natural acc;
    Natural squares;
    for (Index i = values.size(); i <= n; ++i) {
        const auto ni = static_cast<Offset>(i);

        // -2 sum_{k>=1} (-1)^k P(n - 2k^2)
        squares = 0;
        Offset lag = ni - 2;
        for (Offset k = 1; lag >= 0; ++k) {
            if (k & 1)
                squares += values[lag];
            else
                squares -= values[lag];
            lag -= 4 * k + 2;
        }
        acc = squares * 2;

        // sum_k P((n - k(k+1)/2) / 4). Advancing k by 8 moves the triangular
        // number by 8k + 36, i.e. the quarter-argument by 2k + 9.
        const auto r = static_cast<std::size_t>(i % 4);
        Offset k1 = first[r];
        Offset k2 = second[r];
        Offset arg1 = (ni - k1 * (k1 + 1) / 2) / 4;
        Offset arg2 = (ni - k2 * (k2 + 1) / 2) / 4;
        while (arg2 >= 0) {
            acc += values[arg1];
            acc += values[arg2];
            arg1 -= 2 * k1 + 9;
            arg2 -= 2 * k2 + 9;
            k1 += 8;
            k2 += 8;
        }
        // k2 > k1 within a class, so arg1 may still have one term left.
        if (arg1 >= 0)
            acc += values[arg1];

        values.push_back(std::move(acc));
        acc = Natural();
    }
}

void extend_q_ewell(std::vector<Natural>& values, std::span<const Natural> p, Index n)
{
    check_index(n, "n");
    if (p.size() <= n)
        throw std::invalid_argument("P list too short for Ewell's Q recurrence");
    reserve_for(values, n);
    Natural acc;
    for (Index i = values.size(); i <= n; ++i) {
        acc = p[i];
        // Lags k(3k-1) and k(3k+1), sign (-1)^k.
        for (Index k = 1;; ++k) {
            Index g1 = k * (3 * k - 1);
            if (g1 > i)
                break;
            Index g2 = g1 + 2 * k;
            if (k & 1) {
                acc -= p[i - g1];
                if (g2 <= i)
                    acc -= p[i - g2];
            } else {
                acc += p[i - g1];
                if (g2 <= i)
                    acc += p[i - g2];
            }
        }
        values.push_back(std::move(acc));
        acc = Natural();
    }
}

void extend_q_merca(std::vector<Natural>& values, Index n)
{
    check_index(n, "n");
    reserve_for(values, n);
    Natural acc;
    for (Index i = values.size(); i <= n; ++i) {
        acc = 0;
        for (Index k = 1; 3 * k * k <= i; ++k) {
            if (k & 1)
                acc += values[i - 3 * k * k];
            else
                acc -= values[i - 3 * k * k];
        }
        acc *= 2;
        acc += s_pentagonal(i);
        values.push_back(std::move(acc));
        acc = Natural();
    }
}

int s_pentagonal(Index n)
{
    // n = k(3k -+ 1)/2  <=>  24n + 1 = (6k -+ 1)^2
    const Wide v = static_cast<Wide>(n) * 24 + 1;
    const auto r = isqrt(v);
    if (r * r != v)
        return 0;
    const auto rem = static_cast<unsigned>(r % 6);
    return (rem == 1 || rem == 5) ? 1 : 0;
}

PCache::PCache(PAlgorithm algorithm) : algorithm_(algorithm), values_{Natural(1)} {}

PCache PCache::from_values(std::vector<Natural> values, PAlgorithm algorithm)
{
    check_seed(values);
    PCache cache(algorithm);
    cache.values_ = std::move(values);
    return cache;
}

void PCache::ensure(Index n)
{
    if (n < values_.size())
        return;
    if (algorithm_ == PAlgorithm::Euler)
        extend_p_euler(values_, n);
    else
        extend_p_ewell(values_, n);
}

const Natural& PCache::operator[](Index n) const
{
    if (n >= values_.size())
        throw std::out_of_range("P(" + std::to_string(n) + ") not materialized");
    return values_[n];
}

QCache::QCache(QAlgorithm algorithm) : algorithm_(algorithm), values_{Natural(1)} {}

QCache QCache::from_values(std::vector<Natural> values, QAlgorithm algorithm)
{
    check_seed(values);
    QCache cache(algorithm);
    cache.values_ = std::move(values);
    return cache;
}

void QCache::ensure(Index n)
{
    if (n < values_.size())
        return;
    if (algorithm_ == QAlgorithm::Ewell)
        throw std::logic_error("Ewell's Q recurrence needs a P cache");
    extend_q_merca(values_, n);
}

void QCache::ensure(Index n, PCache& pcache)
{
    if (n < values_.size())
        return;
    if (algorithm_ == QAlgorithm::Merca) {
        extend_q_merca(values_, n);
        return;
    }
    pcache.ensure(n);
    extend_q_ewell(values_, pcache.values(), n);
}

const Natural& QCache::operator[](Index n) const
{
    if (n >= values_.size())
        throw std::out_of_range("Q(" + std::to_string(n) + ") not materialized");
    return values_[n];
}

} // namespace partita
