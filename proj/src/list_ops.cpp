#include "partita/list_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "partita/core_pm.hpp"

namespace partita {

namespace {

// One DP stage: a_p = P(p + i - 1, i - 1) -> P(p + i, i) for p <= last.
void advance_stage(std::vector<Natural>& a, Index i, Index last)
{
    for (Index p = i; p <= last; ++p)
        a[p] += a[p - i];
}

} // namespace

std::vector<Natural> convolve(std::span<const Natural> lhs, std::span<const Natural> rhs,
                              std::size_t length)
{
    std::vector<Natural> out(length);
    for (std::size_t t = 0; t < length; ++t) {
        // j ranges over lhs indices with t - j inside rhs.
        const std::size_t lo = t >= rhs.size() ? t - rhs.size() + 1 : 0;
        const std::size_t hi = std::min(t + 1, lhs.size());
        for (std::size_t j = lo; j < hi; ++j)
            mpz_addmul(out[t].get_mpz_t(), lhs[j].get_mpz_t(), rhs[t - j].get_mpz_t());
    }
    return out;
}

Index row_split(Index n)
{
    check_index(n, "n");
    const Wide radicand = 24 * static_cast<Wide>(n) + 9;
    const auto root = static_cast<Index>(isqrt(radicand));
    // root >= 3 always; ceil((sqrt(x) - 3) / 6) from the floored root.
    Index up = (root - 3) / 6;
    if (static_cast<Wide>(root) * root != radicand || (root - 3) % 6 != 0)
        ++up;
    return up + 1;
}

RowResult p_row(Index n, PCache& cache)
{
    check_index(n, "n");
    if (n < 1)
        throw std::invalid_argument("p_row requires n >= 1");

    RowResult row;
    row.n = n;
    row.counts.resize(n);

    const Index split = std::min(row_split(n), n + 1);
    Index conv_stages = 0;
    if (split <= n) {
        cache.ensure(n - split);
        for (Index m = split; m <= n; ++m)
            row.counts[m - 1] = cache[n - m];
        conv_stages = i_max(n, split);
    }
    const auto& p = cache.values();

    // temp[j] = P(j + i, i) after stage i. Read directly at j = n - i for
    // small m, and as Q(j + i(i+1)/2, i) for the convolution corrections.
    std::vector<Natural> temp(n, Natural(1));
    const Index stages = std::max(split - 1, conv_stages);
    for (Index i = 1; i <= stages; ++i) {
        if (i >= 2)
            advance_stage(temp, i, n - i);
        if (i < split)
            row.counts[i - 1] = temp[n - i];
        if (i > conv_stages)
            continue;

        // Every m >= split with n - m(i+1) >= kmin reads one entry of the
        // same convolution, at stride i + 1.
        const Index kmin = i * (i + 1) / 2;
        const Index len = n - split * (i + 1) - kmin + 1;
        const auto conv = convolve(std::span(temp).first(len), p.first(len), len);
        for (Index m = split; m <= n; ++m) {
            const Index reach = m * (i + 1) + kmin;
            if (reach > n)
                break;
            if (i & 1)
                row.counts[m - 1] -= conv[n - reach];
            else
                row.counts[m - 1] += conv[n - reach];
        }
    }
    return row;
}

ColumnStrategy column_strategy(Index n, Index m, const ColumnOptions& options)
{
    const double threshold = options.scale * std::pow(static_cast<double>(n), options.exponent);
    return static_cast<double>(m) < threshold ? ColumnStrategy::Direct
                                              : ColumnStrategy::Convolution;
}

ColumnResult p_column(Index n, Index m, PCache& cache, ColumnStrategy strategy,
                      const ColumnOptions& options)
{
    check_index(n, "n");
    check_index(m, "m");
    ColumnResult col;
    col.n = n;
    col.m = m;
    if (m == 0) {
        col.counts.assign(n + 1, Natural(0));
        col.counts[0] = 1;
        return col;
    }
    if (n < m)
        return col;

    const Index span = n - m;
    if (strategy == ColumnStrategy::Auto)
        strategy = column_strategy(n, m, options);

    if (strategy == ColumnStrategy::Direct) {
        // After stage m the whole array is the column.
        col.counts.assign(span + 1, Natural(1));
        const Index stages = std::min(m, span);
        for (Index i = 2; i <= stages; ++i)
            advance_stage(col.counts, i, span);
        return col;
    }

    cache.ensure(span);
    const auto& p = cache.values();
    col.counts.assign(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(span + 1));

    // P(N, m) = P(N - m) + sum_i (-1)^i conv_i[N - m(i+1) - kmin], where
    // conv_i is Q(. + kmin, i) convolved with the P list. With N = m + j the
    // correction for column slot j sits at conv index j - m i - kmin.
    const Index top = i_max(n, m);
    if (top == 0)
        return col;
    std::vector<Natural> temp(n - 2 * m, Natural(1));
    for (Index i = 1; i <= top; ++i) {
        const Index kmin = i * (i + 1) / 2;
        const Index len = n - m * (i + 1) - kmin + 1;
        if (i >= 2)
            advance_stage(temp, i, len - 1);
        const auto conv = convolve(std::span(temp).first(len), p.first(len), len);
        const Index offset = kmin + m * i;
        for (Index s = 0; s < len; ++s) {
            if (i & 1)
                col.counts[s + offset] -= conv[s];
            else
                col.counts[s + offset] += conv[s];
        }
    }
    return col;
}

Index q_row_length(Index n)
{
    check_index(n, "n");
    const auto root = static_cast<Index>(isqrt(8 * static_cast<Wide>(n) + 1));
    return (root - 1) / 2;
}

std::vector<Natural> q_row(Index n)
{
    check_index(n, "n");
    if (n < 1)
        throw std::invalid_argument("q_row requires n >= 1");
    const Index count = q_row_length(n);
    std::vector<Natural> out(count);
    out[0] = 1;

    // Q(n, i) = P(n - i(i-1)/2, i) = temp[n - i(i+1)/2] after stage i.
    std::vector<Natural> temp(n, Natural(1));
    Index last = n - 1;
    for (Index i = 2; i <= count; ++i) {
        last -= i;
        advance_stage(temp, i, last);
        out[i - 1] = temp[last];
    }
    return out;
}

std::vector<Natural> q_column(Index n, Index m, PCache& cache, ColumnStrategy strategy,
                              const ColumnOptions& options)
{
    check_index(n, "n");
    check_index(m, "m");
    if (m == 0)
        return p_column(n, 0, cache).counts;
    const Wide shift = static_cast<Wide>(m) * (m - 1) / 2;
    if (shift > n || n - shift < m)
        return {};
    return p_column(n - static_cast<Index>(shift), m, cache, strategy, options).counts;
}

} // namespace partita
