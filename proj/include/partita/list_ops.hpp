#pragma once

#include <span>
#include <vector>

#include "partita/natural.hpp"
#include "partita/series_cache.hpp"

namespace partita {

// counts[j] = P(n, j + 1), j = 0 .. n-1.
struct RowResult {
    Index n = 0;
    std::vector<Natural> counts;
};

// counts[j] = P(m + j, m), j = 0 .. n-m.
struct ColumnResult {
    Index n = 0;
    Index m = 0;
    std::vector<Natural> counts;
};

enum class ColumnStrategy { Auto, Convolution, Direct };

struct ColumnOptions {
    // Auto takes the direct DP while m < scale * n^exponent.
    double scale = 0.21;
    double exponent = 0.78;
};

// Schoolbook convolution truncated to `length` outputs:
// out[t] = sum_{j=0}^{t} lhs[j] * rhs[t - j], missing entries read as 0.
std::vector<Natural> convolve(std::span<const Natural> lhs, std::span<const Natural> rhs,
                              std::size_t length);

// Below this m the row is read straight off the DP array; from here up it
// comes from P(n - m) plus strided convolution corrections.
// ceil((sqrt(24n + 9) - 3) / 6) + 1.
Index row_split(Index n);

// P(n, 1) .. P(n, n), O(n^2) up to the convolution. Requires n >= 1.
RowResult p_row(Index n, PCache& cache);

// P(m, m) .. P(n, m). m = 0 gives [1, 0, ..., 0] of length n + 1; n < m gives
// an empty list.
ColumnResult p_column(Index n, Index m, PCache& cache,
                      ColumnStrategy strategy = ColumnStrategy::Auto,
                      const ColumnOptions& options = {});

// The strategy Auto resolves to for (n, m).
ColumnStrategy column_strategy(Index n, Index m, const ColumnOptions& options = {});

// Q(n, 1) .. Q(n, mmax) with mmax = floor((sqrt(8n + 1) - 1) / 2), from one
// shared DP pass. Requires n >= 1.
std::vector<Natural> q_row(Index n);

// floor((sqrt(8n + 1) - 1) / 2): the most distinct parts n can have.
Index q_row_length(Index n);

// Q(m(m+1)/2, m) .. Q(n, m); empty when n is below the smallest distinct
// m-part sum.
std::vector<Natural> q_column(Index n, Index m, PCache& cache,
                              ColumnStrategy strategy = ColumnStrategy::Auto,
                              const ColumnOptions& options = {});

} // namespace partita
