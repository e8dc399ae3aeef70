#pragma once

#include <string_view>

#include "partita/natural.hpp"
#include "partita/series_cache.hpp"

namespace partita {

// P(n, m): partitions of n into exactly m parts.
// Q(n, m): the same with pairwise distinct parts.
struct PartitionQuery {
    Index n = 0;
    Index m = 0;
};

enum class Algorithm { ClosedForm, Alg1, Alg2, FastPath };

std::string_view to_string(Algorithm algorithm);

struct DispatchOptions {
    // Algorithm 1 is used while m <= crossover_constant * sqrt(n).
    double crossover_constant = 2.7;
};

struct StepEstimate {
    Natural s1;
    Natural s2;
    Algorithm chosen = Algorithm::ClosedForm;
};

// Combined dispatcher, O(n^{3/2}). Order of checks:
//   n = m = 0 -> 1;  m = 0 or n < m -> 0;  n = m -> 1;
//   m >= ceil(n/2) -> P(n - m) from the cache;
//   m <= 6 -> closed form;  m <= c sqrt(n) -> Algorithm 1;  else Algorithm 2.
// May extend the cache.
Natural p_exact(PartitionQuery q, PCache& cache, const DispatchOptions& options = {});

// Which branch p_exact takes. Pure function of (n, m, c); the degenerate
// cases report ClosedForm.
Algorithm choose_algorithm(PartitionQuery q, const DispatchOptions& options = {});

// Evaluates q with a specific algorithm after the degenerate cases
// (m = 0, n <= m) are settled. Throws std::invalid_argument if the forced
// algorithm's preconditions do not hold (ClosedForm with m > 6, FastPath
// with m < ceil(n/2)).
Natural p_with(Algorithm algorithm, PartitionQuery q, PCache& cache);

// In-place DP over a_p = P(p + i, i), stage by stage. Requires 1 <= m <= n.
Natural p_alg1(PartitionQuery q);

// P(n - m) plus the alternating sum over i of
// sum_k Q(k, i) P(n - m(i+1) - k), with Q(., i) carried in a shrinking DP
// array. Requires 1 <= m <= n; extends the cache to n - m.
Natural p_alg2(PartitionQuery q, PCache& cache);

// Nearest-integer formulas for m <= 6, evaluated in exact integer
// arithmetic. Requires 1 <= m <= 6 and n >= m.
Natural p_closed_small_m(PartitionQuery q);

// Q(n, m) = P(n - m(m-1)/2, m), and 0 when that leaves fewer than m.
Natural q_exact(PartitionQuery q, PCache& cache, const DispatchOptions& options = {});

// Largest i >= 0 with n - m(i+1) >= i(i+1)/2. Requires m >= 1.
Index i_max(Index n, Index m);

// Analytic crossover (sqrt(24n + 9) - 3) / 6, where i_max(n, m) = m.
struct MWorst {
    // Lower approximation, within 10^-digits of the true value.
    mpq_class value;
    Index floor = 0;
    unsigned digits = 0;
    double approx() const { return value.get_d(); }
};
MWorst m_worst(Index n, unsigned digits = 12);

// The threshold the dispatcher actually uses, c * sqrt(n).
double practical_crossover(Index n, double crossover_constant = 2.7);

// Step models for the two algorithms. Both require 1 <= m <= n.
// S1 = (s - 1)(2(n - m) - s) / 2 with s = min(m, n - m); 0 when s <= 1.
Natural steps_s1(Index n, Index m);
// S2 ~ i(2(n - m) - i) / 2 with i = i_max(n, m); 0 when i = 0. The model
// is half-integral for odd i; this returns its floor.
Natural steps_s2(Index n, Index m);

StepEstimate estimate_steps(PartitionQuery q, const DispatchOptions& options = {});

} // namespace partita
