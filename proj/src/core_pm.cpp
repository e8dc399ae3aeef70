#include "partita/core_pm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace partita {

namespace {

void check_query(PartitionQuery q)
{
    check_index(q.n, "n");
    check_index(q.m, "m");
}

void require_proper(PartitionQuery q, const char* who)
{
    if (q.m < 1 || q.m > q.n)
        throw std::invalid_argument(std::string(who) + " requires 1 <= m <= n");
}

// m >= ceil(n/2)
bool in_fast_path(PartitionQuery q) { return 2 * q.m >= q.n; }

// Nearest integer to num/den, ties away from zero. den > 0.
Natural round_div(const Natural& num, const Natural& den)
{
    Natural twice = 2 * num;
    Natural out;
    if (num >= 0) {
        twice += den;
        mpz_fdiv_q(out.get_mpz_t(), twice.get_mpz_t(), Natural(2 * den).get_mpz_t());
    } else {
        twice = den - twice;
        mpz_fdiv_q(out.get_mpz_t(), twice.get_mpz_t(), Natural(2 * den).get_mpz_t());
        out = -out;
    }
    return out;
}

Natural from_index(Index v)
{
    Natural out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return out;
}

} // namespace

std::string_view to_string(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::ClosedForm: return "closed";
    case Algorithm::Alg1: return "alg1";
    case Algorithm::Alg2: return "alg2";
    case Algorithm::FastPath: return "fast";
    }
    return "?";
}

Algorithm choose_algorithm(PartitionQuery q, const DispatchOptions& options)
{
    check_query(q);
    if (q.m == 0 || q.n <= q.m)
        return Algorithm::ClosedForm;
    if (in_fast_path(q))
        return Algorithm::FastPath;
    if (q.m <= 6)
        return Algorithm::ClosedForm;
    if (static_cast<double>(q.m) <= practical_crossover(q.n, options.crossover_constant))
        return Algorithm::Alg1;
    return Algorithm::Alg2;
}

Natural p_exact(PartitionQuery q, PCache& cache, const DispatchOptions& options)
{
    check_query(q);
    if (q.m == 0)
        return q.n == 0 ? 1 : 0;
    if (q.n < q.m)
        return 0;
    if (q.n == q.m)
        return 1;
    return p_with(choose_algorithm(q, options), q, cache);
}

Natural p_with(Algorithm algorithm, PartitionQuery q, PCache& cache)
{
    check_query(q);
    if (q.m == 0)
        return q.n == 0 ? 1 : 0;
    if (q.n < q.m)
        return 0;
    if (q.n == q.m)
        return 1;
    switch (algorithm) {
    case Algorithm::ClosedForm:
        if (q.m > 6)
            throw std::invalid_argument("closed forms cover m <= 6 only");
        return p_closed_small_m(q);
    case Algorithm::FastPath:
        if (!in_fast_path(q))
            throw std::invalid_argument("P(n, m) = P(n - m) needs m >= ceil(n/2)");
        return cache.at(q.n - q.m);
    case Algorithm::Alg1:
        return p_alg1(q);
    case Algorithm::Alg2:
        return p_alg2(q, cache);
    }
    throw std::invalid_argument("unknown algorithm");
}

Natural p_alg1(PartitionQuery q)
{
    check_query(q);
    require_proper(q, "p_alg1");
    const Index span = q.n - q.m;
    const Index stages = std::min(q.m, span);

    // Stage i turns a_p = P(p + i - 1, i - 1) into a_p = P(p + i, i).
    std::vector<Natural> a(span + 1, Natural(1));
    for (Index i = 2; i <= stages; ++i)
        for (Index p = i; p <= span; ++p)
            a[p] += a[p - i];
    return a[span];
}

Natural p_alg2(PartitionQuery q, PCache& cache)
{
    check_query(q);
    require_proper(q, "p_alg2");
    const Index n = q.n;
    const Index m = q.m;
    cache.ensure(n - m);
    const auto& p = cache.values();

    Natural x = p[n - m];

    // i = 1: Q(k, 1) = 1 for every k >= 1.
    if (n > 2 * m) {
        const Index kmax = n - 2 * m;
        for (Index k = 1; k <= kmax; ++k)
            x -= p[kmax - k];
    }

    const Index top = i_max(n, m);
    if (top < 2)
        return x;

    // a[k - kmin] = Q(k, i) = P(k - i(i+1)/2 + i, i); the live prefix
    // kmax - kmin + 1 shrinks every stage.
    const Index first_len = (n - 3 * m) - 3 + 1;
    std::vector<Natural> a(first_len, Natural(1));
    Natural sum;
    for (Index i = 2; i <= top; ++i) {
        const Index kmin = i * (i + 1) / 2;
        const Index kmax = n - m * (i + 1);
        const Index last = kmax - kmin;
        for (Index j = i; j <= last; ++j)
            a[j] += a[j - i];
        sum = 0;
        for (Index k = kmin; k <= kmax; ++k)
            mpz_addmul(sum.get_mpz_t(), a[k - kmin].get_mpz_t(), p[kmax - k].get_mpz_t());
        if (i & 1)
            x -= sum;
        else
            x += sum;
    }
    return x;
}

Natural p_closed_small_m(PartitionQuery q)
{
    check_query(q);
    if (q.m < 1 || q.m > 6 || q.n < q.m)
        throw std::invalid_argument("p_closed_small_m requires 1 <= m <= 6 and n >= m");

    const Natural n = from_index(q.n);
    const int parity_sign = (q.n & 1) ? -1 : 1; // (-1)^n

    switch (q.m) {
    case 1:
        return 1;
    case 2:
        return from_index(q.n / 2);
    case 3:
        return round_div(n * n, 12);
    case 4: {
        Natural inner = 2 * n * n + 6 * n + 9 * (parity_sign - 1);
        return round_div(n * inner, 288);
    }
    case 5: {
        Natural inner = n * n * n + 10 * n * (n + 1) - 15 * (3 * parity_sign + 5);
        return round_div(n * inner, 2880);
    }
    default: {
        static constexpr std::array<int, 6> f = {-96, 629, 224, 309, 224, 629};
        const Natural n2 = n * n;
        Natural inner = 6 * n2 * n2 + 135 * n2 * n + 760 * n2
                        + 675 * (parity_sign - 1) * n - 30 * f[q.n % 6];
        return round_div(n * inner, 518400);
    }
    }
}

Natural q_exact(PartitionQuery q, PCache& cache, const DispatchOptions& options)
{
    check_query(q);
    if (q.m == 0)
        return q.n == 0 ? 1 : 0;
    const Wide shift = static_cast<Wide>(q.m) * (q.m - 1) / 2;
    if (shift > q.n || q.n - shift < q.m)
        return 0;
    return p_exact({q.n - static_cast<Index>(shift), q.m}, cache, options);
}

Index i_max(Index n, Index m)
{
    check_index(n, "n");
    check_index(m, "m");
    if (m < 1)
        throw std::invalid_argument("i_max requires m >= 1");
    // floor((sqrt(8n + (2m-1)^2) - 2m - 1) / 2), with the square root
    // floored first; both floors commute because 2m + 1 is an integer.
    const Wide odd = 2 * static_cast<Wide>(m) - 1;
    const Wide root = isqrt(8 * static_cast<Wide>(n) + odd * odd);
    const Wide sub = 2 * static_cast<Wide>(m) + 1;
    if (root <= sub)
        return 0;
    return static_cast<Index>((root - sub) / 2);
}

MWorst m_worst(Index n, unsigned digits)
{
    check_index(n, "n");
    if (n < 1)
        throw std::invalid_argument("m_worst requires n >= 1");
    MWorst out;
    out.digits = digits;

    Natural scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Natural radicand = (24 * from_index(n) + 9) * scale * scale;
    Natural root;
    mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
    // root / scale <= sqrt(24n + 9) < (root + 1) / scale
    out.value = mpq_class(Natural(root - 3 * scale), Natural(6 * scale));
    out.value.canonicalize();

    const auto exact_root = static_cast<Index>(isqrt(24 * static_cast<Wide>(n) + 9));
    out.floor = (exact_root - 3) / 6;
    return out;
}

double practical_crossover(Index n, double crossover_constant)
{
    return crossover_constant * std::sqrt(static_cast<double>(n));
}

Natural steps_s1(Index n, Index m)
{
    require_proper({n, m}, "steps_s1");
    const Index s = std::min(m, n - m);
    if (s <= 1)
        return 0;
    Natural v = from_index(s - 1) * (2 * from_index(n - m) - from_index(s));
    return v / 2;
}

Natural steps_s2(Index n, Index m)
{
    require_proper({n, m}, "steps_s2");
    const Index i = i_max(n, m);
    if (i == 0)
        return 0;
    Natural v = from_index(i) * (2 * from_index(n - m) - from_index(i));
    if (v <= 0)
        return 0;
    return v / 2;
}

StepEstimate estimate_steps(PartitionQuery q, const DispatchOptions& options)
{
    StepEstimate out;
    out.chosen = choose_algorithm(q, options);
    if (q.m >= 1 && q.m <= q.n) {
        out.s1 = steps_s1(q.n, q.m);
        out.s2 = steps_s2(q.n, q.m);
    }
    return out;
}

} // namespace partita
