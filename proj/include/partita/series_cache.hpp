#pragma once

#include <span>
#include <vector>

#include "partita/natural.hpp"

namespace partita {

// Grow-only lists of P(0..N) and Q(0..N).
//
// Threading: the caches carry no internal locking. Any number of threads may
// read an already materialized prefix concurrently, but every call that can
// extend a cache (ensure, at, and every library function taking a non-const
// cache reference) needs exclusive access. Callers sharing a cache across
// threads must serialize those calls themselves.

enum class PAlgorithm { Euler, Ewell };
enum class QAlgorithm { Ewell, Merca };

class PCache {
public:
    explicit PCache(PAlgorithm algorithm = PAlgorithm::Ewell);

    // Wraps values loaded from elsewhere. values[0] must be 1.
    static PCache from_values(std::vector<Natural> values,
                              PAlgorithm algorithm = PAlgorithm::Ewell);

    // Materialize through index n. Existing entries are left alone.
    void ensure(Index n);

    // Auto-extending lookup.
    const Natural& at(Index n)
    {
        ensure(n);
        return values_[n];
    }

    // Lookup without extension; n must already be materialized.
    const Natural& operator[](Index n) const;

    Index size() const { return values_.size(); }
    bool contains(Index n) const { return n < values_.size(); }
    std::span<const Natural> values() const { return values_; }
    PAlgorithm algorithm() const { return algorithm_; }

private:
    PAlgorithm algorithm_;
    std::vector<Natural> values_;
};

class QCache {
public:
    explicit QCache(QAlgorithm algorithm = QAlgorithm::Merca);

    static QCache from_values(std::vector<Natural> values,
                              QAlgorithm algorithm = QAlgorithm::Merca);

    // Merca only. Throws std::logic_error for the Ewell recurrence, which
    // needs a P list.
    void ensure(Index n);
    // Either algorithm; pcache is only touched (and extended) by Ewell.
    void ensure(Index n, PCache& pcache);

    const Natural& at(Index n, PCache& pcache)
    {
        ensure(n, pcache);
        return values_[n];
    }
    const Natural& operator[](Index n) const;

    Index size() const { return values_.size(); }
    bool contains(Index n) const { return n < values_.size(); }
    std::span<const Natural> values() const { return values_; }
    QAlgorithm algorithm() const { return algorithm_; }

private:
    QAlgorithm algorithm_;
    std::vector<Natural> values_;
};

// The four list recurrences. Each appends P(i) (or Q(i)) for
// i = values.size() .. n, reading only earlier entries. values must hold at
// least the seed value 1 at index 0.

// Euler's pentagonal number recurrence.
void extend_p_euler(std::vector<Natural>& values, Index n);
// Ewell's recurrence over triangular and doubled-square lags, with the
// triangular sum walked in two residue classes of stride 8.
void extend_p_ewell(std::vector<Natural>& values, Index n);
// Ewell's Q recurrence over the P list; p must already hold indices 0..n.
void extend_q_ewell(std::vector<Natural>& values, std::span<const Natural> p, Index n);
// Merca's Q recurrence over tripled squares.
void extend_q_merca(std::vector<Natural>& values, Index n);

// 1 iff n = k(3k +- 1)/2 for some k >= 0.
int s_pentagonal(Index n);

inline const Natural& p_of(PCache& cache, Index n) { return cache.at(n); }
inline const Natural& q_of(QCache& cache, PCache& pcache, Index n) { return cache.at(n, pcache); }

} // namespace partita
