#pragma once

#include <optional>

#include "partita/natural.hpp"

namespace partita::oracle {

// Brute-force counting by walking every partition. Slow on purpose: this is
// the reference the fast paths are tested against, never a fast path itself.

inline constexpr Index kCeiling = 80;

// Partitions of n (into exactly m parts when given; distinct parts only when
// requested). Throws std::out_of_range above kCeiling.
Natural count_partitions(Index n, std::optional<Index> m = std::nullopt, bool distinct = false);

// Partitions of n whose greatest part is exactly g, by a separate walk over
// parts in nonincreasing order. Conjugation makes this equal to
// count_partitions(n, g).
Natural count_by_greatest_part(Index n, Index g);

} // namespace partita::oracle
