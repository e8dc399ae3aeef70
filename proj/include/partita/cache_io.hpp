#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "partita/natural.hpp"

namespace partita {

// Text persistence for the series caches:
//
//   PCACHE v1 <count>        (QCACHE for Q lists)
//   <value 0>
//   ...
//   <value count-1>
//
// Values are decimal, one per line, index-ordered from 0.

enum class CacheKind { P, Q };

class CacheFormatError : public std::runtime_error {
public:
    CacheFormatError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

void save_cache(std::ostream& out, CacheKind kind, std::span<const Natural> values);

// Throws CacheFormatError naming the first offending line.
std::vector<Natural> load_cache(std::istream& in, CacheKind kind);

// Peeks the header to tell P from Q files.
CacheKind detect_cache_kind(std::istream& in);

// FNV-1a over the decimal digits of each value, newline separated.
std::uint64_t cache_checksum(std::span<const Natural> values);

} // namespace partita
