#include "partita/cache_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace partita {

namespace {

const char* header_tag(CacheKind kind) { return kind == CacheKind::P ? "PCACHE" : "QCACHE"; }

bool is_decimal(const std::string& s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& bytes)
{
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

void save_cache(std::ostream& out, CacheKind kind, std::span<const Natural> values)
{
    out << header_tag(kind) << " v1 " << values.size() << '\n';
    for (const auto& v : values)
        out << v.get_str() << '\n';
}

std::vector<Natural> load_cache(std::istream& in, CacheKind kind)
{
    std::string line;
    if (!std::getline(in, line))
        throw CacheFormatError(1, "missing header");

    std::istringstream header(line);
    std::string tag, version, count_text, extra;
    header >> tag >> version >> count_text;
    if (tag != header_tag(kind))
        throw CacheFormatError(1, "expected " + std::string(header_tag(kind)) + " header");
    if (version != "v1")
        throw CacheFormatError(1, "unsupported version '" + version + "'");
    if (!is_decimal(count_text) || (header >> extra))
        throw CacheFormatError(1, "malformed count");
    const auto count = std::stoull(count_text);

    std::vector<Natural> values;
    values.reserve(count);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (values.size() == count)
            throw CacheFormatError(line_no, "more values than the header declares");
        if (!is_decimal(line))
            throw CacheFormatError(line_no, "not a nonnegative decimal integer");
        values.emplace_back(line, 10);
        if (values.size() == 1 && values[0] != 1)
            throw CacheFormatError(line_no, "value at index 0 must be 1");
    }
    if (values.size() != count)
        throw CacheFormatError(line_no + 1, "expected " + std::to_string(count) + " values, found "
                                                + std::to_string(values.size()));
    return values;
}

CacheKind detect_cache_kind(std::istream& in)
{
    const auto start = in.tellg();
    std::string tag;
    in >> tag;
    in.clear();
    in.seekg(start);
    if (tag == "PCACHE")
        return CacheKind::P;
    if (tag == "QCACHE")
        return CacheKind::Q;
    throw CacheFormatError(1, "unknown cache header '" + tag + "'");
}

std::uint64_t cache_checksum(std::span<const Natural> values)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& v : values)
        h = fnv1a(h, v.get_str() + '\n');
    return h;
}

} // namespace partita
