#ifndef TSVD_FORMAT_HPP
#define TSVD_FORMAT_HPP

#include <charconv>
#include <string>
#include <system_error>

namespace tsvd {

/// Shortest decimal string that round-trips the binary value.
inline std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace tsvd

#endif
