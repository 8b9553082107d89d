#ifndef TSVD_IO_HPP
#define TSVD_IO_HPP

//
// T3 text format: line 1 is "T3 <m> <n> <p>", followed by p slice blocks
// of m lines with n space-separated decimal numbers.  Blank lines between
// slices are ignored.  Emitted numbers use the shortest round-trip form,
// so write/parse/write is byte-stable.
//

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "format.hpp"
#include "tensor3.hpp"

namespace tsvd {

namespace detail {

inline double parse_double(const std::string& tok, int lineno)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("line " + std::to_string(lineno) + ": bad number '" + tok + "'");
    if (!std::isfinite(v))
        throw ParseError("line " + std::to_string(lineno) + ": non-finite value '" + tok + "'");
    return v;
}

}  // namespace detail

inline Tensor3 read_t3(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty input");
    std::istringstream hdr(line);
    std::string magic;
    int m = 0, n = 0, p = 0;
    if (!(hdr >> magic >> m >> n >> p) || magic != "T3")
        throw ParseError("bad header '" + line + "', expected 'T3 <m> <n> <p>'");
    std::string rest;
    if (hdr >> rest)
        throw ParseError("trailing content in header: '" + rest + "'");
    if (m < 1 || n < 1 || p < 2)
        throw ParseError("invalid shape " + Tensor3::shape_str(m, n, p));

    Tensor3 t(m, n, p);
    int lineno = 1;
    for (int k = 0; k < p; ++k) {
        for (int i = 0; i < m; ++i) {
            do {
                if (!std::getline(in, line))
                    throw ParseError("unexpected end of input in slice " + std::to_string(k + 1));
                ++lineno;
            } while (line.find_first_not_of(" \t\r") == std::string::npos);

            std::istringstream row(line);
            std::string tok;
            for (int j = 0; j < n; ++j) {
                if (!(row >> tok))
                    throw ParseError("line " + std::to_string(lineno) + ": expected " +
                                     std::to_string(n) + " values");
                t(i, j, k) = detail::parse_double(tok, lineno);
            }
            if (row >> tok)
                throw ParseError("line " + std::to_string(lineno) + ": extra value '" + tok + "'");
        }
    }
    return t;
}

inline void write_t3(std::ostream& out, const Tensor3& t)
{
    out << "T3 " << t.rows() << ' ' << t.cols() << ' ' << t.depth() << '\n';
    for (int k = 0; k < t.depth(); ++k) {
        if (k > 0)
            out << '\n';
        for (int i = 0; i < t.rows(); ++i) {
            for (int j = 0; j < t.cols(); ++j) {
                if (j > 0)
                    out << ' ';
                out << format_double(t(i, j, k));
            }
            out << '\n';
        }
    }
}

inline Tensor3 read_t3_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    return read_t3(in);
}

inline void write_t3_file(const std::string& path, const Tensor3& t)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot open '" + path + "' for writing");
    write_t3(out, t);
}

}  // namespace tsvd

#endif
