#pragma once

// Two round-trippable matrix formats.
//
// CSV:
//   # gramfield-matrix rows=<N> cols=<n> row_origin=<r> col_origin=<c> kind=<kind> seed=<seed>
//   row,col,re,im
//   0,0,<re>,<im>
//   ...
// One row per entry in row-major order; row/col are storage indices (model index
// minus origin). Values use 17 significant digits.
//
// Binary (little-endian):
//   "GFMX", u32 version = 1, i64 rows, i64 cols, i64 row_origin, i64 col_origin,
//   u32 kind, u64 seed, then rows * cols pairs of f64 (re, im) in row-major order.

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gramfield/distribution.hpp"
#include "gramfield/matgen.hpp"

namespace gramfield {

inline void write_matrix_csv(std::ostream& out, const FieldMatrix& m) {
    out << "# gramfield-matrix rows=" << m.rows() << " cols=" << m.cols() << " row_origin=" << m.row_origin()
        << " col_origin=" << m.col_origin() << " kind=" << to_string(m.kind()) << " seed=" << m.seed() << '\n';
    out << "row,col,re,im\n";
    for (long i = 0; i < m.rows(); ++i) {
        for (long j = 0; j < m.cols(); ++j) {
            const cplx v = m.entries()(i, j);
            out << i << ',' << j << ',' << detail::format17(v.real()) << ',' << detail::format17(v.imag()) << '\n';
        }
    }
}

namespace detail {

template <class F>
auto parse_or_throw(const std::string& text, F&& parse) {
    try {
        std::size_t used = 0;
        auto v = parse(text, &used);
        if (used != text.size() && !(used + 1 == text.size() && text.back() == '\r')) throw std::invalid_argument(text);
        return v;
    } catch (const std::logic_error&) {
        throw std::runtime_error("matrix CSV: cannot parse `" + text + "`");
    }
}

inline long to_long(const std::string& s) {
    return parse_or_throw(s, [](const std::string& t, std::size_t* u) { return std::stol(t, u); });
}

inline double to_double(const std::string& s) {
    return parse_or_throw(s, [](const std::string& t, std::size_t* u) { return std::stod(t, u); });
}

}  // namespace detail

inline FieldMatrix read_matrix_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# gramfield-matrix", 0) != 0) {
        throw std::runtime_error("matrix CSV: missing metadata line");
    }
    long rows = -1, cols = -1, r0 = 0, c0 = 0;
    std::uint64_t seed = 0;
    std::string kind;
    std::istringstream meta(line.substr(std::string("# gramfield-matrix").size()));
    std::string field;
    while (meta >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw std::runtime_error("matrix CSV: bad metadata field " + field);
        const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
        if (key == "rows") rows = detail::to_long(val);
        else if (key == "cols") cols = detail::to_long(val);
        else if (key == "row_origin") r0 = detail::to_long(val);
        else if (key == "col_origin") c0 = detail::to_long(val);
        else if (key == "kind") kind = val;
        else if (key == "seed") seed = detail::parse_or_throw(val, [](const std::string& t, std::size_t* u) { return std::stoull(t, u); });
        else throw std::runtime_error("matrix CSV: unknown metadata key " + key);
    }
    if (rows < 1 || cols < 1 || kind.empty()) throw std::runtime_error("matrix CSV: incomplete metadata");
    if (!std::getline(in, line) || (line != "row,col,re,im" && line != "row,col,re,im\r")) {
        throw std::runtime_error("matrix CSV: missing `row,col,re,im` header");
    }
    Matrix m(rows, cols);
    std::vector<char> seen(static_cast<std::size_t>(rows * cols), 0);
    long count = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::array<std::string, 4> cells;
        std::istringstream ls(line);
        for (auto& c : cells) {
            if (!std::getline(ls, c, ',')) throw std::runtime_error("matrix CSV: short row: " + line);
        }
        const long i = detail::to_long(cells[0]), j = detail::to_long(cells[1]);
        if (i < 0 || i >= rows || j < 0 || j >= cols) throw std::runtime_error("matrix CSV: index out of range");
        if (std::exchange(seen[static_cast<std::size_t>(i * cols + j)], 1)) throw std::runtime_error("matrix CSV: duplicate entry");
        m(i, j) = {detail::to_double(cells[2]), detail::to_double(cells[3])};
        ++count;
    }
    if (count != rows * cols) throw std::runtime_error("matrix CSV: expected " + std::to_string(rows * cols) + " entries");
    return FieldMatrix(std::move(m), field_kind_from_string(kind), seed, r0, c0);
}

namespace detail {

template <class T>
void put(std::ostream& out, T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& in) {
    char buf[sizeof(T)];
    if (!in.read(buf, sizeof(T))) throw std::runtime_error("matrix binary: truncated input");
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

}  // namespace detail

inline void write_matrix_binary(std::ostream& out, const FieldMatrix& m) {
    out.write("GFMX", 4);
    detail::put<std::uint32_t>(out, 1);
    detail::put<std::int64_t>(out, m.rows());
    detail::put<std::int64_t>(out, m.cols());
    detail::put<std::int64_t>(out, m.row_origin());
    detail::put<std::int64_t>(out, m.col_origin());
    detail::put<std::uint32_t>(out, static_cast<std::uint32_t>(m.kind()));
    detail::put<std::uint64_t>(out, m.seed());
    for (long i = 0; i < m.rows(); ++i) {
        for (long j = 0; j < m.cols(); ++j) {
            detail::put<double>(out, m.entries()(i, j).real());
            detail::put<double>(out, m.entries()(i, j).imag());
        }
    }
}

inline FieldMatrix read_matrix_binary(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, "GFMX", 4) != 0) throw std::runtime_error("matrix binary: bad magic");
    if (detail::get<std::uint32_t>(in) != 1) throw std::runtime_error("matrix binary: unsupported version");
    const auto rows = detail::get<std::int64_t>(in);
    const auto cols = detail::get<std::int64_t>(in);
    const auto r0 = detail::get<std::int64_t>(in);
    const auto c0 = detail::get<std::int64_t>(in);
    const auto kind = detail::get<std::uint32_t>(in);
    const auto seed = detail::get<std::uint64_t>(in);
    if (rows < 1 || cols < 1) throw std::runtime_error("matrix binary: bad dimensions");
    if (kind > static_cast<std::uint32_t>(FieldKind::generic)) throw std::runtime_error("matrix binary: bad kind");
    Matrix m(rows, cols);
    for (std::int64_t i = 0; i < rows; ++i) {
        for (std::int64_t j = 0; j < cols; ++j) {
            const double re = detail::get<double>(in);
            m(i, j) = {re, detail::get<double>(in)};
        }
    }
    return FieldMatrix(std::move(m), static_cast<FieldKind>(kind), seed, r0, c0);
}

inline void save_matrix(const std::string& path, const FieldMatrix& m) {
    const bool binary = path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0;
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot write " + path);
    binary ? write_matrix_binary(out, m) : write_matrix_csv(out, m);
}

inline FieldMatrix load_matrix(const std::string& path) {
    const bool binary = path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0;
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw std::runtime_error("cannot open " + path);
    return binary ? read_matrix_binary(in) : read_matrix_csv(in);
}

}  // namespace gramfield
