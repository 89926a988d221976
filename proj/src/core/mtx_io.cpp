#include "sketchkit/core/mtx_io.hpp"

#include "sketchkit/core/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace sketchkit {

namespace {

enum class Symmetry { General, Symmetric, SkewSymmetric, Hermitian };

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
    return s;
}

struct LineReader {
    std::istream& in;
    long line = 0;

    bool next(std::string& s) {
        while (std::getline(in, s)) {
            ++line;
            if (!s.empty() && s.back() == '\r') s.pop_back();
            const auto first = s.find_first_not_of(" \t");
            if (first == std::string::npos || s[first] == '%') continue;
            return true;
        }
        return false;
    }
};

double parse_double(const std::string& tok, long line) {
    double v = 0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e) throw ParseError("invalid number '" + tok + "'", line);
    return v;
}

index_t parse_index(const std::string& tok, long line) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) throw ParseError("invalid integer '" + tok + "'", line);
    return index_t(v);
}

std::vector<std::string> split(const std::string& s) {
    std::istringstream ss(s);
    std::vector<std::string> out;
    std::string t;
    while (ss >> t) out.push_back(t);
    return out;
}

template <Scalar T>
T read_value(const std::vector<std::string>& tok, std::size_t at, long line) {
    if constexpr (is_complex_v<T>) {
        if (tok.size() != at + 2) throw ParseError("expected real and imaginary parts", line);
        return {parse_double(tok[at], line), parse_double(tok[at + 1], line)};
    } else {
        if (tok.size() != at + 1) throw ParseError("expected one value", line);
        return parse_double(tok[at], line);
    }
}

template <Scalar T>
T mirror(T v, Symmetry sym) {
    switch (sym) {
        case Symmetry::SkewSymmetric:
            return -v;
        case Symmetry::Hermitian:
            return sketchkit::conj(v);
        default:
            return v;
    }
}

template <Scalar T>
AnyMatrix read_coordinate(LineReader& lr, Symmetry sym) {
    std::string s;
    if (!lr.next(s)) throw ParseError("missing size line", lr.line);
    const auto head = split(s);
    if (head.size() != 3) throw ParseError("coordinate size line needs rows cols nnz", lr.line);
    const index_t m = parse_index(head[0], lr.line), n = parse_index(head[1], lr.line),
                  nnz = parse_index(head[2], lr.line);
    if (m < 0 || n < 0 || nnz < 0) throw ParseError("negative size", lr.line);
    if (sym != Symmetry::General && m != n) throw ParseError("symmetric storage requires a square matrix", lr.line);
    std::vector<Triplet<T>> e;
    e.reserve(std::size_t(sym == Symmetry::General ? nnz : 2 * nnz));
    for (index_t q = 0; q < nnz; ++q) {
        if (!lr.next(s)) throw ParseError("unexpected end of file", lr.line);
        const auto tok = split(s);
        if (tok.size() < 2) throw ParseError("malformed entry", lr.line);
        const index_t i = parse_index(tok[0], lr.line) - 1, j = parse_index(tok[1], lr.line) - 1;
        if (i < 0 || i >= m || j < 0 || j >= n) throw ParseError("index out of bounds", lr.line);
        const T v = read_value<T>(tok, 2, lr.line);
        if (sym != Symmetry::General && j > i) throw ParseError("entry above the diagonal in symmetric storage", lr.line);
        e.push_back({i, j, v});
        if (sym != Symmetry::General && i != j) e.push_back({j, i, mirror(v, sym)});
    }
    return SparseMatrixCSR<T>::from_triplets(m, n, std::move(e));
}

template <Scalar T>
AnyMatrix read_array(LineReader& lr, Symmetry sym) {
    std::string s;
    if (!lr.next(s)) throw ParseError("missing size line", lr.line);
    const auto head = split(s);
    if (head.size() != 2) throw ParseError("array size line needs rows cols", lr.line);
    const index_t m = parse_index(head[0], lr.line), n = parse_index(head[1], lr.line);
    if (m < 0 || n < 0) throw ParseError("negative size", lr.line);
    if (sym != Symmetry::General && m != n) throw ParseError("symmetric storage requires a square matrix", lr.line);
    Matrix<T> A = Matrix<T>::Zero(m, n);
    for (index_t j = 0; j < n; ++j) {
        const index_t start = sym == Symmetry::General ? 0 : (sym == Symmetry::SkewSymmetric ? j + 1 : j);
        for (index_t i = start; i < m; ++i) {
            if (!lr.next(s)) throw ParseError("unexpected end of file", lr.line);
            const T v = read_value<T>(split(s), 0, lr.line);
            A(i, j) = v;
            if (sym != Symmetry::General && i != j) A(j, i) = mirror(v, sym);
        }
    }
    return A;
}

template <Scalar T>
void write_value(std::ostream& out, T v) {
    char buf[64];
    if constexpr (is_complex_v<T>) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g", v.real(), v.imag());
    } else {
        std::snprintf(buf, sizeof buf, "%.17g", v);
    }
    out << buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path + " for writing");
    return f;
}

}  // namespace

AnyMatrix read_matrix_market(std::istream& in) {
    LineReader lr{in};
    std::string header;
    if (!std::getline(in, header)) throw ParseError("empty file", 1);
    lr.line = 1;
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const auto tok = split(lower(header));
    if (tok.size() != 5 || tok[0] != "%%matrixmarket" || tok[1] != "matrix")
        throw ParseError("malformed Matrix Market header", 1);
    const std::string& format = tok[2];
    const std::string& field = tok[3];
    const std::string& symm = tok[4];
    if (format != "coordinate" && format != "array") throw ParseError("unknown format '" + format + "'", 1);
    if (field == "pattern") throw ParseError("pattern matrices are not supported", 1);
    const bool complex = field == "complex";
    if (!complex && field != "real" && field != "double" && field != "integer")
        throw ParseError("unknown field '" + field + "'", 1);
    Symmetry sym;
    if (symm == "general")
        sym = Symmetry::General;
    else if (symm == "symmetric")
        sym = Symmetry::Symmetric;
    else if (symm == "skew-symmetric")
        sym = Symmetry::SkewSymmetric;
    else if (symm == "hermitian")
        sym = Symmetry::Hermitian;
    else
        throw ParseError("unknown symmetry '" + symm + "'", 1);
    if (sym == Symmetry::Hermitian && !complex) sym = Symmetry::Symmetric;

    if (format == "coordinate")
        return complex ? read_coordinate<cplx>(lr, sym) : read_coordinate<double>(lr, sym);
    return complex ? read_array<cplx>(lr, sym) : read_array<double>(lr, sym);
}

AnyMatrix read_matrix_market(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    return read_matrix_market(f);
}

template <Scalar T>
void write_matrix_market(std::ostream& out, const SparseMatrixCSR<T>& A) {
    out << "%%MatrixMarket matrix coordinate " << (is_complex_v<T> ? "complex" : "real") << " general\n";
    out << A.rows() << ' ' << A.cols() << ' ' << A.nnz() << '\n';
    for (index_t i = 0; i < A.rows(); ++i)
        for (index_t p = A.row_ptr()[i]; p < A.row_ptr()[i + 1]; ++p) {
            out << i + 1 << ' ' << A.col_idx()[p] + 1 << ' ';
            write_value(out, A.values()[p]);
            out << '\n';
        }
}

template <Scalar T>
void write_matrix_market(std::ostream& out, const Matrix<T>& A) {
    out << "%%MatrixMarket matrix array " << (is_complex_v<T> ? "complex" : "real") << " general\n";
    out << A.rows() << ' ' << A.cols() << '\n';
    for (index_t j = 0; j < A.cols(); ++j)
        for (index_t i = 0; i < A.rows(); ++i) {
            write_value(out, A(i, j));
            out << '\n';
        }
}

template <Scalar T>
void write_matrix_market(const std::string& path, const SparseMatrixCSR<T>& A) {
    auto f = open_out(path);
    write_matrix_market(f, A);
}

template <Scalar T>
void write_matrix_market(const std::string& path, const Matrix<T>& A) {
    auto f = open_out(path);
    write_matrix_market(f, A);
}

template void write_matrix_market(std::ostream&, const SparseMatrixCSR<double>&);
template void write_matrix_market(std::ostream&, const SparseMatrixCSR<cplx>&);
template void write_matrix_market(std::ostream&, const Matrix<double>&);
template void write_matrix_market(std::ostream&, const Matrix<cplx>&);
template void write_matrix_market(const std::string&, const SparseMatrixCSR<double>&);
template void write_matrix_market(const std::string&, const SparseMatrixCSR<cplx>&);
template void write_matrix_market(const std::string&, const Matrix<double>&);
template void write_matrix_market(const std::string&, const Matrix<cplx>&);

}  // namespace sketchkit
