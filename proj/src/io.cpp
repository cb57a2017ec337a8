#include "expmbt/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace expmbt {

namespace {

[[noreturn]] void fail(const std::string& path, long line, const std::string& msg) {
    throw IoError(path + ":" + std::to_string(line) + ": " + msg);
}

bool next_content_line(std::istream& in, std::string& line, long& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line[i] == '%') continue;
        return true;
    }
    return false;
}

std::vector<double> parse_numbers(const std::string& line, const std::string& path,
                                  long lineno) {
    std::vector<double> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            fail(path, lineno, "cannot parse number '" + tok + "'");
        }
    }
    return out;
}

Matrix read_matrix_market(std::ifstream& in, const std::string& path,
                          const std::string& header) {
    std::istringstream hs(header);
    std::string banner, object, fmt, field, symmetry;
    hs >> banner >> object >> fmt >> field >> symmetry;
    if (object != "matrix")
        fail(path, 1, "unsupported MatrixMarket object '" + object + "'");
    if (field != "real")
        fail(path, 1, "unsupported MatrixMarket field '" + field + "'");
    if (symmetry != "general")
        fail(path, 1, "unsupported MatrixMarket symmetry '" + symmetry + "'");
    const bool coordinate = fmt == "coordinate";
    if (!coordinate && fmt != "array")
        fail(path, 1, "unsupported MatrixMarket format '" + fmt + "'");

    long lineno = 1;
    std::string line;
    if (!next_content_line(in, line, lineno)) fail(path, lineno, "missing size line");
    std::vector<double> sz = parse_numbers(line, path, lineno);
    if (sz.size() != (coordinate ? 3u : 2u))
        fail(path, lineno, "bad size line");
    const Index rows = static_cast<Index>(sz[0]);
    const Index cols = static_cast<Index>(sz[1]);
    if (rows < 0 || cols < 0) fail(path, lineno, "negative dimension");
    Matrix m(rows, cols);
    if (coordinate) {
        const long nnz = static_cast<long>(sz[2]);
        for (long k = 0; k < nnz; ++k) {
            if (!next_content_line(in, line, lineno))
                fail(path, lineno, "expected " + std::to_string(nnz) +
                                       " entries, file ended after " +
                                       std::to_string(k));
            std::vector<double> v = parse_numbers(line, path, lineno);
            if (v.size() != 3) fail(path, lineno, "expected 'i j value'");
            const Index i = static_cast<Index>(v[0]) - 1;
            const Index j = static_cast<Index>(v[1]) - 1;
            if (i < 0 || i >= rows || j < 0 || j >= cols)
                fail(path, lineno, "index out of range");
            m.real_at(i, j) = v[2];
        }
    } else {
        // column-major stream of rows*cols values, any number per line
        const Index total = rows * cols;
        Index got = 0;
        while (got < total) {
            if (!next_content_line(in, line, lineno))
                fail(path, lineno, "expected " + std::to_string(total) +
                                       " values, file ended after " +
                                       std::to_string(got));
            for (double v : parse_numbers(line, path, lineno)) {
                if (got >= total) fail(path, lineno, "too many values");
                m.real_at(got % rows, got / rows) = v;
                ++got;
            }
        }
    }
    return m;
}

Matrix read_plain_rows(std::ifstream& in, const std::string& path,
                       const std::string& first, long lineno) {
    std::vector<std::vector<double>> rows;
    rows.push_back(parse_numbers(first, path, lineno));
    std::string line;
    while (next_content_line(in, line, lineno)) {
        std::vector<double> r = parse_numbers(line, path, lineno);
        if (r.empty()) continue;
        if (r.size() != rows[0].size())
            fail(path, lineno, "row has " + std::to_string(r.size()) +
                                   " values, expected " +
                                   std::to_string(rows[0].size()));
        rows.push_back(std::move(r));
    }
    return Matrix::from_rows(rows);
}

} // namespace

Matrix read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    long lineno = 0;
    std::string line;
    // find the first non-blank line; a %%MatrixMarket banner decides the format
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line.rfind("%%MatrixMarket", i) == i)
            return read_matrix_market(in, path, line.substr(i));
        if (line[i] == '%') continue;
        return read_plain_rows(in, path, line, lineno);
    }
    fail(path, lineno, "empty file");
}

void write_matrix(const std::string& path, const Matrix& m,
                  MatrixFileFormat format) {
    if (!m.is_real())
        throw IoError("refusing to write complex matrix to '" + path + "'");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    char buf[64];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    };
    switch (format) {
        case MatrixFileFormat::MatrixMarketArray:
            out << "%%MatrixMarket matrix array real general\n";
            out << m.rows() << " " << m.cols() << "\n";
            for (Index j = 0; j < m.cols(); ++j)
                for (Index i = 0; i < m.rows(); ++i)
                    out << fmt(m.real_at(i, j)) << "\n";
            break;
        case MatrixFileFormat::MatrixMarketCoordinate: {
            long nnz = 0;
            for (Index j = 0; j < m.cols(); ++j)
                for (Index i = 0; i < m.rows(); ++i)
                    if (m.real_at(i, j) != 0.0) ++nnz;
            out << "%%MatrixMarket matrix coordinate real general\n";
            out << m.rows() << " " << m.cols() << " " << nnz << "\n";
            for (Index j = 0; j < m.cols(); ++j)
                for (Index i = 0; i < m.rows(); ++i)
                    if (m.real_at(i, j) != 0.0)
                        out << (i + 1) << " " << (j + 1) << " "
                            << fmt(m.real_at(i, j)) << "\n";
            break;
        }
        case MatrixFileFormat::PlainRows:
            for (Index i = 0; i < m.rows(); ++i) {
                for (Index j = 0; j < m.cols(); ++j)
                    out << (j ? " " : "") << fmt(m.real_at(i, j));
                out << "\n";
            }
            break;
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

} // namespace expmbt
