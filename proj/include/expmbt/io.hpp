#pragma once

#include <string>

#include "expmbt/matrix.hpp"

namespace expmbt {

enum class MatrixFileFormat {
    MatrixMarketArray,       // %%MatrixMarket matrix array real general
    MatrixMarketCoordinate,  // %%MatrixMarket matrix coordinate real general
    PlainRows,               // whitespace-separated values, one row per line
};

/// Reads a real matrix, auto-detecting the format from the header line.
/// Errors carry the file name and 1-based line number.
Matrix read_matrix(const std::string& path);

/// Writes with 17 significant digits so array-format files round-trip
/// bitwise.
void write_matrix(const std::string& path, const Matrix& m,
                  MatrixFileFormat format = MatrixFileFormat::MatrixMarketArray);

} // namespace expmbt
