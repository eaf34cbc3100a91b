#pragma once

#include <filesystem>
#include <istream>

#include "adacur/matrix.hpp"

namespace adacur::bench {

enum class MatrixFormat { matrix_market, dense_csv };

inline constexpr Index kDefaultDimensionCap = 2000;

/// Reads a dense matrix. Coordinate Matrix Market files are densified and
/// symmetric ones expanded. Throws IoError when the file cannot be opened,
/// InvalidInput with a line number on malformed content, and ArgumentError
/// when either dimension exceeds `cap`.
Matrix ingest(const std::filesystem::path& path, MatrixFormat format, Index cap = kDefaultDimensionCap);

Matrix read_matrix_market(std::istream& in, Index cap = kDefaultDimensionCap);
Matrix read_dense_csv(std::istream& in, Index cap = kDefaultDimensionCap);

}  // namespace adacur::bench
