#pragma once

#include <Eigen/Dense>
#include <string>

#include "sketchtest/rng.hpp"

namespace sketchtest {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Matrix with i.i.d. N(0, scale^2) entries, filled row-major so the stream
/// position of an entry is independent of the storage order.
Matrix gaussian_matrix(Index rows, Index cols, double scale, Seed seed);

/// Haar-distributed random rotation: QR of a square Gaussian matrix with the
/// sign convention diag(R) > 0. Without the sign fix the factorization is not
/// rotation invariant.
Matrix random_rotation(Index d, Seed seed);

/// Rescales every column to unit Euclidean norm. Throws std::invalid_argument
/// naming the offending column if one has zero norm.
Matrix normalize_columns(const Matrix& m);

/// CSV: one row per line, comma-separated decimal floats, no header.
void write_matrix_csv(const std::string& path, const Matrix& m);
Matrix read_matrix_csv(const std::string& path);

/// Binary format: magic "SPTX", one version byte (1), two little-endian
/// uint64 dims, then row-major IEEE-754 little-endian doubles.
void write_matrix_sptx(const std::string& path, const Matrix& m);
Matrix read_matrix_sptx(const std::string& path);

} // namespace sketchtest
