#include "sketchtest/matrix.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sketchtest {

Matrix gaussian_matrix(Index rows, Index cols, double scale, Seed seed) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("gaussian_matrix: dimensions must be >= 1");
    }
    if (!(scale > 0.0)) {
        throw std::invalid_argument("gaussian_matrix: scale must be > 0");
    }
    SplitMix64 rng(seed);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = scale * rng.next_gaussian();
        }
    }
    return m;
}

Matrix random_rotation(Index d, Seed seed) {
    if (d < 1) {
        throw std::invalid_argument("random_rotation: dimension must be >= 1");
    }
    const Matrix g = gaussian_matrix(d, d, 1.0, seed);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Force positive diagonal in R; this makes Q exactly Haar distributed.
    for (Index j = 0; j < d; ++j) {
        if (r(j, j) < 0.0) {
            q.col(j) = -q.col(j);
        }
    }
    return q;
}

Matrix normalize_columns(const Matrix& m) {
    Matrix out = m;
    for (Index j = 0; j < m.cols(); ++j) {
        const double norm = out.col(j).norm();
        if (norm == 0.0) {
            throw std::invalid_argument(
                "normalize_columns: column " + std::to_string(j) + " has zero norm");
        }
        out.col(j) /= norm;
    }
    return out;
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    f.precision(17);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j > 0) f << ',';
            f << m(i, j);
        }
        f << '\n';
    }
    if (!f) {
        throw std::runtime_error("write failed: " + path);
    }
}

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open for reading: " + path);
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            row.push_back(std::stod(cell));
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::runtime_error("ragged CSV row in " + path);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw std::runtime_error("empty CSV file: " + path);
    }
    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    return m;
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "SPTX I/O assumes a little-endian host");

void put_u64(std::ofstream& f, std::uint64_t v) {
    f.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t get_u64(std::ifstream& f) {
    std::uint64_t v = 0;
    f.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

} // namespace

void write_matrix_sptx(const std::string& path, const Matrix& m) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    f.write("SPTX", 4);
    const char version = 1;
    f.write(&version, 1);
    put_u64(f, static_cast<std::uint64_t>(m.rows()));
    put_u64(f, static_cast<std::uint64_t>(m.cols()));
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            const double v = m(i, j);
            f.write(reinterpret_cast<const char*>(&v), sizeof(v));
        }
    }
    if (!f) {
        throw std::runtime_error("write failed: " + path);
    }
}

Matrix read_matrix_sptx(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open for reading: " + path);
    }
    char magic[4] = {};
    f.read(magic, 4);
    if (std::memcmp(magic, "SPTX", 4) != 0) {
        throw std::runtime_error("bad magic bytes in " + path);
    }
    char version = 0;
    f.read(&version, 1);
    if (version != 1) {
        throw std::runtime_error("unsupported SPTX version in " + path);
    }
    const auto rows = static_cast<Index>(get_u64(f));
    const auto cols = static_cast<Index>(get_u64(f));
    if (rows < 1 || cols < 1) {
        throw std::runtime_error("bad dimensions in " + path);
    }
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            double v = 0.0;
            f.read(reinterpret_cast<char*>(&v), sizeof(v));
            m(i, j) = v;
        }
    }
    if (!f) {
        throw std::runtime_error("truncated SPTX file: " + path);
    }
    return m;
}

} // namespace sketchtest
