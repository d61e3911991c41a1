#include "psdeig/io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace psdeig {

namespace {

constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }
void put_u64(std::ostream& os, std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

std::uint64_t get_u64(std::istream& is) {
  std::uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

// rows written one at a time: on-disk layout is row-major regardless of the
// in-memory storage order
void put_matrix_data(std::ostream& os, const Matrix& m) {
  std::vector<double> row(static_cast<size_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) row[static_cast<size_t>(j)] = m(i, j);
    os.write(reinterpret_cast<const char*>(row.data()),
             static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
}

Matrix get_matrix_data(std::istream& is, Index rows, Index cols) {
  Matrix m(rows, cols);
  std::vector<double> row(static_cast<size_t>(cols));
  for (Index i = 0; i < rows; ++i) {
    is.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(double)));
    for (Index j = 0; j < cols; ++j) m(i, j) = row[static_cast<size_t>(j)];
  }
  return m;
}

void check_magic(std::istream& is, const char expect[4], const std::string& path) {
  char magic[4] = {};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, expect, 4) != 0)
    throw std::runtime_error("bad file magic: " + path);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return is;
}

}  // namespace

void save_operator(const std::string& path, const PsdOperator& a, SpectrumKind kind) {
  std::ofstream os = open_out(path);
  os.write("PSDO", 4);
  put_u32(os, kVersion);
  put_u64(os, static_cast<std::uint64_t>(a.dim()));
  put_u32(os, static_cast<std::uint32_t>(kind));
  put_u64(os, a.seed());
  os.write(reinterpret_cast<const char*>(a.eigenvalues().data()),
           static_cast<std::streamsize>(a.dim() * sizeof(double)));
  put_matrix_data(os, a.eigenvectors());
  if (!os) throw std::runtime_error("write failed: " + path);
}

LoadedOperator load_operator(const std::string& path) {
  std::ifstream is = open_in(path);
  check_magic(is, "PSDO", path);
  if (get_u32(is) != kVersion) throw std::runtime_error("unsupported file version: " + path);
  const Index n = static_cast<Index>(get_u64(is));
  const std::uint32_t kind = get_u32(is);
  const std::uint64_t seed = get_u64(is);
  if (n < 1 || kind > 3) throw std::runtime_error("corrupt operator file: " + path);
  Vector lam(n);
  is.read(reinterpret_cast<char*>(lam.data()), static_cast<std::streamsize>(n * sizeof(double)));
  Matrix u = get_matrix_data(is, n, n);
  if (!is) throw std::runtime_error("truncated operator file: " + path);
  return LoadedOperator{PsdOperator(std::move(u), std::move(lam), seed),
                        static_cast<SpectrumKind>(kind)};
}

void save_matrix(const std::string& path, const Matrix& m) {
  std::ofstream os = open_out(path);
  os.write("PSDM", 4);
  put_u32(os, kVersion);
  put_u64(os, static_cast<std::uint64_t>(m.rows()));
  put_u64(os, static_cast<std::uint64_t>(m.cols()));
  put_matrix_data(os, m);
  if (!os) throw std::runtime_error("write failed: " + path);
}

Matrix load_matrix(const std::string& path) {
  std::ifstream is = open_in(path);
  check_magic(is, "PSDM", path);
  if (get_u32(is) != kVersion) throw std::runtime_error("unsupported file version: " + path);
  const Index rows = static_cast<Index>(get_u64(is));
  const Index cols = static_cast<Index>(get_u64(is));
  if (rows < 0 || cols < 0) throw std::runtime_error("corrupt matrix file: " + path);
  Matrix m = get_matrix_data(is, rows, cols);
  if (!is) throw std::runtime_error("truncated matrix file: " + path);
  return m;
}

}  // namespace psdeig
