#pragma once

#include <cstdint>
#include <string>

#include "psdeig/model.hpp"

namespace psdeig {

// Binary container, little-endian IEEE-754 doubles. Layouts:
//   operator file: "PSDO" u32 version  u64 n  u32 kind  u64 seed
//                  n doubles (eigenvalues, descending)
//                  n*n doubles (eigenvectors, row-major)
//   matrix file:   "PSDM" u32 version  u64 rows  u64 cols
//                  rows*cols doubles (row-major)
void save_operator(const std::string& path, const PsdOperator& a, SpectrumKind kind);

struct LoadedOperator {
  PsdOperator op;
  SpectrumKind kind;
};
LoadedOperator load_operator(const std::string& path);

void save_matrix(const std::string& path, const Matrix& m);
Matrix load_matrix(const std::string& path);

}  // namespace psdeig
