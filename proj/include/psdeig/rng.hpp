#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace psdeig {

using Rng = std::mt19937_64;

// iid N(0,1) entries, filled column by column so shape changes reorder draws predictably
inline Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = normal(rng);
  return g;
}

inline Eigen::VectorXd gaussian_vector(Eigen::Index n, Rng& rng) {
  return gaussian_matrix(n, 1, rng).col(0);
}

// decorrelates seeds reused for a different purpose (power iteration start, etc.)
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (tag + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

}  // namespace psdeig
