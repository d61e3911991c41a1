#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "psdeig/model.hpp"

namespace psdeig {

enum class BasisKind { rangefinder, epsilon_aligned, perturbed_trailing, canonical, external };

std::string to_string(BasisKind kind);

struct OrthonormalBasis {
  Matrix q;  // n x k, q^T q = I within 1e-10 (enforced at construction)
  BasisKind provenance = BasisKind::external;
  std::uint64_t seed = 0;
  // populated where the construction defines them
  std::optional<double> eps;
  std::optional<double> m_norm;  // realized ||M||_2 of the alignment expansion
  std::optional<double> n_norm;  // realized ||N||_2
};

// Q factor of A * Omega for a seeded Gaussian Omega, optionally with
// re-orthonormalized power passes (power_iters extra applications of A).
OrthonormalBasis randomized_rangefinder(const PsdOperator& a, Index k, std::uint64_t seed,
                                        int power_iters = 0);

// Basis whose largest principal angle to the leading-k eigenspace satisfies
// sin(theta_max) = eps exactly; remaining angles drawn uniformly in [0, asin(eps)].
OrthonormalBasis epsilon_aligned_basis(const PsdOperator& a, Index k, double eps,
                                       std::uint64_t seed);

// Trailing-k eigenvectors plus entrywise N(0, 1/n) noise scaled by eps,
// re-orthonormalized.
OrthonormalBasis perturbed_trailing_basis(const PsdOperator& a, Index k, double eps,
                                          std::uint64_t seed);

// First k identity columns.
OrthonormalBasis canonical_basis(Index n, Index k);

// Wraps a user-supplied matrix, rejecting non-orthonormal input.
OrthonormalBasis external_basis(Matrix q);

// Sines of the principal angles between the column spans, descending
// (largest angle first).
Vector principal_angle_sines(const OrthonormalBasis& x, const OrthonormalBasis& y);

}  // namespace psdeig
