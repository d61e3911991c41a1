#pragma once

#include <optional>
#include <vector>

#include "psdeig/extract.hpp"

namespace psdeig {

// A priori error bounds for extraction from a basis whose largest principal
// sine to the leading-k eigenspace is eps. All take the exact spectrum
// (descending, length > k) and a 0-based eigenvalue index where applicable.

struct RrBound {
  double c_rr;   // 2 + eps^2 + lambda_{k+1}/lambda_1, capped at 4 by construction
  double bound;  // c_rr * eps^2 * lambda_1, uniform over i <= k
};
RrBound rr_bound(const Vector& lambda, Index k, double eps);

struct NysBound {
  double alpha;  // 1 - (3 lambda_{k+1} + 3 eps^2 (lambda_1 - lambda_{k+1})) / lambda_i
  double c_nys;
  double bound;  // c_nys * (eps^2 lambda_{k+1} + eps^4 (lambda_1 - lambda_{k+1}))
};
// Empty when alpha_i <= 0 (the bound does not apply there); alpha is still
// reported through bound_set.
std::optional<NysBound> nystrom_bound(const Vector& lambda, Index k, double eps, Index index);

// min(c_svd_i, c_rr) * eps^2 * lambda_1, falling back to the plain
// Rayleigh-Ritz bound when lambda_i <= 2 eps^2 lambda_1.
double svd_bound(const Vector& lambda, Index k, double eps, Index index);

struct BoundSet {
  double eps = 0.0;
  Index k = 0;
  double c_rr = 0.0;
  double bound_rr = 0.0;
  std::vector<double> alpha;                    // length k
  std::vector<std::optional<double>> c_nys;     // empty entries where alpha <= 0
  std::vector<std::optional<double>> bound_nys;
  std::vector<double> bound_svd;
};
BoundSet bound_set(const Vector& lambda, Index k, double eps);

enum class IndexMode { leading, trailing };

// |lambda_i - value_i| against the leading (or trailing) k exact eigenvalues.
Vector eigen_errors(const Vector& exact, const EigenpairApprox& approx, IndexMode mode);

// Per-pair sines between extracted vectors and the matching exact eigenvectors:
// sqrt(1 - (u_i . v_i)^2) with the inner product clamped, sign-insensitive.
Vector vector_angle_errors(const Matrix& exact_vectors, const EigenpairApprox& approx,
                           IndexMode mode);

}  // namespace psdeig
