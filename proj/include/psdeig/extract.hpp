#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "psdeig/subspaces.hpp"

namespace psdeig {

enum class Method { rr, svd_qv, svd_u, nys, rr_shifted, svd_shifted, nys_shifted };

std::string to_string(Method m);
bool is_shifted(Method m);

struct EigenpairApprox {
  Method method = Method::rr;
  Vector values;   // descending, length k
  Matrix vectors;  // n x k, orthonormal columns, column i pairs with values(i)
  double residual_norm = 0.0;  // ||A V - V diag(values)||_2
  Index core_rank = 0;         // accepted Cholesky rank (nys); k otherwise
  std::optional<double> shift_gamma;
  Vector values_preclamp;      // values before the nonnegativity clamp / back-conversion
  bool negative_backconversion = false;  // shifted run produced a negative value (kept, flagged)
};

// Ritz pairs of Q^T A Q mapped back through Q.
EigenpairApprox rayleigh_ritz(const PsdOperator& a, const OrthonormalBasis& q);

// Singular values of A Q as eigenvalue estimates; vectors are Q V (svd_qv)
// or the left singular vectors U (svd_u).
EigenpairApprox svd_extract(const PsdOperator& a, const OrthonormalBasis& q,
                            Method variant = Method::svd_qv);

// Truncation tolerance handed to chol_trunc when the caller does not pick one:
// 8 n eps. The core Q^T A Q is assembled through n-dimensional products, so its
// roundoff floor is about n*eps*trace rather than eps*trace; a bare-eps
// threshold would misread that noise as indefiniteness on deep spectra.
double default_chol_tol(Index n);

// Eigenpairs of the Nystrom approximation A<Q> = (AQ)(Q^T A Q)^+(AQ)^T computed
// without forming it: QR of AQ, truncated Cholesky of Q^T A Q, triangular solve,
// then an SVD whose squared singular values are the estimates. An absent
// chol_tol means default_chol_tol(a.dim()).
EigenpairApprox nystrom_extract(const PsdOperator& a, const OrthonormalBasis& q,
                                std::optional<double> chol_tol = {});

// Reference route for cross-checks: materializes A<Q> via a pseudoinverse with
// singular values below 1e-12 * sigma_1 dropped. Guarded to n <= 500.
Matrix nystrom_approximation_dense(const Matrix& a, const OrthonormalBasis& q);

struct PowerEstimate {
  double gamma;     // rayleigh + residual, a practical upper bound for lambda_1
  double residual;  // ||A x - rayleigh x||_2 at the final iterate
  double rayleigh;
};

// Power iteration from a seeded Gaussian start (redrawn once if it vanishes).
PowerEstimate estimate_lambda_max_upper(const PsdOperator& a, int iters, std::uint64_t seed);
PowerEstimate estimate_lambda_max_upper(const PsdOperator& a, int iters, Vector start);

// Runs `method` on gamma*I - A and back-converts, pairing value i with the
// i-th trailing eigenvalue in descending order. gamma defaults to
// estimate_lambda_max_upper(a, 20, seed derived from a.seed()). A gamma below
// the largest back-converted value would go negative; such values are kept
// and flagged, never clipped.
EigenpairApprox shifted_trailing_extract(const PsdOperator& a, const OrthonormalBasis& q,
                                         Method method, std::optional<double> gamma = {},
                                         std::optional<double> chol_tol = {});

// Same extraction for inputs that only exist as a dense matrix: decomposes
// the (symmetrized) input, clamps roundoff negatives, and flips exactly as
// the factored route does. Throws NotPsdError when the input is genuinely
// indefinite. Oracle-scale (n <= 500); agrees with the factored route within
// roundoff.
EigenpairApprox shifted_trailing_extract_dense(const Matrix& a, const OrthonormalBasis& q,
                                               Method method, double gamma,
                                               std::optional<double> chol_tol = {});

}  // namespace psdeig
