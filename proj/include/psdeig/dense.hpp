#pragma once

#include <Eigen/Dense>

namespace psdeig {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

struct SymEig {
  Vector values;   // descending
  Matrix vectors;  // orthonormal columns, column i pairs with values(i)
};

struct ThinQr {
  Matrix q;  // m x n, orthonormal columns
  Matrix r;  // n x n upper triangular, nonnegative diagonal
};

struct ThinSvd {
  Matrix u;
  Vector s;  // descending, nonnegative
  Matrix v;
};

// Lower-triangular factor of the leading accepted block of a truncated
// Cholesky factorization: w(0:rank, 0:rank) = l * l^T.
struct TriangularFactor {
  Matrix l;    // rank x rank, lower triangular
  Index rank;  // columns accepted before truncation
};

// Symmetric eigendecomposition; m is symmetrized as (m + m^T)/2 first.
// Eigenvector signs fixed so each column's largest-magnitude entry is positive.
SymEig sym_eig(const Matrix& m);

// Householder QR with m.rows() >= m.cols(); signs fixed so diag(r) >= 0.
ThinQr thin_qr(const Matrix& m);

// Thin SVD; u's column signs fixed as in sym_eig, v mirrored to preserve the product.
ThinSvd svd_thin(const Matrix& m);

// Unpivoted Cholesky that stops at the first pivot <= tol * trace(w) and
// reports the accepted rank. A pivot below -tol * trace(w) is a hard failure.
TriangularFactor chol_trunc(const Matrix& w, double tol);

// Extends an orthonormal m x r matrix to an m x m orthogonal one whose
// leading r columns reproduce the input.
Matrix complete_basis(const Matrix& q, Index total);

}  // namespace psdeig
