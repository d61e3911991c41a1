#include "psdeig/dense.hpp"

#include <cmath>
#include <stdexcept>

#include "psdeig/errors.hpp"

namespace psdeig {

namespace {

// flips columns so the largest-magnitude entry of each is positive; `mirror`
// (if given) gets the same flips to keep factorizations consistent
void fix_column_signs(Matrix& m, Matrix* mirror = nullptr) {
  for (Index j = 0; j < m.cols(); ++j) {
    Index imax = 0;
    m.col(j).cwiseAbs().maxCoeff(&imax);
    if (m(imax, j) < 0.0) {
      m.col(j) = -m.col(j);
      if (mirror) mirror->col(j) = -mirror->col(j);
    }
  }
}

}  // namespace

SymEig sym_eig(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("sym_eig: matrix must be square");
  Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("sym_eig: eigensolver failed");
  SymEig out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  fix_column_signs(out.vectors);
  return out;
}

ThinQr thin_qr(const Matrix& m) {
  if (m.rows() < m.cols()) throw std::invalid_argument("thin_qr: need rows >= cols");
  Eigen::HouseholderQR<Matrix> qr(m);
  ThinQr out;
  out.q = qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
  out.r = qr.matrixQR().topLeftCorner(m.cols(), m.cols()).triangularView<Eigen::Upper>();
  for (Index j = 0; j < m.cols(); ++j) {
    if (out.r(j, j) < 0.0) {
      out.r.row(j) = -out.r.row(j);
      out.q.col(j) = -out.q.col(j);
    }
  }
  return out;
}

ThinSvd svd_thin(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  ThinSvd out;
  out.u = svd.matrixU();
  out.s = svd.singularValues();
  out.v = svd.matrixV();
  fix_column_signs(out.u, &out.v);
  return out;
}

TriangularFactor chol_trunc(const Matrix& w, double tol) {
  if (w.rows() != w.cols()) throw std::invalid_argument("chol_trunc: matrix must be square");
  if (tol < 0.0) throw std::domain_error("chol_trunc: tol must be nonnegative");
  const Index k = w.rows();
  const double threshold = tol * w.trace();
  Matrix l = Matrix(w.triangularView<Eigen::Lower>());
  Index rank = k;
  for (Index j = 0; j < k; ++j) {
    if (j > 0)
      l.block(j, j, k - j, 1).noalias() -=
          l.block(j, 0, k - j, j) * l.row(j).head(j).transpose();
    const double pivot = l(j, j);
    if (pivot < -threshold) throw NotPsdError("chol_trunc: negative pivot, input not PSD");
    if (pivot < threshold || pivot <= 0.0) {
      rank = j;
      break;
    }
    const double root = std::sqrt(pivot);
    l(j, j) = root;
    if (j + 1 < k) l.col(j).tail(k - j - 1) /= root;
  }
  TriangularFactor out;
  out.l = Matrix(l.topLeftCorner(rank, rank).triangularView<Eigen::Lower>());
  out.rank = rank;
  return out;
}

Matrix complete_basis(const Matrix& q, Index total) {
  if (q.rows() != total) throw std::invalid_argument("complete_basis: row count mismatch");
  const Index r = q.cols();
  if (r > total) throw std::invalid_argument("complete_basis: more columns than rows");
  if (r == total) return q;
  if (r == 0) return Matrix::Identity(total, total);
  Eigen::HouseholderQR<Matrix> qr(q);
  Matrix full = qr.householderQ();
  // input is orthonormal, so R = diag(+-1); flip to reproduce q exactly
  for (Index j = 0; j < r; ++j)
    if (qr.matrixQR()(j, j) < 0.0) full.col(j) = -full.col(j);
  full.leftCols(r) = q;
  return full;
}

}  // namespace psdeig
