#include "psdeig/extract.hpp"

#include <cmath>
#include <stdexcept>

#include "psdeig/errors.hpp"
#include "psdeig/rng.hpp"

namespace psdeig {

std::string to_string(Method m) {
  switch (m) {
    case Method::rr: return "rr";
    case Method::svd_qv: return "svd-qv";
    case Method::svd_u: return "svd-u";
    case Method::nys: return "nys";
    case Method::rr_shifted: return "rr-shifted";
    case Method::svd_shifted: return "svd-shifted";
    case Method::nys_shifted: return "nys-shifted";
  }
  return "unknown";
}

bool is_shifted(Method m) {
  return m == Method::rr_shifted || m == Method::svd_shifted || m == Method::nys_shifted;
}

namespace {

// ||A V - V diag(values)||_2 through the k x k gram of the residual
double residual_spectral_norm(const PsdOperator& a, const EigenpairApprox& e) {
  Matrix res = a.apply(e.vectors) - e.vectors * e.values.asDiagonal();
  Matrix gram = res.transpose() * res;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.transpose()));
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

void check_dims(const PsdOperator& a, const OrthonormalBasis& q) {
  if (q.q.rows() != a.dim())
    throw std::invalid_argument("extract: basis rows != operator dimension");
}

}  // namespace

EigenpairApprox rayleigh_ritz(const PsdOperator& a, const OrthonormalBasis& q) {
  check_dims(a, q);
  Matrix aq = a.apply(q.q);
  Matrix core = q.q.transpose() * aq;
  SymEig eig = sym_eig(core);  // symmetrizes internally
  EigenpairApprox out;
  out.method = Method::rr;
  out.values = std::move(eig.values);
  out.vectors = q.q * eig.vectors;
  out.core_rank = q.q.cols();
  out.values_preclamp = out.values;
  out.residual_norm = residual_spectral_norm(a, out);
  return out;
}

EigenpairApprox svd_extract(const PsdOperator& a, const OrthonormalBasis& q, Method variant) {
  if (variant != Method::svd_qv && variant != Method::svd_u)
    throw std::invalid_argument("svd_extract: variant must be svd_qv or svd_u");
  check_dims(a, q);
  Matrix aq = a.apply(q.q);
  ThinSvd svd = svd_thin(aq);
  EigenpairApprox out;
  out.method = variant;
  out.values = std::move(svd.s);
  out.vectors = variant == Method::svd_qv ? Matrix(q.q * svd.v) : std::move(svd.u);
  out.core_rank = q.q.cols();
  out.values_preclamp = out.values;
  out.residual_norm = residual_spectral_norm(a, out);
  return out;
}

double default_chol_tol(Index n) {
  return 8.0 * static_cast<double>(n) * 2.220446049250313e-16;
}

EigenpairApprox nystrom_extract(const PsdOperator& a, const OrthonormalBasis& q,
                                std::optional<double> chol_tol) {
  check_dims(a, q);
  const Index k = q.q.cols();
  Matrix y = a.apply(q.q);
  ThinQr qr = thin_qr(y);
  Matrix w = q.q.transpose() * y;
  w = 0.5 * (w + w.transpose());
  TriangularFactor chol = chol_trunc(w, chol_tol.value_or(default_chol_tol(a.dim())));
  const Index r = chol.rank;

  // Z L^T = R(:, 0:r); squared singular values of Z are the estimates
  Matrix zu(k, 0);
  Vector zs;
  if (r > 0) {
    Matrix lt = chol.l.transpose();
    Matrix z = lt.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(Matrix(qr.r.leftCols(r)));
    ThinSvd zsvd = svd_thin(z);
    zu = std::move(zsvd.u);
    zs = std::move(zsvd.s);
  }

  EigenpairApprox out;
  out.method = Method::nys;
  out.values = Vector::Zero(k);
  if (r > 0) out.values.head(r) = zs.array().square();
  out.values_preclamp = out.values;
  for (Index i = 0; i < k; ++i) out.values(i) = std::max(out.values(i), 0.0);
  // pad the vector block with the orthonormal completion when rank dropped
  Matrix uhat = r < k ? complete_basis(zu, k) : std::move(zu);
  out.vectors = qr.q * uhat;
  out.core_rank = r;
  out.residual_norm = residual_spectral_norm(a, out);
  return out;
}

Matrix nystrom_approximation_dense(const Matrix& a, const OrthonormalBasis& q) {
  if (a.rows() != a.cols()) throw std::invalid_argument("nystrom dense: matrix must be square");
  if (a.rows() > 500)
    throw std::domain_error("nystrom dense: reference route is guarded to n <= 500");
  if (q.q.rows() != a.rows())
    throw std::invalid_argument("nystrom dense: basis rows != matrix dimension");
  Matrix sym = 0.5 * (a + a.transpose());
  Matrix y = sym * q.q;
  Matrix w = q.q.transpose() * y;
  w = 0.5 * (w + w.transpose());
  // pseudoinverse with a relative singular value cutoff
  ThinSvd svd = svd_thin(w);
  const double cutoff = 1e-12 * (svd.s.size() > 0 ? svd.s(0) : 0.0);
  Matrix pinv = Matrix::Zero(w.cols(), w.rows());
  for (Index i = 0; i < svd.s.size(); ++i)
    if (svd.s(i) > cutoff && svd.s(i) > 0.0)
      pinv.noalias() += (1.0 / svd.s(i)) * svd.v.col(i) * svd.u.col(i).transpose();
  Matrix approx = y * pinv * y.transpose();
  return 0.5 * (approx + approx.transpose());
}

PowerEstimate estimate_lambda_max_upper(const PsdOperator& a, int iters, std::uint64_t seed) {
  Rng rng(seed);
  Vector start = gaussian_vector(a.dim(), rng);
  if (start.norm() == 0.0) start = gaussian_vector(a.dim(), rng);  // redraw once
  return estimate_lambda_max_upper(a, iters, std::move(start));
}

PowerEstimate estimate_lambda_max_upper(const PsdOperator& a, int iters, Vector start) {
  if (start.size() != a.dim())
    throw std::invalid_argument("estimate_lambda_max_upper: start length != dim");
  if (iters < 1) throw std::invalid_argument("estimate_lambda_max_upper: iters must be >= 1");
  double norm = start.norm();
  if (norm == 0.0) throw std::invalid_argument("estimate_lambda_max_upper: zero start vector");
  Vector x = start / norm;
  for (int t = 0; t < iters; ++t) {
    Vector y = a.apply(x);
    const double ny = y.norm();
    if (ny == 0.0) break;  // x is in the null space; rayleigh will be 0
    x = y / ny;
  }
  Vector ax = a.apply(x);
  const double rayleigh = x.dot(ax);
  const double residual = (ax - rayleigh * x).norm();
  return PowerEstimate{rayleigh + residual, residual, rayleigh};
}

namespace {

EigenpairApprox run_unshifted(const PsdOperator& a, const OrthonormalBasis& q, Method method,
                              std::optional<double> chol_tol, Method& tag) {
  switch (method) {
    case Method::rr:
      tag = Method::rr_shifted;
      return rayleigh_ritz(a, q);
    case Method::svd_qv:
    case Method::svd_u:
      tag = Method::svd_shifted;
      return svd_extract(a, q, method);
    case Method::nys:
      tag = Method::nys_shifted;
      return nystrom_extract(a, q, chol_tol);
    default:
      throw std::invalid_argument("shifted_trailing_extract: method must be unshifted");
  }
}

// back-convert and reverse so value i pairs with lambda_{n-k+i}; the reversal
// of a descending mu gives exactly descending gamma - mu
EigenpairApprox back_convert(const PsdOperator& a, EigenpairApprox base, Method tag, double g) {
  const Index k = base.values.size();
  EigenpairApprox out;
  out.method = tag;
  out.values = Vector(k);
  out.values_preclamp = Vector(k);
  out.vectors = Matrix(base.vectors.rows(), k);
  for (Index i = 0; i < k; ++i) {
    const double v = g - base.values(k - 1 - i);
    out.values(i) = v;
    out.values_preclamp(i) = v;
    out.vectors.col(i) = base.vectors.col(k - 1 - i);
  }
  out.negative_backconversion = (out.values.array() < 0.0).any();
  out.shift_gamma = g;
  out.core_rank = base.core_rank;
  out.residual_norm = residual_spectral_norm(a, out);
  return out;
}

}  // namespace

EigenpairApprox shifted_trailing_extract(const PsdOperator& a, const OrthonormalBasis& q,
                                         Method method, std::optional<double> gamma,
                                         std::optional<double> chol_tol) {
  check_dims(a, q);
  const double g =
      gamma ? *gamma
            : estimate_lambda_max_upper(a, 20, derive_seed(a.seed(), 0x67616d6d61ull)).gamma;
  // the estimate can undershoot lambda_1 on slowly decaying spectra; the
  // flipped operator then has negative trailing entries, which is fine here
  PsdOperator shifted = detail::flip_spectrum(a, g);
  Method tag = Method::rr_shifted;
  EigenpairApprox base = run_unshifted(shifted, q, method, chol_tol, tag);
  return back_convert(a, std::move(base), tag, g);
}

EigenpairApprox shifted_trailing_extract_dense(const Matrix& a, const OrthonormalBasis& q,
                                               Method method, double gamma,
                                               std::optional<double> chol_tol) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("shifted_trailing_extract_dense: matrix must be square");
  if (a.rows() > 500)
    throw std::domain_error("shifted_trailing_extract_dense: dense route is guarded to n <= 500");
  const Index n = a.rows();
  // decompose the input itself so the flip matches the factored route exactly
  SymEig ea = sym_eig(0.5 * (a + a.transpose()));
  const double scale = ea.values.cwiseAbs().maxCoeff();
  if (ea.values(n - 1) < -1e-10 * scale)
    throw NotPsdError("shifted_trailing_extract_dense: input matrix is not positive semidefinite");
  Vector lam = ea.values.cwiseMax(0.0);
  PsdOperator a_op(std::move(ea.vectors), std::move(lam), 0);
  PsdOperator shifted = detail::flip_spectrum(a_op, gamma);
  Method tag = Method::rr_shifted;
  EigenpairApprox base = run_unshifted(shifted, q, method, chol_tol, tag);
  EigenpairApprox out = back_convert(a_op, std::move(base), tag, gamma);
  // residual against the original matrix, not the shifted factors
  Matrix res = 0.5 * (a + a.transpose()) * out.vectors - out.vectors * out.values.asDiagonal();
  Matrix gram = res.transpose() * res;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.transpose()));
  out.residual_norm = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  return out;
}

}  // namespace psdeig
