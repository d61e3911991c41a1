#include "psdeig/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace psdeig {

namespace {

void check_bound_args(const Vector& lambda, Index k, double eps) {
  if (k < 1 || k >= lambda.size())
    throw std::out_of_range("bounds: need 1 <= k < spectrum length");
  if (!(eps > 0.0) || eps > 1.0) throw std::domain_error("bounds: need 0 < eps <= 1");
  if (lambda(0) <= 0.0) throw std::domain_error("bounds: lambda_1 must be positive");
}

}  // namespace

RrBound rr_bound(const Vector& lambda, Index k, double eps) {
  check_bound_args(lambda, k, eps);
  RrBound out;
  out.c_rr = 2.0 + eps * eps + lambda(k) / lambda(0);
  out.bound = out.c_rr * eps * eps * lambda(0);
  return out;
}

std::optional<NysBound> nystrom_bound(const Vector& lambda, Index k, double eps, Index index) {
  check_bound_args(lambda, k, eps);
  if (index < 0 || index >= k) throw std::out_of_range("nystrom_bound: index outside 0..k-1");
  const double l1 = lambda(0);
  const double lk1 = lambda(k);
  const double li = lambda(index);
  const double eps2 = eps * eps;
  if (li <= 0.0) return std::nullopt;
  const double alpha = 1.0 - (3.0 * lk1 + 3.0 * eps2 * (l1 - lk1)) / li;
  if (alpha <= 0.0) return std::nullopt;
  const double numerator =
      l1 * (1.0 + eps2) + lk1 * (1.0 + eps2 / (1.0 + std::sqrt(1.0 - eps2)));
  const double c = std::pow(numerator / (alpha * li), 2.0);
  NysBound out;
  out.alpha = alpha;
  out.c_nys = c;
  out.bound = c * (eps2 * lk1 + eps2 * eps2 * (l1 - lk1));
  return out;
}

double svd_bound(const Vector& lambda, Index k, double eps, Index index) {
  check_bound_args(lambda, k, eps);
  if (index < 0 || index >= k) throw std::out_of_range("svd_bound: index outside 0..k-1");
  const RrBound rr = rr_bound(lambda, k, eps);
  const double denom = lambda(index) - 2.0 * eps * eps * lambda(0);
  if (denom <= 0.0) return rr.bound;  // half-error constant unusable, fall back
  const double c_svd = rr.c_rr * lambda(0) / (2.0 * denom);
  return std::min(c_svd, rr.c_rr) * eps * eps * lambda(0);
}

BoundSet bound_set(const Vector& lambda, Index k, double eps) {
  check_bound_args(lambda, k, eps);
  BoundSet out;
  out.eps = eps;
  out.k = k;
  const RrBound rr = rr_bound(lambda, k, eps);
  out.c_rr = rr.c_rr;
  out.bound_rr = rr.bound;
  out.alpha.resize(static_cast<size_t>(k));
  out.c_nys.resize(static_cast<size_t>(k));
  out.bound_nys.resize(static_cast<size_t>(k));
  out.bound_svd.resize(static_cast<size_t>(k));
  const double l1 = lambda(0);
  const double lk1 = lambda(k);
  for (Index i = 0; i < k; ++i) {
    const double li = lambda(i);
    out.alpha[static_cast<size_t>(i)] =
        li > 0.0 ? 1.0 - (3.0 * lk1 + 3.0 * eps * eps * (l1 - lk1)) / li
                 : -std::numeric_limits<double>::infinity();
    const auto nys = nystrom_bound(lambda, k, eps, i);
    if (nys) {
      out.c_nys[static_cast<size_t>(i)] = nys->c_nys;
      out.bound_nys[static_cast<size_t>(i)] = nys->bound;
    }
    out.bound_svd[static_cast<size_t>(i)] = svd_bound(lambda, k, eps, i);
  }
  return out;
}

namespace {

Index mode_offset(Index n, Index k, IndexMode mode) {
  if (n < k) throw std::invalid_argument("errors: exact data narrower than extraction");
  return mode == IndexMode::leading ? 0 : n - k;
}

}  // namespace

Vector eigen_errors(const Vector& exact, const EigenpairApprox& approx, IndexMode mode) {
  const Index k = approx.values.size();
  const Index off = mode_offset(exact.size(), k, mode);
  return (exact.segment(off, k) - approx.values).cwiseAbs();
}

Vector vector_angle_errors(const Matrix& exact_vectors, const EigenpairApprox& approx,
                           IndexMode mode) {
  const Index k = approx.vectors.cols();
  if (exact_vectors.rows() != approx.vectors.rows())
    throw std::invalid_argument("vector_angle_errors: ambient dimensions differ");
  const Index off = mode_offset(exact_vectors.cols(), k, mode);
  Vector sines(k);
  for (Index i = 0; i < k; ++i) {
    const double c = std::clamp(exact_vectors.col(off + i).dot(approx.vectors.col(i)), -1.0, 1.0);
    sines(i) = std::sqrt(std::max(0.0, 1.0 - c * c));
  }
  return sines;
}

}  // namespace psdeig
