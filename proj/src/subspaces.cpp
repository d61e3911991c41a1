#include "psdeig/subspaces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psdeig/errors.hpp"
#include "psdeig/rng.hpp"

namespace psdeig {

std::string to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::rangefinder: return "rangefinder";
    case BasisKind::epsilon_aligned: return "epsilon_aligned";
    case BasisKind::perturbed_trailing: return "perturbed_trailing";
    case BasisKind::canonical: return "canonical";
    case BasisKind::external: return "external";
  }
  return "unknown";
}

namespace {

void check_k(Index n, Index k, bool strict) {
  if (k < 1 || k > n || (strict && k == n))
    throw std::invalid_argument("basis: need 1 <= k " + std::string(strict ? "< n" : "<= n"));
}

OrthonormalBasis finish(Matrix q, BasisKind kind, std::uint64_t seed) {
  const double err =
      (q.transpose() * q - Matrix::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
  if (err > 1e-10) throw std::invalid_argument("basis: columns not orthonormal");
  OrthonormalBasis b;
  b.q = std::move(q);
  b.provenance = kind;
  b.seed = seed;
  return b;
}

}  // namespace

OrthonormalBasis randomized_rangefinder(const PsdOperator& a, Index k, std::uint64_t seed,
                                        int power_iters) {
  check_k(a.dim(), k, false);
  if (power_iters < 0) throw std::invalid_argument("rangefinder: power_iters must be >= 0");
  Rng rng(seed);
  Matrix y = a.apply(gaussian_matrix(a.dim(), k, rng));
  for (int t = 0; t < power_iters; ++t) {
    if (y.norm() == 0.0) break;
    y = a.apply(thin_qr(y).q);
  }
  if (y.norm() == 0.0) throw RankError("rangefinder: sketch A*Omega vanished");
  ThinQr qr = thin_qr(y);
  for (Index j = 0; j < k; ++j)
    if (qr.r(j, j) == 0.0) throw RankError("rangefinder: sketch is rank deficient");
  return finish(std::move(qr.q), BasisKind::rangefinder, seed);
}

OrthonormalBasis epsilon_aligned_basis(const PsdOperator& a, Index k, double eps,
                                       std::uint64_t seed) {
  const Index n = a.dim();
  check_k(n, k, true);
  if (eps < 0.0 || eps >= 1.0)
    throw std::domain_error("epsilon_aligned_basis: need 0 <= eps < 1");

  // CS construction: Q = U1 cos(Theta) + U2 Z sin(Theta). Only m = min(k, n-k)
  // angles can be nontrivial; the largest is pinned to asin(eps) so the
  // extreme principal sine equals eps exactly.
  const Index m = std::min(k, n - k);
  const double theta_max = std::asin(eps);
  std::vector<double> theta(static_cast<size_t>(k), 0.0);
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(0.0, theta_max);
  for (Index j = k - m; j < k - 1; ++j) theta[static_cast<size_t>(j)] = unif(rng);
  theta[static_cast<size_t>(k - 1)] = theta_max;
  std::sort(theta.begin(), theta.end());

  Matrix z = thin_qr(gaussian_matrix(n - k, m, rng)).q;
  Matrix s = Matrix::Zero(m, k);
  for (Index j = 0; j < m; ++j)
    s(j, k - m + j) = std::sin(theta[static_cast<size_t>(k - m + j)]);

  Matrix q = a.leading_eigenvectors(k);
  for (Index j = 0; j < k; ++j) q.col(j) *= std::cos(theta[static_cast<size_t>(j)]);
  q.noalias() += a.trailing_eigenvectors(n - k) * (z * s);

  OrthonormalBasis b = finish(std::move(q), BasisKind::epsilon_aligned, seed);
  b.eps = eps;
  b.m_norm = eps > 0.0 ? (1.0 - std::cos(theta_max)) / (eps * eps) : 0.0;
  b.n_norm = eps > 0.0 ? 1.0 : 0.0;
  return b;
}

OrthonormalBasis perturbed_trailing_basis(const PsdOperator& a, Index k, double eps,
                                          std::uint64_t seed) {
  const Index n = a.dim();
  check_k(n, k, true);
  if (eps < 0.0) throw std::domain_error("perturbed_trailing_basis: eps must be >= 0");
  Rng rng(seed);
  Matrix b = a.trailing_eigenvectors(k);
  b.noalias() += (eps / std::sqrt(static_cast<double>(n))) * gaussian_matrix(n, k, rng);
  ThinQr qr = thin_qr(b);
  for (Index j = 0; j < k; ++j)
    if (qr.r(j, j) == 0.0) throw RankError("perturbed_trailing_basis: rank collapse");
  OrthonormalBasis out = finish(std::move(qr.q), BasisKind::perturbed_trailing, seed);
  out.eps = eps;
  return out;
}

OrthonormalBasis canonical_basis(Index n, Index k) {
  check_k(n, k, false);
  return finish(Matrix::Identity(n, k), BasisKind::canonical, 0);
}

OrthonormalBasis external_basis(Matrix q) {
  if (q.rows() < q.cols() || q.cols() < 1)
    throw std::invalid_argument("external_basis: need n >= k >= 1");
  return finish(std::move(q), BasisKind::external, 0);
}

Vector principal_angle_sines(const OrthonormalBasis& x, const OrthonormalBasis& y) {
  if (x.q.rows() != y.q.rows())
    throw std::invalid_argument("principal_angle_sines: ambient dimensions differ");
  Matrix c = x.q.transpose() * y.q;
  Vector cosines = svd_thin(c).s;  // descending, so sines come out ascending
  Vector sines(cosines.size());
  for (Index i = 0; i < cosines.size(); ++i) {
    const double ci = std::clamp(cosines(i), 0.0, 1.0);
    sines(cosines.size() - 1 - i) = std::sqrt(std::max(0.0, 1.0 - ci * ci));
  }
  return sines;
}

}  // namespace psdeig
