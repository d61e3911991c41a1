#include "psdeig/model.hpp"

#include <cmath>
#include <stdexcept>

#include "psdeig/rng.hpp"

namespace psdeig {

std::string to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::exponential: return "exponential";
    case SpectrumKind::algebraic: return "algebraic";
    case SpectrumKind::linear: return "linear";
    case SpectrumKind::explicit_list: return "explicit";
  }
  return "unknown";
}

SpectrumKind spectrum_kind_from_string(const std::string& name) {
  if (name == "exponential" || name == "exp") return SpectrumKind::exponential;
  if (name == "algebraic" || name == "alg") return SpectrumKind::algebraic;
  if (name == "linear" || name == "lin") return SpectrumKind::linear;
  if (name == "explicit") return SpectrumKind::explicit_list;
  throw std::invalid_argument("unknown spectrum kind: " + name);
}

Vector spectrum(const SpectrumSpec& spec) {
  const Index n = spec.n;
  if (n < 1) throw std::invalid_argument("spectrum: n must be positive");

  if (spec.kind == SpectrumKind::explicit_list) {
    if (static_cast<Index>(spec.values.size()) != n)
      throw std::invalid_argument("spectrum: explicit value count != n");
    Vector lam(n);
    for (Index i = 0; i < n; ++i) lam(i) = spec.values[static_cast<size_t>(i)];
    for (Index i = 0; i < n; ++i) {
      if (lam(i) < 0.0) throw std::domain_error("spectrum: negative eigenvalue");
      if (i > 0 && lam(i) > lam(i - 1))
        throw std::invalid_argument("spectrum: explicit values must be descending");
    }
    return lam;
  }

  const double lmax = spec.lambda_max;
  const double lmin = spec.lambda_min;
  if (lmax <= 0.0) throw std::domain_error("spectrum: lambda_max must be positive");
  if (lmin > lmax) throw std::domain_error("spectrum: lambda_min exceeds lambda_max");
  if (spec.kind != SpectrumKind::linear && lmin <= 0.0)
    throw std::domain_error("spectrum: decay kind needs lambda_min > 0");
  if (lmin < 0.0) throw std::domain_error("spectrum: lambda_min must be nonnegative");

  Vector lam(n);
  if (n == 1) {
    lam(0) = lmax;
    return lam;
  }
  switch (spec.kind) {
    case SpectrumKind::exponential: {
      const double ratio = lmin / lmax;
      for (Index i = 0; i < n; ++i)
        lam(i) = lmax * std::pow(ratio, static_cast<double>(i) / static_cast<double>(n - 1));
      break;
    }
    case SpectrumKind::algebraic: {
      const double p = std::log(lmax / lmin) / std::log(static_cast<double>(n));
      for (Index i = 0; i < n; ++i)
        lam(i) = lmax * std::pow(static_cast<double>(i + 1), -p);
      break;
    }
    case SpectrumKind::linear: {
      const double step = (lmax - lmin) / static_cast<double>(n - 1);
      for (Index i = 0; i < n; ++i) lam(i) = lmax - step * static_cast<double>(i);
      break;
    }
    default: break;
  }
  // guard monotonicity against pow roundoff at the endpoints
  lam(0) = lmax;
  lam(n - 1) = std::min(lam(n - 1), lam(n - 2));
  return lam;
}

namespace {

void validate_operator_parts(const Matrix& u, const Vector& lambda) {
  const Index n = lambda.size();
  if (u.rows() != n || u.cols() != n)
    throw std::invalid_argument("PsdOperator: U must be n x n with n = eigenvalue count");
  for (Index i = 0; i < n; ++i) {
    if (lambda(i) < 0.0) throw std::domain_error("PsdOperator: negative eigenvalue");
    if (i > 0 && lambda(i) > lambda(i - 1))
      throw std::invalid_argument("PsdOperator: eigenvalues must be descending");
  }
  // full gram check at test scale, cheap probe above it
  if (n <= 500) {
    const double err = (u.transpose() * u - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (err > 1e-12) throw std::invalid_argument("PsdOperator: U not orthonormal");
  } else {
    Rng rng(0x9d2c5680u);
    for (int probe = 0; probe < 3; ++probe) {
      Vector v = gaussian_vector(n, rng);
      v.normalize();
      const double err = (u * (u.transpose() * v) - v).norm();
      if (err > 1e-10) throw std::invalid_argument("PsdOperator: U not orthonormal");
    }
  }
}

}  // namespace

PsdOperator::PsdOperator(Matrix u, Vector lambda, std::uint64_t seed)
    : u_(std::move(u)), lambda_(std::move(lambda)), seed_(seed) {
  validate_operator_parts(u_, lambda_);
}

PsdOperator::PsdOperator(Trusted, Matrix u, Vector lambda, std::uint64_t seed)
    : u_(std::move(u)), lambda_(std::move(lambda)), seed_(seed) {}

Matrix PsdOperator::apply(const Matrix& x) const {
  if (x.rows() != dim()) throw std::invalid_argument("apply: row count != operator dim");
  Matrix tmp = u_.transpose() * x;
  tmp = lambda_.asDiagonal() * tmp;
  return u_ * tmp;
}

Vector PsdOperator::apply(const Vector& x) const {
  if (x.size() != dim()) throw std::invalid_argument("apply: length != operator dim");
  Vector tmp = u_.transpose() * x;
  tmp = lambda_.asDiagonal() * tmp;
  return u_ * tmp;
}

Matrix PsdOperator::dense(Index max_dim) const {
  if (dim() > max_dim)
    throw std::domain_error("dense: operator dimension exceeds materialization guard");
  Matrix a = u_ * lambda_.asDiagonal() * u_.transpose();
  return 0.5 * (a + a.transpose());
}

PsdOperator PsdOperator::power(double p) const {
  const Index n = dim();
  Vector powered(n);
  for (Index i = 0; i < n; ++i) {
    if (lambda_(i) == 0.0 && p < 0.0)
      throw std::domain_error("power: negative exponent with zero eigenvalue");
    powered(i) = std::pow(lambda_(i), p);
  }
  if (p >= 0.0) return PsdOperator(Trusted{}, u_, std::move(powered), seed_);
  // negative exponent reverses the ordering
  return PsdOperator(Trusted{}, u_.rowwise().reverse(), powered.reverse(), seed_);
}

Matrix PsdOperator::leading_eigenvectors(Index k) const {
  if (k < 1 || k > dim()) throw std::invalid_argument("leading_eigenvectors: bad k");
  return u_.leftCols(k);
}

Matrix PsdOperator::trailing_eigenvectors(Index k) const {
  if (k < 1 || k > dim()) throw std::invalid_argument("trailing_eigenvectors: bad k");
  return u_.rightCols(k);
}

PsdOperator make_psd(const SpectrumSpec& spec, std::uint64_t seed) {
  Vector lam = spectrum(spec);
  Rng rng(seed);
  Matrix g = gaussian_matrix(spec.n, spec.n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix u = qr.householderQ() * Matrix::Identity(spec.n, spec.n);
  return PsdOperator(std::move(u), std::move(lam), seed);
}

PsdOperator make_shifted(const PsdOperator& a, double gamma) {
  const Index n = a.dim();
  const double lambda1 = n > 0 ? a.eigenvalues()(0) : 0.0;
  if (gamma < lambda1 * (1.0 - 1e-12))
    throw std::domain_error("make_shifted: gamma below lambda_1");
  Vector mu(n);
  for (Index i = 0; i < n; ++i)
    mu(i) = std::max(gamma - a.eigenvalues()(n - 1 - i), 0.0);
  Matrix u = a.eigenvectors().rowwise().reverse();
  return PsdOperator(PsdOperator::Trusted{}, std::move(u), std::move(mu), a.seed());
}

namespace detail {

PsdOperator flip_spectrum(const PsdOperator& a, double gamma) {
  const Index n = a.dim();
  Vector mu(n);
  for (Index i = 0; i < n; ++i) mu(i) = gamma - a.eigenvalues()(n - 1 - i);
  Matrix u = a.eigenvectors().rowwise().reverse();
  return PsdOperator(PsdOperator::Trusted{}, std::move(u), std::move(mu), a.seed());
}

}  // namespace detail

}  // namespace psdeig
