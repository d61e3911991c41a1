#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psdeig/dense.hpp"

namespace psdeig {

enum class SpectrumKind { exponential, algebraic, linear, explicit_list };

std::string to_string(SpectrumKind kind);
SpectrumKind spectrum_kind_from_string(const std::string& name);

struct SpectrumSpec {
  Index n = 0;
  SpectrumKind kind = SpectrumKind::exponential;
  double lambda_max = 1.0;
  double lambda_min = 1e-20;
  std::vector<double> values;  // used only for explicit_list
};

// Descending nonnegative eigenvalue profile on [lambda_min, lambda_max]:
//   exponential  lambda_i = lmax * (lmin/lmax)^((i-1)/(n-1))
//   algebraic    lambda_i = lmax * i^(-p),  p = log(lmax/lmin)/log(n)
//   linear       lambda_i = lmax - (i-1) * (lmax-lmin)/(n-1)
Vector spectrum(const SpectrumSpec& spec);

class PsdOperator;

namespace detail {
// gamma*I - A reversed to descending order without the positivity guard.
// The shift-and-flip extraction route uses a power-iteration estimate for
// gamma that can land below lambda_1 on slowly decaying spectra; the flipped
// spectrum then carries small negative trailing entries, which the extractors
// tolerate (an indefinite core still fails its Cholesky, as it should).
PsdOperator flip_spectrum(const PsdOperator& a, double gamma);
}  // namespace detail

// Synthetic PSD matrix held in factored form A = U diag(lambda) U^T.
// Products always go through the factors, so n can exceed what a dense
// n x n matrix would allow; dense() is an explicitly-guarded materialization.
class PsdOperator {
 public:
  PsdOperator(Matrix u, Vector lambda, std::uint64_t seed);

  Index dim() const { return lambda_.size(); }
  const Matrix& eigenvectors() const { return u_; }
  const Vector& eigenvalues() const { return lambda_; }
  std::uint64_t seed() const { return seed_; }

  Matrix apply(const Matrix& x) const;  // U (Lambda (U^T x))
  Vector apply(const Vector& x) const;
  Matrix dense(Index max_dim = 2000) const;
  PsdOperator power(double p) const;  // same U, eigenvalues lambda^p, reordered if p < 0

  Matrix leading_eigenvectors(Index k) const;
  Matrix trailing_eigenvectors(Index k) const;

 private:
  struct Trusted {};
  PsdOperator(Trusted, Matrix u, Vector lambda, std::uint64_t seed);
  friend PsdOperator make_shifted(const PsdOperator&, double);
  friend PsdOperator detail::flip_spectrum(const PsdOperator&, double);

  Matrix u_;
  Vector lambda_;
  std::uint64_t seed_;
};

// A = U diag(spectrum(spec)) U^T with U the Q factor of a seeded Gaussian matrix.
PsdOperator make_psd(const SpectrumSpec& spec, std::uint64_t seed);

// gamma*I - A re-expressed in descending order: eigenvalues gamma - lambda
// reversed, eigenvector columns reversed to match. Requires gamma >= lambda_1.
PsdOperator make_shifted(const PsdOperator& a, double gamma);

}  // namespace psdeig
