#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "psdeig/errors.hpp"
#include "psdeig/rng.hpp"
#include "psdeig/subspaces.hpp"
#include "test_support.hpp"

using namespace psdeig;
using psdeig::testing::spec_of;

namespace {

double orthonormality_defect(const Matrix& q) {
  return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols())).norm();
}

}  // namespace

TEST_CASE("canonical basis picks identity columns") {
  OrthonormalBasis b = canonical_basis(5, 2);
  CHECK((b.q - Matrix::Identity(5, 5).leftCols(2)).norm() == 0.0);
  CHECK(b.provenance == BasisKind::canonical);
  CHECK(!b.eps.has_value());
}

TEST_CASE("external basis validates orthonormality") {
  CHECK_THROWS_AS(external_basis(Matrix::Ones(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(external_basis(Matrix::Zero(2, 3)), std::invalid_argument);
  CHECK_THROWS_AS(external_basis(Matrix(3, 0)), std::invalid_argument);
  Rng rng(31);
  Matrix q = thin_qr(gaussian_matrix(6, 3, rng)).q;
  OrthonormalBasis b = external_basis(q);
  CHECK(b.provenance == BasisKind::external);
  CHECK((b.q - q).norm() == 0.0);
}

TEST_CASE("rangefinder output is orthonormal and seeded") {
  PsdOperator a = make_psd(spec_of(40, SpectrumKind::exponential, 1e-8), 6);
  OrthonormalBasis b = randomized_rangefinder(a, 8, 5);
  CHECK(b.q.rows() == 40);
  CHECK(b.q.cols() == 8);
  CHECK(orthonormality_defect(b.q) <= 1e-10);
  CHECK(b.provenance == BasisKind::rangefinder);
  CHECK(b.seed == 5);

  OrthonormalBasis again = randomized_rangefinder(a, 8, 5);
  CHECK((b.q - again.q).norm() == 0.0);
  OrthonormalBasis other = randomized_rangefinder(a, 8, 55);
  CHECK((b.q - other.q).norm() > 0.0);

  OrthonormalBasis powered = randomized_rangefinder(a, 8, 5, 2);
  CHECK(orthonormality_defect(powered.q) <= 1e-10);

  CHECK_THROWS_AS(randomized_rangefinder(a, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(randomized_rangefinder(a, 41, 5), std::invalid_argument);
}

TEST_CASE("rangefinder detects range collapse") {
  SpectrumSpec spec;
  spec.n = 4;
  spec.kind = SpectrumKind::explicit_list;
  spec.values = {1.0, 0.0, 0.0, 0.0};
  PsdOperator a = make_psd(spec, 8);
  CHECK_THROWS_AS(randomized_rangefinder(a, 3, 9), RankError);
}

TEST_CASE("epsilon aligned basis realizes the requested angle") {
  struct Case {
    Index n, k;
    double eps;
  };
  for (Case c : {Case{40, 8, 0.3}, Case{20, 12, 0.1}, Case{50, 10, 0.001}}) {
    PsdOperator a = make_psd(spec_of(c.n, SpectrumKind::exponential, 1e-8), 12);
    OrthonormalBasis b = epsilon_aligned_basis(a, c.k, c.eps, 3);
    CHECK(orthonormality_defect(b.q) <= 1e-10);
    OrthonormalBasis lead = external_basis(a.leading_eigenvectors(c.k));
    Vector sines = principal_angle_sines(b, lead);
    CHECK(std::abs(sines(0) - c.eps) <= 1e-10);
    CHECK(sines.maxCoeff() <= c.eps + 1e-10);
    REQUIRE(b.eps.has_value());
    CHECK(*b.eps == c.eps);
    REQUIRE(b.m_norm.has_value());
    CHECK(*b.m_norm <= 1.0 + 1e-12);
    REQUIRE(b.n_norm.has_value());
    CHECK(*b.n_norm == 1.0);
  }
}

TEST_CASE("zero-epsilon alignment reproduces the leading span") {
  PsdOperator a = make_psd(spec_of(30, SpectrumKind::linear, 0.1), 14);
  OrthonormalBasis b = epsilon_aligned_basis(a, 6, 0.0, 2);
  OrthonormalBasis lead = external_basis(a.leading_eigenvectors(6));
  // cosine-based angles bottom out near sqrt(machine eps)
  CHECK(principal_angle_sines(b, lead).maxCoeff() <= 1e-7);
}

TEST_CASE("epsilon aligned basis validates eps") {
  PsdOperator a = make_psd(spec_of(10, SpectrumKind::linear, 0.1), 1);
  CHECK_THROWS_AS(epsilon_aligned_basis(a, 3, -0.1, 0), std::domain_error);
  CHECK_THROWS_AS(epsilon_aligned_basis(a, 3, 1.0, 0), std::domain_error);
}

TEST_CASE("perturbed trailing basis stays near the trailing span") {
  PsdOperator a = make_psd(spec_of(40, SpectrumKind::algebraic, 1e-8), 5);
  OrthonormalBasis b = perturbed_trailing_basis(a, 6, 0.01, 3);
  CHECK(orthonormality_defect(b.q) <= 1e-10);
  CHECK(b.provenance == BasisKind::perturbed_trailing);
  REQUIRE(b.eps.has_value());
  CHECK(*b.eps == 0.01);
  OrthonormalBasis trail = external_basis(a.trailing_eigenvectors(6));
  CHECK(principal_angle_sines(b, trail).maxCoeff() <= 0.1);

  OrthonormalBasis again = perturbed_trailing_basis(a, 6, 0.01, 3);
  CHECK((b.q - again.q).norm() == 0.0);
  CHECK_THROWS_AS(perturbed_trailing_basis(a, 6, -0.01, 3), std::domain_error);
}

TEST_CASE("principal angle sines on hand-picked pairs") {
  Matrix eye4 = Matrix::Identity(4, 4);
  OrthonormalBasis x = external_basis(eye4.leftCols(2));
  OrthonormalBasis y = external_basis(eye4.rightCols(2));
  Vector perp = principal_angle_sines(x, y);
  CHECK(perp(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(perp(1) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(principal_angle_sines(x, x).maxCoeff() <= 1e-7);

  const double t = 0.3;
  Matrix rot(2, 1);
  rot << std::cos(t), std::sin(t);
  Vector one = principal_angle_sines(external_basis(Matrix::Identity(2, 2).leftCols(1)),
                                     external_basis(rot));
  REQUIRE(one.size() == 1);
  CHECK(one(0) == doctest::Approx(std::sin(t)).epsilon(1e-12));

  // shared direction plus a rotated one: sines come back descending
  Matrix ya(3, 2);
  ya << 1.0, 0.0, 0.0, std::cos(t), 0.0, std::sin(t);
  Vector two = principal_angle_sines(external_basis(Matrix::Identity(3, 3).leftCols(2)),
                                     external_basis(ya));
  CHECK(two(0) == doctest::Approx(std::sin(t)).epsilon(1e-12));
  CHECK(two(1) <= 1e-7);

  // ranks may differ; the count follows the narrower side
  Vector narrow = principal_angle_sines(external_basis(Matrix::Identity(4, 4).leftCols(1)),
                                        external_basis(Matrix::Identity(4, 4).leftCols(3)));
  REQUIRE(narrow.size() == 1);
  CHECK(narrow(0) <= 1e-7);
}

TEST_CASE("principal angle sines validate ambient dimensions") {
  CHECK_THROWS_AS(principal_angle_sines(external_basis(Matrix::Identity(3, 3).leftCols(2)),
                                        external_basis(Matrix::Identity(4, 4).leftCols(2))),
                  std::invalid_argument);
}
