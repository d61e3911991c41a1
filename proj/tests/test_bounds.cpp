#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "psdeig/bounds.hpp"
#include "test_support.hpp"

using namespace psdeig;
using psdeig::testing::spec_of;

namespace {

Vector lam3() {
  Vector v(3);
  v << 1.0, 1e-4, 1e-8;
  return v;
}

EigenpairApprox approx_with(const Vector& values, const Matrix& vectors) {
  EigenpairApprox e;
  e.values = values;
  e.vectors = vectors;
  return e;
}

}  // namespace

TEST_CASE("rayleigh ritz bound from a worked spectrum") {
  RrBound b = rr_bound(lam3(), 1, 0.01);
  CHECK(b.c_rr == doctest::Approx(2.0002).epsilon(1e-12));
  CHECK(b.bound == doctest::Approx(2.0002e-4).epsilon(1e-12));
}

TEST_CASE("rayleigh ritz bound caps at four") {
  Vector flat(2);
  flat << 1.0, 1.0;
  RrBound b = rr_bound(flat, 1, 1.0);
  CHECK(b.c_rr == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(b.bound == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("rayleigh ritz bound validates its inputs") {
  CHECK_THROWS_AS(rr_bound(lam3(), 1, 0.0), std::domain_error);
  CHECK_THROWS_AS(rr_bound(lam3(), 1, 1.5), std::domain_error);
  CHECK_THROWS_AS(rr_bound(lam3(), 3, 0.01), std::out_of_range);
  Vector zeros = Vector::Zero(2);
  CHECK_THROWS_AS(rr_bound(zeros, 1, 0.01), std::domain_error);
}

TEST_CASE("nystrom bound from a worked spectrum") {
  std::optional<NysBound> b = nystrom_bound(lam3(), 1, 0.01, 0);
  REQUIRE(b.has_value());
  CHECK(b->alpha == doctest::Approx(0.99940003).epsilon(1e-10));
  CHECK(b->c_nys == doctest::Approx(1.001601551227128).epsilon(1e-10));
  CHECK(b->bound == doctest::Approx(2.003102942299133e-8).epsilon(1e-10));
}

TEST_CASE("nystrom bound is absent where its margin closes") {
  Vector v(4);
  v << 1.0, 1e-5, 1e-6, 1e-8;
  CHECK(nystrom_bound(v, 2, 0.01, 0).has_value());
  CHECK(!nystrom_bound(v, 2, 0.01, 1).has_value());
  CHECK_THROWS_AS(nystrom_bound(v, 2, 0.01, 2), std::out_of_range);
  CHECK_THROWS_AS(nystrom_bound(v, 2, 0.01, -1), std::out_of_range);
}

TEST_CASE("svd bound is about half the rayleigh ritz bound at the top") {
  const double b = svd_bound(lam3(), 1, 0.01, 0);
  CHECK(b == doctest::Approx(1.0003000600120027e-4).epsilon(1e-12));
  RrBound rr = rr_bound(lam3(), 1, 0.01);
  CHECK(b / rr.bound == doctest::Approx(0.5001000200040008).epsilon(1e-12));
}

TEST_CASE("svd bound falls back where its denominator closes") {
  Vector v(3);
  v << 1.0, 1e-9, 1e-10;
  const double b = svd_bound(v, 2, 0.01, 1);  // lambda_i = 1e-9 <= 2 eps^2 lambda_1
  CHECK(b == rr_bound(v, 2, 0.01).bound);
}

TEST_CASE("bound set matches its pointwise pieces") {
  Vector lam = spectrum(spec_of(30, SpectrumKind::exponential, 1e-12));
  const Index k = 6;
  const double eps = 0.05;
  BoundSet set = bound_set(lam, k, eps);
  CHECK(set.eps == eps);
  CHECK(set.k == k);
  CHECK(set.c_rr <= 4.0);
  RrBound rr = rr_bound(lam, k, eps);
  CHECK(set.c_rr == rr.c_rr);
  CHECK(set.bound_rr == rr.bound);
  REQUIRE(set.alpha.size() == static_cast<size_t>(k));
  REQUIRE(set.bound_nys.size() == static_cast<size_t>(k));
  REQUIRE(set.bound_svd.size() == static_cast<size_t>(k));
  for (Index i = 0; i < k; ++i) {
    std::optional<NysBound> nb = nystrom_bound(lam, k, eps, i);
    CHECK(set.bound_nys[static_cast<size_t>(i)].has_value() == nb.has_value());
    CHECK(set.bound_nys[static_cast<size_t>(i)].has_value() ==
          (set.alpha[static_cast<size_t>(i)] > 0.0));
    if (nb) {
      CHECK(set.alpha[static_cast<size_t>(i)] == nb->alpha);
      CHECK(*set.bound_nys[static_cast<size_t>(i)] == nb->bound);
    }
    CHECK(set.bound_svd[static_cast<size_t>(i)] == svd_bound(lam, k, eps, i));
  }
}

TEST_CASE("eigen errors in both index modes") {
  Vector exact(3);
  exact << 4.0, 1.0, 0.25;

  EigenpairApprox lead = approx_with(exact.head(2), Matrix::Identity(3, 3).leftCols(2));
  Vector zero_lead = eigen_errors(exact, lead, IndexMode::leading);
  CHECK(zero_lead.maxCoeff() == 0.0);

  EigenpairApprox trail = approx_with(exact.tail(2), Matrix::Identity(3, 3).rightCols(2));
  Vector zero_trail = eigen_errors(exact, trail, IndexMode::trailing);
  CHECK(zero_trail.maxCoeff() == 0.0);

  Vector rr_val(1), nys_val(1);
  rr_val << 2.92;
  nys_val << 265.0 / 73.0;
  Vector two(2);
  two << 4.0, 1.0;
  EigenpairApprox rr = approx_with(rr_val, Matrix::Identity(2, 2).leftCols(1));
  CHECK(eigen_errors(two, rr, IndexMode::leading)(0) == doctest::Approx(1.08).epsilon(1e-13));
  EigenpairApprox ny = approx_with(nys_val, Matrix::Identity(2, 2).leftCols(1));
  CHECK(eigen_errors(two, ny, IndexMode::leading)(0) ==
        doctest::Approx(27.0 / 73.0).epsilon(1e-13));

  EigenpairApprox wide = approx_with(Vector::Zero(2), Matrix::Identity(2, 2));
  Vector narrow(1);
  narrow << 1.0;
  CHECK_THROWS_AS(eigen_errors(narrow, wide, IndexMode::leading), std::invalid_argument);
}

TEST_CASE("vector angle errors on hand-picked pairs") {
  Matrix eye2 = Matrix::Identity(2, 2);

  EigenpairApprox same = approx_with(Vector::Ones(2), eye2);
  CHECK(vector_angle_errors(eye2, same, IndexMode::leading).maxCoeff() == 0.0);

  Matrix flipped = eye2;
  flipped.col(0) *= -1.0;
  EigenpairApprox sign = approx_with(Vector::Ones(2), flipped);
  CHECK(vector_angle_errors(eye2, sign, IndexMode::leading).maxCoeff() == 0.0);

  Matrix swapped(2, 2);
  swapped << 0.0, 1.0, 1.0, 0.0;
  EigenpairApprox swap = approx_with(Vector::Ones(2), swapped);
  Vector s = vector_angle_errors(eye2, swap, IndexMode::leading);
  CHECK(s(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s(1) == doctest::Approx(1.0).epsilon(1e-15));

  Matrix tilt(2, 1);
  tilt << 0.8, 0.6;
  EigenpairApprox t = approx_with(Vector::Ones(1), tilt);
  CHECK(vector_angle_errors(eye2, t, IndexMode::leading)(0) ==
        doctest::Approx(0.6).epsilon(1e-14));

  Matrix eye3 = Matrix::Identity(3, 3);
  EigenpairApprox trail = approx_with(Vector::Ones(2), eye3.rightCols(2));
  CHECK(vector_angle_errors(eye3, trail, IndexMode::trailing).maxCoeff() == 0.0);
}

TEST_CASE("vector angle errors validate ambient dimensions") {
  EigenpairApprox e = approx_with(Vector::Ones(2), Matrix::Identity(2, 2));
  CHECK_THROWS_AS(vector_angle_errors(Matrix::Identity(3, 3), e, IndexMode::leading),
                  std::invalid_argument);
}
