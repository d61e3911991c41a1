#include "psdeig/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "psdeig/bounds.hpp"
#include "psdeig/extract.hpp"
#include "psdeig/model.hpp"
#include "psdeig/rng.hpp"
#include "psdeig/subspaces.hpp"

namespace psdeig::verify {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Tracker {
  PropertyResult res;

  Tracker(std::string name, double tol) {
    res.name = std::move(name);
    res.tolerance = tol;
  }

  void trial(double violation, const std::string& where) {
    ++res.trials;
    if (violation > res.max_violation) {
      res.max_violation = violation;
      res.worst = where;
    }
  }

  PropertyResult done() {
    res.passed = res.max_violation <= 0.0;
    return res;
  }
};

std::string describe(std::uint64_t seed, Index n, Index k, const std::string& extra) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "seed=%llu n=%lld k=%lld",
                static_cast<unsigned long long>(seed), static_cast<long long>(n),
                static_cast<long long>(k));
  std::string out(buf);
  if (!extra.empty()) out += " " + extra;
  return out;
}

// Spectrum profiles cycled through the randomized properties. All peak at 1
// so absolute tolerances double as lambda_1-relative ones.
SpectrumSpec cycle_spectrum(Index n, int j) {
  SpectrumSpec s;
  s.n = n;
  switch (j % 4) {
    case 0:
      s.kind = SpectrumKind::exponential;
      s.lambda_min = 1e-12;
      break;
    case 1:
      s.kind = SpectrumKind::algebraic;
      s.lambda_min = 1e-8;
      break;
    case 2:
      s.kind = SpectrumKind::linear;
      s.lambda_min = 1e-4;
      break;
    default:
      s.kind = SpectrumKind::explicit_list;
      s.values.resize(static_cast<std::size_t>(n));
      for (Index i = 0; i < n; ++i) s.values[static_cast<std::size_t>(i)] = 1.0 / double(1 + i);
      if (n > 1) s.values[1] = s.values[0];  // keep one tied pair in play
      break;
  }
  return s;
}

const char* spectrum_tag(int j) {
  switch (j % 4) {
    case 0: return "exp";
    case 1: return "alg";
    case 2: return "lin";
    default: return "explicit";
  }
}

OrthonormalBasis cycle_basis(const PsdOperator& a, Index k, int j, std::uint64_t seed) {
  switch (j % 5) {
    case 0: return randomized_rangefinder(a, k, seed);
    case 1: return epsilon_aligned_basis(a, k, (j / 5) % 2 ? 0.3 : 0.01, seed);
    case 2: return perturbed_trailing_basis(a, k, 0.01, seed);
    case 3: return canonical_basis(a.dim(), k);
    default: {
      Rng rng(seed);
      return external_basis(thin_qr(gaussian_matrix(a.dim(), k, rng)).q);
    }
  }
}

// ---- chain ----

PropertyResult chain_inequality(std::uint64_t seed) {
  Tracker t("thm_chain", 1e-10);
  for (int j = 0; j < 200; ++j) {
    const Index n = (j % 2) ? 200 : 50;
    const Index k = (j / 2 % 2) ? 20 : 5;
    const std::uint64_t s = derive_seed(seed, 1000 + static_cast<std::uint64_t>(j));
    PsdOperator a = make_psd(cycle_spectrum(n, j), s);
    OrthonormalBasis q = cycle_basis(a, k, j, derive_seed(s, 11));
    const double tol = 1e-10 * a.eigenvalues()(0);

    EigenpairApprox rr = rayleigh_ritz(a, q);
    EigenpairApprox sv = svd_extract(a, q);
    EigenpairApprox ny = nystrom_extract(a, q);
    double worst = kNegInf;
    for (Index i = 0; i < k; ++i) {
      worst = std::max({worst, ny.values(i) - a.eigenvalues()(i), sv.values(i) - ny.values(i),
                        rr.values(i) - sv.values(i)});
    }
    t.trial(worst - tol, describe(s, n, k, to_string(q.provenance)));
  }
  return t.done();
}

// ---- trailing ----

PropertyResult trailing_floor(std::uint64_t seed) {
  Tracker t("trailing_floor", 1e-10);
  for (int j = 0; j < 100; ++j) {
    const Index n = (j % 2) ? 150 : 60;
    const Index k = (j / 2 % 2) ? 20 : 5;
    const std::uint64_t s = derive_seed(seed, 2000 + static_cast<std::uint64_t>(j));
    PsdOperator a = make_psd(cycle_spectrum(n, j), s);
    OrthonormalBasis q = cycle_basis(a, k, j, derive_seed(s, 11));
    const double tol = 1e-10 * a.eigenvalues()(0);

    EigenpairApprox rr = rayleigh_ritz(a, q);
    double worst = kNegInf;
    for (Index i = 0; i < k; ++i) {
      worst = std::max(worst, a.eigenvalues()(n - k + i) - rr.values(i));
    }
    t.trial(worst - tol, describe(s, n, k, to_string(q.provenance)));
  }
  return t.done();
}

PropertyResult trailing_reversal(std::uint64_t seed) {
  Tracker t("trailing_reversal", 1e-10);
  for (int j = 0; j < 50; ++j) {
    const Index n = (j % 2) ? 200 : 50;
    const Index k = (j / 2 % 2) ? 20 : 5;
    const std::uint64_t s = derive_seed(seed, 3000 + static_cast<std::uint64_t>(j));
    SpectrumSpec spec = cycle_spectrum(n, (j % 2) ? 1 : 2);  // algebraic or linear decay
    PsdOperator a = make_psd(spec, s);
    const double eps = (j / 4 % 2) ? 0.1 : 0.01;
    OrthonormalBasis q = perturbed_trailing_basis(a, k, eps, derive_seed(s, 11));
    const double tol = 1e-10 * a.eigenvalues()(0);

    Vector e_rr = eigen_errors(a.eigenvalues(), rayleigh_ritz(a, q), IndexMode::trailing);
    Vector e_sv = eigen_errors(a.eigenvalues(), svd_extract(a, q), IndexMode::trailing);
    Vector e_ny = eigen_errors(a.eigenvalues(), nystrom_extract(a, q), IndexMode::trailing);
    double worst = kNegInf;
    for (Index i = 0; i < k; ++i) {
      worst = std::max({worst, e_rr(i) - e_sv(i), e_sv(i) - e_ny(i)});
    }
    t.trial(worst - tol, describe(s, n, k, "eps=" + std::to_string(eps)));
  }
  return t.done();
}

// ---- identities ----

PropertyResult power_roundtrip(std::uint64_t seed) {
  Tracker t("sqrt_power_roundtrip", 1e-10);
  for (int j = 0; j < 20; ++j) {
    const Index n = (j % 2) ? 120 : 40;
    const std::uint64_t s = derive_seed(seed, 4000 + static_cast<std::uint64_t>(j));
    PsdOperator a = make_psd(cycle_spectrum(n, j), s);
    PsdOperator half = a.power(0.5);
    Rng rng(derive_seed(s, 13));
    Matrix b = gaussian_matrix(n, 5, rng);
    const double tol = 1e-10 * a.eigenvalues()(0);
    const double dev = (half.apply(half.apply(b)) - a.apply(b)).norm();
    t.trial(dev - tol, describe(s, n, 5, spectrum_tag(j)));
  }
  return t.done();
}

PropertyResult rr_matches_sqrt_svd(std::uint64_t seed) {
  Tracker t("rr_eq_sqrt_svd_squared", 1e-10);
  for (int j = 0; j < 50; ++j) {
    const Index n = (j % 2) ? 120 : 50;
    const Index k = (j / 2 % 2) ? 15 : 5;
    const std::uint64_t s = derive_seed(seed, 5000 + static_cast<std::uint64_t>(j));
    PsdOperator a = make_psd(cycle_spectrum(n, j), s);
    OrthonormalBasis q = cycle_basis(a, k, j, derive_seed(s, 11));
    const double tol = 1e-10 * a.eigenvalues()(0);

    Vector rr = rayleigh_ritz(a, q).values;
    Vector sv = svd_extract(a.power(0.5), q).values;
    const double dev = (rr - sv.array().square().matrix()).cwiseAbs().maxCoeff();
    t.trial(dev - tol, describe(s, n, k, to_string(q.provenance)));
  }
  return t.done();
}

PropertyResult svd_matches_square_rr(std::uint64_t seed) {
  Tracker t("svd_eq_sqrt_square_rr", 1e-10);
  for (int j = 0; j < 50; ++j) {
    const Index n = (j % 2) ? 120 : 50;
    const Index k = (j / 2 % 2) ? 15 : 5;
    const std::uint64_t s = derive_seed(seed, 6000 + static_cast<std::uint64_t>(j));
    PsdOperator a = make_psd(cycle_spectrum(n, j), s);
    OrthonormalBasis q = cycle_basis(a, k, j, derive_seed(s, 11));
    const double tol = 1e-10 * a.eigenvalues()(0);

    Vector sv = svd_extract(a, q).values;
    Vector rr2 = rayleigh_ritz(a.power(2.0), q).values;
    double worst = kNegInf;
    for (Index i = 0; i < k; ++i) {
      worst = std::max(worst, std::abs(sv(i) - std::sqrt(std::max(rr2(i), 0.0))));
    }
    t.trial(worst - tol, describe(s, n, k, to_string(q.provenance)));
  }
  return t.done();
}

PropertyResult basis_invariance(std::uint64_t seed) {
  Tracker t("basis_rotation_invariance", 1e-10);
  for (int j = 0; j < 50; ++j) {
    const Index n = (j % 2) ? 120 : 50;
    const Index k = (j / 2 % 2) ? 15 : 5;
    const std::uint64_t s = derive_seed(seed, 7000 + static_cast<std::uint64_t>(j));
    PsdOperator a = make_psd(cycle_spectrum(n, j), s);
    OrthonormalBasis q = cycle_basis(a, k, j, derive_seed(s, 11));
    Rng rng(derive_seed(s, 17));
    Matrix rot = thin_qr(gaussian_matrix(k, k, rng)).q;
    OrthonormalBasis qr_ = external_basis(q.q * rot);
    const double tol = 1e-10 * a.eigenvalues()(0);

    double worst = kNegInf;
    worst = std::max(worst,
                     (rayleigh_ritz(a, q).values - rayleigh_ritz(a, qr_).values).cwiseAbs().maxCoeff());
    worst = std::max(worst,
                     (svd_extract(a, q).values - svd_extract(a, qr_).values).cwiseAbs().maxCoeff());
    worst = std::max(worst,
                     (nystrom_extract(a, q).values - nystrom_extract(a, qr_).values).cwiseAbs().maxCoeff());
    t.trial(worst - tol, describe(s, n, k, to_string(q.provenance)));
  }
  return t.done();
}

// ---- bounds ----

PropertyResult bound_validity(std::uint64_t seed) {
  Tracker t("bound_validity", 1e-12);
  const double eps_grid[2] = {0.1, 0.01};
  const Index n_grid[2] = {200, 1000};
  for (int je = 0; je < 2; ++je) {
    for (int jn = 0; jn < 2; ++jn) {
      for (int js = 0; js < 5; ++js) {
        const double eps = eps_grid[je];
        const Index n = n_grid[jn];
        const Index k = n / 5;
        const std::uint64_t s =
            derive_seed(seed, 8000 + static_cast<std::uint64_t>(je * 100 + jn * 10 + js));
        SpectrumSpec spec;
        spec.n = n;
        spec.kind = SpectrumKind::exponential;
        spec.lambda_min = 1e-20;
        PsdOperator a = make_psd(spec, s);
        OrthonormalBasis q = epsilon_aligned_basis(a, k, eps, derive_seed(s, 11));
        const double slack = 1e-12 * a.eigenvalues()(0);

        Vector e_rr = eigen_errors(a.eigenvalues(), rayleigh_ritz(a, q), IndexMode::leading);
        Vector e_sv = eigen_errors(a.eigenvalues(), svd_extract(a, q), IndexMode::leading);
        Vector e_ny = eigen_errors(a.eigenvalues(), nystrom_extract(a, q), IndexMode::leading);
        BoundSet bs = bound_set(a.eigenvalues(), k, eps);
        double worst = kNegInf;
        for (Index i = 0; i < k; ++i) {
          worst = std::max(worst, e_rr(i) - (bs.bound_rr + slack));
          worst = std::max(worst, e_sv(i) - (bs.bound_svd[static_cast<std::size_t>(i)] + slack));
          if (bs.bound_nys[static_cast<std::size_t>(i)]) {
            worst = std::max(worst, e_ny(i) - *bs.bound_nys[static_cast<std::size_t>(i)]);
          }
        }
        t.trial(worst, describe(s, n, k, "eps=" + std::to_string(eps)));
      }
    }
  }
  return t.done();
}

PropertyResult bound_ordering(std::uint64_t seed) {
  Tracker t("bound_ordering_first_index", 0.0);
  for (int j = 0; j < 5; ++j) {
    const Index n = 200;
    const Index k = 40;
    const std::uint64_t s = derive_seed(seed, 8500 + static_cast<std::uint64_t>(j));
    SpectrumSpec spec;
    spec.n = n;
    spec.kind = SpectrumKind::exponential;
    spec.lambda_min = 1e-20;
    PsdOperator a = make_psd(spec, s);
    BoundSet bs = bound_set(a.eigenvalues(), k, 0.01);
    double worst = bs.bound_svd[0] - bs.bound_rr;
    if (bs.bound_nys[0]) worst = std::max(worst, *bs.bound_nys[0] - bs.bound_svd[0]);
    t.trial(worst, describe(s, n, k, "eps=0.010000"));
  }
  return t.done();
}

PropertyResult leading_error_monotone(std::uint64_t seed) {
  Tracker t("leading_error_monotone", 1e-10);
  for (int j = 0; j < 20; ++j) {
    const Index n = (j % 2) ? 200 : 100;
    const Index k = (j / 2 % 2) ? 40 : 10;
    const std::uint64_t s = derive_seed(seed, 9000 + static_cast<std::uint64_t>(j));
    PsdOperator a = make_psd(cycle_spectrum(n, j % 2), s);  // exp or algebraic decay
    OrthonormalBasis q = cycle_basis(a, k, j, derive_seed(s, 11));
    const double tol = 1e-10 * a.eigenvalues()(0);

    Vector e_rr = eigen_errors(a.eigenvalues(), rayleigh_ritz(a, q), IndexMode::leading);
    Vector e_sv = eigen_errors(a.eigenvalues(), svd_extract(a, q), IndexMode::leading);
    Vector e_ny = eigen_errors(a.eigenvalues(), nystrom_extract(a, q), IndexMode::leading);
    double worst = kNegInf;
    for (Index i = 0; i < k; ++i) {
      worst = std::max({worst, e_sv(i) - e_rr(i), e_ny(i) - e_sv(i)});
    }
    t.trial(worst - tol, describe(s, n, k, to_string(q.provenance)));
  }
  return t.done();
}

// ---- angles ----

PropertyResult epsilon_alignment(std::uint64_t seed) {
  Tracker t("epsilon_alignment", 1e-10);
  const double eps_grid[4] = {0.3, 0.1, 0.01, 0.001};
  for (int je = 0; je < 4; ++je) {
    for (int js = 0; js < 20; ++js) {
      const Index n = 100;
      const Index k = (js % 3 == 0) ? 10 : (js % 3 == 1) ? 20 : 60;  // includes k > n-k
      const double eps = eps_grid[je];
      const std::uint64_t s =
          derive_seed(seed, 10000 + static_cast<std::uint64_t>(je * 100 + js));
      SpectrumSpec spec = cycle_spectrum(n, 0);
      PsdOperator a = make_psd(spec, s);
      OrthonormalBasis q = epsilon_aligned_basis(a, k, eps, derive_seed(s, 11));
      OrthonormalBasis u1 = external_basis(a.leading_eigenvectors(k));
      const double realized = principal_angle_sines(q, u1)(0);
      t.trial(std::abs(realized - eps) - 1e-10, describe(s, n, k, "eps=" + std::to_string(eps)));
    }
  }
  return t.done();
}

// One multiplication by A tilts a subspace toward the leading eigenspace and
// away from the trailing one; measured on the largest principal angle after
// orthonormalizing A Q. Moderate decay keeps A Q numerically full rank.
void angle_monotonicity(std::uint64_t seed, Tracker& lead, Tracker& trail) {
  for (int j = 0; j < 50; ++j) {
    const Index n = 100;
    const Index k = 20;
    const std::uint64_t s = derive_seed(seed, 11000 + static_cast<std::uint64_t>(j));
    SpectrumSpec spec;
    spec.n = n;
    spec.kind = (j % 2) ? SpectrumKind::linear : SpectrumKind::exponential;
    spec.lambda_min = 1e-2;
    PsdOperator a = make_psd(spec, s);
    OrthonormalBasis q = cycle_basis(a, k, j, derive_seed(s, 11));
    OrthonormalBasis aq = external_basis(thin_qr(a.apply(q.q)).q);
    OrthonormalBasis u1 = external_basis(a.leading_eigenvectors(k));
    OrthonormalBasis u2 = external_basis(a.trailing_eigenvectors(n - k));

    const double q_u1 = principal_angle_sines(q, u1)(0);
    const double aq_u1 = principal_angle_sines(aq, u1)(0);
    const double q_u2 = principal_angle_sines(q, u2)(0);
    const double aq_u2 = principal_angle_sines(aq, u2)(0);
    const std::string where = describe(s, n, k, to_string(q.provenance));
    lead.trial(aq_u1 - q_u1 - 1e-10, where);
    trail.trial(q_u2 - aq_u2 - 1e-10, where);
  }
}

// ---- shift ----

void shift_improvement(std::uint64_t seed, Tracker& fraction, Tracker& median) {
  std::vector<double> ratios;
  int improved = 0;
  int total = 0;
  std::string tag;
  for (int j = 0; j < 5; ++j) {
    const Index n = 200;
    const Index k = 40;
    const std::uint64_t s = derive_seed(seed, 12000 + static_cast<std::uint64_t>(j));
    PsdOperator a = make_psd(cycle_spectrum(n, (j % 2) ? 2 : 1), s);
    OrthonormalBasis q = perturbed_trailing_basis(a, k, 0.01, derive_seed(s, 11));

    Vector plain = eigen_errors(a.eigenvalues(), nystrom_extract(a, q), IndexMode::trailing);
    Vector shifted = eigen_errors(a.eigenvalues(), shifted_trailing_extract(a, q, Method::nys),
                                  IndexMode::trailing);
    for (Index i = 0; i < k; ++i) {
      ++total;
      if (shifted(i) <= plain(i)) ++improved;
      ratios.push_back(plain(i) / std::max(shifted(i), 1e-300));
    }
    if (j == 0) tag = describe(s, n, k, "");
  }
  const double frac = double(improved) / double(total);
  std::sort(ratios.begin(), ratios.end());
  const double med = ratios[ratios.size() / 2];
  char buf[96];
  std::snprintf(buf, sizeof(buf), "improved=%d/%d median=%.3g", improved, total, med);
  fraction.trial(0.95 - frac, tag + " " + buf);
  median.trial(2.0 - med, tag + " " + buf);
}

PropertyResult shift_exact_trailing(std::uint64_t seed) {
  Tracker t("shift_exact_trailing", 1e-10);
  for (int j = 0; j < 10; ++j) {
    const Index n = (j % 2) ? 150 : 60;
    const Index k = (j / 2 % 2) ? 20 : 5;
    const std::uint64_t s = derive_seed(seed, 13000 + static_cast<std::uint64_t>(j));
    PsdOperator a = make_psd(cycle_spectrum(n, j), s);
    OrthonormalBasis q = external_basis(a.trailing_eigenvectors(k));
    const double tol = 1e-10 * a.eigenvalues()(0);

    const Method methods[3] = {Method::rr, Method::svd_qv, Method::nys};
    double worst = kNegInf;
    for (Method m : methods) {
      Vector errs = eigen_errors(a.eigenvalues(), shifted_trailing_extract(a, q, m),
                                 IndexMode::trailing);
      worst = std::max(worst, errs.maxCoeff());
    }
    t.trial(worst - tol, describe(s, n, k, spectrum_tag(j)));
  }
  return t.done();
}

PropertyResult shift_dense_agreement(std::uint64_t seed) {
  Tracker t("shift_dense_agreement", 1e-10);
  for (int j = 0; j < 10; ++j) {
    const Index n = (j % 2) ? 100 : 50;
    const Index k = (j / 2 % 2) ? 10 : 5;
    const std::uint64_t s = derive_seed(seed, 14000 + static_cast<std::uint64_t>(j));
    PsdOperator a = make_psd(cycle_spectrum(n, j), s);
    OrthonormalBasis q = perturbed_trailing_basis(a, k, 0.05, derive_seed(s, 11));
    const double gamma = estimate_lambda_max_upper(a, 30, derive_seed(s, 3)).gamma;
    const Method m = (j % 3 == 0) ? Method::rr : (j % 3 == 1) ? Method::svd_qv : Method::nys;
    const double tol = 1e-10 * a.eigenvalues()(0);

    Vector spectral = shifted_trailing_extract(a, q, m, gamma).values;
    Vector dense = shifted_trailing_extract_dense(a.dense(), q, m, gamma).values;
    t.trial((spectral - dense).cwiseAbs().maxCoeff() - tol,
            describe(s, n, k, to_string(m)));
  }
  return t.done();
}

}  // namespace

bool SuiteResult::passed() const {
  for (const PropertyResult& p : properties) {
    if (!p.passed) return false;
  }
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"chain",  "trailing", "identities",
                                                 "bounds", "angles",   "shift"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  SuiteResult out;
  out.suite = name;
  if (name == "chain") {
    out.properties.push_back(chain_inequality(seed));
  } else if (name == "trailing") {
    out.properties.push_back(trailing_floor(seed));
    out.properties.push_back(trailing_reversal(seed));
  } else if (name == "identities") {
    out.properties.push_back(power_roundtrip(seed));
    out.properties.push_back(rr_matches_sqrt_svd(seed));
    out.properties.push_back(svd_matches_square_rr(seed));
    out.properties.push_back(basis_invariance(seed));
  } else if (name == "bounds") {
    out.properties.push_back(bound_validity(seed));
    out.properties.push_back(bound_ordering(seed));
    out.properties.push_back(leading_error_monotone(seed));
  } else if (name == "angles") {
    out.properties.push_back(epsilon_alignment(seed));
    Tracker lead("angle_monotone_leading", 1e-10);
    Tracker trail("angle_monotone_trailing", 1e-10);
    angle_monotonicity(seed, lead, trail);
    out.properties.push_back(lead.done());
    out.properties.push_back(trail.done());
  } else if (name == "shift") {
    Tracker fraction("shift_improved_fraction", 0.95);
    Tracker median("shift_median_factor", 2.0);
    shift_improvement(seed, fraction, median);
    out.properties.push_back(fraction.done());
    out.properties.push_back(median.done());
    out.properties.push_back(shift_exact_trailing(seed));
    out.properties.push_back(shift_dense_agreement(seed));
  } else {
    throw std::invalid_argument("unknown verification suite: " + name);
  }
  return out;
}

std::vector<SuiteResult> run(const std::string& which, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  if (which == "all") {
    for (const std::string& name : suite_names()) out.push_back(run_suite(name, seed));
  } else {
    out.push_back(run_suite(which, seed));
  }
  return out;
}

bool all_passed(const std::vector<SuiteResult>& results) {
  for (const SuiteResult& s : results) {
    if (!s.passed()) return false;
  }
  return true;
}

std::string json_summary(const std::vector<SuiteResult>& results) {
  nlohmann::json root;
  root["passed"] = all_passed(results);
  root["suites"] = nlohmann::json::array();
  for (const SuiteResult& s : results) {
    nlohmann::json js;
    js["suite"] = s.suite;
    js["passed"] = s.passed();
    js["properties"] = nlohmann::json::array();
    for (const PropertyResult& p : s.properties) {
      nlohmann::json jp;
      jp["name"] = p.name;
      jp["trials"] = p.trials;
      jp["tolerance"] = p.tolerance;
      jp["max_violation"] = std::isinf(p.max_violation) ? -1e308 : p.max_violation;
      jp["passed"] = p.passed;
      jp["worst"] = p.worst;
      js["properties"].push_back(jp);
    }
    root["suites"].push_back(js);
  }
  return root.dump(2) + "\n";
}

}  // namespace psdeig::verify
