#include "psdeig/report.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

namespace psdeig {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

ExtractionReport run_extraction(const PsdOperator& a, const OrthonormalBasis& q,
                                const RunOptions& opt) {
  const Index k = q.q.cols();
  std::vector<Method> methods = opt.methods;
  if (methods.empty())
    methods = {Method::rr, Method::svd_qv, Method::svd_u, Method::nys};
  for (Method m : methods)
    if (is_shifted(m))
      throw std::invalid_argument("run_extraction: select base methods; shift is a mode");
  if (opt.shift == ShiftMode::fixed && !opt.gamma)
    throw std::invalid_argument("run_extraction: fixed shift requires gamma");

  ExtractionReport rep;
  rep.n = a.dim();
  rep.k = k;
  rep.kind = opt.kind_label;
  rep.subspace = q.provenance;
  rep.seed = q.seed;
  rep.eps = q.eps;
  rep.shift = opt.shift;
  rep.chol_tol = opt.chol_tol.value_or(default_chol_tol(a.dim()));
  rep.m_norm = q.m_norm;
  rep.n_norm = q.n_norm;
  rep.mode = opt.mode.value_or(opt.shift != ShiftMode::off ||
                                       q.provenance == BasisKind::perturbed_trailing
                                   ? IndexMode::trailing
                                   : IndexMode::leading);

  const bool shifted = opt.shift != ShiftMode::off;
  std::map<Method, EigenpairApprox> results;
  for (Method m : methods) {
    const auto t0 = std::chrono::steady_clock::now();
    EigenpairApprox e =
        shifted ? shifted_trailing_extract(a, q, m, opt.gamma, rep.chol_tol)
                : (m == Method::rr      ? rayleigh_ritz(a, q)
                   : m == Method::nys   ? nystrom_extract(a, q, rep.chol_tol)
                                        : svd_extract(a, q, m));
    MethodStats st;
    st.method = e.method;
    st.seconds = seconds_since(t0);
    st.residual = e.residual_norm;
    st.core_rank = e.core_rank;
    st.negative_backconversion = e.negative_backconversion;
    rep.stats.push_back(st);
    if (e.shift_gamma) rep.gamma = e.shift_gamma;
    results.emplace(m, std::move(e));
  }

  // value/error columns: svd column prefers the QV run when both variants ran
  const EigenpairApprox* rr = results.count(Method::rr) ? &results.at(Method::rr) : nullptr;
  const EigenpairApprox* svd_qv =
      results.count(Method::svd_qv) ? &results.at(Method::svd_qv) : nullptr;
  const EigenpairApprox* svd_u =
      results.count(Method::svd_u) ? &results.at(Method::svd_u) : nullptr;
  const EigenpairApprox* svd_vals = svd_qv ? svd_qv : svd_u;
  const EigenpairApprox* nys = results.count(Method::nys) ? &results.at(Method::nys) : nullptr;

  const bool with_bounds = rep.mode == IndexMode::leading && q.eps.has_value() &&
                           q.provenance == BasisKind::epsilon_aligned && k < a.dim();
  std::optional<BoundSet> bounds;
  if (with_bounds && *q.eps > 0.0) bounds = bound_set(a.eigenvalues(), k, *q.eps);

  const Index off = rep.mode == IndexMode::leading ? 0 : a.dim() - k;
  std::map<Method, Vector> errs, sines;
  for (const auto& [m, e] : results) {
    errs.emplace(m, eigen_errors(a.eigenvalues(), e, rep.mode));
    sines.emplace(m, vector_angle_errors(a.eigenvectors(), e, rep.mode));
  }

  rep.rows.resize(static_cast<size_t>(k));
  for (Index i = 0; i < k; ++i) {
    ReportRow& row = rep.rows[static_cast<size_t>(i)];
    row.i = i + 1;
    row.exact = a.eigenvalues()(off + i);
    if (rr) {
      row.rr = rr->values(i);
      row.err_rr = errs.at(Method::rr)(i);
      row.sin_rr = sines.at(Method::rr)(i);
    }
    if (svd_vals) {
      row.svd = svd_vals->values(i);
      row.err_svd = (svd_qv ? errs.at(Method::svd_qv) : errs.at(Method::svd_u))(i);
    }
    if (svd_qv) row.sin_svd_qv = sines.at(Method::svd_qv)(i);
    if (svd_u) row.sin_svd_u = sines.at(Method::svd_u)(i);
    if (nys) {
      row.nys = nys->values(i);
      row.err_nys = errs.at(Method::nys)(i);
      row.sin_nys = sines.at(Method::nys)(i);
    }
    if (bounds) {
      row.bound_rr = bounds->bound_rr;
      row.bound_svd = bounds->bound_svd[static_cast<size_t>(i)];
      if (bounds->bound_nys[static_cast<size_t>(i)])
        row.bound_nys = *bounds->bound_nys[static_cast<size_t>(i)];
      row.alpha = bounds->alpha[static_cast<size_t>(i)];
    }
  }
  return rep;
}

std::string csv_header() {
  return "i,exact,rr,svd,nys,err_rr,err_svd,err_nys,bound_rr,bound_svd,bound_nys,"
         "alpha_i,sin_rr,sin_svd_qv,sin_svd_u,sin_nys";
}

void write_csv(std::ostream& os, const ExtractionReport& rep) {
  os << "# psdeig extraction report\n";
  os << "# n=" << rep.n << "\n";
  os << "# k=" << rep.k << "\n";
  os << "# spectrum=" << to_string(rep.kind) << "\n";
  os << "# subspace=" << to_string(rep.subspace) << "\n";
  os << "# eps=" << fmt_opt(rep.eps) << "\n";
  os << "# seed=" << rep.seed << "\n";
  os << "# mode=" << (rep.mode == IndexMode::leading ? "leading" : "trailing") << "\n";
  os << "# shift="
     << (rep.shift == ShiftMode::off ? "off"
                                     : rep.shift == ShiftMode::automatic ? "auto" : "fixed")
     << "\n";
  os << "# gamma=" << fmt_opt(rep.gamma) << "\n";
  os << "# chol_tol=" << fmt(rep.chol_tol) << "\n";
  os << "# m_norm=" << fmt_opt(rep.m_norm) << "\n";
  os << "# n_norm=" << fmt_opt(rep.n_norm) << "\n";
  for (const MethodStats& st : rep.stats) {
    os << "# time_" << to_string(st.method) << "=" << fmt(st.seconds) << "\n";
    os << "# residual_" << to_string(st.method) << "=" << fmt(st.residual) << "\n";
    if (st.method == Method::nys || st.method == Method::nys_shifted)
      os << "# core_rank=" << st.core_rank << "\n";
    if (st.negative_backconversion)
      os << "# negative_backconversion_" << to_string(st.method) << "=1\n";
  }
  os << csv_header() << "\n";
  for (const ReportRow& r : rep.rows) {
    os << r.i << ',' << fmt(r.exact) << ',' << fmt_opt(r.rr) << ',' << fmt_opt(r.svd) << ','
       << fmt_opt(r.nys) << ',' << fmt_opt(r.err_rr) << ',' << fmt_opt(r.err_svd) << ','
       << fmt_opt(r.err_nys) << ',' << fmt_opt(r.bound_rr) << ',' << fmt_opt(r.bound_svd) << ','
       << fmt_opt(r.bound_nys) << ',' << fmt_opt(r.alpha) << ',' << fmt_opt(r.sin_rr) << ','
       << fmt_opt(r.sin_svd_qv) << ',' << fmt_opt(r.sin_svd_u) << ',' << fmt_opt(r.sin_nys)
       << "\n";
  }
}

}  // namespace psdeig
