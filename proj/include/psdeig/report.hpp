#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "psdeig/bounds.hpp"

namespace psdeig {

enum class ShiftMode { off, automatic, fixed };

// One CSV row; empty optionals serialize as empty fields.
struct ReportRow {
  Index i = 0;  // 1-based
  double exact = 0.0;
  std::optional<double> rr, svd, nys;
  std::optional<double> err_rr, err_svd, err_nys;
  std::optional<double> bound_rr, bound_svd, bound_nys, alpha;
  std::optional<double> sin_rr, sin_svd_qv, sin_svd_u, sin_nys;
};

struct MethodStats {
  Method method = Method::rr;  // actual tag (shifted when a shift ran)
  double seconds = 0.0;
  double residual = 0.0;
  Index core_rank = 0;
  bool negative_backconversion = false;
};

struct ExtractionReport {
  Index n = 0, k = 0;
  SpectrumKind kind = SpectrumKind::exponential;
  BasisKind subspace = BasisKind::external;
  std::uint64_t seed = 0;
  std::optional<double> eps;
  IndexMode mode = IndexMode::leading;
  ShiftMode shift = ShiftMode::off;
  std::optional<double> gamma;
  double chol_tol = 0.0;
  std::optional<double> m_norm, n_norm;
  std::vector<MethodStats> stats;
  std::vector<ReportRow> rows;
};

struct RunOptions {
  // base methods to run (rr / svd_qv / svd_u / nys); empty means all four
  std::vector<Method> methods;
  ShiftMode shift = ShiftMode::off;
  std::optional<double> gamma;            // required for ShiftMode::fixed
  std::optional<double> chol_tol;         // absent: default_chol_tol(n)
  std::optional<IndexMode> mode;          // default: trailing iff shifted or trailing basis
  SpectrumKind kind_label = SpectrumKind::explicit_list;  // metadata only
};

// Runs the selected extractions on one (operator, basis) pair and assembles
// the per-index table. Bounds are filled only for leading-mode runs on
// epsilon-aligned bases, where the theory defines them.
ExtractionReport run_extraction(const PsdOperator& a, const OrthonormalBasis& q,
                                const RunOptions& opt);

// Header: i,exact,rr,svd,nys,err_rr,err_svd,err_nys,bound_rr,bound_svd,
//         bound_nys,alpha_i,sin_rr,sin_svd_qv,sin_svd_u,sin_nys
// preceded by '# key=value' metadata lines. Numbers carry 17 significant digits.
void write_csv(std::ostream& os, const ExtractionReport& report);
std::string csv_header();

}  // namespace psdeig
