#include <doctest.h>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "csv_compare.hpp"
#include "psdeig/report.hpp"
#include "test_support.hpp"

using namespace psdeig;
using psdeig::testing::spec_of;

namespace {

std::string render(const ExtractionReport& rep) {
  std::ostringstream out;
  write_csv(out, rep);
  return out.str();
}

}  // namespace

TEST_CASE("csv header lists the full column set") {
  CHECK(csv_header() ==
        "i,exact,rr,svd,nys,err_rr,err_svd,err_nys,bound_rr,bound_svd,bound_nys,"
        "alpha_i,sin_rr,sin_svd_qv,sin_svd_u,sin_nys");
}

TEST_CASE("extraction report covers every method by default") {
  PsdOperator a = make_psd(spec_of(25, SpectrumKind::exponential, 1e-8), 13);
  OrthonormalBasis q = randomized_rangefinder(a, 5, 14);
  ExtractionReport rep = run_extraction(a, q, RunOptions{});
  CHECK(rep.n == 25);
  CHECK(rep.k == 5);
  CHECK(rep.mode == IndexMode::leading);
  CHECK(rep.stats.size() == 4);
  REQUIRE(rep.rows.size() == 5);
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    const ReportRow& row = rep.rows[i];
    CHECK(row.i == static_cast<Index>(i) + 1);
    REQUIRE(row.rr.has_value());
    REQUIRE(row.svd.has_value());
    REQUIRE(row.nys.has_value());
    CHECK(*row.err_rr >= 0.0);
    CHECK(*row.err_svd >= 0.0);
    CHECK(*row.err_nys >= 0.0);
    CHECK(row.sin_svd_qv.has_value());
    CHECK(row.sin_svd_u.has_value());
    CHECK(!row.bound_rr.has_value());  // no alignment parameter, no bounds
  }
  for (size_t i = 0; i + 1 < rep.rows.size(); ++i)
    CHECK(rep.rows[i].exact >= rep.rows[i + 1].exact);
}

TEST_CASE("bounds appear only for aligned bases in leading mode") {
  PsdOperator a = make_psd(spec_of(30, SpectrumKind::exponential, 1e-10), 15);
  OrthonormalBasis aligned = epsilon_aligned_basis(a, 5, 0.1, 16);
  ExtractionReport rep = run_extraction(a, aligned, RunOptions{});
  for (const ReportRow& row : rep.rows) {
    REQUIRE(row.bound_rr.has_value());
    REQUIRE(row.bound_svd.has_value());
    REQUIRE(row.alpha.has_value());
    CHECK(*row.bound_rr == *rep.rows[0].bound_rr);  // uniform over i
    CHECK(row.bound_nys.has_value() == (*row.alpha > 0.0));
  }

  ExtractionReport canon = run_extraction(a, canonical_basis(30, 5), RunOptions{});
  for (const ReportRow& row : canon.rows) CHECK(!row.bound_rr.has_value());

  RunOptions shifted;
  shifted.shift = ShiftMode::automatic;
  ExtractionReport trail = run_extraction(a, aligned, shifted);
  CHECK(trail.mode == IndexMode::trailing);
  for (const ReportRow& row : trail.rows) CHECK(!row.bound_rr.has_value());
}

TEST_CASE("report respects a method subset") {
  PsdOperator a = make_psd(spec_of(20, SpectrumKind::linear, 0.05), 17);
  OrthonormalBasis q = randomized_rangefinder(a, 4, 18);

  RunOptions only_rr;
  only_rr.methods = {Method::rr};
  ExtractionReport rep = run_extraction(a, q, only_rr);
  CHECK(rep.stats.size() == 1);
  for (const ReportRow& row : rep.rows) {
    CHECK(row.rr.has_value());
    CHECK(!row.svd.has_value());
    CHECK(!row.nys.has_value());
    CHECK(!row.sin_svd_qv.has_value());
  }

  RunOptions only_u;
  only_u.methods = {Method::svd_u};
  ExtractionReport urep = run_extraction(a, q, only_u);
  for (const ReportRow& row : urep.rows) {
    CHECK(row.svd.has_value());
    CHECK(row.sin_svd_u.has_value());
    CHECK(!row.sin_svd_qv.has_value());
    CHECK(!row.rr.has_value());
  }
}

TEST_CASE("report validates its options") {
  PsdOperator a = make_psd(spec_of(12, SpectrumKind::linear, 0.1), 19);
  OrthonormalBasis q = canonical_basis(12, 3);
  RunOptions bad_method;
  bad_method.methods = {Method::rr_shifted};
  CHECK_THROWS_AS(run_extraction(a, q, bad_method), std::invalid_argument);
  RunOptions no_gamma;
  no_gamma.shift = ShiftMode::fixed;
  CHECK_THROWS_AS(run_extraction(a, q, no_gamma), std::invalid_argument);
}

TEST_CASE("shifted report back-converts trailing values") {
  PsdOperator a = make_psd(spec_of(30, SpectrumKind::algebraic, 1e-8), 23);
  OrthonormalBasis q = perturbed_trailing_basis(a, 4, 0.01, 24);
  RunOptions opt;
  opt.shift = ShiftMode::fixed;
  opt.gamma = a.eigenvalues()(0);
  ExtractionReport rep = run_extraction(a, q, opt);
  CHECK(rep.mode == IndexMode::trailing);
  REQUIRE(rep.gamma.has_value());
  CHECK(*rep.gamma == a.eigenvalues()(0));
  for (const MethodStats& st : rep.stats) CHECK(is_shifted(st.method));
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].exact ==
          a.eigenvalues()(30 - 4 + static_cast<Index>(i)));
    CHECK(*rep.rows[i].err_rr >= 0.0);
  }
}

TEST_CASE("csv output is structured and reproducible") {
  PsdOperator a = make_psd(spec_of(18, SpectrumKind::exponential, 1e-6), 29);
  OrthonormalBasis q = epsilon_aligned_basis(a, 4, 0.05, 30);
  ExtractionReport rep = run_extraction(a, q, RunOptions{});
  std::string text = render(rep);

  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "# psdeig extraction report");
  int header_count = 0;
  int data_count = 0;
  while (std::getline(in, line)) {
    if (line == csv_header()) {
      ++header_count;
      continue;
    }
    if (line.rfind("#", 0) == 0) continue;
    ++data_count;
    CHECK(psdeig::testing::split_fields(line, ',').size() == 16);
  }
  CHECK(header_count == 1);
  CHECK(data_count == 4);

  // same inputs, fresh run: identical except wall-clock metadata
  ExtractionReport again = run_extraction(a, q, RunOptions{});
  CHECK(psdeig::testing::strip_timing(render(again)) == psdeig::testing::strip_timing(text));
}

TEST_CASE("golden extraction table stays stable") {
  PsdOperator a = make_psd(spec_of(16, SpectrumKind::exponential, 1e-6), 42);
  OrthonormalBasis q = epsilon_aligned_basis(a, 4, 0.1, 43);
  RunOptions opt;
  opt.kind_label = SpectrumKind::exponential;
  std::string text = render(run_extraction(a, q, opt));

  std::ifstream golden(std::string(PSDEIG_TEST_DATA_DIR) + "/golden_extract.csv",
                       std::ios::binary);
  REQUIRE_MESSAGE(golden.good(), "golden table missing from test data directory");
  std::string want((std::istreambuf_iterator<char>(golden)), std::istreambuf_iterator<char>());

  psdeig::testing::CsvComparison cmp = psdeig::testing::compare_reports(text, want, 1e-12);
  CHECK_MESSAGE(cmp.ok, cmp.message);
}
