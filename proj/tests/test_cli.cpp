#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "csv_compare.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "psdeig_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return {};
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// `prefix` lets a case set environment variables shell-style
RunResult run_cli(const std::string& args, const fs::path& dir, const std::string& prefix = {}) {
  const fs::path out_file = dir / "stdout.txt";
  const fs::path err_file = dir / "stderr.txt";
  std::string cmd = prefix + "\"" + PSDEIG_CLI_PATH + "\" " + args + " > \"" +
                    out_file.string() + "\" 2> \"" + err_file.string() + "\"";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

int count_files(const fs::path& dir, const std::string& extension) {
  int n = 0;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == extension) ++n;
  return n;
}

}  // namespace

TEST_CASE("gen prints spectrum landmarks and writes a deterministic file") {
  fs::path d1 = scratch("gen1");
  fs::path d2 = scratch("gen2");
  const std::string flags = "gen --n 30 --k 5 --seed 7 --spectrum exponential"
                            " --lambda-min 1e-6 --out ";
  RunResult r1 = run_cli(flags + "\"" + d1.string() + "\"", d1);
  CHECK(r1.exit_code == 0);
  CHECK(r1.out.find("lambda_1") != std::string::npos);
  CHECK(r1.out.find("lambda_k") != std::string::npos);
  CHECK(r1.out.find("wrote") != std::string::npos);
  REQUIRE(fs::exists(d1 / "operator_seed7.psdo"));

  RunResult r2 = run_cli(flags + "\"" + d2.string() + "\"", d2);
  CHECK(r2.exit_code == 0);
  CHECK(slurp(d1 / "operator_seed7.psdo") == slurp(d2 / "operator_seed7.psdo"));
}

TEST_CASE("extract emits a csv table") {
  fs::path dir = scratch("extract");
  RunResult gen = run_cli("gen --n 24 --k 6 --seed 7 --out \"" + dir.string() + "\"", dir);
  REQUIRE(gen.exit_code == 0);

  RunResult from_file = run_cli("extract --matrix \"" + (dir / "operator_seed7.psdo").string() +
                                    "\" --k 6 --seed 7 --subspace rangefinder --out \"" +
                                    dir.string() + "\"",
                                dir);
  CHECK(from_file.exit_code == 0);
  const std::string csv = slurp(dir / "extract_seed7.csv");
  REQUIRE(!csv.empty());
  CHECK(csv.rfind("# psdeig extraction report", 0) == 0);
  CHECK(csv.find("i,exact,rr,svd,nys,") != std::string::npos);
  int data_rows = 0;
  for (const std::string& line : psdeig::testing::csv_lines(csv, true))
    if (!line.empty() && line[0] != '#' && line[0] != 'i') ++data_rows;
  CHECK(data_rows == 6);

  fs::path inline_dir = scratch("extract_inline");
  RunResult inline_run = run_cli(
      "extract --n 20 --k 4 --seed 3 --subspace epsilon --eps 0.1 --out \"" +
          inline_dir.string() + "\"",
      inline_dir);
  CHECK(inline_run.exit_code == 0);
  CHECK(fs::exists(inline_dir / "extract_seed3.csv"));
}

TEST_CASE("identical invocations reproduce the csv byte for byte") {
  fs::path d1 = scratch("repro1");
  fs::path d2 = scratch("repro2");
  const std::string flags = "extract --n 20 --k 5 --seed 11 --subspace rangefinder --out ";
  REQUIRE(run_cli(flags + "\"" + d1.string() + "\"", d1).exit_code == 0);
  REQUIRE(run_cli(flags + "\"" + d2.string() + "\"", d2).exit_code == 0);
  const std::string a = psdeig::testing::strip_timing(slurp(d1 / "extract_seed11.csv"));
  const std::string b = psdeig::testing::strip_timing(slurp(d2 / "extract_seed11.csv"));
  REQUIRE(!a.empty());
  CHECK(a == b);
}

TEST_CASE("experiment presets write tables and a readme") {
  fs::path dir = scratch("experiment");
  RunResult r = run_cli("experiment fig1 --n 24 --k 6 --seed 5 --trials 2 --out \"" +
                            dir.string() + "\"",
                        dir);
  CHECK(r.exit_code == 0);
  fs::path preset_dir = dir / "fig1";
  REQUIRE(fs::exists(preset_dir));
  CHECK(fs::exists(preset_dir / "README.txt"));
  CHECK(count_files(preset_dir, ".csv") >= 2);
  const std::string readme = slurp(preset_dir / "README.txt");
  CHECK(readme.find("err_rr") != std::string::npos);
}

TEST_CASE("trailing presets run the shift remedy end to end") {
  fs::path dir = scratch("experiment_shift");
  RunResult r = run_cli("experiment fig6 --n 40 --k 8 --seed 6 --out \"" + dir.string() + "\"",
                        dir);
  CHECK(r.exit_code == 0);
  fs::path preset_dir = dir / "fig6";
  REQUIRE(fs::exists(preset_dir));
  CHECK(count_files(preset_dir, ".csv") >= 2);
  bool saw_auto_shift = false;
  for (const auto& entry : fs::directory_iterator(preset_dir)) {
    if (entry.path().extension() != ".csv") continue;
    const std::string csv = slurp(entry.path());
    CHECK(csv.find("# mode=trailing") != std::string::npos);
    if (csv.find("# shift=auto") != std::string::npos) saw_auto_shift = true;
  }
  CHECK(saw_auto_shift);
}

TEST_CASE("verify runs a single suite") {
  fs::path dir = scratch("verify");
  RunResult r = run_cli("verify --suite identities --seed 11 --out \"" + dir.string() + "\"",
                        dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("identities") != std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
  const std::string json = slurp(dir / "verify_summary.json");
  REQUIRE(!json.empty());
  CHECK(json.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("bad arguments exit with the config error code") {
  fs::path dir = scratch("bad_args");
  CHECK(run_cli("extract --subspace bogus --out \"" + dir.string() + "\"", dir).exit_code == 2);
  CHECK(run_cli("frobnicate", dir).exit_code == 2);
  CHECK(run_cli("verify --suite nonsense", dir).exit_code == 2);
  RunResult bad_k = run_cli("gen --n 30 --k 50 --out \"" + dir.string() + "\"", dir);
  CHECK(bad_k.exit_code == 2);
  CHECK(bad_k.err.find("error") != std::string::npos);
}

TEST_CASE("config file values yield to explicit flags") {
  fs::path dir = scratch("config");
  fs::path cfg = dir / "run.ini";
  {
    std::ofstream out(cfg);
    out << "n=40\nk=4\nseed=9\nsubspace=rangefinder\n";
  }
  RunResult r = run_cli("extract --config \"" + cfg.string() + "\" --k 6 --out \"" +
                            dir.string() + "\"",
                        dir);
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir / "extract_seed9.csv");
  REQUIRE(!csv.empty());
  CHECK(csv.find("# n=40\n") != std::string::npos);   // from the file
  CHECK(csv.find("# k=6\n") != std::string::npos);    // flag wins
}

TEST_CASE("the output directory can come from the environment") {
  fs::path dir = scratch("env_out");
  RunResult r = run_cli("gen --n 12 --k 3 --seed 1", dir,
                        "PSDEIG_OUT_DIR=\"" + dir.string() + "\" ");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "operator_seed1.psdo"));
}
