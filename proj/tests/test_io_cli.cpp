#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "tdx/classify.hpp"
#include "tdx/matrix_io.hpp"

using namespace tdx;

namespace {

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "tdx_test_io";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

// Runs the CLI binary named by the TDX_CLI environment variable.
RunResult run_cli(const std::string& args) {
  const char* cli = std::getenv("TDX_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "TDX_CLI must point at the tdx binary");
  const auto out_file = temp_dir() / "stdout.txt";
  const std::string cmd =
      std::string(cli) + " " + args + " > " + out_file.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  r.stdout_text = slurp(out_file);
  return r;
}

}  // namespace

TEST_CASE("transducer file round trip and validation") {
  const auto dir = temp_dir();

  const TwoModeTransform t = beam_splitter(0.37);
  const auto path = dir / "bs.tdx";
  write_transducer_file(path.string(), t, "test matrix");
  const TransducerFile loaded = read_transducer_file(path.string());
  CHECK(loaded.label == "test matrix");
  CHECK((loaded.transform.matrix() - t.matrix()).cwiseAbs().maxCoeff() == 0.0);

  // Comments and blank lines are tolerated.
  const TransducerFile parsed = parse_transducer_text(
      "# header comment\n"
      "tdx-matrix v1\n"
      "label swap # trailing comment\n"
      "0 0 1 0\n\n"
      "0 0 0 1\n"
      "1 0 0 0\n"
      "0 1 0 0\n");
  CHECK(parsed.label == "swap");
  CHECK(parsed.transform.block(0, 1).isApprox(QuadMatrix::Identity()));

  // CRLF input parses the same as LF.
  const TransducerFile crlf = parse_transducer_text(
      "tdx-matrix v1\r\n0 0 1 0\r\n0 0 0 1\r\n1 0 0 0\r\n0 1 0 0\r\n");
  CHECK(crlf.transform.block(1, 0).isApprox(QuadMatrix::Identity()));

  CHECK_THROWS_AS(parse_transducer_text("tdx-matrix v1\n1 2 3\n"), Error);
  CHECK_THROWS_AS(parse_transducer_text("wrong header\n"), Error);
  // 16 numbers that are not symplectic
  CHECK_THROWS_AS(
      parse_transducer_text("tdx-matrix v1\n"
                            "2 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"),
      NotSymplectic);
}

TEST_CASE("format_sig12") {
  CHECK(format_sig12(0.5) == "0.5");
  CHECK(format_sig12(19.9317290945) == "19.9317290945");
  CHECK(format_sig12(1.0 / 0.0) == "inf");
}

TEST_CASE("cli classify") {
  const auto dir = temp_dir();
  const auto swap_path = dir / "swap.tdx";
  write_transducer_file(swap_path.string(), swap_gate());

  const RunResult res = run_cli("classify " + swap_path.string());
  CHECK(res.exit_code == 0);
  CHECK(res.stdout_text.find("[[2,0]]") != std::string::npos);
  CHECK(res.stdout_text.find("SWAP") != std::string::npos);
  CHECK(res.stdout_text.find("chi: 1") != std::string::npos);

  const auto bs_path = dir / "bs45.tdx";
  write_transducer_file(bs_path.string(), beam_splitter(M_PI / 4.0));
  const RunResult bs = run_cli("classify " + bs_path.string());
  CHECK(bs.exit_code == 0);
  CHECK(bs.stdout_text.find("[[2,2]]") != std::string::npos);
  CHECK(bs.stdout_text.find("chi: 0.5") != std::string::npos);

  // Non-symplectic file: validation exit code plus residual diagnostics.
  const auto bad_path = dir / "bad.tdx";
  {
    std::ofstream out(bad_path);
    out << "tdx-matrix v1\n2 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";
  }
  CHECK(run_cli("classify " + bad_path.string()).exit_code == 2);

  CHECK(run_cli("classify " + (dir / "missing.tdx").string()).exit_code == 2);
}

TEST_CASE("cli correct") {
  const auto dir = temp_dir();
  const auto bs_path = dir / "bs20.tdx";
  write_transducer_file(bs_path.string(), beam_splitter(M_PI / 20.0));

  const auto comp_path = dir / "composite.tdx";
  const RunResult res = run_cli("correct " + bs_path.string() + " " +
                                bs_path.string() + " --direction 1to2 " +
                                "--composite-out " + comp_path.string());
  CHECK(res.exit_code == 0);
  const double cot2 = 1.0 / std::pow(std::tan(M_PI / 20.0), 2);
  CHECK(res.stdout_text.find("gamma: " + format_sig12(cot2)) !=
        std::string::npos);
  CHECK(res.stdout_text.find("composite_class: [[2,1]]") != std::string::npos);

  // The written composite is itself a valid, reloadable transducer.
  const TransducerFile comp = read_transducer_file(comp_path.string());
  CHECK(rank2(comp.transform.block(1, 1)) <= 1);

  const auto id_path = dir / "id.tdx";
  write_transducer_file(id_path.string(), identity_gate());
  CHECK(run_cli("correct " + id_path.string() + " " + id_path.string() +
                " --direction 1to2")
            .exit_code == 3);
}

TEST_CASE("cli six-pass") {
  CHECK(run_cli("six-pass 1 2 1").exit_code == 0);
  CHECK(run_cli("six-pass 1 1 1").exit_code == 0);
  CHECK(run_cli("six-pass 0 1 1").exit_code == 64);
}

TEST_CASE("cli sweeps are deterministic across runs and thread counts") {
  const std::string sweep_args =
      "sweep-lossy --start 0 --stop 0.2 --count 9 --mode both";
  const RunResult a = run_cli(sweep_args + " --threads 1");
  const RunResult b = run_cli(sweep_args + " --threads 1");
  const RunResult c = run_cli(sweep_args + " --threads 4");
  CHECK(a.exit_code == 0);
  CHECK(a.stdout_text == b.stdout_text);
  CHECK(a.stdout_text == c.stdout_text);
  CHECK(a.stdout_text.rfind("kappa_over_g,mode,Nq,Np,Nbar_min,tau_C,n_C,Q\n",
                            0) == 0);
  // one header + 9 rows per mode
  CHECK(std::count(a.stdout_text.begin(), a.stdout_text.end(), '\n') == 19);

  // A log-spaced sweep with count=2 emits exactly its two endpoints.
  const RunResult log2 = run_cli(
      "sweep-lossy --start 0.01 --stop 0.1 --count 2 --log --mode standard");
  CHECK(log2.exit_code == 0);
  CHECK(std::count(log2.stdout_text.begin(), log2.stdout_text.end(), '\n') == 3);
  CHECK(log2.stdout_text.find("\n0.01,") != std::string::npos);
  CHECK(log2.stdout_text.find("\n0.1,") != std::string::npos);

  // Usage and validation errors.
  CHECK(run_cli("sweep-lossy --start 0.2 --stop 0.1 --count 5").exit_code == 2);
  CHECK(run_cli("sweep-lossy --count 1").exit_code == 2);
  CHECK(run_cli("bogus-subcommand").exit_code != 0);

  // A failing command never leaves a partial output file behind.
  const auto reject_path = temp_dir() / "never_written.csv";
  std::filesystem::remove(reject_path);
  CHECK(run_cli("sweep-lossy --count 1 --out " + reject_path.string())
            .exit_code == 2);
  CHECK_FALSE(std::filesystem::exists(reject_path));

  // Readout direction works across the grid, including the lossless end.
  const RunResult ro = run_cli(
      "sweep-lossy --start 0 --stop 0.1 --count 3 --mode interference "
      "--direction readout");
  CHECK(ro.exit_code == 0);
  CHECK(ro.stdout_text.find("\n0,interference,") != std::string::npos);
  CHECK(ro.stdout_text.find(",1,0,inf\n") != std::string::npos);  // kappa = 0
  // readout has no standard baseline
  CHECK(run_cli("sweep-lossy --count 3 --direction readout --mode standard")
            .exit_code == 2);
}

TEST_CASE("cli code-fidelity") {
  const RunResult res = run_cli(
      "code-fidelity --start 0 --stop 0.4 --count 2 --codes cat --alpha 2 "
      "--n-trunc 40");
  CHECK(res.exit_code == 0);
  CHECK(res.stdout_text.rfind("sigma,fbar_cat,n_trunc\n", 0) == 0);
  CHECK(std::count(res.stdout_text.begin(), res.stdout_text.end(), '\n') == 3);
  // sigma = 0 row reports unit fidelity
  CHECK(res.stdout_text.find("\n0,1,") != std::string::npos);

  CHECK(run_cli("code-fidelity --start 0 --stop 1 --count 2 --codes cat")
            .exit_code == 64);  // --alpha is required

  // Truncation default comes from the environment when not given explicitly.
  setenv("TDX_FOCK_TRUNCATION", "44", 1);
  const RunResult env_run = run_cli(
      "code-fidelity --start 0 --stop 0.2 --count 2 --codes cat --alpha 2");
  unsetenv("TDX_FOCK_TRUNCATION");
  CHECK(env_run.exit_code == 0);
  CHECK(env_run.stdout_text.find(",44\n") != std::string::npos);
}
