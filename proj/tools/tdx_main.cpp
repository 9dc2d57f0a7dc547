// Command-line front end: classify transducer matrices, synthesize
// interference correction plans, and emit CSV tables for the lossy-transfer
// and code-fidelity sweeps.
//
// Exit codes: 0 success, 2 validation error (bad file / non-symplectic /
// out-of-domain value), 3 domain error (uncorrectable input), 64 usage.

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tdx/classify.hpp"
#include "tdx/codes.hpp"
#include "tdx/diagonalize.hpp"
#include "tdx/interference.hpp"
#include "tdx/lossy.hpp"
#include "tdx/matrix_io.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitDomain = 3;
constexpr int kExitUsage = 64;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    std::cout.flush();
  } else {
    tdx::write_text_atomic(out_path, content);
  }
}

struct SweepGrid {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool log_spaced = false;

  std::vector<double> points() const {
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i) {
      const double f = count == 1 ? 0.0 : double(i) / (count - 1);
      xs[i] = log_spaced ? start * std::pow(stop / start, f)
                         : start + (stop - start) * f;
    }
    return xs;
  }

  void validate() const {
    if (count < 2) throw tdx::Error("sweep: count must be >= 2");
    if (!(start < stop)) throw tdx::Error("sweep: need start < stop");
    if (log_spaced && start <= 0.0) {
      throw tdx::Error("sweep: log spacing needs start > 0");
    }
  }
};

// Evaluates one row per grid point, optionally across threads; rows are
// assembled in grid order so the output bytes never depend on scheduling.
std::vector<std::string> map_rows(
    const std::vector<double>& xs, int threads,
    const std::function<std::string(double)>& row_fn) {
  std::vector<std::string> rows(xs.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const int n_threads = std::max(1, threads);
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= xs.size()) return;
      try {
        rows[i] = row_fn(xs[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string classification_report(const tdx::TransducerFile& file) {
  const tdx::Classification cls = tdx::classify(file.transform);
  const tdx::CanonicalGate gate = tdx::canonical_name(file.transform);
  std::ostringstream out;
  if (!file.label.empty()) out << "label: " << file.label << "\n";
  out << "class: [[" << cls.n_transmitted << "," << cls.n_reflected << "]]\n";
  out << "canonical: " << gate.name() << "\n";
  out << "parameter: " << tdx::format_sig12(gate.parameter) << "\n";
  out << "chi: " << tdx::format_sig12(cls.chi) << "\n";
  out << "margin: " << tdx::format_sig12(cls.margin) << "\n";
  if (cls.boundary_warning) out << "warning: chi lies on a subclass boundary\n";
  return out.str();
}

int cmd_classify(const std::string& path, const std::string& out_path) {
  tdx::TransducerFile file;
  try {
    file = tdx::read_transducer_file(path);
  } catch (const tdx::NotSymplectic& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const tdx::Error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }
  emit(out_path, classification_report(file));
  return 0;
}

int cmd_correct(const std::string& path_i, const std::string& path_iii,
                const std::string& direction, double epsilon, double squeeze_r,
                const std::string& out_path, const std::string& composite_out) {
  tdx::TransducerFile file_i, file_iii;
  try {
    file_i = tdx::read_transducer_file(path_i);
    file_iii = tdx::read_transducer_file(path_iii);
  } catch (const tdx::Error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }
  const tdx::Direction dir = direction == "2to1" ? tdx::Direction::TwoToOne
                                                 : tdx::Direction::OneToTwo;
  tdx::CorrectionPlan plan;
  try {
    plan = tdx::correct(file_i.transform, file_iii.transform, dir);
  } catch (const tdx::Uncorrectable& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const tdx::Error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }

  const tdx::FinishingStep step =
      dir == tdx::Direction::TwoToOne
          ? tdx::finish_with_squeezing(plan, squeeze_r)
          : tdx::finish_with_homodyne(plan, epsilon);

  std::ostringstream out;
  out << "gamma: " << tdx::format_sig12(plan.gamma) << "\n";
  out << "already_matched: " << (plan.already_matched ? "yes" : "no") << "\n";
  out << "composite_class: [[" << plan.resulting_class.n_transmitted << ","
      << plan.resulting_class.n_reflected << "]]\n";
  out << "residual_eta: " << tdx::format_sig12(plan.residual_eta) << "\n";
  out << "finishing: "
      << (step.kind == tdx::FinishingStep::Kind::InjectSqueezing
              ? "inject-squeezing"
              : "homodyne-feedforward")
      << "\n";
  if (step.kind == tdx::FinishingStep::Kind::InjectSqueezing) {
    out << "squeeze_r: " << tdx::format_sig12(step.squeeze_r) << "\n";
  } else {
    out << "eta_D: " << tdx::format_sig12(step.eta_d) << "\n";
    out << "epsilon: " << tdx::format_sig12(step.epsilon) << "\n";
  }
  out << "residual_sigma: " << tdx::format_sig12(step.residual_sigma) << "\n";
  emit(out_path, out.str());
  if (!composite_out.empty()) {
    tdx::write_transducer_file(composite_out, plan.composite, "composite");
  }
  return 0;
}

int cmd_sweep_lossy(const SweepGrid& grid, const std::string& mode,
                    const std::string& direction, double g, double tau,
                    int threads, const std::string& out_path) {
  grid.validate();
  std::vector<std::string> modes;
  if (mode == "both") {
    modes = {"interference", "standard"};
  } else {
    modes = {mode};
  }

  auto row = [&](double kappa_over_g, const std::string& m) {
    tdx::NoiseReport rep;
    if (direction == "readout") {
      if (m == "standard") {
        throw tdx::Error("sweep-lossy: readout direction has no standard mode");
      }
      rep = tdx::readout_metrics(g, kappa_over_g * g, tau);
    } else {
      rep = tdx::writein_metrics(g, kappa_over_g * g, tau,
                                 m == "standard"
                                     ? tdx::TransferScheme::Standard
                                     : tdx::TransferScheme::Interference);
    }
    std::ostringstream line;
    line << tdx::format_sig12(kappa_over_g) << "," << m << ","
         << tdx::format_sig12(rep.n_q) << "," << tdx::format_sig12(rep.n_p)
         << "," << tdx::format_sig12(rep.nbar_min) << ","
         << tdx::format_sig12(rep.tau_c) << "," << tdx::format_sig12(rep.n_c)
         << "," << tdx::format_sig12(rep.q_capacity);
    return line.str();
  };

  std::ostringstream csv;
  csv << "kappa_over_g,mode,Nq,Np,Nbar_min,tau_C,n_C,Q\n";
  for (const std::string& m : modes) {
    const std::vector<std::string> rows = map_rows(
        grid.points(), threads, [&](double x) { return row(x, m); });
    for (const std::string& r : rows) csv << r << "\n";
  }
  emit(out_path, csv.str());
  return 0;
}

int cmd_code_fidelity(const SweepGrid& grid, const std::vector<std::string>& codes,
                      double alpha, double squeeze_r, int n_trunc, int threads,
                      const std::string& out_path) {
  grid.validate();
  bool want_cat = false, want_squeezed = false, want_qsp = false;
  for (const std::string& c : codes) {
    if (c == "cat") {
      want_cat = true;
    } else if (c == "squeezed-cat") {
      want_squeezed = true;
    } else if (c == "qsp") {
      want_qsp = true;
    } else {
      throw CLI::ValidationError("--codes", "unknown code '" + c + "'");
    }
  }
  tdx::FidelityOptions opt;
  opt.n_trunc = n_trunc > 0 ? n_trunc : tdx::default_truncation();

  auto row = [&](double sigma) {
    std::ostringstream line;
    line << tdx::format_sig12(sigma);
    if (want_cat) {
      line << ","
           << tdx::format_sig12(
                  tdx::average_fidelity(sigma, tdx::CatCode{alpha}, opt));
    }
    if (want_squeezed) {
      line << ","
           << tdx::format_sig12(tdx::average_fidelity(
                  sigma, tdx::SqueezedCatCode{alpha, squeeze_r}, opt));
    }
    if (want_qsp) {
      line << "," << tdx::format_sig12(tdx::qsp_average_fidelity(sigma, alpha, opt));
    }
    line << "," << opt.n_trunc;
    return line.str();
  };

  std::ostringstream csv;
  csv << "sigma";
  if (want_cat) csv << ",fbar_cat";
  if (want_squeezed) csv << ",fbar_squeezed_cat";
  if (want_qsp) csv << ",fbar_qsp";
  csv << ",n_trunc\n";
  for (const std::string& r : map_rows(grid.points(), threads, row)) {
    csv << r << "\n";
  }
  emit(out_path, csv.str());
  return 0;
}

int cmd_six_pass(double eta1, double eta2, double eta3,
                 const std::string& out_path) {
  const tdx::SixPassResult res = tdx::six_pass_swap(eta1, eta2, eta3);
  std::ostringstream out;
  out << "gamma1: " << tdx::format_sig12(res.gamma1) << "\n";
  out << "gamma2: " << tdx::format_sig12(res.gamma2) << "\n";
  out << "deviation_from_swap: " << tdx::format_sig12(res.deviation_from_swap)
      << "\n";
  emit(out_path, out.str());
  return res.deviation_from_swap < 1e-8 ? 0 : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-mode bosonic transducer toolkit: classification, "
               "interference correction, lossy-transfer metrics, and "
               "bosonic-code fidelity sweeps"};
  app.require_subcommand(1);

  // classify
  auto* classify_cmd = app.add_subcommand(
      "classify", "Classify a transducer matrix file");
  std::string classify_path;
  std::string classify_out;
  classify_cmd->add_option("file", classify_path, "transducer matrix file")
      ->required();
  classify_cmd->add_option("--out", classify_out, "write report to file");

  // correct
  auto* correct_cmd = app.add_subcommand(
      "correct", "Build a two-pass interference correction plan");
  std::string correct_i, correct_iii, correct_dir = "1to2";
  std::string correct_out, composite_out;
  double correct_eps = 0.0, correct_r = 2.0;
  correct_cmd->add_option("first", correct_i, "pass-I matrix file")->required();
  correct_cmd->add_option("second", correct_iii, "pass-III matrix file")
      ->required();
  correct_cmd->add_option("--direction", correct_dir, "1to2 or 2to1")
      ->check(CLI::IsMember({"1to2", "2to1"}));
  correct_cmd->add_option("--epsilon", correct_eps,
                          "homodyne detection inefficiency (1to2)");
  correct_cmd->add_option("--squeeze", correct_r,
                          "injected squeezing strength r (2to1)");
  correct_cmd->add_option("--out", correct_out, "write report to file");
  correct_cmd->add_option("--composite-out", composite_out,
                          "write composite matrix file");

  // sweep-lossy
  auto* sweep_cmd = app.add_subcommand(
      "sweep-lossy", "Added noise and capacity over a kappa/g grid");
  SweepGrid lossy_grid{0.0, 0.2, 21, false};
  std::string sweep_mode = "both", sweep_direction = "writein", sweep_out;
  double sweep_g = 1.0, sweep_tau_frac = 0.1, sweep_tau = -1.0;
  int sweep_threads = 1;
  sweep_cmd->add_option("--start", lossy_grid.start, "first kappa/g value");
  sweep_cmd->add_option("--stop", lossy_grid.stop, "last kappa/g value");
  sweep_cmd->add_option("--count", lossy_grid.count, "number of grid points");
  sweep_cmd->add_flag("--log", lossy_grid.log_spaced, "log-spaced grid");
  sweep_cmd->add_option("--mode", sweep_mode, "interference, standard or both")
      ->check(CLI::IsMember({"interference", "standard", "both"}));
  sweep_cmd->add_option("--direction", sweep_direction, "writein or readout")
      ->check(CLI::IsMember({"writein", "readout"}));
  sweep_cmd->add_option("--g", sweep_g, "coupling rate");
  sweep_cmd->add_option("--tau-over-tau0", sweep_tau_frac,
                        "protocol time as a fraction of the full-swap time");
  sweep_cmd->add_option("--tau", sweep_tau,
                        "protocol time (overrides --tau-over-tau0)");
  sweep_cmd->add_option("--threads", sweep_threads, "worker threads");
  sweep_cmd->add_option("--out", sweep_out, "write CSV to file");

  // code-fidelity
  auto* code_cmd = app.add_subcommand(
      "code-fidelity", "Average logical fidelity over a sigma grid");
  SweepGrid code_grid{0.0, 1.0, 11, false};
  std::vector<std::string> code_names{"cat"};
  double code_alpha = 0.0, code_squeeze = -std::log(2.0);
  int code_trunc = 0, code_threads = 1;
  std::string code_out;
  code_cmd->add_option("--start", code_grid.start, "first sigma value");
  code_cmd->add_option("--stop", code_grid.stop, "last sigma value");
  code_cmd->add_option("--count", code_grid.count, "number of grid points");
  code_cmd->add_flag("--log", code_grid.log_spaced, "log-spaced grid");
  code_cmd->add_option("--codes", code_names, "cat, squeezed-cat, qsp")
      ->delimiter(',');
  code_cmd->add_option("--alpha", code_alpha, "cat lobe amplitude")->required();
  code_cmd->add_option("--squeeze", code_squeeze,
                       "squeezed-cat exponent r (e^r rescales the noise)");
  code_cmd->add_option("--n-trunc", code_trunc,
                       "Fock truncation (default 60 or TDX_FOCK_TRUNCATION)");
  code_cmd->add_option("--threads", code_threads, "worker threads");
  code_cmd->add_option("--out", code_out, "write CSV to file");

  // six-pass
  auto* six_cmd = app.add_subcommand(
      "six-pass", "Squeezing-free SWAP from three imperfect passes");
  double eta1 = 0.0, eta2 = 0.0, eta3 = 0.0;
  std::string six_out;
  six_cmd->add_option("eta1", eta1, "first coupling strength")->required();
  six_cmd->add_option("eta2", eta2, "second coupling strength")->required();
  six_cmd->add_option("eta3", eta3, "third coupling strength")->required();
  six_cmd->add_option("--out", six_out, "write report to file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (classify_cmd->parsed()) {
      return cmd_classify(classify_path, classify_out);
    }
    if (correct_cmd->parsed()) {
      return cmd_correct(correct_i, correct_iii, correct_dir, correct_eps,
                         correct_r, correct_out, composite_out);
    }
    if (sweep_cmd->parsed()) {
      const double tau =
          sweep_tau > 0.0 ? sweep_tau : sweep_tau_frac * M_PI / (2.0 * sweep_g);
      return cmd_sweep_lossy(lossy_grid, sweep_mode, sweep_direction, sweep_g,
                             tau, sweep_threads, sweep_out);
    }
    if (code_cmd->parsed()) {
      return cmd_code_fidelity(code_grid, code_names, code_alpha, code_squeeze,
                               code_trunc, code_threads, code_out);
    }
    if (six_cmd->parsed()) {
      if (eta1 == 0.0 || eta2 == 0.0 || eta3 == 0.0) {
        std::cerr << "usage error: strengths must be nonzero\n";
        return kExitUsage;
      }
      return cmd_six_pass(eta1, eta2, eta3, six_out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tdx::DegenerateStrengths& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const tdx::Uncorrectable& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const tdx::Error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
