#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "reencoder/circuit.hpp"
#include "reencoder/mismatch.hpp"
#include "reencoder/pdc.hpp"
#include "reencoder/reports.hpp"
#include "reencoder/selftest.hpp"
#include "reencoder/teleport.hpp"

namespace {

using namespace reencoder;

constexpr double kPi = 3.14159265358979323846;

struct InputOpts {
  // Equator point |0>+|1> over sqrt2: the canonical demonstration input.
  double theta = kPi / 2.0;
  double phi = 0.0;

  BlochAngles angles() const { return {theta, phi}; }
};

void add_input_options(CLI::App* cmd, InputOpts& in) {
  cmd->add_option("--alpha-theta", in.theta,
                  "Input Bloch polar angle in radians")
      ->capture_default_str();
  cmd->add_option("--alpha-phi", in.phi,
                  "Input Bloch azimuthal angle in radians")
      ->capture_default_str();
}

struct MismatchOpts {
  double eta1 = 1.0;
  double eta2 = 1.0;
  std::vector<double> pair;
  CLI::Option* o1 = nullptr;
  CLI::Option* o2 = nullptr;
  CLI::Option* opair = nullptr;
};

void add_mismatch_options(CLI::App* cmd, MismatchOpts& m) {
  m.o1 = cmd->add_option("--eta1", m.eta1,
                         "Overlap of the fused source photon, in [0,1]");
  m.o2 = cmd->add_option("--eta2", m.eta2,
                         "Overlap of the fused input photon, in [0,1]");
  m.opair = cmd->add_option("--mismatch", m.pair, "Both overlaps: ETA1 ETA2")
                ->expected(2);
}

std::optional<MismatchParams> resolve_mismatch(const MismatchOpts& m) {
  if (!m.o1->count() && !m.o2->count() && !m.opair->count())
    return std::nullopt;
  double e1 = m.opair->count() ? m.pair[0] : 1.0;
  double e2 = m.opair->count() ? m.pair[1] : 1.0;
  if (m.o1->count()) e1 = m.eta1;
  if (m.o2->count()) e2 = m.eta2;
  // Perfect overlap is the ideal circuit; collapsing it here keeps the whole
  // report byte-identical to a run that never mentioned mismatch.
  if (e1 == 1.0 && e2 == 1.0) return std::nullopt;
  return MismatchParams(e1, e2);
}

// Format choice for the report pair. A flag on the command line beats a
// manifest key (parse_order only records command-line hits); two flags from
// the same source contradict each other.
bool resolve_csv(const CLI::App* cmd, const CLI::Option* json_opt,
                 const CLI::Option* csv_opt) {
  const auto& order = cmd->parse_order();
  const bool json_cli =
      std::find(order.begin(), order.end(), json_opt) != order.end();
  const bool csv_cli =
      std::find(order.begin(), order.end(), csv_opt) != order.end();
  if (json_cli && csv_cli)
    throw std::invalid_argument("--json excludes --csv");
  if (json_cli || csv_cli) return csv_cli;
  if (json_opt->count() > 0 && csv_opt->count() > 0)
    throw std::invalid_argument("manifest requests both json and csv");
  return csv_opt->count() > 0;
}

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open output path: " << path << "\n";
    return 1;
  }
  f << text;
  return f.good() ? 0 : 1;
}

int run_reencode(GateMode mode, const InputOpts& in, const MismatchOpts& m,
                 bool csv, const std::string& out) {
  ReencodeRequest req;
  req.input = in.angles();
  req.gate_mode = mode;
  req.mismatch = resolve_mismatch(m);

  CircuitConfig cfg;
  cfg.input = req.input.to_qubit();
  cfg.gate_mode = mode;
  cfg.mismatch = req.mismatch;
  const ReencoderResult res = run(cfg);
  return write_output(
      csv ? reencode_report_csv(res) : reencode_report_json(req, res), out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Amplitude-level simulator for the two-photon parity-word "
               "re-encoder: fusion heralds, Pauli fix-ups, the quarter-turn "
               "plate, overlap-mismatch analysis, teleportation trials, and "
               "down-conversion contamination."};
  app.set_config("--manifest", "",
                 "Key=value manifest file; one [section] per subcommand");
  app.require_subcommand(0, 1);

  // reencode / z90
  InputOpts re_in;
  MismatchOpts re_mm;
  std::string re_out;
  bool re_csv = false, re_json = false;
  auto* reencode =
      app.add_subcommand("reencode", "Run the re-encoder and report all "
                                     "fourfold outcomes")
          ->configurable();
  add_input_options(reencode, re_in);
  add_mismatch_options(reencode, re_mm);
  reencode->add_option("--out", re_out, "Write the report here (default stdout)");
  auto* re_jopt = reencode->add_flag("--json", re_json, "JSON report (default)");
  auto* re_copt =
      reencode->add_flag("--csv", re_csv, "CSV pattern table instead of JSON");

  InputOpts z_in;
  MismatchOpts z_mm;
  std::string z_out;
  bool z_csv = false, z_json = false;
  auto* z90 =
      app.add_subcommand("z90", "Re-encode with the quarter-turn plate in "
                                "the fusion path")
          ->configurable();
  add_input_options(z90, z_in);
  add_mismatch_options(z90, z_mm);
  z90->add_option("--out", z_out, "Write the report here (default stdout)");
  auto* z_jopt = z90->add_flag("--json", z_json, "JSON report (default)");
  auto* z_copt =
      z90->add_flag("--csv", z_csv, "CSV pattern table instead of JSON");

  // teleport
  InputOpts t_in;
  MismatchOpts t_mm;
  std::string t_out;
  std::string t_policy = "single-shot";
  std::uint64_t t_trials = 100000;
  std::uint64_t t_seed = 1;
  std::uint32_t t_max1 = 0, t_max2 = 0;
  bool t_recovery = false;
  auto* teleport =
      app.add_subcommand("teleport", "Monte Carlo teleportation trials over "
                                     "the re-encoder")
          ->configurable();
  add_input_options(teleport, t_in);
  add_mismatch_options(teleport, t_mm);
  teleport->add_option("--trials", t_trials, "Number of trials")
      ->capture_default_str();
  teleport->add_option("--seed", t_seed, "RNG seed")->capture_default_str();
  teleport
      ->add_option("--policy", t_policy,
                   "Retry policy: single-shot, type1-retry, unlimited")
      ->check(CLI::IsMember({"single-shot", "type1-retry", "unlimited"}))
      ->capture_default_str();
  auto* m1opt = teleport->add_option(
      "--max-type1", t_max1, "First-fusion attempts per round; 0 = unbounded");
  auto* m2opt = teleport->add_option(
      "--max-type2", t_max2, "Fusion rounds; 0 = unbounded");
  auto* recopt = teleport->add_flag(
      "--recovery", t_recovery, "Recycle the surviving qubit after a failed "
                                "second fusion (idealized re-preparation)");
  teleport->add_option("--out", t_out, "Write the report here (default stdout)");

  // mismatch-sweep
  std::string s_out;
  int s_grid = 11;
  int s_diag = 0;
  bool s_z90 = false;
  auto* sweep =
      app.add_subcommand("mismatch-sweep", "Average-fidelity sweep over the "
                                           "overlap parameters, as CSV")
          ->configurable();
  sweep->add_option("--grid", s_grid, "N for an N x N (eta1, eta2) grid")
      ->check(CLI::Range(2, 2001))
      ->capture_default_str();
  sweep
      ->add_option("--diagonal", s_diag,
                   "Sweep eta1 = eta2 with this many points instead")
      ->check(CLI::Range(2, 100001));
  sweep->add_flag("--z90", s_z90, "Sweep the quarter-turn variant");
  sweep->add_option("--out", s_out, "Write the CSV here (default stdout)");

  // pdc
  InputOpts p_in;
  std::string p_out;
  double p_chi = 0.01;
  int p_order = 3;
  bool p_threshold = false;
  bool p_z90 = false;
  auto* pdc =
      app.add_subcommand("pdc", "Down-conversion higher-order contamination "
                                "analysis")
          ->configurable();
  add_input_options(pdc, p_in);
  pdc->add_option("--chi", p_chi, "Pair amplitude per source, in (0,1)")
      ->capture_default_str();
  pdc->add_option("--order", p_order, "Total-pair truncation order (3 or 4)")
      ->check(CLI::IsMember({3, 4}))
      ->capture_default_str();
  pdc->add_flag("--threshold", p_threshold,
                "Threshold detectors instead of number-resolving");
  pdc->add_flag("--z90", p_z90, "Analyze the quarter-turn variant");
  pdc->add_option("--out", p_out, "Write the report here (default stdout)");

  // selftest
  auto* selftest =
      app.add_subcommand("selftest", "Run the built-in consistency suite")
          ->configurable();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 1;
  }

  try {
    if (reencode->parsed())
      return run_reencode(GateMode::Identity, re_in, re_mm,
                          resolve_csv(reencode, re_jopt, re_copt), re_out);
    if (z90->parsed())
      return run_reencode(GateMode::Z90, z_in, z_mm,
                          resolve_csv(z90, z_jopt, z_copt), z_out);

    if (teleport->parsed()) {
      RetryPolicy policy = RetryPolicy::single_shot();
      if (t_policy == "type1-retry") policy = RetryPolicy::type1_retry_only();
      if (t_policy == "unlimited") policy = RetryPolicy::unlimited();
      if (m1opt->count())
        policy.max_type1_attempts =
            t_max1 == 0 ? RetryPolicy::kUnbounded : t_max1;
      if (m2opt->count())
        policy.max_type2_attempts =
            t_max2 == 0 ? RetryPolicy::kUnbounded : t_max2;
      if (recopt->count()) policy.recovery_enabled = t_recovery;
      policy.validate();

      TeleportRequest req;
      req.input = t_in.angles();
      req.mismatch = resolve_mismatch(t_mm);
      req.policy = policy;
      req.trials = t_trials;
      req.seed = t_seed;

      TeleportSetup setup{req.input.to_qubit(), req.mismatch};
      const auto trials = run_protocol(setup, policy, t_trials, t_seed);
      return write_output(teleport_report_json(req, aggregate(trials)), t_out);
    }

    if (sweep->parsed()) {
      const GateMode mode = s_z90 ? GateMode::Z90 : GateMode::Identity;
      const std::string text =
          s_diag > 0 ? diagonal_csv(mismatch_diagonal(s_diag, mode))
                     : sweep_csv(mismatch_sweep(s_grid, mode));
      return write_output(text, s_out);
    }

    if (pdc->parsed()) {
      PdcParams params;
      params.chi = p_chi;
      params.truncation_order = p_order;
      params.detector_model = p_threshold ? DetectorModel::Threshold
                                          : DetectorModel::NumberResolving;
      params.validate();

      PdcRequest req;
      req.input = p_in.angles();
      req.gate_mode = p_z90 ? GateMode::Z90 : GateMode::Identity;
      req.params = params;
      const ContaminationReport report =
          contamination_analysis(params, req.input.to_qubit(), req.gate_mode);
      return write_output(pdc_report_json(req, report), p_out);
    }

    if (selftest->parsed()) return run_selftest(std::cout) ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::cerr << app.help();
  return 1;
}
