#include "reencoder/reports.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>

namespace reencoder {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string gate_name(GateMode m) {
  return m == GateMode::Z90 ? "z90" : "identity";
}

ordered_json qubit_json(const BlochAngles& angles) {
  const LogicalQubit q = angles.to_qubit();
  ordered_json j;
  j["theta"] = angles.theta;
  j["phi"] = angles.phi;
  j["alpha_re"] = q.alpha.real();
  j["alpha_im"] = q.alpha.imag();
  j["beta_re"] = q.beta.real();
  j["beta_im"] = q.beta.imag();
  return j;
}

ordered_json mismatch_json(const std::optional<MismatchParams>& mm) {
  if (!mm) return nullptr;
  ordered_json j;
  j["eta1"] = mm->eta1;
  j["eta2"] = mm->eta2;
  return j;
}

ordered_json matrix_json(const Eigen::Matrix4cd& m) {
  ordered_json re = ordered_json::array();
  ordered_json im = ordered_json::array();
  for (int r = 0; r < 4; ++r) {
    ordered_json rrow = ordered_json::array();
    ordered_json irow = ordered_json::array();
    for (int c = 0; c < 4; ++c) {
      rrow.push_back(m(r, c).real());
      irow.push_back(m(r, c).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  ordered_json j;
  j["basis"] = {"HH", "HV", "VH", "VV"};
  j["re"] = re;
  j["im"] = im;
  return j;
}

}  // namespace

std::string format_sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n) {
  if (n == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 97.5th normal percentile
  const double p = static_cast<double>(k) / n;
  const double z2n = z * z / n;
  const double center = (p + z2n / 2.0) / (1.0 + z2n);
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n)) / (1.0 + z2n);
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::string reencode_report_json(const ReencodeRequest& req,
                                 const ReencoderResult& result) {
  ordered_json j;
  j["command"] = req.gate_mode == GateMode::Z90 ? "z90" : "reencode";
  j["gate_mode"] = gate_name(req.gate_mode);
  j["input"] = qubit_json(req.input);
  j["mismatch"] = mismatch_json(req.mismatch);

  ordered_json patterns = ordered_json::array();
  for (const auto& row : result.outcomes) {
    ordered_json p;
    p["pattern"] = row.pattern.to_string();
    p["probability"] = row.probability;
    p["flip_class"] = to_string(row.flip_class);
    p["corrected_fidelity"] = row.corrected_fidelity;
    patterns.push_back(p);
  }
  j["patterns"] = patterns;

  ordered_json classes;
  classes["none"] = result.per_class_probability[0];
  classes["phase"] = result.per_class_probability[1];
  classes["bit"] = result.per_class_probability[2];
  classes["both"] = result.per_class_probability[3];
  j["class_probabilities"] = classes;
  j["total_success_probability"] = result.total_success_probability;

  ordered_json failure;
  failure["probability"] = result.failure_probability;
  ordered_json breakdown;
  for (const auto& [sig, p] : result.failure_breakdown) breakdown[sig] = p;
  failure["breakdown"] = breakdown;
  j["failure"] = failure;

  ordered_json output;
  output["trace"] = result.corrected_output.trace();
  output["fidelity"] = result.corrected_output_fidelity;
  output["matrix"] = matrix_json(result.corrected_output.mat);
  j["corrected_output"] = output;
  return j.dump(2) + "\n";
}

std::string reencode_report_csv(const ReencoderResult& result) {
  std::string out = "pattern,probability,flip_class,corrected_fidelity\n";
  for (const auto& row : result.outcomes) {
    out += row.pattern.to_string() + "," + format_sig12(row.probability) + "," +
           to_string(row.flip_class) + "," +
           format_sig12(row.corrected_fidelity) + "\n";
  }
  return out;
}

std::string teleport_report_json(const TeleportRequest& req,
                                 const RunStats& stats) {
  ordered_json j;
  j["command"] = "teleport";
  j["input"] = qubit_json(req.input);
  j["mismatch"] = mismatch_json(req.mismatch);

  ordered_json policy;
  policy["max_type1_attempts"] =
      req.policy.max_type1_attempts == RetryPolicy::kUnbounded
          ? ordered_json("unbounded")
          : ordered_json(req.policy.max_type1_attempts);
  policy["max_type2_attempts"] =
      req.policy.max_type2_attempts == RetryPolicy::kUnbounded
          ? ordered_json("unbounded")
          : ordered_json(req.policy.max_type2_attempts);
  policy["recovery_enabled"] = req.policy.recovery_enabled;
  // Recovery re-prepares the surviving beam-1 qubit through a lossless,
  // noiseless source; flagged so downstream readers know it is optimistic.
  policy["idealized_recovery"] = req.policy.recovery_enabled;
  j["policy"] = policy;

  j["trials"] = req.trials;
  j["seed"] = req.seed;

  ordered_json r;
  r["eventual_success_rate"] = stats.eventual_success_rate;
  auto [lo, hi] = wilson_interval(stats.successes, stats.trials);
  r["eventual_success_ci95"] = {lo, hi};
  const auto first = static_cast<std::uint64_t>(
      std::llround(stats.single_shot_success_rate * stats.trials));
  r["single_shot_success_rate"] = stats.single_shot_success_rate;
  auto [slo, shi] = wilson_interval(first, stats.trials);
  r["single_shot_ci95"] = {slo, shi};
  r["abort_rate"] = stats.abort_rate;
  r["mean_bell_pairs"] = stats.mean_bell_pairs;
  r["mean_type1_attempts"] = stats.mean_type1_attempts;
  r["mean_type2_attempts"] = stats.mean_type2_attempts;
  r["mean_recovery_rounds"] = stats.mean_recovery_rounds;
  r["min_delivered_fidelity"] = stats.min_delivered_fidelity;
  r["mean_delivered_fidelity"] = stats.mean_delivered_fidelity;
  j["results"] = r;
  return j.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "eta1,eta2,f_ave,p_plus_mean,p_minus_mean\n";
  for (const auto& r : rows) {
    out += format_sig12(r.eta1) + "," + format_sig12(r.eta2) + "," +
           format_sig12(r.f_ave) + "," + format_sig12(r.p_plus_mean) + "," +
           format_sig12(r.p_minus_mean) + "\n";
  }
  return out;
}

std::string diagonal_csv(const std::vector<SweepRow>& rows) {
  std::string out = "eta,f_ave,p_plus_mean,p_minus_mean\n";
  for (const auto& r : rows) {
    out += format_sig12(r.eta1) + "," + format_sig12(r.f_ave) + "," +
           format_sig12(r.p_plus_mean) + "," + format_sig12(r.p_minus_mean) +
           "\n";
  }
  return out;
}

std::string pdc_report_json(const PdcRequest& req,
                            const ContaminationReport& report) {
  ordered_json j;
  j["command"] = "pdc";
  j["input"] = qubit_json(req.input);
  j["gate_mode"] = gate_name(req.gate_mode);
  j["chi"] = req.params.chi;
  j["chi_squared"] = req.params.chi * req.params.chi;
  j["truncation_order"] = req.params.truncation_order;
  j["detector_model"] = to_string(req.params.detector_model);

  ordered_json r;
  r["p_correct_fourfold"] = report.p_correct_fourfold;
  r["p_contaminated_fourfold"] = report.p_contaminated_fourfold;
  r["p_correct_sixfold"] = report.p_correct_sixfold;
  r["p_contaminated_sixfold"] = report.p_contaminated_sixfold;
  r["rejected_by_postselection"] = report.rejected_by_postselection;
  r["eight_to_six_ratio"] = report.eight_to_six_ratio;
  r["min_correct_sixfold_fidelity"] = report.min_correct_sixfold_fidelity;
  j["report"] = r;
  return j.dump(2) + "\n";
}

}  // namespace reencoder
