#pragma once

#include <string>

#include "reencoder/circuit.hpp"
#include "reencoder/mismatch.hpp"
#include "reencoder/pdc.hpp"
#include "reencoder/teleport.hpp"

namespace reencoder {

// %.12g rendering used by every CSV column.
std::string format_sig12(double x);

// 95% Wilson score interval for k successes out of n.
std::pair<double, double> wilson_interval(std::uint64_t k, std::uint64_t n);

struct ReencodeRequest {
  BlochAngles input;
  GateMode gate_mode = GateMode::Identity;
  std::optional<MismatchParams> mismatch;
};

// Pretty-printed JSON, trailing newline, byte-stable for equal requests.
std::string reencode_report_json(const ReencodeRequest& req,
                                 const ReencoderResult& result);

// "pattern,probability,flip_class,corrected_fidelity" rows for the 16
// fourfold patterns.
std::string reencode_report_csv(const ReencoderResult& result);

struct TeleportRequest {
  BlochAngles input;
  std::optional<MismatchParams> mismatch;
  RetryPolicy policy;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

std::string teleport_report_json(const TeleportRequest& req,
                                 const RunStats& stats);

// Grid sweep: "eta1,eta2,f_ave,p_plus_mean,p_minus_mean".
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Diagonal cut: "eta,f_ave,p_plus_mean,p_minus_mean".
std::string diagonal_csv(const std::vector<SweepRow>& rows);

struct PdcRequest {
  BlochAngles input;
  GateMode gate_mode = GateMode::Identity;
  PdcParams params;
};

std::string pdc_report_json(const PdcRequest& req,
                            const ContaminationReport& report);

}  // namespace reencoder
