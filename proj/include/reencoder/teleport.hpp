#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reencoder/circuit.hpp"

namespace reencoder {

enum class ProtocolPhase { AwaitType1, AwaitType2, Recovering, Done, Aborted };

std::string to_string(ProtocolPhase p);

struct RetryPolicy {
  std::uint32_t max_type1_attempts = 1;  // per fusion-2 round
  std::uint32_t max_type2_attempts = 1;  // rounds; recovery starts a new round
  bool recovery_enabled = false;

  static RetryPolicy single_shot() { return {1, 1, false}; }
  static RetryPolicy type1_retry_only() { return {kUnbounded, 1, false}; }
  static RetryPolicy unlimited() { return {kUnbounded, kUnbounded, true}; }

  static constexpr std::uint32_t kUnbounded = 0xFFFFFFFFu;
  void validate() const;  // both bounds >= 1
};

// Everything Alice announces for one accepted round. Bob's Pauli fix-up is a
// pure function of this record and touches nothing else.
struct ClassicalMessage {
  Pol herald = Pol::H;                         // beam-4 click of the round
  std::array<Pol, 3> outputs{Pol::H, Pol::H, Pol::H};  // beams 1, 2, 3
};

CorrectionOp bob_correction(const ClassicalMessage& msg);

struct AccessRecord {
  std::string stage;    // "fusion1" | "fusion2"
  std::string element;
  std::vector<std::string> modes;
};

struct TrialTrace {
  std::vector<AccessRecord> accesses;
  std::vector<std::string> events;  // phase transitions, heralds, recoveries
};

struct TrialResult {
  ProtocolPhase phase = ProtocolPhase::Aborted;  // Done or Aborted at the end
  std::uint32_t type1_attempts = 0;
  std::uint32_t type2_attempts = 0;
  std::uint32_t recovery_rounds = 0;
  std::uint32_t bell_pairs_consumed = 0;
  bool first_attempt_success = false;
  double delivered_fidelity = 0.0;  // meaningful on Done only
  std::optional<TrialTrace> trace;
};

struct TeleportSetup {
  LogicalQubit input;
  std::optional<MismatchParams> mismatch;
};

// Precomputes the exact stage distributions once, then plays trials by
// sampling them; recovery feeds the surviving beam-1 qubit back in as a fresh
// input. The recovery path assumes an idealized re-preparation of that qubit.
class ProtocolEngine {
 public:
  explicit ProtocolEngine(const TeleportSetup& setup);
  ~ProtocolEngine();
  ProtocolEngine(const ProtocolEngine&) = delete;
  ProtocolEngine& operator=(const ProtocolEngine&) = delete;

  TrialResult trial(const RetryPolicy& policy, std::uint64_t seed,
                    std::uint64_t trial_index, bool record_trace = false);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

TrialResult run_protocol_trial(const TeleportSetup& setup,
                               const RetryPolicy& policy, std::uint64_t seed,
                               std::uint64_t trial_index,
                               bool record_trace = false);

std::vector<TrialResult> run_protocol(const TeleportSetup& setup,
                                      const RetryPolicy& policy,
                                      std::uint64_t trials, std::uint64_t seed);

struct RunStats {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double eventual_success_rate = 0.0;
  double single_shot_success_rate = 0.0;
  double abort_rate = 0.0;
  double mean_bell_pairs = 0.0;
  double mean_type1_attempts = 0.0;
  double mean_type2_attempts = 0.0;
  double mean_recovery_rounds = 0.0;
  double min_delivered_fidelity = 0.0;   // over successful trials
  double mean_delivered_fidelity = 0.0;  // over successful trials
};

// Throws std::invalid_argument on an empty list.
RunStats aggregate(const std::vector<TrialResult>& trials);

}  // namespace reencoder
