#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "reencoder/optical_elements.hpp"
#include "reencoder/photonic_state.hpp"

namespace reencoder {

// Which single-qubit gate the re-encoding run realizes on the way through.
enum class GateMode { Identity, Z90 };

// Number-resolving, tag-blind click record: (H count, V count) per detected
// beam. Beams with zero photons are omitted, so equal records compare equal.
using ModePattern = std::map<SpatialMode, std::pair<int, int>>;

std::string to_string(const ModePattern& p);

// One distinguishability branch of a conditional state: `weight` is the raw
// (unnormalized) probability mass, `state` is normalized.
struct TaggedBranch {
  double weight = 0.0;
  PhotonicState state;
};

struct ProjectionResult {
  double probability = 0.0;  // sum of branch weights
  std::vector<TaggedBranch> branches;
};

// Projects onto one click record over `detected` beams. Detectors see photon
// counts per polarization only; distinguishability tags split the conditional
// state into incoherent branches.
ProjectionResult project_pattern(const PhotonicState& s, const ModePattern& p,
                                 const std::set<SpatialMode>& detected);

// Full click distribution over `detected` beams. Probabilities sum to the
// squared norm of s.
std::map<ModePattern, ProjectionResult> detection_distribution(
    const PhotonicState& s, const std::set<SpatialMode>& detected);

// A fourfold coincidence: exactly one photon in each detector group 1..4,
// identified by its polarization string in group order, e.g. "HVHH".
struct DetectorPattern {
  std::array<Pol, 4> pol{Pol::H, Pol::H, Pol::H, Pol::H};

  static DetectorPattern from_string(const std::string& s);
  std::string to_string() const;
  ModePattern to_mode_pattern() const;
  bool v_at(int group) const { return pol[group - 1] == Pol::V; }
  auto operator<=>(const DetectorPattern&) const = default;
};

// All 16 fourfold patterns in lexicographic order (HHHH first).
const std::vector<DetectorPattern>& all_detector_patterns();

// The four logical-error classes a fourfold pattern heralds on the surviving
// two-photon word.
enum class FlipClass { None, Phase, Bit, Both };

std::string to_string(FlipClass c);

FlipClass flip_class_for(const DetectorPattern& p, GateMode mode);

// Pauli fix-up, listed in application order.
struct CorrectionOp {
  std::vector<std::pair<SpatialMode, PauliOp>> ops;
};

// Correction that returns the class's conditional state to the canonical output
// word on beams (a, d): Phase -> sigma_z on both, Bit -> sigma_x on d,
// Both -> sigma_x on d then sigma_z on both.
CorrectionOp correction_for(const DetectorPattern& p, GateMode mode);

PhotonicState apply_correction(const PhotonicState& s, const CorrectionOp& op);

struct ConditionalOutcome {
  DetectorPattern pattern;
  double probability = 0.0;
  std::vector<TaggedBranch> branches;  // uncorrected, on the surviving beams
  FlipClass flip_class = FlipClass::None;
  CorrectionOp correction;
};

// Conditional data for all 16 fourfold patterns of the detector groups
// (beams "1".."4"), in all_detector_patterns() order.
std::vector<ConditionalOutcome> enumerate_success_patterns(
    const PhotonicState& s, GateMode mode);

}  // namespace reencoder
