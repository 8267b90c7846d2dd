#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reencoder/density_matrix.hpp"
#include "reencoder/detection.hpp"
#include "reencoder/parity_encoding.hpp"
#include "reencoder/photonic_state.hpp"

namespace reencoder {

// Beam labels, fixed across the whole circuit. The two Bell pairs enter on
// (a,b) and (c,d); the two-photon input word sits on (e,1). Fusing b with c
// produces detector beam 4 and intermediate 2'; fusing 2' with e produces
// detector beams 2 and 3. Beams a and d carry the re-encoded word out.
namespace beam {
inline const SpatialMode a{"a"};
inline const SpatialMode b{"b"};
inline const SpatialMode c{"c"};
inline const SpatialMode d{"d"};
inline const SpatialMode e{"e"};
inline const SpatialMode one{"1"};
inline const SpatialMode two{"2"};
inline const SpatialMode three{"3"};
inline const SpatialMode four{"4"};
inline const SpatialMode two_prime{"2'"};
}  // namespace beam

// Overlap parameters at the two fusion points: eta1 for the Bell photon
// entering the first fusion, eta2 for the input photon entering the second.
// eta = 1 is perfect overlap, eta = 0 fully distinguishable.
struct MismatchParams {
  double eta1 = 1.0;
  double eta2 = 1.0;

  MismatchParams() = default;
  MismatchParams(double e1, double e2);
};

struct CircuitConfig {
  LogicalQubit input;
  GateMode gate_mode = GateMode::Identity;
  std::optional<MismatchParams> mismatch;
  bool apply_corrections = true;
};

// One optical element together with the beams it touches; stages are published
// as step lists so protocol drivers can log exactly what each stage acts on.
struct ElementStep {
  std::string name;
  std::vector<SpatialMode> modes;
  std::function<PhotonicState(const PhotonicState&)> apply;
};

std::vector<ElementStep> fusion1_steps();                 // waveplates + PBS around beams b, c
std::vector<ElementStep> fusion2_steps(GateMode mode);    // waveplates + PBS around beams 2', e

PhotonicState apply_steps(PhotonicState s, const std::vector<ElementStep>& steps);

// Two Bell pairs on (a,b) and (c,d). With eta1 < 1 the b photon acquires a
// sqrt(1-eta1)-weighted distinguishable component.
PhotonicState bell_sources_state(std::optional<double> eta1);

// Input code word on (e,1). With eta2 < 1 the e photon acquires a
// sqrt(1-eta2)-weighted distinguishable component.
PhotonicState input_word_state(const LogicalQubit& q,
                               std::optional<double> eta2);

// Full six-photon initial state of a run.
PhotonicState build_input_state(const CircuitConfig& cfg);

// State after the first fusion stage only (detector beam 4 formed).
PhotonicState state_after_fusion1(const CircuitConfig& cfg);

// State with all four detector beams formed, ready for detection.
PhotonicState pre_detection_state(const CircuitConfig& cfg);

// First-fusion herald: outcomes of a single-photon click on beam 4.
struct Fusion1Outcome {
  Pol herald = Pol::H;
  double probability = 0.0;
  std::vector<TaggedBranch> branches;  // on beams a, d, 2'
};

// Runs the first fusion on the Bell sources alone and projects beam 4 onto a
// single photon. Also reports the no-herald (failure) probability.
struct Fusion1Result {
  std::array<Fusion1Outcome, 2> success;  // indexed by herald H=0, V=1
  double failure_probability = 0.0;
};
Fusion1Result type1_fusion_stage(std::optional<double> eta1);

// The state the run should deliver on (a,d) after correction: the input word
// itself, or with beta advanced by a quarter turn when the plate is in.
PhotonicState canonical_target(const LogicalQubit& q, GateMode mode);
LogicalQubit logical_z90_reference(const LogicalQubit& q);

struct PatternResult {
  DetectorPattern pattern;
  double probability = 0.0;
  FlipClass flip_class = FlipClass::None;
  CorrectionOp correction;
  std::vector<TaggedBranch> branches;  // uncorrected, on (a,d)
  OutputDensityMatrix corrected_rho;   // filled when corrections are applied
  double corrected_fidelity = 0.0;     // vs canonical target
};

struct ReencoderResult {
  std::vector<PatternResult> outcomes;             // all 16 fourfold patterns
  std::array<double, 4> per_class_probability{};   // FlipClass order
  double total_success_probability = 0.0;
  OutputDensityMatrix corrected_output;            // sum over patterns
  double corrected_output_fidelity = 0.0;
  double failure_probability = 0.0;
  // Keyed by per-group photon totals, e.g. "1201" = 1,2,0,1 on groups 1..4.
  std::map<std::string, double> failure_breakdown;
};

ReencoderResult run(const CircuitConfig& cfg);

}  // namespace reencoder
