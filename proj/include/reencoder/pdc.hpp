#pragma once

#include "reencoder/circuit.hpp"

namespace reencoder {

// Threshold detectors report "clicked or not"; number-resolving detectors see
// exact counts.
enum class DetectorModel { NumberResolving, Threshold };

std::string to_string(DetectorModel m);

struct PdcParams {
  double chi = 0.01;  // pair amplitude per source; |chi|^2 = pair probability
  int truncation_order = 3;  // total pairs kept across the three sources
  DetectorModel detector_model = DetectorModel::NumberResolving;

  void validate() const;  // chi in (0,1), order in {3,4}
};

// Normalized k-pair emission of one polarization-correlated source: uniform
// superposition over the k+1 ways of splitting k pairs between HH and VV.
PhotonicState pdc_pair_term(int k, const SpatialMode& m1,
                            const SpatialMode& m2);

// Truncated source emission sum_k chi^k |k pairs>, renormalized over k<=order.
PhotonicState pdc_state(double chi, const SpatialMode& m1,
                        const SpatialMode& m2, int order);

// k-pair emission of the nonmaximal source (A HH + B VV), normalized, before
// the preparation waveplates; the j-pair HH component is weighted A^j B^(k-j).
PhotonicState pdc_nonmaximal_term(int k, Amplitude big_a, Amplitude big_b,
                                  const SpatialMode& m1,
                                  const SpatialMode& m2);

struct ContaminationReport {
  double chi = 0.0;
  int truncation_order = 0;
  DetectorModel detector_model = DetectorModel::NumberResolving;

  // Probability mass (within the truncated source model) of fourfold detector
  // acceptance, split by whether it came from the intended
  // one-pair-per-source sector or anywhere else.
  double p_correct_fourfold = 0.0;
  double p_contaminated_fourfold = 0.0;

  // As above with the two output beams required to click as well.
  double p_correct_sixfold = 0.0;
  double p_contaminated_sixfold = 0.0;

  // Fourfold-accepted mass removed by the output-beam coincidence check.
  double rejected_by_postselection = 0.0;

  // Emission-rate ratio of eight-photon to six-photon events, from the source
  // weights alone (evaluated through total pair number 4 regardless of the
  // truncation used for circuit evolution).
  double eight_to_six_ratio = 0.0;

  // Corrected conditional fidelity floor over sixfold-accepted events of the
  // intended sector; 1 when the truncation admits no contamination there.
  double min_correct_sixfold_fidelity = 0.0;
};

ContaminationReport contamination_analysis(const PdcParams& params,
                                           const LogicalQubit& input,
                                           GateMode mode);

}  // namespace reencoder
