#include "reencoder/pdc.hpp"

#include <cmath>
#include <stdexcept>

#include "reencoder/optical_elements.hpp"

namespace reencoder {

namespace {

using beam::a;
using beam::b;
using beam::c;
using beam::d;
using beam::e;
using beam::four;
using beam::one;
using beam::three;
using beam::two;

OccupationConfig pair_split_config(int j, int k, const SpatialMode& m1,
                                   const SpatialMode& m2) {
  OccupationConfig cfg;
  if (j > 0) {
    cfg.add({m1, Pol::H, DistTag::Matched}, j);
    cfg.add({m2, Pol::H, DistTag::Matched}, j);
  }
  if (k - j > 0) {
    cfg.add({m1, Pol::V, DistTag::Matched}, k - j);
    cfg.add({m2, Pol::V, DistTag::Matched}, k - j);
  }
  return cfg;
}

struct SectorAccept {
  bool fourfold = false;
  bool sixfold = false;
};

}  // namespace

std::string to_string(DetectorModel m) {
  return m == DetectorModel::NumberResolving ? "number_resolving" : "threshold";
}

void PdcParams::validate() const {
  if (!(chi > 0.0 && chi < 1.0))
    throw std::invalid_argument("pdc: chi must lie in (0, 1)");
  if (truncation_order != 3 && truncation_order != 4)
    throw std::invalid_argument("pdc: truncation order must be 3 or 4");
}

PhotonicState pdc_pair_term(int k, const SpatialMode& m1,
                            const SpatialMode& m2) {
  if (k < 0) throw std::invalid_argument("pdc: negative pair number");
  if (m1 == m2) throw std::invalid_argument("pdc: beams must differ");
  PhotonicState s;
  const double w = 1.0 / std::sqrt(static_cast<double>(k + 1));
  for (int j = 0; j <= k; ++j) s.add_term(pair_split_config(j, k, m1, m2), w);
  return s;
}

PhotonicState pdc_state(double chi, const SpatialMode& m1,
                        const SpatialMode& m2, int order) {
  if (!(chi > 0.0 && chi < 1.0))
    throw std::invalid_argument("pdc: chi must lie in (0, 1)");
  if (order < 0) throw std::invalid_argument("pdc: negative order");
  PhotonicState s;
  for (int k = 0; k <= order; ++k) {
    s += Amplitude{std::pow(chi, k)} * pdc_pair_term(k, m1, m2);
  }
  return normalize(s);
}

PhotonicState pdc_nonmaximal_term(int k, Amplitude big_a, Amplitude big_b,
                                  const SpatialMode& m1,
                                  const SpatialMode& m2) {
  if (k < 0) throw std::invalid_argument("pdc: negative pair number");
  if (m1 == m2) throw std::invalid_argument("pdc: beams must differ");
  PhotonicState s;
  for (int j = 0; j <= k; ++j) {
    Amplitude amp = 1.0;
    for (int i = 0; i < j; ++i) amp *= big_a;
    for (int i = 0; i < k - j; ++i) amp *= big_b;
    s.add_term(pair_split_config(j, k, m1, m2), amp);
  }
  return normalize(s);
}

ContaminationReport contamination_analysis(const PdcParams& params,
                                           const LogicalQubit& input,
                                           GateMode mode) {
  params.validate();
  ContaminationReport report;
  report.chi = params.chi;
  report.truncation_order = params.truncation_order;
  report.detector_model = params.detector_model;

  const double r = 1.0 / std::sqrt(2.0);
  const Amplitude big_a = (input.alpha + input.beta) * r;
  const Amplitude big_b = (input.alpha - input.beta) * r;
  const Eigen::Vector4cd target =
      polarization_vector(canonical_target(input, mode), a, d);
  const bool threshold = params.detector_model == DetectorModel::Threshold;

  // Source-weight bookkeeping. Z normalizes over the kept sectors; the
  // eight-to-six ratio is pure emission accounting through 4 pairs total.
  const int order = params.truncation_order;
  double z = 0.0;
  double mass_three = 0.0, mass_four = 0.0;
  for (int k1 = 0; k1 <= 4; ++k1) {
    for (int k2 = 0; k2 + k1 <= 4; ++k2) {
      for (int k3 = 0; k3 + k2 + k1 <= 4; ++k3) {
        const int total = k1 + k2 + k3;
        const double w = std::pow(params.chi * params.chi, total);
        if (total <= order) z += w;
        if (total == 3) mass_three += w;
        if (total == 4) mass_four += w;
      }
    }
  }
  report.eight_to_six_ratio = mass_four / mass_three;

  double min_fidelity = 1.0;
  bool saw_correct_sixfold = false;

  for (int k1 = 0; k1 <= order; ++k1) {
    for (int k2 = 0; k2 + k1 <= order; ++k2) {
      for (int k3 = 0; k3 + k2 + k1 <= order; ++k3) {
        const int total = k1 + k2 + k3;
        if (total == 0) continue;  // vacuum never clicks
        const double sector_weight =
            std::pow(params.chi * params.chi, total) / z;
        const bool correct_sector = k1 == 1 && k2 == 1 && k3 == 1;

        // Output beams hold k1 (beam a) and k2 (beam d) photons untouched by
        // the optics, so the output-coincidence veto is a sector constant.
        const bool outputs_click = threshold
                                       ? (k1 >= 1 && k2 >= 1)
                                       : (k1 == 1 && k2 == 1);

        PhotonicState parity_src = pdc_nonmaximal_term(k3, big_a, big_b, e, one);
        parity_src = apply_hwp22_5(parity_src, e);
        parity_src = apply_hwp22_5(parity_src, one);
        PhotonicState s = tensor(
            tensor(pdc_pair_term(k1, a, b), pdc_pair_term(k2, c, d)),
            parity_src);
        s = apply_steps(std::move(s), fusion1_steps());
        s = apply_steps(std::move(s), fusion2_steps(mode));

        auto dist = detection_distribution(s, {one, two, three, four});
        for (const auto& [pattern, proj] : dist) {
          int counts[4][2] = {{0, 0}, {0, 0}, {0, 0}, {0, 0}};
          for (const auto& [m, hv] : pattern) {
            const int g = m.id[0] - '1';
            counts[g][0] = hv.first;
            counts[g][1] = hv.second;
          }
          bool fourfold = true;
          for (auto& g : counts) {
            const bool ok = threshold ? (g[0] > 0) != (g[1] > 0)
                                      : g[0] + g[1] == 1;
            fourfold = fourfold && ok;
          }
          if (!fourfold) continue;
          const double mass = sector_weight * proj.probability;
          (correct_sector ? report.p_correct_fourfold
                          : report.p_contaminated_fourfold) += mass;
          if (outputs_click) {
            (correct_sector ? report.p_correct_sixfold
                            : report.p_contaminated_sixfold) += mass;
          } else {
            report.rejected_by_postselection += mass;
          }

          if (correct_sector && outputs_click) {
            // Exactly one photon per group here, so the click record is one of
            // the sixteen patterns; check the corrected output.
            DetectorPattern dp;
            for (int g = 0; g < 4; ++g)
              dp.pol[g] = counts[g][1] == 1 ? Pol::V : Pol::H;
            const CorrectionOp fix = correction_for(dp, mode);
            OutputDensityMatrix rho;
            for (const auto& br : proj.branches) {
              rho.accumulate(br.weight, polarization_vector(
                                            apply_correction(br.state, fix),
                                            a, d));
            }
            min_fidelity = std::min(min_fidelity, rho.fidelity_with(target));
            saw_correct_sixfold = true;
          }
        }
      }
    }
  }
  report.min_correct_sixfold_fidelity = saw_correct_sixfold ? min_fidelity : 0.0;
  return report;
}

}  // namespace reencoder
