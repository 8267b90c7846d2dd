#include "reencoder/circuit.hpp"

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
using beam::two_prime;

ElementStep hwp_step(const SpatialMode& m) {
  return {"hwp22.5", {m}, [m](const PhotonicState& s) {
            return apply_hwp22_5(s, m);
          }};
}

PhotonicState bell_with_tagged_partner(const SpatialMode& keep,
                                       const SpatialMode& tagged,
                                       DistTag tag) {
  PhotonicState s;
  for (Pol p : {Pol::H, Pol::V}) {
    OccupationConfig cfg;
    cfg.add({keep, p, DistTag::Matched});
    cfg.add({tagged, p, tag});
    s.add_term(cfg, 1.0 / std::sqrt(2.0));
  }
  return s;
}

PhotonicState word_with_tagged_photon(const LogicalQubit& q,
                                      const SpatialMode& tagged,
                                      const SpatialMode& partner,
                                      DistTag tag) {
  // Two-photon code word with the `tagged` photon re-labeled: relabeling
  // commutes with the diagonal-basis expansion, so build and then retag.
  PhotonicState ideal = parity_state(q, 2, {tagged, partner});
  PhotonicState out;
  for (const auto& [cfg, amp] : ideal.terms()) {
    OccupationConfig moved;
    for (const auto& [key, c] : cfg.entries()) {
      moved.add({key.mode, key.pol, key.mode == tagged ? tag : key.tag}, c);
    }
    out.add_term(moved, amp);
  }
  return out;
}

std::string group_signature(const ModePattern& p) {
  int totals[4] = {0, 0, 0, 0};
  for (const auto& [mode, hv] : p) {
    const int g = mode.id[0] - '1';
    totals[g] = hv.first + hv.second;
  }
  std::string s;
  for (int t : totals) s += static_cast<char>('0' + t);
  return s;
}

}  // namespace

MismatchParams::MismatchParams(double e1, double e2) : eta1(e1), eta2(e2) {
  if (!(eta1 >= 0.0 && eta1 <= 1.0) || !(eta2 >= 0.0 && eta2 <= 1.0))
    throw std::invalid_argument("mismatch overlaps must lie in [0, 1]");
}

std::vector<ElementStep> fusion1_steps() {
  std::vector<ElementStep> steps;
  steps.push_back(hwp_step(b));
  steps.push_back(hwp_step(c));
  steps.push_back({"pbs", {b, c, two_prime, four}, [](const PhotonicState& s) {
                     return apply_pbs(s, b, c, two_prime, four);
                   }});
  steps.push_back(hwp_step(four));
  steps.push_back(hwp_step(two_prime));
  return steps;
}

std::vector<ElementStep> fusion2_steps(GateMode mode) {
  std::vector<ElementStep> steps;
  if (mode == GateMode::Z90) {
    steps.push_back({"qwp0", {e}, [](const PhotonicState& s) {
                       return apply_qwp0(s, e);
                     }});
  }
  steps.push_back({"pbs", {two_prime, e, two, three}, [](const PhotonicState& s) {
                     return apply_pbs(s, two_prime, e, two, three);
                   }});
  steps.push_back(hwp_step(two));
  steps.push_back(hwp_step(three));
  return steps;
}

PhotonicState apply_steps(PhotonicState s, const std::vector<ElementStep>& steps) {
  for (const auto& step : steps) s = step.apply(s);
  return s;
}

PhotonicState bell_sources_state(std::optional<double> eta1) {
  PhotonicState pair_ab;
  if (eta1) {
    const double w_match = std::sqrt(*eta1);
    const double w_prime = std::sqrt(1.0 - *eta1);
    pair_ab = Amplitude{w_match} * bell_phi_plus(a, b) +
              Amplitude{w_prime} *
                  bell_with_tagged_partner(a, b, DistTag::Prime);
    pair_ab = pruned(std::move(pair_ab));
  } else {
    pair_ab = bell_phi_plus(a, b);
  }
  return tensor(pair_ab, bell_phi_plus(c, d));
}

PhotonicState input_word_state(const LogicalQubit& q,
                               std::optional<double> eta2) {
  if (!eta2) return parity_state(q, 2, {e, one});
  const double w_match = std::sqrt(*eta2);
  const double w_dp = std::sqrt(1.0 - *eta2);
  PhotonicState s =
      Amplitude{w_match} * parity_state(q, 2, {e, one}) +
      Amplitude{w_dp} *
          word_with_tagged_photon(q, e, one, DistTag::DoublePrime);
  return pruned(std::move(s));
}

PhotonicState build_input_state(const CircuitConfig& cfg) {
  std::optional<double> eta1, eta2;
  if (cfg.mismatch) {
    eta1 = cfg.mismatch->eta1;
    eta2 = cfg.mismatch->eta2;
  }
  return tensor(bell_sources_state(eta1), input_word_state(cfg.input, eta2));
}

PhotonicState state_after_fusion1(const CircuitConfig& cfg) {
  return apply_steps(build_input_state(cfg), fusion1_steps());
}

PhotonicState pre_detection_state(const CircuitConfig& cfg) {
  return apply_steps(state_after_fusion1(cfg), fusion2_steps(cfg.gate_mode));
}

Fusion1Result type1_fusion_stage(std::optional<double> eta1) {
  PhotonicState s = apply_steps(bell_sources_state(eta1), fusion1_steps());
  auto dist = detection_distribution(s, {four});
  Fusion1Result result;
  result.success[0].herald = Pol::H;
  result.success[1].herald = Pol::V;
  for (const auto& [pattern, proj] : dist) {
    auto it = pattern.find(four);
    const int h = it == pattern.end() ? 0 : it->second.first;
    const int v = it == pattern.end() ? 0 : it->second.second;
    if (h + v == 1) {
      auto& slot = result.success[v];
      slot.probability += proj.probability;
      slot.branches.insert(slot.branches.end(), proj.branches.begin(),
                           proj.branches.end());
    } else {
      result.failure_probability += proj.probability;
    }
  }
  return result;
}

LogicalQubit logical_z90_reference(const LogicalQubit& q) {
  return LogicalQubit(q.alpha, Amplitude{0.0, 1.0} * q.beta);
}

PhotonicState canonical_target(const LogicalQubit& q, GateMode mode) {
  const LogicalQubit out =
      mode == GateMode::Z90 ? logical_z90_reference(q) : q;
  return parity_state(out, 2, {a, d});
}

ReencoderResult run(const CircuitConfig& cfg) {
  const PhotonicState s = pre_detection_state(cfg);
  const std::set<SpatialMode> groups{one, two, three, four};
  auto dist = detection_distribution(s, groups);

  ReencoderResult result;
  const Eigen::Vector4cd target =
      polarization_vector(canonical_target(cfg.input, cfg.gate_mode), a, d);

  std::set<ModePattern> success_keys;
  for (const auto& p : all_detector_patterns())
    success_keys.insert(p.to_mode_pattern());

  for (const auto& p : all_detector_patterns()) {
    PatternResult row;
    row.pattern = p;
    row.flip_class = flip_class_for(p, cfg.gate_mode);
    row.correction = correction_for(p, cfg.gate_mode);
    auto it = dist.find(p.to_mode_pattern());
    if (it != dist.end()) {
      row.probability = it->second.probability;
      row.branches = it->second.branches;
    }
    if (cfg.apply_corrections) {
      for (const auto& branch : row.branches) {
        const PhotonicState corrected =
            apply_correction(branch.state, row.correction);
        row.corrected_rho.accumulate(branch.weight,
                                     polarization_vector(corrected, a, d));
      }
      if (row.probability > 0.0)
        row.corrected_fidelity = row.corrected_rho.fidelity_with(target);
      result.corrected_output.mat += row.corrected_rho.mat;
    }
    result.per_class_probability[static_cast<int>(row.flip_class)] +=
        row.probability;
    result.total_success_probability += row.probability;
    result.outcomes.push_back(std::move(row));
  }
  if (cfg.apply_corrections && result.total_success_probability > 0.0) {
    result.corrected_output_fidelity =
        result.corrected_output.fidelity_with(target);
  }
  for (const auto& [pattern, proj] : dist) {
    if (success_keys.count(pattern)) continue;
    result.failure_probability += proj.probability;
    result.failure_breakdown[group_signature(pattern)] += proj.probability;
  }
  return result;
}

}  // namespace reencoder
