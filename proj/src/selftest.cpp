#include "reencoder/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "reencoder/circuit.hpp"
#include "reencoder/mismatch.hpp"

namespace reencoder {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Harness {
  std::ostream& out;
  bool all_ok = true;

  void check(const std::string& name, bool ok, const std::string& detail) {
    if (ok) {
      out << "[ok]   " << name << "\n";
    } else {
      out << "[FAIL] " << name << ": " << detail << "\n";
      all_ok = false;
    }
  }
};

std::string num(double x) {
  std::ostringstream ss;
  ss.precision(6);
  ss << x;
  return ss.str();
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Replays the first fusion through the public element primitives and scores
// the herald sector against its frozen form: either click on beam 4 carries
// probability 1/4 and leaves the even/odd three-photon code word on (a,d,2').
// Returns the worst deviation; a wrong beam-splitter reflection phase flips
// the conditional word's parity and scores ~1.
double fusion1_regression_error(Amplitude pbs_reflection_phase) {
  PhotonicState s = bell_sources_state(std::nullopt);
  s = apply_hwp22_5(s, beam::b);
  s = apply_hwp22_5(s, beam::c);
  s = apply_pbs_general(s, beam::b, beam::c, beam::two_prime, beam::four,
                        pbs_reflection_phase);
  s = apply_hwp22_5(s, beam::four);
  s = apply_hwp22_5(s, beam::two_prime);

  const std::vector<SpatialMode> word{beam::a, beam::d, beam::two_prime};
  double err = 0.0;
  for (Pol herald : {Pol::H, Pol::V}) {
    ModePattern mp;
    mp[beam::four] =
        herald == Pol::H ? std::make_pair(1, 0) : std::make_pair(0, 1);
    auto res = project_pattern(s, mp, {beam::four});
    err = std::max(err, std::abs(res.probability - 0.25));
    if (res.branches.size() != 1) return 1.0;
    const LogicalQubit expect =
        herald == Pol::H ? LogicalQubit{1.0, 0.0} : LogicalQubit{0.0, 1.0};
    const PhotonicState target = parity_state(expect, 3, word);
    err = std::max(
        err, std::abs(inner_product(target, res.branches[0].state) - 1.0));
  }
  return err;
}

// Scores a candidate quarter-wave matrix against the frozen single-photon
// regression (H+V)/sqrt2 -> (H+iV)/sqrt2. The conjugate convention maps to the
// orthogonal state and scores 1.
double qwp_regression_error(const std::array<Amplitude, 4>& u) {
  const SpatialMode m{"q"};
  const double r = 1.0 / std::sqrt(2.0);
  PhotonicState in = PhotonicState::single_photon(m, Pol::H) +
                     PhotonicState::single_photon(m, Pol::V);
  in *= r;
  PhotonicState expect =
      PhotonicState::single_photon(m, Pol::H) +
      Amplitude(0.0, 1.0) * PhotonicState::single_photon(m, Pol::V);
  expect *= r;
  return std::abs(inner_product(expect, apply_polarization_unitary(in, m, u)) -
                  1.0);
}

void check_fusion1(Harness& h) {
  auto res = type1_fusion_stage(std::nullopt);
  double err = std::abs(res.failure_probability - 0.5);
  for (int i = 0; i < 2; ++i) {
    const auto& o = res.success[i];
    err = std::max(err, std::abs(o.probability - 0.25));
    if (o.branches.size() != 1) {
      h.check("fusion1-herald", false, "herald split into tagged branches");
      return;
    }
    const LogicalQubit expect =
        i == 0 ? LogicalQubit{1.0, 0.0} : LogicalQubit{0.0, 1.0};
    const PhotonicState target = parity_state(
        expect, 3, {beam::a, beam::d, beam::two_prime});
    err = std::max(
        err, std::abs(inner_product(target, o.branches[0].state) - 1.0));
  }
  h.check("fusion1-herald", err <= 1e-12, "deviation " + num(err));
}

void check_fusion1_expansion(Harness& h) {
  const double err = fusion1_regression_error(1.0);
  h.check("fusion1-expansion", err <= 1e-12, "deviation " + num(err));
}

void check_z90_classes(Harness& h) {
  static const std::pair<const char*, FlipClass> table[] = {
      {"HHHH", FlipClass::None},  {"HVVH", FlipClass::None},
      {"VVHV", FlipClass::None},  {"VHVV", FlipClass::None},
      {"VHHV", FlipClass::Phase}, {"VVVV", FlipClass::Phase},
      {"HVHH", FlipClass::Phase}, {"HHVH", FlipClass::Phase},
      {"HHHV", FlipClass::Bit},   {"HVVV", FlipClass::Bit},
      {"VVHH", FlipClass::Bit},   {"VHVH", FlipClass::Bit},
      {"VHHH", FlipClass::Both},  {"VVVH", FlipClass::Both},
      {"HVHV", FlipClass::Both},  {"HHVV", FlipClass::Both},
  };
  for (const auto& [pat, expect] : table) {
    const FlipClass got =
        flip_class_for(DetectorPattern::from_string(pat), GateMode::Z90);
    if (got != expect) {
      h.check("z90-classes", false,
              std::string(pat) + " classed as " + to_string(got));
      return;
    }
  }
  h.check("z90-classes", true, "");
}

void check_qwp_phase(Harness& h) {
  const SpatialMode m{"q"};
  const double r = 1.0 / std::sqrt(2.0);
  PhotonicState in = PhotonicState::single_photon(m, Pol::H) +
                     PhotonicState::single_photon(m, Pol::V);
  in *= r;
  PhotonicState expect =
      PhotonicState::single_photon(m, Pol::H) +
      Amplitude(0.0, 1.0) * PhotonicState::single_photon(m, Pol::V);
  expect *= r;
  const double err =
      std::abs(inner_product(expect, apply_qwp0(in, m)) - 1.0);
  h.check("qwp-phase", err <= 1e-12, "deviation " + num(err));
}

void check_ideal_runs(Harness& h) {
  std::mt19937_64 rng(12345);
  double worst_prob = 0.0;
  double worst_class = 0.0;
  double min_fidelity = 1.0;
  for (int i = 0; i < 20; ++i) {
    BlochAngles angles{std::acos(1.0 - 2.0 * unit_double(rng)),
                       2.0 * kPi * unit_double(rng)};
    for (GateMode mode : {GateMode::Identity, GateMode::Z90}) {
      CircuitConfig cfg;
      cfg.input = angles.to_qubit();
      cfg.gate_mode = mode;
      const ReencoderResult res = run(cfg);
      for (const auto& o : res.outcomes) {
        worst_prob = std::max(worst_prob, std::abs(o.probability - 1.0 / 64));
        min_fidelity = std::min(min_fidelity, o.corrected_fidelity);
      }
      for (double pc : res.per_class_probability)
        worst_class = std::max(worst_class, std::abs(pc - 1.0 / 16));
      worst_prob = std::max(
          worst_prob, std::abs(res.total_success_probability - 0.25));
      min_fidelity = std::min(min_fidelity, res.corrected_output_fidelity);
    }
  }
  h.check("pattern-probabilities", worst_prob <= 1e-12 && worst_class <= 1e-12,
          "pattern dev " + num(worst_prob) + ", class dev " + num(worst_class));
  h.check("corrected-fidelity", min_fidelity >= 1.0 - 1e-12,
          "min " + num(min_fidelity));
}

void check_mismatch_oracle(Harness& h) {
  const MismatchParams points[] = {{0.3, 0.8}, {0.65, 0.25}};
  const BlochAngles inputs[] = {{0.9, 2.1}, {2.2, 5.0}};
  double worst_entry = 0.0;
  double worst_trace = 0.0;
  for (const auto& mm : points) {
    for (const auto& angles : inputs) {
      const LogicalQubit q = angles.to_qubit();
      for (GateMode mode : {GateMode::Identity, GateMode::Z90}) {
        const auto rhos = simulate_all_pattern_rhos(q, mm, mode);
        for (const auto& [pattern, rho] : rhos) {
          const SignVariant v = variant_for(flip_class_for(pattern, mode));
          const OutputDensityMatrix oracle = closed_form_rho(q, mm, v, mode);
          worst_entry = std::max(worst_entry, rho.max_abs_diff(oracle));
          worst_trace = std::max(
              worst_trace,
              std::abs(rho.trace() -
                       closed_form_probability(q, mm, v, mode)));
        }
      }
    }
  }
  h.check("mismatch-oracle", worst_entry <= 1e-10 && worst_trace <= 1e-12,
          "entry dev " + num(worst_entry) + ", trace dev " + num(worst_trace));
}

void check_average_fidelity(Harness& h) {
  struct Pin {
    MismatchParams mm;
    double value;
  };
  const Pin pins[] = {
      {{1.0, 1.0}, 1.0}, {{0.0, 0.0}, 0.5}, {{1.0, 0.0}, 2.0 / 3.0}};
  double worst = 0.0;
  for (const auto& pin : pins)
    worst = std::max(
        worst, std::abs(average_fidelity(pin.mm, GateMode::Identity) -
                        pin.value));

  const MismatchParams mm{0.4, 0.6};
  const double fp =
      average_fidelity_variant(mm, GateMode::Identity, SignVariant::Plus);
  const double fm =
      average_fidelity_variant(mm, GateMode::Identity, SignVariant::Minus);
  const double fz = average_fidelity(mm, GateMode::Z90);
  worst = std::max(worst, std::abs(fp - fm));
  worst = std::max(worst, std::abs(fp - fz));
  h.check("average-fidelity", worst <= 1e-9, "deviation " + num(worst));
}

void check_bookkeeping(Harness& h) {
  double worst = 0.0;
  for (const auto& mm :
       {std::optional<MismatchParams>{}, std::optional<MismatchParams>{
                                             MismatchParams{0.5, 0.7}}}) {
    CircuitConfig cfg;
    cfg.input = BlochAngles{1.1, 0.7}.to_qubit();
    cfg.mismatch = mm;
    const ReencoderResult res = run(cfg);
    double total = res.failure_probability;
    for (const auto& o : res.outcomes) total += o.probability;
    worst = std::max(worst, std::abs(total - 1.0));
    double fail = 0.0;
    for (const auto& [sig, p] : res.failure_breakdown) fail += p;
    worst = std::max(worst, std::abs(fail - res.failure_probability));
  }
  h.check("probability-bookkeeping", worst <= 1e-10, "deviation " + num(worst));
}

void check_fault_injection(Harness& h) {
  // Deliberately wrong conventions must trip the frozen regressions, or the
  // regressions prove nothing.
  const double qwp_err = qwp_regression_error({1.0, 0.0, 0.0, {0.0, -1.0}});
  h.check("fault-qwp-conjugate", qwp_err > 0.5,
          "conjugate plate scored only " + num(qwp_err));
  const double pbs_err = fusion1_regression_error(Amplitude(0.0, 1.0));
  h.check("fault-pbs-phase", pbs_err > 0.5,
          "phased splitter scored only " + num(pbs_err));
}

}  // namespace

bool run_selftest(std::ostream& out) {
  Harness h{out};
  check_fusion1(h);
  check_fusion1_expansion(h);
  check_z90_classes(h);
  check_qwp_phase(h);
  check_ideal_runs(h);
  check_mismatch_oracle(h);
  check_average_fidelity(h);
  check_bookkeeping(h);
  check_fault_injection(h);
  out << (h.all_ok ? "selftest: all checks passed"
                   : "selftest: FAILURES detected")
      << "\n";
  return h.all_ok;
}

}  // namespace reencoder
