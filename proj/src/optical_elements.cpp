#include "reencoder/optical_elements.hpp"

#include <cmath>
#include <stdexcept>

namespace reencoder {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Exact for the amplitudes that actually occur (+-1, +-i, 1/sqrt2 products),
// unlike std::pow on complex arguments.
Amplitude int_pow(Amplitude c, int k) {
  Amplitude r = 1.0;
  for (int i = 0; i < k; ++i) r *= c;
  return r;
}

// Terms of (sum_j c_j X_j)^n as (exponent multiset, multinomial coefficient).
struct PowerTerm {
  OccupationConfig exponents;
  Amplitude coeff;
};

void expand_power_rec(const KeyTargets& targets, std::size_t idx, int remaining,
                      double multinom_num, OccupationConfig exps, Amplitude coeff,
                      std::vector<PowerTerm>& out) {
  if (idx + 1 == targets.size()) {
    // Last target absorbs whatever is left.
    if (remaining > 0) {
      Amplitude c = coeff * int_pow(targets[idx].second, remaining);
      exps.add(targets[idx].first, remaining);
      out.push_back({std::move(exps), c * (multinom_num / factorial(remaining))});
    } else {
      out.push_back({std::move(exps), coeff * multinom_num});
    }
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    OccupationConfig e = exps;
    Amplitude c = coeff;
    if (k > 0) {
      e.add(targets[idx].first, k);
      c *= int_pow(targets[idx].second, k);
    }
    expand_power_rec(targets, idx + 1, remaining - k, multinom_num / factorial(k),
                     std::move(e), c, out);
  }
}

std::vector<PowerTerm> expand_power(const KeyTargets& targets, int n) {
  std::vector<PowerTerm> out;
  if (targets.empty()) return out;  // annihilated key: contributes nothing
  expand_power_rec(targets, 0, n, factorial(n), OccupationConfig{}, 1.0, out);
  return out;
}

}  // namespace

PhotonicState apply_key_map(const PhotonicState& s, const KeyMap& map,
                            double eps) {
  PhotonicState out;
  for (const auto& [cfg, amp] : s.terms()) {
    // Accumulate creation-operator monomials for this configuration.
    std::vector<PowerTerm> monos{{OccupationConfig{}, amp}};
    double source_norm = 1.0;  // product of 1/sqrt(n_i!)
    for (const auto& [key, n] : cfg.entries()) {
      source_norm *= 1.0 / std::sqrt(factorial(n));
      auto targets = map(key);
      KeyTargets t = targets ? *targets : KeyTargets{{key, 1.0}};
      auto powers = expand_power(t, n);
      std::vector<PowerTerm> next;
      next.reserve(monos.size() * powers.size());
      for (const auto& m : monos) {
        for (const auto& p : powers) {
          OccupationConfig e = m.exponents;
          for (const auto& [k, c] : p.exponents.entries()) e.add(k, c);
          next.push_back({std::move(e), m.coeff * p.coeff});
        }
      }
      monos = std::move(next);
    }
    for (auto& m : monos) {
      double target_norm = 1.0;  // product of sqrt(m_j!)
      for (const auto& [k, c] : m.exponents.entries())
        target_norm *= std::sqrt(factorial(c));
      out.add_term(m.exponents, m.coeff * source_norm * target_norm);
    }
  }
  return pruned(std::move(out), eps);
}

PhotonicState apply_pbs_general(const PhotonicState& s, const SpatialMode& in1,
                                const SpatialMode& in2, const SpatialMode& out1,
                                const SpatialMode& out2,
                                Amplitude reflection_phase, double eps) {
  if (in1 == in2 || out1 == out2 || out1 == in1 || out1 == in2 ||
      out2 == in1 || out2 == in2) {
    throw std::invalid_argument("apply_pbs: modes must be four distinct beams");
  }
  for (const auto& [cfg, amp] : s.terms()) {
    if (cfg.photons_in_mode(out1) > 0 || cfg.photons_in_mode(out2) > 0)
      throw std::invalid_argument("apply_pbs: output mode already occupied");
  }
  auto map = [&](const PhotonKey& key) -> std::optional<KeyTargets> {
    if (key.mode == in1) {
      if (key.pol == Pol::H)
        return KeyTargets{{{out1, Pol::H, key.tag}, 1.0}};
      return KeyTargets{{{out2, Pol::V, key.tag}, reflection_phase}};
    }
    if (key.mode == in2) {
      if (key.pol == Pol::H)
        return KeyTargets{{{out2, Pol::H, key.tag}, 1.0}};
      return KeyTargets{{{out1, Pol::V, key.tag}, reflection_phase}};
    }
    return std::nullopt;
  };
  return apply_key_map(s, map, eps);
}

PhotonicState apply_pbs(const PhotonicState& s, const SpatialMode& in1,
                        const SpatialMode& in2, const SpatialMode& out1,
                        const SpatialMode& out2, double eps) {
  return apply_pbs_general(s, in1, in2, out1, out2, 1.0, eps);
}

PhotonicState apply_polarization_unitary(const PhotonicState& s,
                                         const SpatialMode& mode,
                                         const std::array<Amplitude, 4>& u,
                                         double eps) {
  auto map = [&](const PhotonKey& key) -> std::optional<KeyTargets> {
    if (key.mode != mode) return std::nullopt;
    KeyTargets t;
    const Amplitude to_h = key.pol == Pol::H ? u[0] : u[1];
    const Amplitude to_v = key.pol == Pol::H ? u[2] : u[3];
    if (to_h != Amplitude{0.0}) t.push_back({{mode, Pol::H, key.tag}, to_h});
    if (to_v != Amplitude{0.0}) t.push_back({{mode, Pol::V, key.tag}, to_v});
    return t;
  };
  return apply_key_map(s, map, eps);
}

PhotonicState apply_hwp22_5(const PhotonicState& s, const SpatialMode& mode,
                            double eps) {
  const double r = 1.0 / std::sqrt(2.0);
  return apply_polarization_unitary(s, mode, {r, r, r, -r}, eps);
}

PhotonicState apply_qwp0(const PhotonicState& s, const SpatialMode& mode,
                         double eps) {
  return apply_polarization_unitary(
      s, mode, {1.0, 0.0, 0.0, Amplitude{0.0, 1.0}}, eps);
}

PhotonicState apply_pauli(const PhotonicState& s, const SpatialMode& mode,
                          PauliOp op, double eps) {
  if (op == PauliOp::X)
    return apply_polarization_unitary(s, mode, {0.0, 1.0, 1.0, 0.0}, eps);
  return apply_polarization_unitary(s, mode, {1.0, 0.0, 0.0, -1.0}, eps);
}

}  // namespace reencoder
