#pragma once

#include <vector>

#include "reencoder/circuit.hpp"

namespace reencoder {

// The 16 fourfold patterns fall into two families under partial
// distinguishability: Plus (classes None and Bit; identity-like correction)
// and Minus (classes Phase and Both; sign-flip correction involved).
enum class SignVariant { Plus, Minus };

std::string to_string(SignVariant v);

SignVariant variant_for(FlipClass c);

// Closed-form corrected conditional density operator for one fourfold pattern
// of the given variant, unnormalized: the trace is the pattern probability.
OutputDensityMatrix closed_form_rho(const LogicalQubit& q,
                                    const MismatchParams& mm, SignVariant v,
                                    GateMode mode);

// Pattern probability: (1/64) [1 -+ (1-eta1) eta2 x], where x = Re(alpha
// conj(beta)) without the plate and Im(alpha conj(beta)) with it.
double closed_form_probability(const LogicalQubit& q, const MismatchParams& mm,
                               SignVariant v, GateMode mode);

// Numerator <target|rho|target> of the conditional fidelity.
double closed_form_fidelity_numerator(const LogicalQubit& q,
                                      const MismatchParams& mm, SignVariant v,
                                      GateMode mode);

double closed_form_fidelity(const LogicalQubit& q, const MismatchParams& mm,
                            SignVariant v, GateMode mode);

// Simulator-side counterpart: runs the tagged-photon circuit, conditions on
// `pattern`, applies that pattern's correction, and accumulates the branch
// density operator. Throws if the pattern's variant differs from `v`.
OutputDensityMatrix simulate_rho(const LogicalQubit& q,
                                 const MismatchParams& mm, SignVariant v,
                                 GateMode mode, const DetectorPattern& pattern);

// All 16 corrected pattern operators from a single circuit evolution.
std::vector<std::pair<DetectorPattern, OutputDensityMatrix>>
simulate_all_pattern_rhos(const LogicalQubit& q, const MismatchParams& mm,
                          GateMode mode);

// Bloch-sphere average grid: Gauss-Legendre in cos(theta), uniform in phi.
struct QuadratureSpec {
  int n_cos_theta = 64;
  int n_phi = 128;
};

// Input-averaged conditional fidelity from the closed forms. The result is
// variant-independent up to quadrature error; the _variant entry point exposes
// that check.
double average_fidelity(const MismatchParams& mm, GateMode mode,
                        const QuadratureSpec& spec = {});
double average_fidelity_variant(const MismatchParams& mm, GateMode mode,
                                SignVariant v,
                                const QuadratureSpec& spec = {});

struct SweepRow {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double f_ave = 0.0;
  double p_plus_mean = 0.0;   // Plus-pattern probability, input-averaged
  double p_minus_mean = 0.0;  // Minus-pattern probability, input-averaged
};

// Uniform grid_n x grid_n sweep over (eta1, eta2) in [0,1]^2.
std::vector<SweepRow> mismatch_sweep(int grid_n, GateMode mode,
                                     const QuadratureSpec& spec = {});

// Diagonal cut eta1 = eta2 = eta with `points` uniform samples of [0,1].
std::vector<SweepRow> mismatch_diagonal(int points, GateMode mode,
                                        const QuadratureSpec& spec = {});

}  // namespace reencoder
