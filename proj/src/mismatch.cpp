#include "reencoder/mismatch.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace reencoder {

namespace {

constexpr double kPi = std::numbers::pi;

// x = Re(alpha beta*) without the plate, Im(alpha beta*) with it: the
// interference contrast the first fusion's surviving coherence couples to.
double contrast(const LogicalQubit& q, GateMode mode) {
  const Amplitude ab = q.alpha * std::conj(q.beta);
  return mode == GateMode::Z90 ? ab.imag() : ab.real();
}

Eigen::Vector4cd word_zero() {
  Eigen::Vector4cd v;
  v << 1.0, 0.0, 0.0, 1.0;
  return v / std::sqrt(2.0);
}

Eigen::Vector4cd word_one() {
  Eigen::Vector4cd v;
  v << 0.0, 1.0, 1.0, 0.0;
  return v / std::sqrt(2.0);
}

Eigen::Vector4cd diag_pp() {
  Eigen::Vector4cd v;
  v << 1.0, 1.0, 1.0, 1.0;
  return v / 2.0;
}

Eigen::Vector4cd diag_mm() {
  Eigen::Vector4cd v;
  v << 1.0, -1.0, -1.0, 1.0;
  return v / 2.0;
}

Eigen::Vector4cd target_vector(const LogicalQubit& q, GateMode mode) {
  const LogicalQubit out =
      mode == GateMode::Z90 ? logical_z90_reference(q) : q;
  return out.alpha * word_zero() + out.beta * word_one();
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
// recurrence; standard construction, n up to a few hundred.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

void check_spec(const QuadratureSpec& spec) {
  if (spec.n_cos_theta < 16 || spec.n_phi < 16)
    throw std::invalid_argument("quadrature grid too coarse");
}

}  // namespace

std::string to_string(SignVariant v) {
  return v == SignVariant::Plus ? "plus" : "minus";
}

SignVariant variant_for(FlipClass c) {
  return (c == FlipClass::None || c == FlipClass::Bit) ? SignVariant::Plus
                                                       : SignVariant::Minus;
}

OutputDensityMatrix closed_form_rho(const LogicalQubit& q,
                                    const MismatchParams& mm, SignVariant v,
                                    GateMode mode) {
  const double e1 = mm.eta1, e2 = mm.eta2;
  const double x = contrast(q, mode);
  const double s = v == SignVariant::Plus ? 1.0 : -1.0;

  // Five incoherent pieces: both fusions coherent (the corrected target), the
  // first fusion distinguishable (diagonal-basis pair, one component picking
  // up the surviving second-fusion interference), and the second fusion
  // distinguishable (dephased code words).
  OutputDensityMatrix rho;
  rho.accumulate(e1 * e2 / 64.0, target_vector(q, mode));
  rho.accumulate((1.0 - e1) / 128.0, s > 0 ? diag_pp() : diag_mm());
  rho.accumulate((1.0 - e1) * (1.0 - 2.0 * s * x * e2) / 128.0,
                 s > 0 ? diag_mm() : diag_pp());
  rho.accumulate(e1 * (1.0 - e2) * std::norm(q.alpha) / 64.0, word_zero());
  rho.accumulate(e1 * (1.0 - e2) * std::norm(q.beta) / 64.0, word_one());
  return rho;
}

double closed_form_probability(const LogicalQubit& q, const MismatchParams& mm,
                               SignVariant v, GateMode mode) {
  const double s = v == SignVariant::Plus ? 1.0 : -1.0;
  return (1.0 - s * (1.0 - mm.eta1) * mm.eta2 * contrast(q, mode)) / 64.0;
}

double closed_form_fidelity_numerator(const LogicalQubit& q,
                                      const MismatchParams& mm, SignVariant v,
                                      GateMode mode) {
  const double e1 = mm.eta1, e2 = mm.eta2;
  const double x = contrast(q, mode);
  const double ab2 = std::norm(q.alpha) * std::norm(q.beta);
  const double s = v == SignVariant::Plus ? 1.0 : -1.0;
  return (1.0 + e1 - 4.0 * e1 * (1.0 - e2) * ab2 -
          s * (1.0 - e1) * e2 * x * (1.0 - 2.0 * s * x)) /
         128.0;
}

double closed_form_fidelity(const LogicalQubit& q, const MismatchParams& mm,
                            SignVariant v, GateMode mode) {
  return closed_form_fidelity_numerator(q, mm, v, mode) /
         closed_form_probability(q, mm, v, mode);
}

std::vector<std::pair<DetectorPattern, OutputDensityMatrix>>
simulate_all_pattern_rhos(const LogicalQubit& q, const MismatchParams& mm,
                          GateMode mode) {
  CircuitConfig cfg;
  cfg.input = q;
  cfg.gate_mode = mode;
  cfg.mismatch = mm;
  const ReencoderResult result = run(cfg);
  std::vector<std::pair<DetectorPattern, OutputDensityMatrix>> out;
  out.reserve(result.outcomes.size());
  for (const auto& row : result.outcomes)
    out.push_back({row.pattern, row.corrected_rho});
  return out;
}

OutputDensityMatrix simulate_rho(const LogicalQubit& q,
                                 const MismatchParams& mm, SignVariant v,
                                 GateMode mode,
                                 const DetectorPattern& pattern) {
  if (variant_for(flip_class_for(pattern, mode)) != v)
    throw std::invalid_argument(
        "simulate_rho: pattern does not belong to the requested variant");
  for (auto& [p, rho] : simulate_all_pattern_rhos(q, mm, mode)) {
    if (p == pattern) return rho;
  }
  throw std::logic_error("simulate_rho: pattern missing from enumeration");
}

double average_fidelity_variant(const MismatchParams& mm, GateMode mode,
                                SignVariant v, const QuadratureSpec& spec) {
  check_spec(spec);
  std::vector<double> u, wu;
  gauss_legendre(spec.n_cos_theta, u, wu);
  double acc = 0.0;
  for (int i = 0; i < spec.n_cos_theta; ++i) {
    const double theta = std::acos(u[i]);
    double phi_acc = 0.0;
    for (int k = 0; k < spec.n_phi; ++k) {
      const double phi = 2.0 * kPi * (k + 0.5) / spec.n_phi;
      const LogicalQubit q = BlochAngles{theta, phi}.to_qubit();
      phi_acc += closed_form_fidelity(q, mm, v, mode);
    }
    acc += wu[i] * (phi_acc / spec.n_phi);
  }
  return acc / 2.0;
}

double average_fidelity(const MismatchParams& mm, GateMode mode,
                        const QuadratureSpec& spec) {
  return average_fidelity_variant(mm, mode, SignVariant::Plus, spec);
}

namespace {

SweepRow sweep_row(double e1, double e2, GateMode mode,
                   const QuadratureSpec& spec) {
  const MismatchParams mm(e1, e2);
  SweepRow row;
  row.eta1 = e1;
  row.eta2 = e2;
  row.f_ave = average_fidelity(mm, mode, spec);
  // Pattern probabilities averaged the same way; the odd-in-x term integrates
  // to zero so both means collapse to 1/64, but they are integrated, not
  // assumed.
  std::vector<double> u, wu;
  gauss_legendre(spec.n_cos_theta, u, wu);
  double pp = 0.0, pm = 0.0;
  for (int i = 0; i < spec.n_cos_theta; ++i) {
    const double theta = std::acos(u[i]);
    double pp_phi = 0.0, pm_phi = 0.0;
    for (int k = 0; k < spec.n_phi; ++k) {
      const double phi = 2.0 * kPi * (k + 0.5) / spec.n_phi;
      const LogicalQubit q = BlochAngles{theta, phi}.to_qubit();
      pp_phi += closed_form_probability(q, mm, SignVariant::Plus, mode);
      pm_phi += closed_form_probability(q, mm, SignVariant::Minus, mode);
    }
    pp += wu[i] * (pp_phi / spec.n_phi);
    pm += wu[i] * (pm_phi / spec.n_phi);
  }
  row.p_plus_mean = pp / 2.0;
  row.p_minus_mean = pm / 2.0;
  return row;
}

// Rows are independent, so they run on a small worker pool; each worker owns a
// disjoint index stride and writes its slot directly, keeping the output order
// (and bytes) identical to a serial evaluation.
std::vector<SweepRow> evaluate_rows(
    const std::vector<std::pair<double, double>>& points, GateMode mode,
    const QuadratureSpec& spec) {
  std::vector<SweepRow> rows(points.size());
  const auto n = points.size();
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(
                                   std::thread::hardware_concurrency(), n));
  std::vector<std::future<void>> jobs;
  jobs.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers)
        rows[i] = sweep_row(points[i].first, points[i].second, mode, spec);
    }));
  }
  for (auto& j : jobs) j.get();
  return rows;
}

}  // namespace

std::vector<SweepRow> mismatch_sweep(int grid_n, GateMode mode,
                                     const QuadratureSpec& spec) {
  if (grid_n < 2) throw std::invalid_argument("sweep grid needs >= 2 points");
  std::vector<std::pair<double, double>> points;
  points.reserve(static_cast<std::size_t>(grid_n) * grid_n);
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      points.emplace_back(static_cast<double>(i) / (grid_n - 1),
                          static_cast<double>(j) / (grid_n - 1));
    }
  }
  return evaluate_rows(points, mode, spec);
}

std::vector<SweepRow> mismatch_diagonal(int points, GateMode mode,
                                        const QuadratureSpec& spec) {
  if (points < 2) throw std::invalid_argument("diagonal needs >= 2 points");
  std::vector<std::pair<double, double>> grid;
  grid.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double eta = static_cast<double>(i) / (points - 1);
    grid.emplace_back(eta, eta);
  }
  return evaluate_rows(grid, mode, spec);
}

}  // namespace reencoder
