#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "reencoder/pdc.hpp"

using namespace reencoder;

namespace {

const SpatialMode mx{"x"};
const SpatialMode my{"y"};

OccupationConfig pairs(int hh, int vv) {
  OccupationConfig cfg;
  if (hh > 0) {
    cfg.add({mx, Pol::H, DistTag::Matched}, hh);
    cfg.add({my, Pol::H, DistTag::Matched}, hh);
  }
  if (vv > 0) {
    cfg.add({mx, Pol::V, DistTag::Matched}, vv);
    cfg.add({my, Pol::V, DistTag::Matched}, vv);
  }
  return cfg;
}

}  // namespace

TEST_CASE("k-pair emissions are uniform over the pair splittings") {
  SUBCASE("zero pairs is vacuum") {
    const PhotonicState s = pdc_pair_term(0, mx, my);
    CHECK(s.term_count() == 1);
    CHECK(s.amplitude(OccupationConfig::vacuum()).real() ==
          doctest::Approx(1.0));
  }
  SUBCASE("one pair is the maximally entangled pair") {
    const PhotonicState s = pdc_pair_term(1, mx, my);
    CHECK(s.term_count() == 2);
    CHECK(s.amplitude(pairs(1, 0)).real() == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(s.amplitude(pairs(0, 1)).real() == doctest::Approx(1 / std::sqrt(2.0)));
  }
  SUBCASE("two pairs spread over three splittings") {
    const PhotonicState s = pdc_pair_term(2, mx, my);
    CHECK(s.term_count() == 3);
    for (int hh = 0; hh <= 2; ++hh)
      CHECK(s.amplitude(pairs(hh, 2 - hh)).real() ==
            doctest::Approx(1 / std::sqrt(3.0)));
    CHECK(squared_norm(s) == doctest::Approx(1.0));
  }
}

TEST_CASE("the truncated source weights sectors geometrically") {
  const double chi = 0.3;
  const PhotonicState s = pdc_state(chi, mx, my, 3);
  CHECK(squared_norm(s) == doctest::Approx(1.0));
  // sector mass proportional to chi^(2k) within the truncation
  double w0 = std::norm(s.amplitude(OccupationConfig::vacuum()));
  double w1 = std::norm(s.amplitude(pairs(1, 0))) +
              std::norm(s.amplitude(pairs(0, 1)));
  double w2 = 0.0;
  for (int hh = 0; hh <= 2; ++hh)
    w2 += std::norm(s.amplitude(pairs(hh, 2 - hh)));
  CHECK(w1 / w0 == doctest::Approx(chi * chi));
  CHECK(w2 / w0 == doctest::Approx(std::pow(chi, 4)));
}

TEST_CASE("the nonmaximal source biases each pair independently") {
  const Amplitude big_a{0.8}, big_b{0.6};
  SUBCASE("single pair") {
    const PhotonicState s = pdc_nonmaximal_term(1, big_a, big_b, mx, my);
    CHECK(std::norm(s.amplitude(pairs(1, 0))) == doctest::Approx(0.64));
    CHECK(std::norm(s.amplitude(pairs(0, 1))) == doctest::Approx(0.36));
  }
  SUBCASE("two pairs keep the A^j B^(k-j) profile") {
    const PhotonicState s = pdc_nonmaximal_term(2, big_a, big_b, mx, my);
    CHECK(squared_norm(s) == doctest::Approx(1.0));
    const double a2 = std::norm(s.amplitude(pairs(2, 0)));
    const double ab = std::norm(s.amplitude(pairs(1, 1)));
    const double b2 = std::norm(s.amplitude(pairs(0, 2)));
    CHECK(ab / a2 == doctest::Approx(0.36 / 0.64));
    CHECK(b2 / ab == doctest::Approx(0.36 / 0.64));
  }
  SUBCASE("balanced bias reduces to the uniform emission") {
    const Amplitude r{1.0 / std::sqrt(2.0)};
    const PhotonicState uniform = pdc_pair_term(2, mx, my);
    const PhotonicState biased = pdc_nonmaximal_term(2, r, r, mx, my);
    CHECK(state_overlap(uniform, biased) == doctest::Approx(1.0));
  }
}

TEST_CASE("parameter validation rejects out-of-range settings") {
  PdcParams p;
  CHECK_NOTHROW(p.validate());
  p.chi = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.chi = 1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.chi = 0.01;
  p.truncation_order = 2;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.truncation_order = 5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.truncation_order = 4;
  CHECK_NOTHROW(p.validate());

  CHECK_THROWS_AS(pdc_pair_term(-1, mx, my), std::invalid_argument);
  CHECK_THROWS_AS(pdc_pair_term(1, mx, mx), std::invalid_argument);
  CHECK_THROWS_AS(pdc_state(0.0, mx, my, 3), std::invalid_argument);
}

TEST_CASE("fourfold acceptance from the intended sector matches the weights") {
  PdcParams params;  // chi = 0.01, order 3, number-resolving
  const LogicalQubit q = BlochAngles{1.1, 0.0}.to_qubit();
  const ContaminationReport rep =
      contamination_analysis(params, q, GateMode::Identity);

  // sector (1,1,1) carries chi^6/Z of the source mass and succeeds 1/4
  const double c2 = params.chi * params.chi;
  const double z = 1.0 + 3.0 * c2 + 6.0 * c2 * c2 + 10.0 * c2 * c2 * c2;
  CHECK(rep.p_correct_fourfold ==
        doctest::Approx(std::pow(params.chi, 6) / (4.0 * z)).epsilon(1e-12));
  CHECK(rep.p_correct_sixfold == doctest::Approx(rep.p_correct_fourfold));
  CHECK(rep.eight_to_six_ratio == doctest::Approx(1.5 * c2));
}

TEST_CASE("output coincidence kills every imposter the truncation admits") {
  PdcParams params;
  const LogicalQubit q = BlochAngles{1.1, 0.0}.to_qubit();

  for (DetectorModel dm :
       {DetectorModel::NumberResolving, DetectorModel::Threshold}) {
    params.detector_model = dm;
    params.truncation_order = 3;
    const ContaminationReport rep =
        contamination_analysis(params, q, GateMode::Identity);
    // wrong-sector emissions can fire the four detectors...
    CHECK(rep.p_contaminated_fourfold > 0.0);
    // ...but at three total pairs none also covers both output beams
    CHECK(rep.p_contaminated_sixfold == 0.0);
    CHECK(rep.rejected_by_postselection > 0.0);
    CHECK(rep.min_correct_sixfold_fidelity == doctest::Approx(1.0));
  }
}

TEST_CASE("four-pair events leak through threshold detectors only") {
  PdcParams params;
  params.truncation_order = 4;
  const LogicalQubit q = BlochAngles{1.1, 0.0}.to_qubit();

  params.detector_model = DetectorModel::NumberResolving;
  const ContaminationReport nr =
      contamination_analysis(params, q, GateMode::Identity);
  CHECK(nr.p_contaminated_sixfold == 0.0);

  params.detector_model = DetectorModel::Threshold;
  const ContaminationReport th =
      contamination_analysis(params, q, GateMode::Identity);
  CHECK(th.p_contaminated_sixfold > 0.0);
  // still far below the intended signal at small chi
  CHECK(th.p_contaminated_sixfold < 1e-3 * th.p_correct_sixfold);
}

TEST_CASE("contamination bookkeeping is internally consistent") {
  PdcParams params;
  params.truncation_order = 4;
  params.detector_model = DetectorModel::Threshold;
  const LogicalQubit q = BlochAngles{0.7, 1.9}.to_qubit();
  for (GateMode mode : {GateMode::Identity, GateMode::Z90}) {
    const ContaminationReport rep = contamination_analysis(params, q, mode);
    CHECK(rep.chi == params.chi);
    CHECK(rep.truncation_order == 4);
    CHECK(rep.detector_model == DetectorModel::Threshold);
    CHECK(rep.p_correct_sixfold <= rep.p_correct_fourfold + 1e-18);
    CHECK(rep.p_contaminated_sixfold <=
          rep.p_contaminated_fourfold + 1e-18);
    const double fourfold =
        rep.p_correct_fourfold + rep.p_contaminated_fourfold;
    const double sixfold = rep.p_correct_sixfold + rep.p_contaminated_sixfold;
    CHECK(rep.rejected_by_postselection ==
          doctest::Approx(fourfold - sixfold).epsilon(1e-9));
  }
}
