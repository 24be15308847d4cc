#include <doctest.h>

#include <cmath>

#include "vap/itc.hpp"

using namespace vap;
using namespace vap::itc;

namespace {

const FusionParams kDefaults{};

context::ContextPrior uniform_prior(std::size_t n, double v) {
  return {std::vector<double>(n, v)};
}

}  // namespace

TEST_CASE("published defaults") {
  CHECK(kDefaults.mu == doctest::Approx(0.2));
  CHECK(kDefaults.sigma == doctest::Approx(1.0 / 3.0));
  CHECK(kDefaults.b == doctest::Approx(10.0));
  CHECK(kDefaults.c == doctest::Approx(0.125));
  CHECK(kDefaults.a == doctest::Approx(1.0));
}

TEST_CASE("magnitude regulator peaks at mu and matches the scalar values") {
  CHECK(r_magnitude(0.2, kDefaults) == doctest::Approx(1.0).epsilon(1e-12));
  double at_one_sigma = r_magnitude(0.2 + 1.0 / 3.0, kDefaults);
  CHECK(std::abs(at_one_sigma - 0.606531) < 1e-6);
  double at_two_sigma = r_magnitude(0.2 + 2.0 / 3.0, kDefaults);
  CHECK(std::abs(at_two_sigma - 0.135335) < 1e-6);
}

TEST_CASE("magnitude regulator is symmetric about mu and bounded by a") {
  for (double d = 0.0; d <= 0.2; d += 0.01) {
    CHECK(r_magnitude(0.2 + d, kDefaults) ==
          doctest::Approx(r_magnitude(0.2 - d, kDefaults)).epsilon(1e-12));
  }
  for (double p = 0.0; p <= 1.0; p += 0.05) {
    CHECK(r_magnitude(p, kDefaults) > 0.0);
    CHECK(r_magnitude(p, kDefaults) <= 1.0);
  }
}

TEST_CASE("sign regulator crosses zero at c and matches the scalar values") {
  CHECK(r_sign(0.125, kDefaults) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(r_sign(0.0, kDefaults) - (-0.848284)) < 1e-6);
  CHECK(std::abs(r_sign(0.625, kDefaults) - 0.999909) < 1e-6);
}

TEST_CASE("sign regulator is strictly increasing and odd about c") {
  double prev = r_sign(0.0, kDefaults);
  for (double p = 0.01; p <= 1.0; p += 0.01) {
    double cur = r_sign(p, kDefaults);
    CHECK(cur > prev);
    prev = cur;
  }
  for (double d = 0.0; d <= 0.1; d += 0.01)
    CHECK(r_sign(0.125 + d, kDefaults) ==
          doctest::Approx(-r_sign(0.125 - d, kDefaults)).epsilon(1e-9));
}

TEST_CASE("correction composes the two regulators with the pathway confidence") {
  CHECK(correction(0.9, 0.7, 0.125, kDefaults) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(correction(0.0, 0.3, 0.9, kDefaults) == doctest::Approx(0.0).epsilon(1e-12));
  double c = correction(0.8, 0.2, 0.625, kDefaults);
  CHECK(std::abs(c - 0.8 * 1.0 * 0.999909) < 1e-5);
}

TEST_CASE("fuse with both pathways silenced is the identity") {
  const CategoryCatalog& catalog = default_catalog();
  ProbabilityVector bu(catalog.size(), 0.0);
  bu[catalog.index_of("car")] = 0.3;
  bu[catalog.index_of("boat")] = 0.25;
  GistPrediction silent{CategoryKind::ManMade, 0.0};
  FusedDecision fused = fuse(bu, {0, 0.0}, uniform_prior(catalog.size(), 0.6), silent,
                             kDefaults, catalog);
  for (std::size_t i = 0; i < catalog.size(); ++i)
    CHECK(fused.corrected[i] == bu[i]);  // exact
  CHECK(fused.corrected.argmax() == bu.argmax());
  CHECK(!fused.label.has_value());  // 0.3 below the 0.5 threshold
}

TEST_CASE("scene prior resolves a two-category ambiguity toward the plausible one") {
  const CategoryCatalog& catalog = default_catalog();
  std::size_t car = catalog.index_of("car");
  std::size_t boat = catalog.index_of("boat");
  ProbabilityVector bu(catalog.size(), 0.0);
  bu[car] = 0.30;
  bu[boat] = 0.30;

  context::ContextPrior prior = uniform_prior(catalog.size(), 0.01);
  prior.values[car] = 0.625;
  GistPrediction silent{CategoryKind::ManMade, 0.0};

  // scalar-oracle composition of the per-pathway coefficients
  double gap_unit = r_magnitude(0.30, kDefaults) * (std::tanh(10.0 * (0.625 - 0.125)) -
                                                    std::tanh(10.0 * (0.01 - 0.125)));

  SUBCASE("full scene confidence: argmax flips to car, corrections match the oracle") {
    FusedDecision fused = fuse(bu, {0, 1.0}, prior, silent, kDefaults, catalog);
    CHECK(fused.scene_correction.values[car] - fused.scene_correction.values[boat] ==
          doctest::Approx(gap_unit).epsilon(1e-9));
    CHECK(fused.corrected.argmax() == car);
    CHECK(fused.corrected[car] > fused.corrected[boat]);
    REQUIRE(fused.label.has_value());
    CHECK(*fused.label == car);
  }

  SUBCASE("moderate confidence keeps the sums inside [0,1], values exact") {
    double conf = 0.35;
    FusedDecision fused = fuse(bu, {0, conf}, prior, silent, kDefaults, catalog);
    double gap = fused.corrected[car] - fused.corrected[boat];
    CHECK(gap > 0.0);
    CHECK(gap == doctest::Approx(conf * gap_unit).epsilon(1e-9));
    CHECK(fused.corrected[car] ==
          doctest::Approx(0.30 + correction(conf, 0.30, 0.625, kDefaults)).epsilon(1e-12));
  }
}

TEST_CASE("confident bottom-up decisions move little") {
  const CategoryCatalog& catalog = default_catalog();
  std::size_t car = catalog.index_of("car");
  ProbabilityVector bu(catalog.size(), 0.0);
  bu[car] = 0.99;
  context::ContextPrior prior = uniform_prior(catalog.size(), 0.9);
  GistPrediction gist{CategoryKind::ManMade, 0.0};
  FusedDecision fused = fuse(bu, {0, 1.0}, prior, gist, kDefaults, catalog);
  double bound = r_magnitude(0.99, kDefaults);
  CHECK(bound <= 0.0608);
  CHECK(std::abs(fused.corrected[car] - 0.99) <= bound + 1e-12);
}

TEST_CASE("gist pathway maps kind agreement to confidence and disagreement to its complement") {
  const CategoryCatalog& catalog = default_catalog();
  std::size_t car = catalog.index_of("car");      // man-made
  std::size_t person = catalog.index_of("person");  // natural
  ProbabilityVector bu(catalog.size(), 0.0);
  bu[car] = 0.2;
  bu[person] = 0.2;

  GistPrediction gist{CategoryKind::ManMade, 0.9};
  FusedDecision fused =
      fuse(bu, {0, 0.0}, uniform_prior(catalog.size(), 0.0), gist, kDefaults, catalog);

  double c_car = correction(0.9, 0.2, 0.9, kDefaults);
  double c_person = correction(0.9, 0.2, 0.1, kDefaults);
  CHECK(fused.gist_correction.values[car] == doctest::Approx(c_car).epsilon(1e-12));
  CHECK(fused.gist_correction.values[person] == doctest::Approx(c_person).epsilon(1e-12));
  CHECK(c_car > 0.0);
  CHECK(c_person < 0.0);
  CHECK(fused.corrected[car] > fused.corrected[person]);
}

TEST_CASE("corrected entries stay in [0,1] and monotone in the prior") {
  const CategoryCatalog& catalog = default_catalog();
  ProbabilityVector bu(catalog.size(), 0.0);
  std::size_t car = catalog.index_of("car");
  bu[car] = 0.45;

  double prev = -1.0;
  for (double p = 0.0; p <= 1.0; p += 0.05) {
    context::ContextPrior prior = uniform_prior(catalog.size(), 0.02);
    prior.values[car] = p;
    GistPrediction silent{CategoryKind::ManMade, 0.0};
    FusedDecision fused = fuse(bu, {0, 0.9}, prior, silent, kDefaults, catalog);
    for (double v : fused.corrected.values) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(fused.corrected[car] >= prev - 1e-12);
    prev = fused.corrected[car];
  }
}

TEST_CASE("decision label requires the threshold") {
  const CategoryCatalog& catalog = default_catalog();
  std::size_t car = catalog.index_of("car");
  ProbabilityVector bu(catalog.size(), 0.0);
  bu[car] = 0.7;
  GistPrediction silent{CategoryKind::ManMade, 0.0};
  FusedDecision fused =
      fuse(bu, {0, 0.0}, uniform_prior(catalog.size(), 0.0), silent, kDefaults, catalog);
  REQUIRE(fused.label.has_value());
  CHECK(*fused.label == car);
  CHECK(fused.confidence == doctest::Approx(0.7));
}

TEST_CASE("fusion params are validated") {
  FusionParams bad = kDefaults;
  bad.sigma = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  FusionParams bad2 = kDefaults;
  bad2.c = 1.5;
  CHECK_THROWS_AS(bad2.validate(), Error);
}
